#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "landmap/sim/range_image.hpp"

namespace landmap {
namespace {

constexpr std::array<char, 5> kMagic{'R', 'I', 'M', 'G', '1'};

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(sizeof(T) == 4);
  std::uint32_t bits;
  std::memcpy(&bits, &value, 4);
  const char bytes[4] = {static_cast<char>(bits & 0xFF), static_cast<char>((bits >> 8) & 0xFF),
                         static_cast<char>((bits >> 16) & 0xFF), static_cast<char>((bits >> 24) & 0xFF)};
  out.write(bytes, 4);
}

template <typename T>
T get_le(const unsigned char* p) {
  const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                             (static_cast<std::uint32_t>(p[2]) << 16) |
                             (static_cast<std::uint32_t>(p[3]) << 24);
  T value;
  std::memcpy(&value, &bits, 4);
  return value;
}

}  // namespace

std::size_t RangeImage::valid_count() const noexcept {
  std::size_t n = 0;
  for (const auto& p : points_) n += p.valid() ? 1 : 0;
  return n;
}

bool operator==(const RangeImage& a, const RangeImage& b) {
  if (a.width_ != b.width_ || a.height_ != b.height_) return false;
  // bitwise so NaN pixels compare equal
  return std::memcmp(a.points_.data(), b.points_.data(), a.points_.size() * sizeof(RangePoint)) == 0;
}

void write_rimg(const RangeImage& image, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_le(out, static_cast<std::uint32_t>(image.width()));
  put_le(out, static_cast<std::uint32_t>(image.height()));
  constexpr float nan = std::numeric_limits<float>::quiet_NaN();
  for (const auto& p : image.points()) {
    if (p.valid()) {
      put_le(out, p.x);
      put_le(out, p.y);
      put_le(out, p.z);
      put_le(out, p.variance);
    } else {
      for (int k = 0; k < 4; ++k) put_le(out, nan);
    }
  }
  if (!out) throw FormatError("failed writing RIMG1 stream");
}

void write_rimg(const RangeImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_rimg(image, out);
}

RangeImage read_rimg(std::istream& in) {
  std::array<char, 5> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw FormatError("bad RIMG1 magic");
  unsigned char header[8];
  in.read(reinterpret_cast<char*>(header), 8);
  if (!in) throw FormatError("truncated RIMG1 header");
  const auto width = get_le<std::uint32_t>(header);
  const auto height = get_le<std::uint32_t>(header + 4);
  if (width == 0 || height == 0 || width > (1u << 16) || height > (1u << 16))
    throw FormatError("implausible RIMG1 dimensions");

  RangeImage image(static_cast<int>(width), static_cast<int>(height));
  std::vector<unsigned char> buf(image.size() * 16);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size())) throw FormatError("truncated RIMG1 payload");
  auto& pts = image.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const unsigned char* rec = buf.data() + 16 * i;
    pts[i] = {get_le<float>(rec), get_le<float>(rec + 4), get_le<float>(rec + 8), get_le<float>(rec + 12)};
  }
  return image;
}

RangeImage read_rimg(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_rimg(in);
}

void write_pose_line(std::ostream& out, const Pose& pose) {
  const auto& q = pose.orientation;
  out << std::setprecision(17) << pose.timestamp << ' ' << pose.position.x() << ' ' << pose.position.y()
      << ' ' << pose.position.z() << ' ' << q.x() << ' ' << q.y() << ' ' << q.z() << ' ' << q.w() << '\n';
}

std::vector<Pose> read_pose_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open pose log " + path.string());
  std::vector<Pose> poses;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    Pose p;
    double qx, qy, qz, qw;
    if (!(ss >> p.timestamp >> p.position.x() >> p.position.y() >> p.position.z() >> qx >> qy >> qz >> qw))
      throw FormatError("malformed pose line " + std::to_string(lineno) + " in " + path.string());
    p.orientation = Quat(qw, qx, qy, qz);
    if (std::abs(p.orientation.norm() - 1.0) > 1e-6)
      throw FormatError("non-unit quaternion on pose line " + std::to_string(lineno));
    poses.push_back(p);
  }
  return poses;
}

}  // namespace landmap
