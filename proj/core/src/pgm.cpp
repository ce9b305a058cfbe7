#include "landmap/pgm.hpp"

#include <fstream>
#include <sstream>

#include "landmap/common.hpp"

namespace landmap {

void write_pgm(const PgmImage& image, const std::filesystem::path& path) {
  if (image.maxval != 255 && image.maxval != 65535) throw FormatError("pgm maxval must be 255 or 65535");
  if (image.pixels.size() != static_cast<std::size_t>(image.width) * image.height)
    throw FormatError("pgm pixel count does not match dimensions");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out << "P5\n";
  for (const auto& c : image.comments) out << '#' << c << '\n';
  out << image.width << ' ' << image.height << '\n' << image.maxval << '\n';
  if (image.maxval == 255) {
    std::vector<char> bytes(image.pixels.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = static_cast<char>(image.pixels[i] & 0xFF);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  } else {
    std::vector<char> bytes(image.pixels.size() * 2);
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
      bytes[2 * i] = static_cast<char>(image.pixels[i] >> 8);
      bytes[2 * i + 1] = static_cast<char>(image.pixels[i] & 0xFF);
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  if (!out) throw FormatError("failed writing " + path.string());
}

PgmImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::string magic;
  std::getline(in, magic);
  if (magic != "P5") throw FormatError("not a binary pgm: " + path.string());
  PgmImage img;
  std::string line;
  while (in.peek() == '#') {
    std::getline(in, line);
    img.comments.push_back(line.substr(1));
  }
  in >> img.width >> img.height >> img.maxval;
  in.get();
  if (!in || img.width <= 0 || img.height <= 0 || (img.maxval != 255 && img.maxval != 65535))
    throw FormatError("bad pgm header: " + path.string());
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  const std::size_t bpp = img.maxval == 255 ? 1 : 2;
  std::vector<unsigned char> bytes(n * bpp);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) throw FormatError("truncated pgm: " + path.string());
  img.pixels.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    img.pixels[i] = bpp == 1 ? bytes[i] : static_cast<std::uint16_t>((bytes[2 * i] << 8) | bytes[2 * i + 1]);
  return img;
}

}  // namespace landmap
