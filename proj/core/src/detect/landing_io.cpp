#include "landmap/detect/landing_io.hpp"

#include <cstdio>
#include <fstream>
#include <string>

#include "landmap/pgm.hpp"

namespace landmap::detect {

void write_landing_pgm(const LandingMap& landing, const std::filesystem::path& path) {
  PgmImage img{landing.cols, landing.rows, 255, std::vector<std::uint16_t>(landing.classes.size()), {}};
  for (std::size_t i = 0; i < landing.classes.size(); ++i) img.pixels[i] = pgm_code(landing.classes[i]);
  img.comments.emplace_back(" SAFE=255 HAZARD=64 UNKNOWN=128 BORDER=192 NO_DATA=0");
  write_pgm(img, path);
}

std::vector<LandingClass> read_landing_pgm(const std::filesystem::path& path, int& rows, int& cols) {
  const PgmImage img = read_pgm(path);
  if (img.maxval != 255) throw FormatError("landing map must be an 8-bit pgm");
  rows = img.height;
  cols = img.width;
  std::vector<LandingClass> out(img.pixels.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    switch (img.pixels[i]) {
      case 255: out[i] = LandingClass::kSafe; break;
      case 64: out[i] = LandingClass::kHazard; break;
      case 128: out[i] = LandingClass::kUnknown; break;
      case 192: out[i] = LandingClass::kBorder; break;
      case 0: out[i] = LandingClass::kNoData; break;
      default: throw FormatError("unknown landing class code " + std::to_string(img.pixels[i]));
    }
  }
  return out;
}

void write_candidates_csv(const std::vector<Candidate>& candidates, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << "rank,world_x,world_y,clearance_m\n";
  char buf[128];
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f,%.6f\n", i + 1, c.world.x(), c.world.y(), c.clearance);
    out << buf;
  }
}

std::vector<Candidate> read_candidates_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "rank,world_x,world_y,clearance_m") throw FormatError("bad candidates header");
  std::vector<Candidate> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t rank = 0;
    double x = 0.0;
    double y = 0.0;
    double clearance = 0.0;
    if (std::sscanf(line.c_str(), "%zu,%lf,%lf,%lf", &rank, &x, &y, &clearance) != 4)
      throw FormatError("bad candidate record: " + line);
    out.push_back({0, 0, Vec2(x, y), clearance});
  }
  return out;
}

}  // namespace landmap::detect
