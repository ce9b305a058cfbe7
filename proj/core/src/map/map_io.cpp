#include "landmap/map/map_io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "landmap/pgm.hpp"

namespace landmap::map {
namespace {

using nlohmann::json;

constexpr const char* kFormat = "landmap-map-dump";

std::filesystem::path layer_csv(const std::filesystem::path& dir, int l) {
  return dir / ("layer_" + std::to_string(l) + ".csv");
}

}  // namespace

void save_map(const PyramidMap& map, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const MapConfig& cfg = map.config();
  json header = {
      {"format", kFormat},
      {"version", 1},
      {"depth", cfg.depth},
      {"finest_resolution", cfg.finest_resolution},
      {"extent_cells", cfg.extent_cells},
      {"disparity_error_px", cfg.disparity_error_px},
      {"origin", {map.origin().x(), map.origin().y()}},
      {"roll_offset", {map.roll_offset()[0], map.roll_offset()[1]}},
  };
  {
    std::ofstream out(dir / "header.json");
    if (!out) throw FormatError("cannot write map header in " + dir.string());
    out << header.dump(2) << '\n';
  }
  char buf[160];
  for (int l = 1; l <= cfg.depth; ++l) {
    std::ofstream out(layer_csv(dir, l));
    if (!out) throw FormatError("cannot write layer csv in " + dir.string());
    out << "row,col,value,variance,observation_count\n";
    const int n = cfg.cells(l);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const CellState s = map.cell(l, r, c);
        if (!s.observed()) continue;
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.9g,%" PRIu32 "\n", r, c, s.value,
                      static_cast<double>(s.variance), s.observation_count);
        out << buf;
      }
    }
  }
}

PyramidMap load_map(const std::filesystem::path& dir) {
  std::ifstream hin(dir / "header.json");
  if (!hin) throw FormatError("missing header.json in " + dir.string());
  json header;
  try {
    header = json::parse(hin);
  } catch (const json::exception& e) {
    throw FormatError(std::string("map header: ") + e.what());
  }
  MapConfig cfg;
  Vec2 origin;
  int roll_r = 0;
  int roll_c = 0;
  try {
    if (header.at("format").get<std::string>() != kFormat) throw FormatError("not a map dump header");
    cfg.depth = header.at("depth").get<int>();
    cfg.finest_resolution = header.at("finest_resolution").get<double>();
    cfg.extent_cells = header.at("extent_cells").get<int>();
    cfg.disparity_error_px = header.value("disparity_error_px", 0.25);
    origin = Vec2(header.at("origin").at(0).get<double>(), header.at("origin").at(1).get<double>());
    roll_r = header.at("roll_offset").at(0).get<int>();
    roll_c = header.at("roll_offset").at(1).get<int>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("map header: ") + e.what());
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw FormatError(std::string("map header: ") + e.what());
  }

  PyramidMap map(cfg, origin);
  map.set_roll_offset(roll_r, roll_c);
  for (int l = 1; l <= cfg.depth; ++l) {
    std::ifstream in(layer_csv(dir, l));
    if (!in) throw FormatError("missing " + layer_csv(dir, l).string());
    std::string line;
    std::getline(in, line);
    if (line != "row,col,value,variance,observation_count") throw FormatError("bad layer csv header");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      int r = 0;
      int c = 0;
      double value = 0.0;
      double variance = 0.0;
      unsigned long count = 0;
      if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lu", &r, &c, &value, &variance, &count) != 5 || count == 0)
        throw FormatError("bad record at " + layer_csv(dir, l).string() + ":" + std::to_string(line_no));
      try {
        map.set_cell(l, r, c,
                     {value, static_cast<float>(variance), static_cast<std::uint32_t>(count), 0.0f});
      } catch (const DomainError&) {
        throw FormatError("cell outside layer at " + layer_csv(dir, l).string() + ":" + std::to_string(line_no));
      }
    }
  }
  return map;
}

void export_layer_images(const PyramidMap& map, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const MapConfig& cfg = map.config();
  for (int l = 1; l <= cfg.depth; ++l) {
    const int n = cfg.cells(l);
    const int s = cfg.scale(l);
    std::vector<double> h(static_cast<std::size_t>(n) * n, std::numeric_limits<double>::quiet_NaN());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const auto rec = map.reconstruct(r * s, c * s, l);
        if (!rec) continue;
        h[static_cast<std::size_t>(r) * n + c] = rec->height;
        lo = std::min(lo, rec->height);
        hi = std::max(hi, rec->height);
      }
    }
    PgmImage img{n, n, 65535, std::vector<std::uint16_t>(h.size(), 0), {}};
    PgmImage mask{n, n, 255, std::vector<std::uint16_t>(h.size(), 0), {}};
    const double span = hi > lo ? hi - lo : 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (map.cell(l, static_cast<int>(i) / n, static_cast<int>(i) % n).observed()) mask.pixels[i] = 255;
      if (std::isnan(h[i])) continue;
      // observed cells map to 1..65535 so 0 stays NO_DATA
      const double t = span > 0.0 ? (h[i] - lo) / span : 0.0;
      img.pixels[i] = static_cast<std::uint16_t>(1 + std::lround(t * 65534.0));
    }
    char comment[160];
    if (std::isfinite(lo))
      std::snprintf(comment, sizeof comment, " height_min=%.9g height_max=%.9g (value 1 = min, 65535 = max, 0 = no data)",
                    lo, hi);
    else
      std::snprintf(comment, sizeof comment, " no data");
    img.comments.emplace_back(comment);
    write_pgm(img, dir / ("layer_" + std::to_string(l) + ".pgm"));
    write_pgm(mask, dir / ("layer_" + std::to_string(l) + "_mask.pgm"));
  }
}

}  // namespace landmap::map
