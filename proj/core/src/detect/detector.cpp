#include "landmap/detect/detector.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "landmap/detect/distance_transform.hpp"

namespace landmap::detect {

void LandingConfig::validate() const {
  std::ostringstream err;
  if (!(keepout_radius > 0.0)) err << "keepout_radius must be positive; ";
  if (!(safety_margin >= 0.0)) err << "safety_margin must be non-negative; ";
  if (!(rock_area_radius > 0.0)) err << "rock_area_radius must be positive; ";
  if (rock_area_radius > safe_area_radius()) err << "rock_area_radius must not exceed the safe landing area radius; ";
  if (!(max_slope_deg > 0.0 && max_slope_deg < 90.0)) err << "max_slope_deg must be in (0, 90); ";
  if (!(max_roughness > 0.0)) err << "max_roughness must be positive; ";
  if (max_variance && !(*max_variance > 0.0)) err << "max_variance must be positive; ";
  if (!err.str().empty()) throw ConfigError("invalid landing config: " + err.str());
}

double LandingConfig::max_variance_for(const map::MapConfig& map) const {
  if (max_variance) return *max_variance;
  const double two_cells = 2.0 * map.finest_resolution;
  return two_cells * two_cells;
}

std::string_view to_string(LandingClass c) {
  switch (c) {
    case LandingClass::kSafe: return "SAFE";
    case LandingClass::kHazard: return "HAZARD";
    case LandingClass::kUnknown: return "UNKNOWN";
    case LandingClass::kBorder: return "BORDER";
    case LandingClass::kNoData: return "NO_DATA";
  }
  return "?";
}

std::uint8_t pgm_code(LandingClass c) {
  switch (c) {
    case LandingClass::kSafe: return 255;
    case LandingClass::kHazard: return 64;
    case LandingClass::kUnknown: return 128;
    case LandingClass::kBorder: return 192;
    case LandingClass::kNoData: return 0;
  }
  return 0;
}

Confidence confidence(const map::PyramidMap& map, int row, int col, std::uint32_t min_observations,
                      double max_variance) {
  const auto s = map.deepest_observed(row, col, map.depth());
  if (!s) return Confidence::kUncertain;
  if (s->observation_count >= min_observations && s->variance <= max_variance) return Confidence::kConfident;
  return Confidence::kUncertain;
}

std::size_t LandingMap::count(LandingClass c) const {
  return static_cast<std::size_t>(std::count(classes.begin(), classes.end(), c));
}

bool operator==(const LandingMap& a, const LandingMap& b) {
  if (a.rows != b.rows || a.cols != b.cols || a.resolution != b.resolution || a.origin != b.origin) return false;
  if (a.classes != b.classes || a.distance.size() != b.distance.size()) return false;
  if (std::memcmp(a.distance.data(), b.distance.data(), a.distance.size() * sizeof(double)) != 0) return false;
  if (a.candidates.size() != b.candidates.size()) return false;
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    const auto& x = a.candidates[i];
    const auto& y = b.candidates[i];
    if (x.row != y.row || x.col != y.col || x.clearance != y.clearance) return false;
  }
  return true;
}

std::vector<double> distance_transform(const std::vector<LandingClass>& classes, int rows, int cols,
                                       double resolution) {
  std::vector<std::uint8_t> feature(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) feature[i] = classes[i] != LandingClass::kSafe;
  auto dist = euclidean_distance(feature, rows, cols);
  for (auto& d : dist) d *= resolution;
  return dist;
}

std::vector<Candidate> rank_candidates(const LandingMap& landing, double min_clearance, double suppression_radius,
                                       std::size_t max_count) {
  const int rows = landing.rows;
  const int cols = landing.cols;
  std::vector<Candidate> pool;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (landing.at(r, c) != LandingClass::kSafe) continue;
      const double d = landing.distance_at(r, c);
      if (!(d >= min_clearance)) continue;
      bool peak = true;
      for (int dr = -1; dr <= 1 && peak; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const int rr = r + dr;
          const int cc = c + dc;
          if ((dr == 0 && dc == 0) || rr < 0 || cc < 0 || rr >= rows || cc >= cols) continue;
          if (landing.distance_at(rr, cc) > d) {
            peak = false;
            break;
          }
        }
      }
      if (peak) pool.push_back({r, c, landing.cell_center(r, c), d});
    }
  }
  std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    if (a.clearance != b.clearance) return a.clearance > b.clearance;
    if (a.row != b.row) return a.row < b.row;
    return a.col < b.col;
  });
  std::vector<Candidate> out;
  for (const auto& cand : pool) {
    if (out.size() >= max_count) break;
    const bool suppressed = std::any_of(out.begin(), out.end(), [&](const Candidate& k) {
      return (k.world - cand.world).norm() <= suppression_radius;
    });
    if (!suppressed) out.push_back(cand);
  }
  return out;
}

namespace {

struct LevelDiscs {
  int level = 0;
  int scale = 1;
  // indexed by sub-position (row % scale) * scale + (col % scale)
  std::vector<std::vector<DiscOffset>> rock;
  std::vector<std::vector<DiscOffset>> safe;
};

LevelDiscs make_discs(int level, int scale, double res, double rock_radius, double safe_radius) {
  LevelDiscs out{level, scale, {}, {}};
  for (int a = 0; a < scale; ++a) {
    for (int b = 0; b < scale; ++b) {
      const double u = (b + 0.5) / scale;
      const double v = (a + 0.5) / scale;
      out.rock.push_back(disc_offsets(u, v, rock_radius / res));
      out.safe.push_back(disc_offsets(u, v, safe_radius / res));
    }
  }
  return out;
}

// Max |h - plane| over the disc; with `stop_above` the scan ends as soon as the
// running maximum exceeds it.
double disc_deviation(const SurfaceView& s, int level, int r0, int c0, const std::vector<DiscOffset>& disc,
                      const PlaneFit& plane, double stop_above) {
  const int n = s.cells(level);
  const double res = s.resolution(level);
  const double* h = s.level_data(level);
  const double ox = s.origin().x() + 0.5 * res - plane.anchor.x();
  const double oy = s.origin().y() + 0.5 * res - plane.anchor.y();
  double worst = 0.0;
  for (const auto& o : disc) {
    const int r = r0 + o.drow;
    const int c = c0 + o.dcol;
    if (r < 0 || c < 0 || r >= n || c >= n) continue;
    const double z = h[static_cast<std::size_t>(r) * n + c];
    if (std::isnan(z)) continue;
    const double dev = std::abs(z - (plane.a * (ox + c * res) + plane.b * (oy + r * res) + plane.c));
    if (dev > worst) {
      worst = dev;
      if (worst > stop_above) break;
    }
  }
  return worst;
}

}  // namespace

LandingMap detect(const map::PyramidMap& map, const LandingConfig& config, const DetectOptions& options) {
  config.validate();
  const map::MapConfig& mc = map.config();
  const int d = mc.depth;
  const int n = mc.extent_cells;
  const double res = mc.finest_resolution;
  const double safe_r = config.safe_area_radius();
  const double max_var = config.max_variance_for(mc);
  const auto idx = [n](int r, int c) { return static_cast<std::size_t>(r) * n + c; };

  LandingMap out;
  out.rows = n;
  out.cols = n;
  out.resolution = res;
  out.origin = map.origin();
  out.classes.assign(static_cast<std::size_t>(n) * n, LandingClass::kSafe);

  const SurfaceView surf(map);

  // Stage 0: NO_DATA, BORDER band around NO_DATA and the map edge, confidence.
  const int np = n + 2;
  std::vector<std::uint8_t> feature(static_cast<std::size_t>(np) * np, 1);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      feature[static_cast<std::size_t>(r + 1) * np + c + 1] =
          std::isnan(surf.height(1, r >> (d - 1), c >> (d - 1))) ? 1 : 0;
  const auto edge_dist = euclidean_distance(feature, np, np);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const std::size_t pi = static_cast<std::size_t>(r + 1) * np + c + 1;
      LandingClass& cls = out.classes[idx(r, c)];
      if (feature[pi]) {
        cls = LandingClass::kNoData;
      } else if (edge_dist[pi] * res <= safe_r) {
        cls = LandingClass::kBorder;
      } else if (confidence(map, r, c, config.min_observations, max_var) == Confidence::kUncertain) {
        cls = LandingClass::kUnknown;
      }
    }
  }

  // Stage 1: slope per coarse cell on layer 1, broadcast to its fine cells.
  const int n1 = mc.cells(1);
  const int s1 = mc.scale(1);
  // Plane disc: rock-area radius, so the plane does not move with the margin.
  const double plane_radius = std::max(config.rock_area_radius, 1.5 * mc.resolution(1));
  std::vector<std::optional<PlaneFit>> planes(static_cast<std::size_t>(n1) * n1);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n1; ++j) {
      bool any = false;
      for (int r = i * s1; r < (i + 1) * s1 && !any; ++r)
        for (int c = j * s1; c < (j + 1) * s1; ++c)
          if (out.classes[idx(r, c)] == LandingClass::kSafe) {
            any = true;
            break;
          }
      if (!any) continue;
      const Vec2 center = map.origin() + Vec2((j + 0.5) * mc.resolution(1), (i + 0.5) * mc.resolution(1));
      auto& plane = planes[static_cast<std::size_t>(i) * n1 + j];
      plane = fit_plane(surf, center, plane_radius, 1);
      const LandingClass verdict = !plane                                   ? LandingClass::kUnknown
                                   : plane->slope_deg > config.max_slope_deg ? LandingClass::kHazard
                                                                             : LandingClass::kSafe;
      if (verdict == LandingClass::kSafe) continue;
      for (int r = i * s1; r < (i + 1) * s1; ++r)
        for (int c = j * s1; c < (j + 1) * s1; ++c)
          if (out.classes[idx(r, c)] == LandingClass::kSafe) out.classes[idx(r, c)] = verdict;
    }
  }

  // Stage 2: roughness, coarse to fine. Without pruning every level is
  // evaluated in full and the verdicts are combined afterwards.
  std::vector<LevelDiscs> levels;
  for (int l = d == 1 ? 1 : 2; l <= d; ++l)
    levels.push_back(make_discs(l, mc.scale(l), mc.resolution(l), config.rock_area_radius, safe_r));
  const bool same_disc = config.rock_area_radius == safe_r;
  const double inf = std::numeric_limits<double>::infinity();
  const double stop = options.prune ? config.max_roughness : inf;

  std::vector<std::uint8_t> rough(options.prune ? 0 : out.classes.size(), 0);
  for (const auto& lv : levels) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const std::size_t i = idx(r, c);
        if (out.classes[i] != LandingClass::kSafe) continue;
        const auto& plane = planes[static_cast<std::size_t>(r / s1) * n1 + c / s1];
        const int rl = r / lv.scale;
        const int cl = c / lv.scale;
        const std::size_t sub = static_cast<std::size_t>(r % lv.scale) * lv.scale + c % lv.scale;
        bool hazard = disc_deviation(surf, lv.level, rl, cl, lv.rock[sub], *plane, stop) > config.max_roughness;
        if ((!hazard || !options.prune) && !same_disc)
          hazard = disc_deviation(surf, lv.level, rl, cl, lv.safe[sub], *plane, stop) > config.max_roughness ||
                   hazard;
        if (!hazard) continue;
        if (options.prune)
          out.classes[i] = LandingClass::kHazard;
        else
          rough[i] = 1;
      }
    }
  }
  if (!options.prune)
    for (std::size_t i = 0; i < rough.size(); ++i)
      if (rough[i]) out.classes[i] = LandingClass::kHazard;

  out.distance = distance_transform(out.classes, n, n, res);
  for (std::size_t i = 0; i < out.distance.size(); ++i)
    if (out.classes[i] != LandingClass::kSafe) out.distance[i] = 0.0;
  out.candidates = rank_candidates(out, safe_r, safe_r, options.max_candidates);
  return out;
}

}  // namespace landmap::detect
