#include "landmap/eval/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace landmap::eval {

RmseBreakdown map_rmse(const map::PyramidMap& map, const sim::TerrainModel& terrain, std::optional<int> level) {
  const auto& cfg = map.config();
  const int lv = level.value_or(cfg.depth);
  double sse[3] = {0.0, 0.0, 0.0};
  std::size_t count[3] = {0, 0, 0};
  for (int r = 0; r < cfg.extent_cells; ++r) {
    for (int c = 0; c < cfg.extent_cells; ++c) {
      const auto rec = map.reconstruct(r, c, lv);
      if (!rec) continue;
      const Vec2 p = map.cell_center(cfg.depth, r, c);
      if (!terrain.contains(p.x(), p.y())) continue;
      const double e = rec->height - terrain.height(p.x(), p.y());
      const auto k = static_cast<std::size_t>(terrain.classify_point(p.x(), p.y()));
      sse[k] += e * e;
      ++count[k];
    }
  }
  RmseBreakdown out;
  auto rmse = [](double s, std::size_t n) -> std::optional<double> {
    if (n == 0) return std::nullopt;
    return std::sqrt(s / static_cast<double>(n));
  };
  out.flat = rmse(sse[0], count[0]);
  out.rock = rmse(sse[1], count[1]);
  out.cliff = rmse(sse[2], count[2]);
  out.total = rmse(sse[0] + sse[1] + sse[2], count[0] + count[1] + count[2]);
  out.flat_cells = count[0];
  out.rock_cells = count[1];
  out.cliff_cells = count[2];
  return out;
}

std::optional<double> map_rmse(const map::PyramidMap& map, const sim::TerrainModel& terrain, sim::TerrainClass cls) {
  const RmseBreakdown b = map_rmse(map, terrain);
  switch (cls) {
    case sim::TerrainClass::kFlat: return b.flat;
    case sim::TerrainClass::kRock: return b.rock;
    case sim::TerrainClass::kCliff: return b.cliff;
  }
  return std::nullopt;
}

std::optional<double> LandingMetrics::recall() const {
  if (evaluated_cells == 0) return std::nullopt;
  return static_cast<double>(correct_cells) / static_cast<double>(evaluated_cells);
}

std::optional<double> LandingMetrics::detection_rate() const {
  if (rocks_visible == 0) return std::nullopt;
  return static_cast<double>(rocks_detected) / static_cast<double>(rocks_visible);
}

std::optional<double> LandingMetrics::false_positive_rate() const {
  if (true_hazard_cells == 0) return std::nullopt;
  return static_cast<double>(false_safe_cells) / static_cast<double>(true_hazard_cells);
}

LandingMetrics& LandingMetrics::operator+=(const LandingMetrics& o) {
  evaluated_cells += o.evaluated_cells;
  correct_cells += o.correct_cells;
  true_hazard_cells += o.true_hazard_cells;
  false_safe_cells += o.false_safe_cells;
  rocks_visible += o.rocks_visible;
  rocks_detected += o.rocks_detected;
  rocks.insert(rocks.end(), o.rocks.begin(), o.rocks.end());
  return *this;
}

bool truth_hazard(const sim::TerrainModel& terrain, double x, double y, const TruthConfig& truth) {
  const Vec2 g = terrain.plane_gradient();
  if (rad2deg(std::atan(g.norm())) > truth.max_slope_deg) return true;
  const auto& p = terrain.params();
  if (p.cliff && std::abs(x - p.cliff->edge_x) < truth.evaluation_keepout) return true;
  for (const auto& rock : terrain.rocks()) {
    const double reach = rock.radius + truth.evaluation_keepout;
    const double dx = x - rock.x;
    const double dy = y - rock.y;
    if (std::abs(dx) >= reach || std::abs(dy) >= reach) continue;
    if (std::hypot(dx, dy) - rock.radius < truth.evaluation_keepout) return true;
  }
  return false;
}

namespace {

// Rocks sorted along x so the truth test only scans a window.
class RockIndex {
 public:
  RockIndex(const sim::TerrainModel& terrain, double keepout) : keepout_(keepout) {
    const auto rocks = terrain.rocks();
    order_.resize(rocks.size());
    for (std::size_t i = 0; i < rocks.size(); ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return rocks[a].x < rocks[b].x; });
    for (const auto i : order_) {
      xs_.push_back(rocks[i].x);
      max_radius_ = std::max(max_radius_, rocks[i].radius);
    }
    rocks_ = rocks;
  }

  bool near_rock(double x, double y) const {
    const double reach = max_radius_ + keepout_;
    auto it = std::lower_bound(xs_.begin(), xs_.end(), x - reach);
    for (; it != xs_.end() && *it <= x + reach; ++it) {
      const auto& rock = rocks_[order_[static_cast<std::size_t>(it - xs_.begin())]];
      if (std::hypot(x - rock.x, y - rock.y) - rock.radius < keepout_) return true;
    }
    return false;
  }

 private:
  double keepout_;
  double max_radius_ = 0.0;
  std::vector<std::size_t> order_;
  std::vector<double> xs_;
  std::span<const sim::Rock> rocks_;
};

}  // namespace

LandingMetrics landing_metrics(const detect::LandingMap& landing, const sim::TerrainModel& terrain,
                               const TruthConfig& truth) {
  using detect::LandingClass;
  LandingMetrics m;
  const RockIndex index(terrain, truth.evaluation_keepout);
  const auto& p = terrain.params();
  const bool slope_hazard = rad2deg(std::atan(terrain.plane_gradient().norm())) > truth.max_slope_deg;

  auto evaluated = [&](LandingClass c) { return c != LandingClass::kBorder && c != LandingClass::kNoData; };

  for (int r = 0; r < landing.rows; ++r) {
    for (int c = 0; c < landing.cols; ++c) {
      const LandingClass cls = landing.at(r, c);
      if (!evaluated(cls)) continue;
      const Vec2 w = landing.cell_center(r, c);
      if (!terrain.contains(w.x(), w.y())) continue;
      const bool hazard = slope_hazard ||
                          (p.cliff && std::abs(w.x() - p.cliff->edge_x) < truth.evaluation_keepout) ||
                          index.near_rock(w.x(), w.y());
      const bool predicted_hazard = cls != LandingClass::kSafe;
      ++m.evaluated_cells;
      if (hazard == predicted_hazard) ++m.correct_cells;
      if (hazard) {
        ++m.true_hazard_cells;
        if (!predicted_hazard) ++m.false_safe_cells;
      }
    }
  }

  const double res = landing.resolution;
  const auto rocks = terrain.rocks();
  for (std::size_t i = 0; i < rocks.size(); ++i) {
    const auto& rock = rocks[i];
    // cells whose square intersects the rock disc
    const int c0 = static_cast<int>(std::floor((rock.x - rock.radius - landing.origin.x()) / res));
    const int c1 = static_cast<int>(std::floor((rock.x + rock.radius - landing.origin.x()) / res));
    const int r0 = static_cast<int>(std::floor((rock.y - rock.radius - landing.origin.y()) / res));
    const int r1 = static_cast<int>(std::floor((rock.y + rock.radius - landing.origin.y()) / res));
    if (c0 < 0 || r0 < 0 || c1 >= landing.cols || r1 >= landing.rows) continue;
    bool visible = true;
    bool detected = true;
    bool any = false;
    for (int r = r0; r <= r1 && visible; ++r) {
      for (int c = c0; c <= c1; ++c) {
        const double x0 = landing.origin.x() + c * res;
        const double y0 = landing.origin.y() + r * res;
        const double nx = std::clamp(rock.x, x0, x0 + res);
        const double ny = std::clamp(rock.y, y0, y0 + res);
        if (std::hypot(nx - rock.x, ny - rock.y) >= rock.radius) continue;
        any = true;
        const LandingClass cls = landing.at(r, c);
        if (!evaluated(cls)) {
          visible = false;
          break;
        }
        if (cls == LandingClass::kSafe) detected = false;
      }
    }
    if (!visible || !any) continue;
    ++m.rocks_visible;
    if (detected) ++m.rocks_detected;
    m.rocks.push_back({i, 2.0 * rock.radius, detected});
  }
  return m;
}

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  out.n = xs.size();
  if (xs.empty()) return out;
  double s = 0.0;
  for (const double x : xs) s += x;
  out.mean = s / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (const double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return out;
}

}  // namespace landmap::eval
