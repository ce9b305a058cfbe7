#include "landmap/detect/surface_checks.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace landmap::detect {

SurfaceView::SurfaceView(const map::PyramidMap& map) : depth_(map.depth()), origin_(map.origin()) {
  const auto& cfg = map.config();
  for (int l = 1; l <= depth_; ++l) {
    const int n = cfg.cells(l);
    const int s = cfg.scale(l);
    cells_.push_back(n);
    resolution_.push_back(cfg.resolution(l));
    std::vector<double> h(static_cast<std::size_t>(n) * n, std::numeric_limits<double>::quiet_NaN());
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const auto rec = map.reconstruct(r * s, c * s, l);
        if (rec) h[static_cast<std::size_t>(r) * n + c] = rec->height;
      }
    }
    heights_.push_back(std::move(h));
  }
}

std::vector<DiscOffset> disc_offsets(double u, double v, double radius_cells) {
  std::vector<DiscOffset> out;
  const int c0 = static_cast<int>(std::floor(u));
  const int r0 = static_cast<int>(std::floor(v));
  const int span = static_cast<int>(std::ceil(radius_cells)) + 1;
  const double r2 = radius_cells * radius_cells;
  for (int dr = -span; dr <= span; ++dr) {
    for (int dc = -span; dc <= span; ++dc) {
      const double dx = (c0 + dc + 0.5) - u;
      const double dy = (r0 + dr + 0.5) - v;
      if (dx * dx + dy * dy <= r2) out.push_back({dr, dc, dx, dy});
    }
  }
  return out;
}

namespace {

// Visits observed cells of the disc as (dx, dy, h) with dx, dy in meters.
template <typename F>
void for_each_in_disc(const SurfaceView& s, const Vec2& center, double radius, int level, F&& f) {
  if (level < 1 || level > s.depth()) throw DomainError("level out of range");
  const double res = s.resolution(level);
  const int n = s.cells(level);
  const double u = (center.x() - s.origin().x()) / res;
  const double v = (center.y() - s.origin().y()) / res;
  const int c0 = static_cast<int>(std::floor(u));
  const int r0 = static_cast<int>(std::floor(v));
  for (const auto& o : disc_offsets(u, v, radius / res)) {
    const int r = r0 + o.drow;
    const int c = c0 + o.dcol;
    if (r < 0 || c < 0 || r >= n || c >= n) continue;
    const double h = s.height(level, r, c);
    if (std::isnan(h)) continue;
    f(o.dx * res, o.dy * res, h);
  }
}

}  // namespace

std::optional<PlaneFit> fit_plane(const SurfaceView& surface, const Vec2& center, double radius, int level) {
  Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
  Eigen::Vector3d atb = Eigen::Vector3d::Zero();
  std::size_t n = 0;
  for_each_in_disc(surface, center, radius, level, [&](double dx, double dy, double h) {
    const Eigen::Vector3d row(dx, dy, 1.0);
    ata.noalias() += row * row.transpose();
    atb.noalias() += row * h;
    ++n;
  });
  if (n < 3) return std::nullopt;
  // collinear support leaves the centered xy scatter rank deficient
  const double m = static_cast<double>(n);
  const double sxx = ata(0, 0) - ata(0, 2) * ata(0, 2) / m;
  const double syy = ata(1, 1) - ata(1, 2) * ata(1, 2) / m;
  const double sxy = ata(0, 1) - ata(0, 2) * ata(1, 2) / m;
  const double res = surface.resolution(level);
  if (sxx * syy - sxy * sxy <= 1e-9 * res * res * res * res * m * m) return std::nullopt;

  const Eigen::Vector3d x = ata.ldlt().solve(atb);
  PlaneFit fit;
  fit.anchor = center;
  fit.a = x(0);
  fit.b = x(1);
  fit.c = x(2);
  fit.slope_deg = rad2deg(std::atan(std::hypot(fit.a, fit.b)));
  fit.support = n;
  double sse = 0.0;
  for_each_in_disc(surface, center, radius, level, [&](double dx, double dy, double h) {
    const double e = h - (fit.a * dx + fit.b * dy + fit.c);
    sse += e * e;
  });
  fit.rms = std::sqrt(sse / m);
  return fit;
}

std::optional<PlaneFit> fit_plane(const map::PyramidMap& map, const Vec2& center, double radius, int level) {
  return fit_plane(SurfaceView(map), center, radius, level);
}

Roughness roughness(const SurfaceView& surface, const Vec2& center, double radius, int level,
                    const PlaneFit& plane) {
  Roughness out;
  for_each_in_disc(surface, center, radius, level, [&](double dx, double dy, double h) {
    const double dev = std::abs(h - plane.height(center.x() + dx, center.y() + dy));
    if (dev > out.value) out.value = dev;
    ++out.support;
  });
  return out;
}

Roughness roughness(const map::PyramidMap& map, const Vec2& center, double radius, int level,
                    const PlaneFit& plane) {
  return roughness(SurfaceView(map), center, radius, level, plane);
}

}  // namespace landmap::detect
