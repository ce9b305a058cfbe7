#ifndef LANDMAP_DETECT_SURFACE_CHECKS_HPP
#define LANDMAP_DETECT_SURFACE_CHECKS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "landmap/common.hpp"
#include "landmap/map/pyramid_map.hpp"

namespace landmap::detect {

/// Dense, read-only copy of the reconstructed surface at every level. Heights
/// at level l are h_l per layer-l cell (deepest resolved value when finer
/// residuals are missing), NaN where layer 1 is unobserved.
class SurfaceView {
 public:
  explicit SurfaceView(const map::PyramidMap& map);

  int depth() const noexcept { return depth_; }
  int cells(int level) const noexcept { return cells_[static_cast<std::size_t>(level - 1)]; }
  double resolution(int level) const noexcept { return resolution_[static_cast<std::size_t>(level - 1)]; }
  const Vec2& origin() const noexcept { return origin_; }

  double height(int level, int row, int col) const noexcept {
    return heights_[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(row) * cells(level) + col];
  }
  const double* level_data(int level) const noexcept { return heights_[static_cast<std::size_t>(level - 1)].data(); }

 private:
  int depth_;
  Vec2 origin_;
  std::vector<int> cells_;
  std::vector<double> resolution_;
  std::vector<std::vector<double>> heights_;
};

/// Cell offsets (drow, dcol) of a disc, relative to the cell containing the
/// center. Center (u, v) and radius are in units of the layer's cells; a cell
/// is inside iff its center is within the radius.
struct DiscOffset {
  int drow;
  int dcol;
  double dx;  // cell center minus disc center, cells
  double dy;
};
std::vector<DiscOffset> disc_offsets(double u, double v, double radius_cells);

/// Plane z = a (x - anchor.x) + b (y - anchor.y) + c in world meters.
struct PlaneFit {
  Vec2 anchor = Vec2::Zero();
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double slope_deg = 0.0;
  double rms = 0.0;
  std::size_t support = 0;

  double height(double x, double y) const { return a * (x - anchor.x()) + b * (y - anchor.y()) + c; }
};

/// Least-squares plane over observed layer-`level` cells whose centers lie in
/// the disc. Empty with fewer than three non-collinear cells.
std::optional<PlaneFit> fit_plane(const SurfaceView& surface, const Vec2& center, double radius, int level);
std::optional<PlaneFit> fit_plane(const map::PyramidMap& map, const Vec2& center, double radius, int level);

struct Roughness {
  double value = 0.0;  // max |h - plane| over observed cells in the disc
  std::size_t support = 0;
  bool known() const noexcept { return support > 0; }
};

/// Maximum absolute deviation of reconstructed heights from `plane` over the
/// disc at `level`. An empty disc returns 0 with no support.
Roughness roughness(const SurfaceView& surface, const Vec2& center, double radius, int level, const PlaneFit& plane);
Roughness roughness(const map::PyramidMap& map, const Vec2& center, double radius, int level,
                    const PlaneFit& plane);

}  // namespace landmap::detect

#endif  // LANDMAP_DETECT_SURFACE_CHECKS_HPP
