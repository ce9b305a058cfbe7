#ifndef LANDMAP_MAP_LOD_HPP
#define LANDMAP_MAP_LOD_HPP

#include "landmap/common.hpp"

namespace landmap::map {

/// Pyramid geometry. Layer 1 is the coarsest (absolute heights), layer
/// `depth` the finest; each layer halves the cell size of the previous one.
struct MapConfig {
  int depth = 3;
  /// Cell size of the finest layer, meters.
  double finest_resolution = 0.08;
  /// Cells per side of the finest layer. Must be divisible by 2^(depth-1).
  int extent_cells = 200;
  /// Assumed three-sigma stereo disparity error used for measurement variance.
  double disparity_error_px = 0.25;

  void validate() const;

  /// Fine cells per layer-`layer` cell along one axis: 2^(depth - layer).
  int scale(int layer) const { return 1 << (depth - layer); }
  int cells(int layer) const { return extent_cells / scale(layer); }
  double resolution(int layer) const { return finest_resolution * scale(layer); }
  double extent_meters() const { return finest_resolution * extent_cells; }
  /// Cells in all layers together.
  std::size_t total_cells() const;
};

/// Index of the layer-`layer` cell containing finest-layer index `x_d`
/// (floor division, valid for negative indices). Throws DomainError when the
/// layer is outside [1, depth].
int cell_index(int x_d, int layer, int depth);

/// Ground size of one pixel for a camera at altitude `z_a` observing a point
/// at elevation `z_i`. Throws FootprintError when z_a <= z_i.
double pixel_footprint(double z_a, double z_i, const CameraModel& camera);

/// Deepest layer whose cell size is still at least `footprint`, clamped to
/// [1, depth].
int target_level(double footprint, const MapConfig& config);

/// Vertical height variance of a stereo point at `depth` meters along the
/// optical axis: sigma_z = depth^2 * sigma_d / (baseline * f_px), scaled by
/// `vertical_component` (the z component of the depth-scaled ray; 1 for a
/// nadir camera). Throws NumericError on non-positive inputs.
double measurement_variance(double depth, double baseline, double f_px, double sigma_d,
                            double vertical_component = 1.0);

struct Estimate {
  double value = 0.0;
  double variance = 0.0;
};

/// Scalar Kalman (inverse-variance) update. Throws NumericError unless both
/// variances are positive.
Estimate kalman_update(Estimate prior, Estimate measurement);

}  // namespace landmap::map

#endif  // LANDMAP_MAP_LOD_HPP
