#include "landmap/map/lod.hpp"

#include <cmath>
#include <sstream>

namespace landmap::map {

void MapConfig::validate() const {
  std::ostringstream err;
  if (depth < 1 || depth > 16) err << "depth must be in [1, 16]; ";
  if (!(finest_resolution > 0.0)) err << "finest_resolution must be positive; ";
  if (extent_cells <= 0) err << "extent_cells must be positive; ";
  if (depth >= 1 && depth <= 16 && extent_cells > 0 && extent_cells % (1 << (depth - 1)) != 0)
    err << "extent_cells must be divisible by 2^(depth-1); ";
  if (!(disparity_error_px > 0.0)) err << "disparity_error_px must be positive; ";
  if (!err.str().empty()) throw ConfigError("invalid map config: " + err.str());
}

std::size_t MapConfig::total_cells() const {
  std::size_t n = 0;
  for (int l = 1; l <= depth; ++l) n += static_cast<std::size_t>(cells(l)) * cells(l);
  return n;
}

int cell_index(int x_d, int layer, int depth) {
  if (layer < 1 || layer > depth) {
    std::ostringstream msg;
    msg << "layer " << layer << " outside [1, " << depth << "]";
    throw DomainError(msg.str());
  }
  // arithmetic shift is floor division by 2^(depth - layer)
  return x_d >> (depth - layer);
}

double pixel_footprint(double z_a, double z_i, const CameraModel& camera) {
  const double dz = z_a - z_i;
  if (!(dz > 0.0)) throw FootprintError("measurement is not below the camera");
  return 2.0 * dz * camera.tan_half_fov_x() / camera.image_width;
}

int target_level(double footprint, const MapConfig& config) {
  for (int l = config.depth; l > 1; --l) {
    if (config.resolution(l) >= footprint) return l;
  }
  return 1;
}

double measurement_variance(double depth, double baseline, double f_px, double sigma_d,
                            double vertical_component) {
  if (!(baseline > 0.0)) throw NumericError("stereo baseline must be positive");
  if (!(depth > 0.0 && f_px > 0.0 && sigma_d > 0.0))
    throw NumericError("depth, focal length and disparity sigma must be positive");
  const double sigma_z = depth * depth * sigma_d / (baseline * f_px);
  const double v = sigma_z * vertical_component;
  return v * v;
}

Estimate kalman_update(Estimate prior, Estimate measurement) {
  if (!(prior.variance > 0.0 && measurement.variance > 0.0))
    throw NumericError("kalman update requires positive variances");
  const double sum = prior.variance + measurement.variance;
  return {(prior.value * measurement.variance + measurement.value * prior.variance) / sum,
          prior.variance * measurement.variance / sum};
}

}  // namespace landmap::map
