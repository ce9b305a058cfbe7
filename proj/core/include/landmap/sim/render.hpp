#ifndef LANDMAP_SIM_RENDER_HPP
#define LANDMAP_SIM_RENDER_HPP

#include <cstdint>

#include "landmap/sim/range_image.hpp"
#include "landmap/sim/terrain.hpp"

namespace landmap::sim {

struct RenderOptions {
  /// Ray-march step length in meters (half the finest map resolution).
  double march_step = 0.03;
  /// Bisection stops once |ray z - surface z| falls below this.
  double intersection_tolerance = 1e-5;
  /// Three-sigma disparity error of the variance model attached to each
  /// point. Independent of the injected noise so noiseless renders still
  /// carry usable variances.
  double variance_disparity_3sigma = 0.25;
};

/// Height of the camera above the terrain directly below it.
double camera_agl(const TerrainModel& terrain, const Vec3& position);

/// Simulated stereo range image: each pixel ray is intersected with the
/// terrain, the true disparity is perturbed with Gaussian noise, and the noisy
/// depth is back-projected to a world point. Pixels whose ray leaves the
/// terrain extent are invalid. Throws PoseError when the camera is not above
/// the surface.
RangeImage render_range_image(const TerrainModel& terrain, const Pose& pose, const CameraModel& camera,
                              std::uint64_t noise_seed, const RenderOptions& options = {});

}  // namespace landmap::sim

#endif  // LANDMAP_SIM_RENDER_HPP
