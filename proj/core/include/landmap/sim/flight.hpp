#ifndef LANDMAP_SIM_FLIGHT_HPP
#define LANDMAP_SIM_FLIGHT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "landmap/sim/range_image.hpp"
#include "landmap/sim/render.hpp"
#include "landmap/sim/terrain.hpp"

namespace landmap::sim {

struct FlightPlan {
  std::vector<Vec3> waypoints;
  double speed = 1.0;       // m/s
  double frame_rate = 2.0;  // Hz
  /// Forward tilt of the camera from nadir, degrees.
  double pitch_deg = 0.0;

  void validate() const;
  double path_length() const;
};

/// Poses sampled along the polyline at constant speed, one per frame period,
/// including t = 0. The camera heading follows the current segment.
std::vector<Pose> plan_poses(const FlightPlan& plan);

struct Frame {
  std::size_t index = 0;
  Pose pose;
  RangeImage image;
};

/// Single-consumer stream of rendered frames in timestamp order. Frame k is
/// rendered with noise seed split_seed(seed, k), so a stream is fully
/// determined by (terrain, plan, camera, seed).
class FlightSimulator {
 public:
  FlightSimulator(const TerrainModel& terrain, FlightPlan plan, CameraModel camera, std::uint64_t seed,
                  RenderOptions options = {});

  const std::vector<Pose>& poses() const noexcept { return poses_; }
  std::size_t frame_count() const noexcept { return poses_.size(); }
  std::optional<Frame> next();
  /// Renders frame `index` without advancing the stream.
  Frame render(std::size_t index) const;

 private:
  const TerrainModel* terrain_;
  FlightPlan plan_;
  CameraModel camera_;
  std::uint64_t seed_;
  RenderOptions options_;
  std::vector<Pose> poses_;
  std::size_t cursor_ = 0;
};

/// Convenience: all frames of a flight.
std::vector<Frame> fly(const TerrainModel& terrain, const FlightPlan& plan, const CameraModel& camera,
                       std::uint64_t seed, const RenderOptions& options = {});

}  // namespace landmap::sim

#endif  // LANDMAP_SIM_FLIGHT_HPP
