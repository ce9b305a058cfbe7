#include "landmap/sim/flight.hpp"

#include <cmath>

namespace landmap::sim {

void FlightPlan::validate() const {
  if (waypoints.size() < 2) throw ConfigError("flight plan needs at least two waypoints");
  if (!(speed > 0.0)) throw ConfigError("flight speed must be positive");
  if (!(frame_rate > 0.0)) throw ConfigError("frame rate must be positive");
  for (const auto& w : waypoints)
    if (!w.allFinite()) throw ConfigError("waypoints must be finite");
}

double FlightPlan::path_length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) len += (waypoints[i] - waypoints[i - 1]).norm();
  return len;
}

std::vector<Pose> plan_poses(const FlightPlan& plan) {
  plan.validate();
  const double duration = plan.path_length() / plan.speed;
  // tolerate rounding in duration * rate so exact multiples keep their last frame
  const auto frames = static_cast<std::size_t>(std::floor(duration * plan.frame_rate + 1e-9)) + 1;

  std::vector<Pose> poses;
  poses.reserve(frames);
  std::size_t seg = 0;
  double seg_start = 0.0;  // arc length at the start of `seg`
  double heading = 0.0;
  for (std::size_t k = 0; k < frames; ++k) {
    const double t = static_cast<double>(k) / plan.frame_rate;
    const double s = std::min(t * plan.speed, plan.path_length());
    while (seg + 2 < plan.waypoints.size() &&
           s > seg_start + (plan.waypoints[seg + 1] - plan.waypoints[seg]).norm()) {
      seg_start += (plan.waypoints[seg + 1] - plan.waypoints[seg]).norm();
      ++seg;
    }
    const Vec3 a = plan.waypoints[seg];
    const Vec3 b = plan.waypoints[seg + 1];
    const double len = (b - a).norm();
    const double frac = len > 0.0 ? std::min(1.0, (s - seg_start) / len) : 0.0;
    if (std::hypot(b.x() - a.x(), b.y() - a.y()) > 0.0) heading = std::atan2(b.y() - a.y(), b.x() - a.x());

    Pose pose;
    pose.timestamp = t;
    pose.position = a + frac * (b - a);
    pose.orientation = camera_orientation(heading, plan.pitch_deg);
    poses.push_back(pose);
  }
  return poses;
}

FlightSimulator::FlightSimulator(const TerrainModel& terrain, FlightPlan plan, CameraModel camera,
                                 std::uint64_t seed, RenderOptions options)
    : terrain_(&terrain),
      plan_(std::move(plan)),
      camera_(camera),
      seed_(seed),
      options_(options),
      poses_(plan_poses(plan_)) {
  camera_.validate();
}

Frame FlightSimulator::render(std::size_t index) const {
  Frame f;
  f.index = index;
  f.pose = poses_.at(index);
  f.image = render_range_image(*terrain_, f.pose, camera_, split_seed(seed_, index), options_);
  return f;
}

std::optional<Frame> FlightSimulator::next() {
  if (cursor_ >= poses_.size()) return std::nullopt;
  return render(cursor_++);
}

std::vector<Frame> fly(const TerrainModel& terrain, const FlightPlan& plan, const CameraModel& camera,
                       std::uint64_t seed, const RenderOptions& options) {
  FlightSimulator sim(terrain, plan, camera, seed, options);
  std::vector<Frame> frames;
  frames.reserve(sim.frame_count());
  while (auto f = sim.next()) frames.push_back(std::move(*f));
  return frames;
}

}  // namespace landmap::sim
