#include <algorithm>
#include <cmath>
#include <vector>

#include "landmap/map/pyramid_map.hpp"

namespace landmap::map {

FusionStats PyramidMap::fuse(const RangeImage& image, const Pose& pose, const CameraModel& camera) {
  camera.validate();
  const int d = config_.depth;
  FusionStats stats;
  stats.point_updates.assign(static_cast<std::size_t>(d), 0);
  stats.cells_updated.assign(static_cast<std::size_t>(d), 0);

  std::vector<std::vector<std::uint8_t>> touched(static_cast<std::size_t>(d));
  for (int l = 1; l <= d; ++l) touched[static_cast<std::size_t>(l - 1)].assign(layer(l).count.size(), 0);

  const double z_a = pose.position.z();
  const auto stamp = static_cast<float>(pose.timestamp);
  for (const RangePoint& p : image.points()) {
    if (!p.valid()) {
      ++stats.rejected_invalid;
      continue;
    }
    if (!(p.variance > 0.0f) || !std::isfinite(p.variance)) {
      ++stats.rejected_variance;
      continue;
    }
    if (!(z_a > p.z)) {
      ++stats.rejected_footprint;
      continue;
    }
    const auto cell = locate(p.x, p.y);
    if (!cell) {
      ++stats.rejected_out_of_map;
      continue;
    }
    const int target = target_level(pixel_footprint(z_a, p.z, camera), config_);
    observe(cell->row, cell->col, p.z, p.variance, target, stamp);
    for (int l = 1; l <= target; ++l) {
      const auto li = static_cast<std::size_t>(l - 1);
      ++stats.point_updates[li];
      const std::size_t i = layer(l).index(cell->row >> (d - l), cell->col >> (d - l));
      if (!touched[li][i]) {
        touched[li][i] = 1;
        ++stats.cells_updated[li];
      }
    }
  }
  return stats;
}

Vec2 coverage_half_extent(const Pose& pose, const CameraModel& camera, double agl) {
  const Eigen::Matrix3d rot = pose.orientation.normalized().toRotationMatrix();
  const double hx = agl * camera.tan_half_fov_x();
  const double hy = agl * camera.tan_half_fov_y();
  const Vec3 ax = rot.col(0);
  const Vec3 ay = rot.col(1);
  return {std::abs(ax.x()) * hx + std::abs(ay.x()) * hy, std::abs(ax.y()) * hx + std::abs(ay.y()) * hy};
}

FusionStats integrate_frame(PyramidMap& map, const RangeImage& image, const Pose& pose,
                            const CameraModel& camera) {
  std::vector<float> zs;
  const auto& pts = image.points();
  const std::size_t stride = std::max<std::size_t>(1, pts.size() / 4096);
  for (std::size_t i = 0; i < pts.size(); i += stride)
    if (pts[i].valid()) zs.push_back(pts[i].z);

  Shift applied;
  if (!zs.empty()) {
    auto mid = zs.begin() + static_cast<std::ptrdiff_t>(zs.size() / 2);
    std::nth_element(zs.begin(), mid, zs.end());
    const double agl = pose.position.z() - *mid;
    if (agl > 0.0) {
      const Vec2 uav(pose.position.x(), pose.position.y());
      applied = map.recenter(uav, coverage_half_extent(pose, camera, agl));
    }
  }
  FusionStats stats = map.fuse(image, pose, camera);
  stats.shift = applied;
  return stats;
}

}  // namespace landmap::map
