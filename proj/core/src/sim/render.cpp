#include "landmap/sim/render.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "landmap/map/lod.hpp"

namespace landmap::sim {
namespace {

struct RayHit {
  double depth;
};

// First intersection of cam + t * dir with the terrain. The march is confined
// to the slab where the ray is within the terrain's relief band around the
// inclined plane, which is linear in t.
std::optional<RayHit> intersect(const TerrainModel& terrain, const Vec3& cam, const Vec3& dir,
                                const RenderOptions& opt) {
  const Vec2 grad = terrain.plane_gradient();
  const double a = cam.z() - terrain.plane_height(cam.x(), cam.y());
  const double b = dir.z() - grad.x() * dir.x() - grad.y() * dir.y();
  if (!(b < 0.0)) return std::nullopt;

  const double t_lo = std::max(0.0, (a - terrain.max_relief()) / -b);
  const double t_hi = (a - terrain.min_relief()) / -b + 1e-9;
  const double dt = opt.march_step / dir.norm();

  auto gap = [&](double t, double& out) {
    const double x = cam.x() + t * dir.x();
    const double y = cam.y() + t * dir.y();
    if (!terrain.contains(x, y)) return false;
    out = cam.z() + t * dir.z() - terrain.height(x, y);
    return true;
  };

  double t0 = t_lo;
  double f0;
  if (!gap(t0, f0)) return std::nullopt;
  if (f0 <= 0.0) return RayHit{t0};

  while (t0 < t_hi) {
    const double t1 = std::min(t0 + dt, t_hi);
    double f1;
    if (!gap(t1, f1)) return std::nullopt;
    if (f1 <= 0.0) {
      // Illinois regula falsi on the bracket [t0, t1]; on a discontinuity
      // (cliff wall) the bracket collapses onto the step.
      double lo = t0;
      double hi = t1;
      double flo = f0;
      double fhi = f1;
      int side = 0;
      if (std::abs(f1) <= opt.intersection_tolerance) return RayHit{t1};
      for (int it = 0; it < 100; ++it) {
        if ((hi - lo) * dir.norm() < 1e-10) break;
        double mid = hi - fhi * (hi - lo) / (fhi - flo);
        if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
        double fm;
        if (!gap(mid, fm)) return std::nullopt;
        if (std::abs(fm) <= opt.intersection_tolerance) return RayHit{mid};
        if (fm > 0.0) {
          lo = mid;
          flo = fm;
          if (side == -1) fhi *= 0.5;
          side = -1;
        } else {
          hi = mid;
          fhi = fm;
          if (side == 1) flo *= 0.5;
          side = 1;
        }
      }
      return RayHit{hi};
    }
    f0 = f1;
    t0 = t1;
  }
  return std::nullopt;
}

}  // namespace

double camera_agl(const TerrainModel& terrain, const Vec3& position) {
  const auto& p = terrain.params();
  const double x = std::clamp(position.x(), 0.0, p.extent_x);
  const double y = std::clamp(position.y(), 0.0, p.extent_y);
  return position.z() - terrain.height(x, y);
}

RangeImage render_range_image(const TerrainModel& terrain, const Pose& pose, const CameraModel& camera,
                              std::uint64_t noise_seed, const RenderOptions& options) {
  camera.validate();
  if (!pose.position.allFinite()) throw PoseError("camera position is not finite");
  const double agl = camera_agl(terrain, pose.position);
  if (!(agl > 0.0)) throw PoseError("camera is not above the terrain surface");

  const Eigen::Matrix3d rot = pose.orientation.normalized().toRotationMatrix();
  const Vec3& cam = pose.position;
  const double f = camera.focal_px();
  const double baseline = camera.baseline(agl);
  const double bf = baseline * f;
  const double sigma_noise = camera.disparity_sigma();
  const double sigma_model = options.variance_disparity_3sigma / 3.0;
  const double cx = camera.image_width / 2.0;
  const double cy = camera.image_height / 2.0;

  RangeImage image(camera.image_width, camera.image_height);
  for (int v = 0; v < camera.image_height; ++v) {
    for (int u = 0; u < camera.image_width; ++u) {
      // depth-scaled ray: camera-frame z component is 1
      const Vec3 dir = rot * Vec3((u + 0.5 - cx) / f, (v + 0.5 - cy) / f, 1.0);
      const auto hit = intersect(terrain, cam, dir, options);
      if (!hit) continue;

      double disparity = bf / hit->depth;
      if (sigma_noise > 0.0) {
        const auto pixel = static_cast<std::uint64_t>(v) * camera.image_width + u;
        disparity += sigma_noise * counter_normal(noise_seed, pixel);
      }
      if (!(disparity > 0.0)) continue;
      const double depth = bf / disparity;
      const Vec3 p = cam + depth * dir;
      RangePoint& out = image.at(u, v);
      out.x = static_cast<float>(p.x());
      out.y = static_cast<float>(p.y());
      out.z = static_cast<float>(p.z());
      out.variance = static_cast<float>(map::measurement_variance(depth, baseline, f, sigma_model, dir.z()));
    }
  }
  return image;
}

}  // namespace landmap::sim
