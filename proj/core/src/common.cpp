#include "landmap/common.hpp"

#include <cmath>
#include <sstream>

namespace landmap {

std::uint64_t split_seed(std::uint64_t seed, std::string_view consumer) noexcept {
  // FNV-1a over the consumer name, then mixed with the seed.
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : consumer) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return splitmix64(seed ^ splitmix64(h));
}

double counter_normal(std::uint64_t seed, std::uint64_t counter) noexcept {
  const std::uint64_t a = splitmix64(seed ^ splitmix64(2 * counter));
  const std::uint64_t b = splitmix64(seed ^ splitmix64(2 * counter + 1));
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - unit_double(a);
  const double u2 = unit_double(b);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

void CameraModel::validate() const {
  std::ostringstream err;
  if (!(fov_x_deg > 0.0 && fov_x_deg < 180.0)) err << "fov_x must be in (0, 180) degrees; ";
  if (image_width <= 0 || image_height <= 0) err << "image dimensions must be positive; ";
  if (!(disparity_noise_3sigma >= 0.0)) err << "disparity noise must be non-negative; ";
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) err << "overlap fraction must be in [0, 1); ";
  if (!err.str().empty()) throw ConfigError("invalid camera model: " + err.str());
}

double CameraModel::tan_half_fov_x() const { return std::tan(deg2rad(fov_x_deg) / 2.0); }

double CameraModel::tan_half_fov_y() const {
  return tan_half_fov_x() * static_cast<double>(image_height) / static_cast<double>(image_width);
}

double CameraModel::focal_px() const { return image_width / (2.0 * tan_half_fov_x()); }

double CameraModel::baseline(double agl) const {
  return (1.0 - overlap_fraction) * 2.0 * agl * tan_half_fov_x();
}

Quat camera_orientation(double heading_rad, double pitch_deg) {
  const Vec3 forward(std::cos(heading_rad), std::sin(heading_rad), 0.0);
  const Vec3 up = Vec3::UnitZ();
  const double p = deg2rad(pitch_deg);
  const Vec3 z_cam = -std::cos(p) * up + std::sin(p) * forward;
  const Vec3 x_cam = std::cos(p) * forward + std::sin(p) * up;
  const Vec3 y_cam = z_cam.cross(x_cam);
  Eigen::Matrix3d rot;
  rot.col(0) = x_cam;
  rot.col(1) = y_cam;
  rot.col(2) = z_cam;
  return Quat(rot).normalized();
}

}  // namespace landmap
