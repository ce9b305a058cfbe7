#ifndef LANDMAP_COMMON_HPP
#define LANDMAP_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace landmap {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Error hierarchy. Every failure that a caller can act on gets its own type so
// the CLI can map them to messages without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Query outside the valid domain of a terrain or map.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Rock placement could not reach the requested coverage.
class PlacementError : public Error {
 public:
  PlacementError(const std::string& what, double achieved_coverage)
      : Error(what), achieved_coverage_(achieved_coverage) {}
  double achieved_coverage() const noexcept { return achieved_coverage_; }

 private:
  double achieved_coverage_;
};

/// Camera pose is not usable (below the surface, non-finite).
class PoseError : public Error {
 public:
  using Error::Error;
};

/// Measurement at or above the camera altitude has no pixel footprint.
class FootprintError : public Error {
 public:
  using Error::Error;
};

/// Non-positive variance or baseline handed to an estimator.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed file (bad magic, truncated record, unparsable line).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Invalid or unknown configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Deterministic randomness.

/// SplitMix64 finalizer. Used both as a seed mixer and as a counter-based
/// generator so per-pixel noise does not depend on evaluation order.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives an independent seed for a named consumer from a top-level seed.
std::uint64_t split_seed(std::uint64_t seed, std::string_view consumer) noexcept;

/// Derives an independent seed for the index-th item of a stream.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Uniform double in [0, 1) from 53 high bits.
constexpr double unit_double(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Standard normal sample drawn from a counter (Box-Muller on two hashes).
double counter_normal(std::uint64_t seed, std::uint64_t counter) noexcept;

// ---------------------------------------------------------------------------
// Sensor description shared by the simulator and the map.

/// Pinhole stereo camera. The image x axis spans the horizontal field of view.
struct CameraModel {
  double fov_x_deg = 110.0;
  int image_width = 640;
  int image_height = 480;
  /// Injected disparity noise, three-sigma, in pixels.
  double disparity_noise_3sigma = 0.25;
  /// Image overlap between the two stereo views; baseline is the complement
  /// fraction of the nadir ground footprint width.
  double overlap_fraction = 0.8;

  void validate() const;

  double focal_px() const;
  double tan_half_fov_x() const;
  double tan_half_fov_y() const;
  double disparity_sigma() const { return disparity_noise_3sigma / 3.0; }
  /// Stereo baseline for a camera `agl` meters above ground.
  double baseline(double agl) const;
};

/// Camera pose: position and camera-to-world rotation. Camera axes follow the
/// usual x right, y down, z along the optical axis convention.
struct Pose {
  double timestamp = 0.0;
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();
};

/// Camera-to-world rotation for a camera looking down and tilted forward by
/// `pitch_deg` toward the heading direction. The image x axis points along the
/// heading.
Quat camera_orientation(double heading_rad, double pitch_deg);

}  // namespace landmap

#endif  // LANDMAP_COMMON_HPP
