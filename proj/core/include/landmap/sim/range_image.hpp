#ifndef LANDMAP_SIM_RANGE_IMAGE_HPP
#define LANDMAP_SIM_RANGE_IMAGE_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <vector>

#include "landmap/common.hpp"

namespace landmap {

/// One pixel of a range image: world-frame point and vertical variance.
/// Invalid pixels carry quiet NaN in every field.
struct RangePoint {
  float x = std::numeric_limits<float>::quiet_NaN();
  float y = std::numeric_limits<float>::quiet_NaN();
  float z = std::numeric_limits<float>::quiet_NaN();
  float variance = std::numeric_limits<float>::quiet_NaN();

  bool valid() const noexcept { return !std::isnan(z); }
};

class RangeImage {
 public:
  RangeImage() = default;
  RangeImage(int width, int height)
      : width_(width), height_(height), points_(static_cast<std::size_t>(width) * height) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return points_.size(); }

  RangePoint& at(int u, int v) { return points_[static_cast<std::size_t>(v) * width_ + u]; }
  const RangePoint& at(int u, int v) const { return points_[static_cast<std::size_t>(v) * width_ + u]; }

  /// Row-major pixel scan order.
  const std::vector<RangePoint>& points() const noexcept { return points_; }
  std::vector<RangePoint>& points() noexcept { return points_; }

  std::size_t valid_count() const noexcept;

  friend bool operator==(const RangeImage& a, const RangeImage& b);

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<RangePoint> points_;
};

// RIMG1 binary format, little-endian: magic "RIMG1", u32 width, u32 height,
// then width*height records of four f32 (x, y, z, variance).
void write_rimg(const RangeImage& image, std::ostream& out);
void write_rimg(const RangeImage& image, const std::filesystem::path& path);
RangeImage read_rimg(std::istream& in);
RangeImage read_rimg(const std::filesystem::path& path);

// Pose log: one "timestamp tx ty tz qx qy qz qw" line per frame.
void write_pose_line(std::ostream& out, const Pose& pose);
std::vector<Pose> read_pose_log(const std::filesystem::path& path);

}  // namespace landmap

#endif  // LANDMAP_SIM_RANGE_IMAGE_HPP
