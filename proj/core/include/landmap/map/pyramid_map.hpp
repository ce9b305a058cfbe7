#ifndef LANDMAP_MAP_PYRAMID_MAP_HPP
#define LANDMAP_MAP_PYRAMID_MAP_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "landmap/common.hpp"
#include "landmap/map/lod.hpp"
#include "landmap/sim/range_image.hpp"

namespace landmap::map {

/// Snapshot of one cell. `value` is the absolute height on layer 1 and a
/// residual on finer layers. A cell with zero observations is NO_DATA and its
/// other fields are meaningless.
struct CellState {
  double value = 0.0;
  float variance = 0.0f;
  std::uint32_t observation_count = 0;
  float last_update = 0.0f;

  bool observed() const noexcept { return observation_count > 0; }
};

/// Finest-layer cell coordinates relative to the map origin.
struct CellCoord {
  int row = 0;  // along y
  int col = 0;  // along x
};

/// Map translation in finest cells.
struct Shift {
  int rows = 0;
  int cols = 0;
  bool zero() const noexcept { return rows == 0 && cols == 0; }
  friend bool operator==(const Shift&, const Shift&) = default;
};

struct Reconstruction {
  double height = 0.0;
  /// Deepest layer that contributed (residual layers without data add 0).
  int resolved_level = 1;
};

struct FusionStats {
  /// Per layer (index 0 = layer 1): measurements fused into that layer.
  std::vector<std::size_t> point_updates;
  /// Per layer: distinct cells touched by this image.
  std::vector<std::size_t> cells_updated;
  std::size_t rejected_invalid = 0;
  std::size_t rejected_footprint = 0;
  std::size_t rejected_out_of_map = 0;
  std::size_t rejected_variance = 0;
  Shift shift;

  std::size_t total_cells_updated() const;
  std::size_t total_point_updates() const;
  std::size_t rejected() const {
    return rejected_invalid + rejected_footprint + rejected_out_of_map + rejected_variance;
  }
};

/// Robot-centric Laplacian-pyramid elevation map on rolling buffers.
///
/// Each layer is a square grid stored structure-of-arrays with a per-layer
/// roll offset; moving the map is index arithmetic plus resetting the cells
/// that enter the extent. Shifts are whole coarse cells so every layer moves
/// by an integral number of its own cells.
///
/// Single writer: fuse/recenter/shift need exclusive access; const members
/// are safe to call concurrently between writes.
class PyramidMap {
 public:
  explicit PyramidMap(const MapConfig& config, const Vec2& origin = Vec2::Zero());
  /// Map whose extent is centered on `center`.
  static PyramidMap centered_at(const MapConfig& config, const Vec2& center);

  const MapConfig& config() const noexcept { return config_; }
  int depth() const noexcept { return config_.depth; }
  /// World coordinates of the map corner (minimum x, minimum y).
  const Vec2& origin() const noexcept { return origin_; }
  /// Accumulated roll of the finest layer, cells (row, col), modulo extent.
  std::array<int, 2> roll_offset() const noexcept { return {roll_row_, roll_col_}; }
  void set_roll_offset(int rows, int cols);

  bool contains(double x, double y) const noexcept;
  std::optional<CellCoord> locate(double x, double y) const noexcept;
  Vec2 cell_center(int layer, int row, int col) const noexcept;

  CellState cell(int layer, int row, int col) const;
  void set_cell(int layer, int row, int col, const CellState& state);

  /// h_level = h_1 + sum of observed residuals up to `level` at a finest cell.
  /// Empty when layer 1 is unobserved.
  std::optional<Reconstruction> reconstruct(int row, int col, int level) const;
  /// Variance and observation count of the deepest observed layer <= level.
  std::optional<CellState> deepest_observed(int row, int col, int level) const;

  /// World-coordinate variants; throw DomainError outside the extent.
  std::optional<double> reconstruct_height(double x, double y, int level) const;
  std::optional<double> reconstruct_variance(double x, double y, int level) const;

  /// Fuses one measurement into layers 1..target_layer, coarse to fine.
  void observe(int row, int col, double z, double variance, int target_layer, float timestamp);

  /// Fuses every valid point of a range image in pixel scan order. Points
  /// outside the current extent are rejected, not buffered.
  FusionStats fuse(const RangeImage& image, const Pose& pose, const CameraModel& camera);

  /// Moves the map under the UAV when the coverage rectangle (half extents
  /// plus one coarse cell of margin) leaves the current bounds. Returns the
  /// applied shift, zero when the coverage is inside.
  Shift recenter(const Vec2& uav_xy, const Vec2& coverage_half_extent);
  /// Translates the map by a multiple of the coarsest cell. Cells leaving the
  /// extent are dropped and the entering cells start as NO_DATA.
  Shift shift(int rows, int cols);

  std::size_t allocated_cells() const noexcept;
  /// Bytes of per-cell payload over all layers.
  std::size_t payload_bytes() const noexcept;
  static constexpr std::size_t kBytesPerCell = sizeof(double) + sizeof(float) + sizeof(std::uint32_t) + sizeof(float);

  /// Bit-exact equality of configuration, placement and every cell.
  friend bool operator==(const PyramidMap& a, const PyramidMap& b);

 private:
  struct Layer {
    int size = 0;
    int offset_row = 0;
    int offset_col = 0;
    std::vector<double> value;
    std::vector<float> variance;
    std::vector<std::uint32_t> count;
    std::vector<float> stamp;

    std::size_t index(int row, int col) const noexcept {
      int r = row + offset_row;
      int c = col + offset_col;
      if (r >= size) r -= size;
      if (c >= size) c -= size;
      return static_cast<std::size_t>(r) * size + c;
    }
    void reset(std::size_t i) noexcept {
      value[i] = 0.0;
      variance[i] = 0.0f;
      count[i] = 0;
      stamp[i] = 0.0f;
    }
  };

  Layer& layer(int l) { return layers_[static_cast<std::size_t>(l - 1)]; }
  const Layer& layer(int l) const { return layers_[static_cast<std::size_t>(l - 1)]; }
  void check_layer_cell(int l, int row, int col) const;
  void sync_layer_offsets();

  MapConfig config_;
  // origin_ = anchor_ + shifted cells * resolution, recomputed rather than
  // accumulated so shifts that cancel restore it exactly.
  Vec2 anchor_;
  long long shifted_rows_ = 0;
  long long shifted_cols_ = 0;
  Vec2 origin_;
  int roll_row_ = 0;
  int roll_col_ = 0;
  std::vector<Layer> layers_;
};

/// Nadir ground-coverage half extents along world x and y for a camera at
/// `agl` meters above ground, rotated by the camera heading.
Vec2 coverage_half_extent(const Pose& pose, const CameraModel& camera, double agl);

/// Recenters the map if needed, then fuses the image. AGL for the coverage
/// test is taken from the median elevation of the image's valid points.
FusionStats integrate_frame(PyramidMap& map, const RangeImage& image, const Pose& pose,
                            const CameraModel& camera);

/// Free-function form of PyramidMap::fuse.
inline FusionStats fuse_range_image(PyramidMap& map, const RangeImage& image, const Pose& pose,
                                    const CameraModel& camera) {
  return map.fuse(image, pose, camera);
}

}  // namespace landmap::map

#endif  // LANDMAP_MAP_PYRAMID_MAP_HPP
