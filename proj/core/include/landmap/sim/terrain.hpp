#ifndef LANDMAP_SIM_TERRAIN_HPP
#define LANDMAP_SIM_TERRAIN_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "landmap/common.hpp"

namespace landmap::sim {

/// Seeded diamond-square fractal surface, bilinearly interpolated on a square
/// lattice. Zero mean over the requested extent; peak |height| equals the
/// configured amplitude over the lattice nodes inside the extent.
class FractalField {
 public:
  FractalField() = default;
  FractalField(std::uint64_t seed, double extent_x, double extent_y, double amplitude,
               double lattice_spacing, double roughness);

  double operator()(double x, double y) const noexcept;
  double amplitude() const noexcept { return amplitude_; }
  bool empty() const noexcept { return nodes_.empty(); }

 private:
  int size_ = 0;  // nodes per side
  double spacing_ = 1.0;
  double amplitude_ = 0.0;
  std::vector<double> nodes_;
};

struct Rock {
  double x = 0.0;
  double y = 0.0;
  double radius = 0.0;
};

/// Step down of `drop` meters for every x past `edge_x`.
struct Cliff {
  double edge_x = 0.0;
  double drop = 5.0;
};

enum class TerrainClass : std::uint8_t { kFlat, kRock, kCliff };

const char* to_string(TerrainClass c);

struct TerrainParams {
  std::uint64_t seed = 1;
  double extent_x = 20.0;
  double extent_y = 20.0;
  double slope_deg = 0.0;
  /// Direction of steepest ascent, measured from +x toward +y.
  double slope_azimuth_deg = 0.0;
  double fractal_amplitude = 0.05;
  double fractal_spacing = 0.1;
  /// Hurst-like exponent: displacement scale shrinks by 2^-roughness per octave.
  double fractal_roughness = 0.8;
  /// Rock diameter in meters; zero disables rocks.
  double rock_diameter = 0.0;
  /// When larger than rock_diameter, diameters are drawn uniformly from
  /// [rock_diameter, rock_diameter_max].
  double rock_diameter_max = 0.0;
  double rock_coverage = 0.0;
  std::optional<Cliff> cliff;
  /// Half-width of the band around the cliff edge classified as CLIFF.
  double cliff_band = 0.6;
};

/// Analytic ground truth: inclined plane + fractal roughness + half-sphere
/// rocks + optional cliff step. Immutable after generation.
class TerrainModel {
 public:
  static TerrainModel generate(const TerrainParams& params);

  const TerrainParams& params() const noexcept { return params_; }
  std::span<const Rock> rocks() const noexcept { return rocks_; }

  bool contains(double x, double y) const noexcept;

  /// Surface height; throws DomainError outside the extent.
  double sample_height(double x, double y) const;
  /// Surface height without the extent check.
  double height(double x, double y) const noexcept;
  /// Plane + fractal + cliff, i.e. the surface with rocks removed.
  double ground_height(double x, double y) const noexcept;
  double plane_height(double x, double y) const noexcept;
  /// Gradient of the inclined plane (dz/dx, dz/dy).
  Vec2 plane_gradient() const noexcept { return gradient_; }

  /// Bounds of height(x, y) - plane_height(x, y) over the whole extent.
  double min_relief() const noexcept;
  double max_relief() const noexcept;

  TerrainClass classify_point(double x, double y) const;

  /// Rock whose disc contains (x, y), if any.
  const Rock* rock_at(double x, double y) const noexcept;

  double rock_coverage() const noexcept;

 private:
  TerrainModel() = default;
  void place_rocks();
  void index_rocks();
  std::span<const std::uint32_t> bucket(double x, double y) const noexcept;

  TerrainParams params_;
  Vec2 gradient_ = Vec2::Zero();
  FractalField fractal_;
  std::vector<Rock> rocks_;
  double max_rock_radius_ = 0.0;

  // Uniform bucket grid over the extent; each rock is listed in every bucket
  // its bounding box touches.
  double bucket_size_ = 1.0;
  int buckets_x_ = 0;
  int buckets_y_ = 0;
  std::vector<std::uint32_t> bucket_start_;
  std::vector<std::uint32_t> bucket_items_;
};

}  // namespace landmap::sim

#endif  // LANDMAP_SIM_TERRAIN_HPP
