#ifndef LANDMAP_TESTS_GENERATORS_HPP
#define LANDMAP_TESTS_GENERATORS_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "landmap/map/pyramid_map.hpp"

namespace landmap::testing {

/// Seeded source of random test inputs.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  /// Inclusive range.
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  double normal(double mean, double sd) { return std::normal_distribution<double>(mean, sd)(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

std::vector<std::uint8_t> random_feature_grid(Gen& g, int rows, int cols, double density);

/// Map config with depth 1..max_depth and an extent that fits the depth.
map::MapConfig random_map_config(Gen& g, int max_depth, int min_cells, int max_cells);

/// Synthetic elevation scene written through PyramidMap::observe: tilted
/// plane, a few half-sphere bumps, small noise, holes, uneven observation
/// counts and occasional coarse-only measurements.
map::PyramidMap random_scene_map(Gen& g, const map::MapConfig& config);

/// Map whose reconstruction through every layer l equals `height` at the
/// layer-l cell centers: layer 1 holds the height, finer layers the exact
/// differences to the parent cell center. Every cell gets `observations`
/// observations with variance `variance`.
map::PyramidMap exact_surface_map(const map::MapConfig& config, const std::function<double(double, double)>& height,
                                  std::uint32_t observations = 3, float variance = 1e-4f);

}  // namespace landmap::testing

#endif  // LANDMAP_TESTS_GENERATORS_HPP
