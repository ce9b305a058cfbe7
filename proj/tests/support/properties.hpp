#ifndef LANDMAP_TESTS_PROPERTIES_HPP
#define LANDMAP_TESTS_PROPERTIES_HPP

#include <cstdint>
#include <string>

namespace landmap::testing {

struct PropertyResult {
  bool ok = true;
  std::string detail;  // first counterexample, or a short summary
  int cases = 0;
};

// Each property draws its inputs from Gen(seed) and stops at the first
// counterexample.
PropertyResult kalman_batch_equivalence(std::uint64_t seed, int trials = 500, double rel_tol = 1e-9);
PropertyResult pyramid_reconstruction_identity(std::uint64_t seed, int trials = 40, double tol = 1e-6);
PropertyResult cell_index_brute_force(int max_depth = 5, int index_bound = 1 << 12);
PropertyResult rolling_buffer_round_trip(std::uint64_t seed, int trials = 40);
PropertyResult distance_transform_brute_force(std::uint64_t seed, int grids = 200, int size = 64);
PropertyResult pruning_soundness(std::uint64_t seed, int scenes = 50);
PropertyResult margin_threshold_monotonicity(std::uint64_t seed, int scenes = 20);
PropertyResult memory_overhead(double bound = 4.0 / 3.0 * 1.01);

}  // namespace landmap::testing

#endif  // LANDMAP_TESTS_PROPERTIES_HPP
