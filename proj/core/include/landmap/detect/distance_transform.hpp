#ifndef LANDMAP_DETECT_DISTANCE_TRANSFORM_HPP
#define LANDMAP_DETECT_DISTANCE_TRANSFORM_HPP

#include <cstdint>
#include <vector>

namespace landmap::detect {

/// Exact Euclidean distance, in cells, from every cell of a row-major grid to
/// the nearest cell with `feature[i] != 0` (two separable passes of the lower
/// envelope of parabolas). Feature cells get 0; a grid without features gets
/// +infinity everywhere.
std::vector<double> euclidean_distance(const std::vector<std::uint8_t>& feature, int rows, int cols);

/// Squared variant; exact integers stored as double.
std::vector<double> squared_euclidean_distance(const std::vector<std::uint8_t>& feature, int rows, int cols);

}  // namespace landmap::detect

#endif  // LANDMAP_DETECT_DISTANCE_TRANSFORM_HPP
