#include "landmap/detect/distance_transform.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace landmap::detect {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1D squared distance transform of a sampled function f over n samples.
void transform_1d(const double* f, double* d, int n, std::vector<int>& v, std::vector<double>& z) {
  int k = 0;
  int first = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] < kInf) {
      first = q;
      break;
    }
  }
  if (first < 0) {
    for (int q = 0; q < n; ++q) d[q] = kInf;
    return;
  }
  v[0] = first;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = first + 1; q < n; ++q) {
    if (f[q] == kInf) continue;
    double s = 0.0;
    while (true) {
      const int p = v[k];
      s = ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) / (2.0 * (q - p));
      if (s <= z[k] && k > 0) {
        --k;
        continue;
      }
      break;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double diff = q - v[k];
    d[q] = diff * diff + f[v[k]];
  }
}

}  // namespace

std::vector<double> squared_euclidean_distance(const std::vector<std::uint8_t>& feature, int rows, int cols) {
  if (rows < 0 || cols < 0 || feature.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("feature grid size does not match dimensions");
  std::vector<double> grid(feature.size());
  for (std::size_t i = 0; i < feature.size(); ++i) grid[i] = feature[i] ? 0.0 : kInf;

  const int n = std::max(rows, cols);
  std::vector<double> f(static_cast<std::size_t>(n));
  std::vector<double> d(static_cast<std::size_t>(n));
  std::vector<int> v(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(n) + 1);

  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) f[r] = grid[static_cast<std::size_t>(r) * cols + c];
    transform_1d(f.data(), d.data(), rows, v, z);
    for (int r = 0; r < rows; ++r) grid[static_cast<std::size_t>(r) * cols + c] = d[r];
  }
  for (int r = 0; r < rows; ++r) {
    double* row = grid.data() + static_cast<std::size_t>(r) * cols;
    for (int c = 0; c < cols; ++c) f[c] = row[c];
    transform_1d(f.data(), row, cols, v, z);
  }
  return grid;
}

std::vector<double> euclidean_distance(const std::vector<std::uint8_t>& feature, int rows, int cols) {
  auto g = squared_euclidean_distance(feature, rows, cols);
  for (auto& x : g) x = std::sqrt(x);
  return g;
}

}  // namespace landmap::detect
