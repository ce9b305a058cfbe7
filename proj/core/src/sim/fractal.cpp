#include <algorithm>
#include <cmath>
#include <random>

#include "landmap/sim/terrain.hpp"

namespace landmap::sim {
namespace {

// Integration weights of a piecewise-linear function on nodes 0..n spaced h
// apart, over [0, extent]. Nodes beyond the extent get zero weight.
std::vector<double> trapezoid_weights(int nodes, double h, double extent) {
  std::vector<double> w(static_cast<std::size_t>(nodes), 0.0);
  for (int i = 0; i + 1 < nodes; ++i) {
    const double a = i * h;
    if (a >= extent) break;
    const double len = std::min(h, extent - a);
    // integral over [0, len] of f_i (1 - s/h) + f_{i+1} s/h
    w[i] += len - len * len / (2.0 * h);
    w[i + 1] += len * len / (2.0 * h);
  }
  return w;
}

}  // namespace

FractalField::FractalField(std::uint64_t seed, double extent_x, double extent_y,
                           double amplitude, double lattice_spacing, double roughness)
    : spacing_(lattice_spacing), amplitude_(amplitude) {
  if (amplitude <= 0.0) return;
  if (!(lattice_spacing > 0.0)) throw ConfigError("fractal lattice spacing must be positive");

  const double extent = std::max(extent_x, extent_y);
  int levels = 1;
  while ((1 << levels) * lattice_spacing < extent) ++levels;
  const int n = 1 << levels;
  size_ = n + 1;
  nodes_.assign(static_cast<std::size_t>(size_) * size_, 0.0);

  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return 2.0 * unit_double(rng()) - 1.0; };
  auto at = [this](int i, int j) -> double& { return nodes_[static_cast<std::size_t>(j) * size_ + i]; };

  at(0, 0) = uniform();
  at(n, 0) = uniform();
  at(0, n) = uniform();
  at(n, n) = uniform();

  const double decay = std::pow(2.0, -roughness);
  double scale = 1.0;
  for (int step = n; step > 1; step /= 2) {
    const int half = step / 2;
    // diamond step
    for (int j = half; j < n; j += step) {
      for (int i = half; i < n; i += step) {
        const double avg = 0.25 * (at(i - half, j - half) + at(i + half, j - half) +
                                   at(i - half, j + half) + at(i + half, j + half));
        at(i, j) = avg + scale * uniform();
      }
    }
    // square step
    for (int j = 0; j <= n; j += half) {
      for (int i = (j / half) % 2 == 0 ? half : 0; i <= n; i += step) {
        double sum = 0.0;
        int count = 0;
        if (i - half >= 0) { sum += at(i - half, j); ++count; }
        if (i + half <= n) { sum += at(i + half, j); ++count; }
        if (j - half >= 0) { sum += at(i, j - half); ++count; }
        if (j + half <= n) { sum += at(i, j + half); ++count; }
        at(i, j) = sum / count + scale * uniform();
      }
    }
    scale *= decay;
  }

  // Zero mean of the bilinear surface over the extent, then peak scaling.
  const auto wx = trapezoid_weights(size_, spacing_, extent_x);
  const auto wy = trapezoid_weights(size_, spacing_, extent_y);
  double integral = 0.0;
  for (int j = 0; j < size_; ++j) {
    if (wy[j] == 0.0) continue;
    for (int i = 0; i < size_; ++i) integral += wx[i] * wy[j] * at(i, j);
  }
  const double mean = integral / (extent_x * extent_y);
  const int last_i = std::min(n, static_cast<int>(std::ceil(extent_x / spacing_)));
  const int last_j = std::min(n, static_cast<int>(std::ceil(extent_y / spacing_)));
  double peak = 0.0;
  for (auto& v : nodes_) v -= mean;
  for (int j = 0; j <= last_j; ++j) {
    for (int i = 0; i <= last_i; ++i) peak = std::max(peak, std::abs(at(i, j)));
  }
  const double gain = peak > 0.0 ? amplitude / peak : 0.0;
  for (auto& v : nodes_) v *= gain;
}

double FractalField::operator()(double x, double y) const noexcept {
  if (nodes_.empty()) return 0.0;
  const double gx = std::clamp(x / spacing_, 0.0, static_cast<double>(size_ - 1));
  const double gy = std::clamp(y / spacing_, 0.0, static_cast<double>(size_ - 1));
  const int i = std::min(static_cast<int>(gx), size_ - 2);
  const int j = std::min(static_cast<int>(gy), size_ - 2);
  const double fx = gx - i;
  const double fy = gy - j;
  const double* row0 = &nodes_[static_cast<std::size_t>(j) * size_ + i];
  const double* row1 = row0 + size_;
  const double top = row0[0] + fx * (row0[1] - row0[0]);
  const double bottom = row1[0] + fx * (row1[1] - row1[0]);
  return top + fy * (bottom - top);
}

}  // namespace landmap::sim
