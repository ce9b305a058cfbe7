#include "landmap/map/pyramid_map.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

namespace landmap::map {
namespace {

int positive_mod(int a, int n) {
  const int m = a % n;
  return m < 0 ? m + n : m;
}

template <typename T>
bool same_bits(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

}  // namespace

std::size_t FusionStats::total_cells_updated() const {
  std::size_t n = 0;
  for (const auto c : cells_updated) n += c;
  return n;
}

std::size_t FusionStats::total_point_updates() const {
  std::size_t n = 0;
  for (const auto c : point_updates) n += c;
  return n;
}

PyramidMap::PyramidMap(const MapConfig& config, const Vec2& origin)
    : config_(config), anchor_(origin), origin_(origin) {
  config_.validate();
  layers_.resize(static_cast<std::size_t>(config_.depth));
  for (int l = 1; l <= config_.depth; ++l) {
    Layer& ly = layer(l);
    ly.size = config_.cells(l);
    const auto n = static_cast<std::size_t>(ly.size) * ly.size;
    ly.value.assign(n, 0.0);
    ly.variance.assign(n, 0.0f);
    ly.count.assign(n, 0);
    ly.stamp.assign(n, 0.0f);
  }
}

PyramidMap PyramidMap::centered_at(const MapConfig& config, const Vec2& center) {
  const double half = config.extent_meters() / 2.0;
  return PyramidMap(config, center - Vec2(half, half));
}

void PyramidMap::set_roll_offset(int rows, int cols) {
  const int s = config_.scale(1);
  if (rows % s != 0 || cols % s != 0)
    throw DomainError("roll offset must be a multiple of the coarsest cell");
  roll_row_ = positive_mod(rows, config_.extent_cells);
  roll_col_ = positive_mod(cols, config_.extent_cells);
  sync_layer_offsets();
}

void PyramidMap::sync_layer_offsets() {
  for (int l = 1; l <= config_.depth; ++l) {
    Layer& ly = layer(l);
    ly.offset_row = roll_row_ / config_.scale(l);
    ly.offset_col = roll_col_ / config_.scale(l);
  }
}

bool PyramidMap::contains(double x, double y) const noexcept { return locate(x, y).has_value(); }

std::optional<CellCoord> PyramidMap::locate(double x, double y) const noexcept {
  const double fx = std::floor((x - origin_.x()) / config_.finest_resolution);
  const double fy = std::floor((y - origin_.y()) / config_.finest_resolution);
  if (!(fx >= 0.0 && fy >= 0.0 && fx < config_.extent_cells && fy < config_.extent_cells)) return std::nullopt;
  return CellCoord{static_cast<int>(fy), static_cast<int>(fx)};
}

Vec2 PyramidMap::cell_center(int l, int row, int col) const noexcept {
  const double res = config_.resolution(l);
  return origin_ + Vec2((col + 0.5) * res, (row + 0.5) * res);
}

void PyramidMap::check_layer_cell(int l, int row, int col) const {
  if (l < 1 || l > config_.depth) throw DomainError("layer out of range");
  const int n = config_.cells(l);
  if (row < 0 || col < 0 || row >= n || col >= n) throw DomainError("cell index outside layer");
}

CellState PyramidMap::cell(int l, int row, int col) const {
  check_layer_cell(l, row, col);
  const Layer& ly = layer(l);
  const std::size_t i = ly.index(row, col);
  return {ly.value[i], ly.variance[i], ly.count[i], ly.stamp[i]};
}

void PyramidMap::set_cell(int l, int row, int col, const CellState& state) {
  check_layer_cell(l, row, col);
  Layer& ly = layer(l);
  const std::size_t i = ly.index(row, col);
  if (!state.observed()) {
    ly.reset(i);
    return;
  }
  ly.value[i] = state.value;
  ly.variance[i] = state.variance;
  ly.count[i] = state.observation_count;
  ly.stamp[i] = state.last_update;
}

std::optional<Reconstruction> PyramidMap::reconstruct(int row, int col, int level) const {
  check_layer_cell(config_.depth, row, col);
  if (level < 1 || level > config_.depth) throw DomainError("level out of range");
  const int d = config_.depth;
  const Layer& base = layer(1);
  const std::size_t i1 = base.index(row >> (d - 1), col >> (d - 1));
  if (base.count[i1] == 0) return std::nullopt;
  Reconstruction rec{base.value[i1], 1};
  for (int l = 2; l <= level; ++l) {
    const Layer& ly = layer(l);
    const std::size_t i = ly.index(row >> (d - l), col >> (d - l));
    if (ly.count[i] == 0) continue;
    rec.height += ly.value[i];
    rec.resolved_level = l;
  }
  return rec;
}

std::optional<CellState> PyramidMap::deepest_observed(int row, int col, int level) const {
  check_layer_cell(config_.depth, row, col);
  if (level < 1 || level > config_.depth) throw DomainError("level out of range");
  const int d = config_.depth;
  for (int l = level; l >= 1; --l) {
    const Layer& ly = layer(l);
    const std::size_t i = ly.index(row >> (d - l), col >> (d - l));
    if (ly.count[i] > 0) return CellState{ly.value[i], ly.variance[i], ly.count[i], ly.stamp[i]};
  }
  return std::nullopt;
}

std::optional<double> PyramidMap::reconstruct_height(double x, double y, int level) const {
  const auto c = locate(x, y);
  if (!c) throw DomainError("height query outside map extent");
  const auto rec = reconstruct(c->row, c->col, level);
  if (!rec) return std::nullopt;
  return rec->height;
}

std::optional<double> PyramidMap::reconstruct_variance(double x, double y, int level) const {
  const auto c = locate(x, y);
  if (!c) throw DomainError("variance query outside map extent");
  const auto s = deepest_observed(c->row, c->col, level);
  if (!s) return std::nullopt;
  return static_cast<double>(s->variance);
}

void PyramidMap::observe(int row, int col, double z, double variance, int target_layer, float timestamp) {
  const int d = config_.depth;
  double h = 0.0;  // reconstruction through the layers updated so far
  for (int l = 1; l <= target_layer; ++l) {
    Layer& ly = layer(l);
    const std::size_t i = ly.index(row >> (d - l), col >> (d - l));
    const double meas = l == 1 ? z : z - h;
    if (ly.count[i] == 0) {
      ly.value[i] = meas;
      ly.variance[i] = static_cast<float>(variance);
    } else {
      const Estimate e = kalman_update({ly.value[i], ly.variance[i]}, {meas, variance});
      ly.value[i] = e.value;
      ly.variance[i] = static_cast<float>(e.variance);
    }
    ++ly.count[i];
    ly.stamp[i] = timestamp;
    h += ly.value[i];
  }
}

Shift PyramidMap::recenter(const Vec2& uav_xy, const Vec2& coverage_half_extent) {
  const double margin = config_.resolution(1);
  const double extent = config_.extent_meters();
  const Vec2 lo = uav_xy - coverage_half_extent - Vec2::Constant(margin);
  const Vec2 hi = uav_xy + coverage_half_extent + Vec2::Constant(margin);
  if (lo.x() >= origin_.x() && lo.y() >= origin_.y() && hi.x() <= origin_.x() + extent &&
      hi.y() <= origin_.y() + extent)
    return {};

  const Vec2 desired = uav_xy - Vec2::Constant(extent / 2.0);
  const double step = config_.resolution(1);
  const int s = config_.scale(1);
  const int cols = static_cast<int>(std::lround((desired.x() - origin_.x()) / step)) * s;
  const int rows = static_cast<int>(std::lround((desired.y() - origin_.y()) / step)) * s;
  return shift(rows, cols);
}

Shift PyramidMap::shift(int rows, int cols) {
  const int s = config_.scale(1);
  if (rows % s != 0 || cols % s != 0) throw DomainError("map shift must be a multiple of the coarsest cell");
  if (rows == 0 && cols == 0) return {};

  shifted_rows_ += rows;
  shifted_cols_ += cols;
  origin_ = anchor_ + Vec2(static_cast<double>(shifted_cols_) * config_.finest_resolution,
                           static_cast<double>(shifted_rows_) * config_.finest_resolution);
  const int n_fine = config_.extent_cells;
  roll_row_ = positive_mod(roll_row_ + positive_mod(rows, n_fine), n_fine);
  roll_col_ = positive_mod(roll_col_ + positive_mod(cols, n_fine), n_fine);

  for (int l = 1; l <= config_.depth; ++l) {
    Layer& ly = layer(l);
    const int n = ly.size;
    const int dr = rows / config_.scale(l);
    const int dc = cols / config_.scale(l);
    ly.offset_row = roll_row_ / config_.scale(l);
    ly.offset_col = roll_col_ / config_.scale(l);
    if (std::abs(dr) >= n || std::abs(dc) >= n) {
      for (std::size_t i = 0; i < ly.count.size(); ++i) ly.reset(i);
      continue;
    }
    // Reset the logical rows/columns that entered the extent.
    const int r0 = dr > 0 ? n - dr : 0;
    const int r1 = dr > 0 ? n : -dr;
    for (int r = r0; r < r1; ++r)
      for (int c = 0; c < n; ++c) ly.reset(ly.index(r, c));
    const int c0 = dc > 0 ? n - dc : 0;
    const int c1 = dc > 0 ? n : -dc;
    for (int r = 0; r < n; ++r)
      for (int c = c0; c < c1; ++c) ly.reset(ly.index(r, c));
  }
  return {rows, cols};
}

std::size_t PyramidMap::allocated_cells() const noexcept {
  std::size_t n = 0;
  for (const auto& ly : layers_) n += ly.count.size();
  return n;
}

std::size_t PyramidMap::payload_bytes() const noexcept {
  std::size_t bytes = 0;
  for (const auto& ly : layers_) {
    bytes += ly.value.size() * sizeof(double) + ly.variance.size() * sizeof(float) +
             ly.count.size() * sizeof(std::uint32_t) + ly.stamp.size() * sizeof(float);
  }
  return bytes;
}

bool operator==(const PyramidMap& a, const PyramidMap& b) {
  const auto& ca = a.config_;
  const auto& cb = b.config_;
  if (ca.depth != cb.depth || ca.finest_resolution != cb.finest_resolution || ca.extent_cells != cb.extent_cells)
    return false;
  if (a.origin_ != b.origin_) return false;
  // compare in logical order so equal maps with different roll offsets match
  for (int l = 1; l <= ca.depth; ++l) {
    const int n = ca.cells(l);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const CellState x = a.cell(l, r, c);
        const CellState y = b.cell(l, r, c);
        if (x.observation_count != y.observation_count) return false;
        if (!x.observed()) continue;
        if (std::memcmp(&x.value, &y.value, sizeof(double)) != 0 ||
            std::memcmp(&x.variance, &y.variance, sizeof(float)) != 0 ||
            std::memcmp(&x.last_update, &y.last_update, sizeof(float)) != 0)
          return false;
      }
    }
  }
  return true;
}

}  // namespace landmap::map
