#include "landmap/sim/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace landmap::sim {

const char* to_string(TerrainClass c) {
  switch (c) {
    case TerrainClass::kFlat: return "FLAT";
    case TerrainClass::kRock: return "ROCK";
    case TerrainClass::kCliff: return "CLIFF";
  }
  return "?";
}

TerrainModel TerrainModel::generate(const TerrainParams& params) {
  if (!(params.extent_x > 0.0 && params.extent_y > 0.0)) throw ConfigError("terrain extent must be positive");
  if (!(params.rock_coverage >= 0.0 && params.rock_coverage < 0.5))
    throw ConfigError("rock coverage must be in [0, 0.5)");
  if (params.rock_diameter < 0.0) throw ConfigError("rock diameter must be non-negative");
  if (params.cliff && params.cliff->drop < 0.0) throw ConfigError("cliff drop must be non-negative");

  TerrainModel t;
  t.params_ = params;
  const double slope = std::tan(deg2rad(params.slope_deg));
  const double az = deg2rad(params.slope_azimuth_deg);
  t.gradient_ = Vec2(slope * std::cos(az), slope * std::sin(az));
  t.fractal_ = FractalField(split_seed(params.seed, "fractal"), params.extent_x, params.extent_y,
                            params.fractal_amplitude, params.fractal_spacing, params.fractal_roughness);
  t.place_rocks();
  t.index_rocks();
  return t;
}

void TerrainModel::place_rocks() {
  rocks_.clear();
  if (params_.rock_diameter <= 0.0 || params_.rock_coverage <= 0.0) return;

  std::mt19937_64 rng(split_seed(params_.seed, "rocks"));
  const double area = params_.extent_x * params_.extent_y;
  const double target = params_.rock_coverage * area;
  const double d_min = params_.rock_diameter;
  const double d_max = std::max(params_.rock_diameter_max, d_min);

  std::vector<double> radii;
  if (d_max == d_min) {
    const double r = d_min / 2.0;
    const auto n = static_cast<std::size_t>(std::llround(target / (kPi * r * r)));
    radii.assign(n, r);
  } else {
    double total = 0.0;
    while (true) {
      const double r = (d_min + (d_max - d_min) * unit_double(rng())) / 2.0;
      const double next = total + kPi * r * r;
      // stop on whichever side of the target is closer
      if (next >= target) {
        if (next - target < target - total) radii.push_back(r);
        break;
      }
      radii.push_back(r);
      total = next;
    }
  }
  std::sort(radii.begin(), radii.end(), std::greater<>());
  if (radii.empty()) return;
  max_rock_radius_ = radii.front();
  if (2.0 * max_rock_radius_ >= std::min(params_.extent_x, params_.extent_y))
    throw PlacementError("rocks do not fit inside the terrain extent", 0.0);

  // Occupancy grid with cells of one max diameter: overlapping rocks are
  // always in the 3x3 neighbourhood.
  const double cell = 2.0 * max_rock_radius_;
  const int gx = static_cast<int>(std::ceil(params_.extent_x / cell)) + 1;
  const int gy = static_cast<int>(std::ceil(params_.extent_y / cell)) + 1;
  std::vector<std::vector<std::uint32_t>> grid(static_cast<std::size_t>(gx) * gy);

  const std::size_t budget = 10 * radii.size();
  std::size_t attempts = 0;
  double placed_area = 0.0;
  for (const double r : radii) {
    bool placed = false;
    while (!placed) {
      if (attempts++ >= budget) {
        const double achieved = placed_area / area;
        std::ostringstream msg;
        msg << "rock placement infeasible: achieved coverage " << achieved << " of requested "
            << params_.rock_coverage << " after " << budget << " attempts";
        throw PlacementError(msg.str(), achieved);
      }
      const double x = r + (params_.extent_x - 2.0 * r) * unit_double(rng());
      const double y = r + (params_.extent_y - 2.0 * r) * unit_double(rng());
      const int ci = static_cast<int>(x / cell);
      const int cj = static_cast<int>(y / cell);
      bool overlaps = false;
      for (int j = std::max(0, cj - 1); j <= std::min(gy - 1, cj + 1) && !overlaps; ++j) {
        for (int i = std::max(0, ci - 1); i <= std::min(gx - 1, ci + 1) && !overlaps; ++i) {
          for (const auto k : grid[static_cast<std::size_t>(j) * gx + i]) {
            const Rock& o = rocks_[k];
            const double dx = o.x - x;
            const double dy = o.y - y;
            if (dx * dx + dy * dy < (o.radius + r) * (o.radius + r)) {
              overlaps = true;
              break;
            }
          }
        }
      }
      if (overlaps) continue;
      grid[static_cast<std::size_t>(cj) * gx + ci].push_back(static_cast<std::uint32_t>(rocks_.size()));
      rocks_.push_back({x, y, r});
      placed_area += kPi * r * r;
      placed = true;
    }
  }
}

void TerrainModel::index_rocks() {
  bucket_size_ = rocks_.empty() ? std::max(params_.extent_x, params_.extent_y)
                                : std::max(2.0 * max_rock_radius_, 0.05);
  buckets_x_ = static_cast<int>(std::ceil(params_.extent_x / bucket_size_)) + 1;
  buckets_y_ = static_cast<int>(std::ceil(params_.extent_y / bucket_size_)) + 1;
  const std::size_t nb = static_cast<std::size_t>(buckets_x_) * buckets_y_;

  auto range = [this](const Rock& r, int& i0, int& i1, int& j0, int& j1) {
    i0 = std::max(0, static_cast<int>(std::floor((r.x - r.radius) / bucket_size_)));
    i1 = std::min(buckets_x_ - 1, static_cast<int>(std::floor((r.x + r.radius) / bucket_size_)));
    j0 = std::max(0, static_cast<int>(std::floor((r.y - r.radius) / bucket_size_)));
    j1 = std::min(buckets_y_ - 1, static_cast<int>(std::floor((r.y + r.radius) / bucket_size_)));
  };

  std::vector<std::uint32_t> counts(nb + 1, 0);
  for (const Rock& r : rocks_) {
    int i0, i1, j0, j1;
    range(r, i0, i1, j0, j1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) ++counts[static_cast<std::size_t>(j) * buckets_x_ + i + 1];
  }
  for (std::size_t b = 1; b <= nb; ++b) counts[b] += counts[b - 1];
  bucket_start_ = counts;
  bucket_items_.assign(counts.back(), 0);
  std::vector<std::uint32_t> fill(counts.begin(), counts.end() - 1);
  for (std::uint32_t k = 0; k < rocks_.size(); ++k) {
    int i0, i1, j0, j1;
    range(rocks_[k], i0, i1, j0, j1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) bucket_items_[fill[static_cast<std::size_t>(j) * buckets_x_ + i]++] = k;
  }
}

std::span<const std::uint32_t> TerrainModel::bucket(double x, double y) const noexcept {
  if (bucket_items_.empty()) return {};
  const int i = std::clamp(static_cast<int>(std::floor(x / bucket_size_)), 0, buckets_x_ - 1);
  const int j = std::clamp(static_cast<int>(std::floor(y / bucket_size_)), 0, buckets_y_ - 1);
  const std::size_t b = static_cast<std::size_t>(j) * buckets_x_ + i;
  return {bucket_items_.data() + bucket_start_[b], bucket_start_[b + 1] - bucket_start_[b]};
}

bool TerrainModel::contains(double x, double y) const noexcept {
  return x >= 0.0 && y >= 0.0 && x <= params_.extent_x && y <= params_.extent_y;
}

double TerrainModel::plane_height(double x, double y) const noexcept {
  return gradient_.x() * x + gradient_.y() * y;
}

double TerrainModel::ground_height(double x, double y) const noexcept {
  double h = plane_height(x, y) + fractal_(x, y);
  if (params_.cliff && x > params_.cliff->edge_x) h -= params_.cliff->drop;
  return h;
}

const Rock* TerrainModel::rock_at(double x, double y) const noexcept {
  for (const auto k : bucket(x, y)) {
    const Rock& r = rocks_[k];
    const double dx = x - r.x;
    const double dy = y - r.y;
    if (dx * dx + dy * dy < r.radius * r.radius) return &r;
  }
  return nullptr;
}

double TerrainModel::height(double x, double y) const noexcept {
  double h = ground_height(x, y);
  // Rocks never overlap, so at most one cap applies.
  if (const Rock* r = rock_at(x, y)) {
    const double dx = x - r->x;
    const double dy = y - r->y;
    h += std::sqrt(r->radius * r->radius - dx * dx - dy * dy);
  }
  return h;
}

double TerrainModel::sample_height(double x, double y) const {
  if (!contains(x, y)) {
    std::ostringstream msg;
    msg << "height query (" << x << ", " << y << ") outside terrain extent";
    throw DomainError(msg.str());
  }
  return height(x, y);
}

double TerrainModel::min_relief() const noexcept {
  return -fractal_.amplitude() - (params_.cliff ? params_.cliff->drop : 0.0);
}

double TerrainModel::max_relief() const noexcept { return fractal_.amplitude() + max_rock_radius_; }

TerrainClass TerrainModel::classify_point(double x, double y) const {
  if (!contains(x, y)) throw DomainError("classification query outside terrain extent");
  if (params_.cliff && std::abs(x - params_.cliff->edge_x) <= params_.cliff_band) return TerrainClass::kCliff;
  if (rock_at(x, y)) return TerrainClass::kRock;
  return TerrainClass::kFlat;
}

double TerrainModel::rock_coverage() const noexcept {
  double a = 0.0;
  for (const Rock& r : rocks_) a += kPi * r.radius * r.radius;
  return a / (params_.extent_x * params_.extent_y);
}

}  // namespace landmap::sim
