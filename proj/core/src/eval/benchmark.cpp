#include "landmap/eval/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "landmap/eval/metrics.hpp"
#include "landmap/map/pyramid_map.hpp"
#include "landmap/sim/flight.hpp"

namespace landmap::eval {

void BenchmarkConfig::validate() const {
  map.validate();
  camera.validate();
  landing.validate();
  if (!(agl > 0.0)) throw ConfigError("benchmark agl must be positive");
  if (frames < 1) throw ConfigError("benchmark needs at least one frame");
  if (!(speed >= 0.0) || !(frame_rate > 0.0)) throw ConfigError("benchmark speed/frame rate invalid");
}

TimingStats timing_stats(std::vector<double> xs) {
  TimingStats t;
  if (xs.empty()) return t;
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  t.median_ms = n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
  t.min_ms = xs.front();
  t.max_ms = xs.back();
  t.stddev_ms = mean_std(xs).stddev;
  return t;
}

namespace {

double benchmark_margin(const BenchmarkConfig& config) {
  return config.agl * config.camera.tan_half_fov_x() + 2.0;
}

double benchmark_path(const BenchmarkConfig& config) {
  return config.speed * (config.frames - 1) / config.frame_rate;
}

}  // namespace

sim::TerrainParams benchmark_terrain(const BenchmarkConfig& config) {
  const double margin = benchmark_margin(config);
  sim::TerrainParams tp;
  tp.seed = config.seed;
  tp.extent_x = benchmark_path(config) + 2.0 * margin;
  tp.extent_y = 2.0 * margin;
  tp.slope_deg = config.slope_deg;
  tp.slope_azimuth_deg = 90.0;
  tp.fractal_amplitude = config.fractal_amplitude;
  tp.rock_diameter = config.rock_coverage > 0.0 ? config.rock_diameter : 0.0;
  tp.rock_coverage = config.rock_coverage;
  return tp;
}

sim::FlightPlan benchmark_plan(const BenchmarkConfig& config, const sim::TerrainModel& terrain) {
  const double margin = benchmark_margin(config);
  const double path = benchmark_path(config);
  const double y = terrain.params().extent_y / 2.0;
  const double z = terrain.plane_height(margin, y) + config.agl;
  sim::FlightPlan plan;
  plan.waypoints = {Vec3(margin, y, z), Vec3(margin + std::max(path, 1e-3), y, z)};
  plan.speed = config.speed > 0.0 ? config.speed : 1.0;
  plan.frame_rate = config.frame_rate;
  return plan;
}

BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
  config.validate();
  using clock = std::chrono::steady_clock;

  const auto terrain = sim::TerrainModel::generate(benchmark_terrain(config));
  const auto plan = benchmark_plan(config, terrain);
  sim::FlightSimulator flight(terrain, plan, config.camera, split_seed(config.seed, "flight-noise"));

  std::vector<sim::Frame> frames;
  for (int k = 0; k < config.frames && k < static_cast<int>(flight.frame_count()); ++k)
    frames.push_back(flight.render(static_cast<std::size_t>(k)));

  auto map = map::PyramidMap::centered_at(config.map, plan.waypoints.front().head<2>());
  BenchmarkReport report;
  report.frames = static_cast<int>(frames.size());
  for (const auto& f : frames) {
    const auto t0 = clock::now();
    const auto stats = map::integrate_frame(map, f.image, f.pose, config.camera);
    const auto t1 = clock::now();
    const auto landing = detect::detect(map, config.landing);
    const auto t2 = clock::now();
    report.fuse_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    report.detect_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());
    report.cells_updated.push_back(stats.total_cells_updated());
    (void)landing;
  }
  report.fuse = timing_stats(report.fuse_ms);
  report.detect = timing_stats(report.detect_ms);
  std::vector<double> cells(report.cells_updated.begin(), report.cells_updated.end());
  std::sort(cells.begin(), cells.end());
  if (!cells.empty())
    report.median_cells_updated = cells.size() % 2 ? cells[cells.size() / 2]
                                                   : 0.5 * (cells[cells.size() / 2 - 1] + cells[cells.size() / 2]);
  report.map_cells = map.allocated_cells();
  report.payload_bytes = map.payload_bytes();
  return report;
}

}  // namespace landmap::eval
