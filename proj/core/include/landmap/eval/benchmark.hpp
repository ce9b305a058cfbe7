#ifndef LANDMAP_EVAL_BENCHMARK_HPP
#define LANDMAP_EVAL_BENCHMARK_HPP

#include <cstdint>
#include <vector>

#include "landmap/detect/detector.hpp"
#include "landmap/map/lod.hpp"
#include "landmap/sim/flight.hpp"
#include "landmap/sim/terrain.hpp"

namespace landmap::eval {

/// Straight flight at fixed AGL over a mildly rough slope; every frame is
/// rendered up front so only fuse and detect are timed.
struct BenchmarkConfig {
  map::MapConfig map{3, 0.08, 200, 0.25};
  CameraModel camera{90.0, 640, 480, 0.25, 0.8};
  detect::LandingConfig landing{};
  double agl = 20.0;
  double speed = 2.0;
  double frame_rate = 5.0;
  int frames = 50;
  double slope_deg = 5.0;
  double fractal_amplitude = 0.05;
  double rock_diameter = 0.3;
  double rock_coverage = 0.02;
  std::uint64_t seed = 1;

  void validate() const;
};

struct TimingStats {
  double median_ms = 0.0;
  double stddev_ms = 0.0;
  double min_ms = 0.0;
  double max_ms = 0.0;
};
TimingStats timing_stats(std::vector<double> samples_ms);

struct BenchmarkReport {
  TimingStats fuse;
  TimingStats detect;
  std::vector<double> fuse_ms;
  std::vector<double> detect_ms;
  /// Distinct cells updated per frame over all layers.
  std::vector<std::size_t> cells_updated;
  double median_cells_updated = 0.0;
  std::size_t map_cells = 0;
  std::size_t payload_bytes = 0;
  int frames = 0;
};

sim::TerrainParams benchmark_terrain(const BenchmarkConfig& config);
sim::FlightPlan benchmark_plan(const BenchmarkConfig& config, const sim::TerrainModel& terrain);

/// Single-threaded wall-clock timing of fuse (per frame) and detect (on the
/// map after each frame).
BenchmarkReport run_benchmark(const BenchmarkConfig& config);

}  // namespace landmap::eval

#endif  // LANDMAP_EVAL_BENCHMARK_HPP
