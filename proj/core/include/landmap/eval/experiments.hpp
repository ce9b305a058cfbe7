#ifndef LANDMAP_EVAL_EXPERIMENTS_HPP
#define LANDMAP_EVAL_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "landmap/detect/detector.hpp"
#include "landmap/eval/metrics.hpp"
#include "landmap/map/lod.hpp"
#include "landmap/sim/flight.hpp"
#include "landmap/sim/terrain.hpp"

namespace landmap::eval {

/// A straight nadir traverse at constant world altitude over a generated
/// rock field, fused into a rolling map and evaluated after the last frame.
struct RockfieldConfig {
  double extent_x = 30.0;
  double extent_y = 20.0;
  double slope_deg = 5.0;
  double fractal_amplitude = 0.01;
  double rock_coverage = 0.2;
  /// Upper diameter for ranged rock sizes; zero keeps every rock the same size.
  double rock_diameter_max = 0.0;

  /// AGL at the start; the traverse runs downhill so AGL grows along the way.
  double start_agl = 5.0;
  double speed = 1.0;
  double frame_rate = 5.0;
  int frames = 50;
  CameraModel camera{110.0, 320, 240, 0.25, 0.8};

  map::MapConfig map{3, 0.06, 256, 0.25};
  detect::LandingConfig landing{0.5, 0.1, 0.5, 10.0, 0.05, 3, std::nullopt};
  double evaluation_keepout = 0.3;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8};

  void validate() const;
};

/// Terrain, flight plan and camera for one seed of a rock-field run.
sim::TerrainParams rockfield_terrain(const RockfieldConfig& config, double rock_diameter, std::uint64_t seed);
sim::FlightPlan rockfield_plan(const RockfieldConfig& config, const sim::TerrainModel& terrain);

struct SeedResult {
  std::uint64_t seed = 0;
  std::size_t rocks = 0;
  LandingMetrics with_margin;
  LandingMetrics without_margin;
};

struct RateSummary {
  /// Rates over the pooled counts of all seeds.
  std::optional<double> recall;
  std::optional<double> detection_rate;
  std::optional<double> false_positive_rate;
  /// Per-seed mean and standard deviation.
  MeanStd recall_seeds;
  MeanStd detection_seeds;
  MeanStd false_positive_seeds;
  std::size_t rocks_visible = 0;
  std::size_t rocks_detected = 0;
};

RateSummary summarize(const std::vector<LandingMetrics>& per_seed);

struct RockfieldReport {
  double rock_diameter = 0.0;
  std::vector<SeedResult> seeds;
  RateSummary with_margin;
  RateSummary without_margin;
};

/// Runs every seed of the configuration for one rock size. The map of each
/// flight is detected twice, with the configured margin and with none.
RockfieldReport run_rockfield_experiment(double rock_diameter, const RockfieldConfig& config);

/// Same flights fused into maps of several finest cell sizes.
struct CellSizeConfig {
  RockfieldConfig base;
  std::vector<double> cell_sizes{0.03, 0.06, 0.12, 0.20};
  /// Finest cells per side for each cell size (similar metric extent).
  std::vector<int> extent_cells{512, 256, 128, 80};
  double min_diameter = 0.28;
  double max_diameter = 0.92;
  std::vector<double> bin_edges{0.28, 0.44, 0.60, 0.76, 0.92};

  CellSizeConfig();
};

struct CellSizeResult {
  double cell_size = 0.0;
  LandingMetrics metrics;  // pooled over seeds
  std::vector<std::size_t> bin_visible;
  std::vector<std::size_t> bin_detected;
  std::optional<double> bin_rate(std::size_t bin) const;
};

std::vector<CellSizeResult> run_cell_size_experiment(const CellSizeConfig& config);

struct AltitudePoint {
  double altitude = 0.0;
  RateSummary rates;
};

/// Repeats the rock-field run at each altitude (start AGL), one rock size.
std::vector<AltitudePoint> run_altitude_sweep(const std::vector<double>& altitudes, double rock_diameter,
                                              const RockfieldConfig& config);

/// Flight over a cliff: constant world altitude, `pre_agl` above the upper
/// plateau, so AGL jumps by the cliff drop after the edge.
struct CliffConfig {
  double extent_x = 70.0;
  double extent_y = 30.0;
  double slope_deg = 5.0;
  double fractal_amplitude = 0.05;
  double rock_diameter = 0.3;
  double rock_coverage = 0.2;
  double cliff_drop = 5.0;
  double cliff_edge_x = 35.0;
  double pre_agl = 5.0;
  /// Seconds of flight before the edge enters the image.
  double lead_in = 12.0;
  double duration = 40.0;
  double speed = 1.0;
  double frame_rate = 2.0;
  CameraModel camera{110.0, 320, 240, 0.25, 0.8};
  /// Wide enough to keep the whole traverse, cliff included, in the map.
  map::MapConfig map{3, 0.08, 512, 0.25};
  std::uint64_t seed = 1;

  void validate() const;
};

struct RmseSample {
  double time = 0.0;
  double agl = 0.0;
  RmseBreakdown deepest;
  /// Total RMSE of the reconstruction through each layer (index 0 = layer 1).
  std::vector<std::optional<double>> per_layer_total;
  /// RMSE of non-CLIFF cells on the upper plateau and below the cliff.
  std::optional<double> upper_rmse;
  std::optional<double> lower_rmse;
  /// Observed finest cells below the cliff, and those of them resolved
  /// through the finest layer.
  std::size_t lower_cells = 0;
  std::size_t lower_fine_cells = 0;
  std::size_t cells_updated = 0;
};

struct CliffReport {
  std::vector<RmseSample> samples;
  /// Time the cliff edge first appears in the image, seconds.
  double edge_in_view = 0.0;
};

sim::TerrainParams cliff_terrain(const CliffConfig& config);
sim::FlightPlan cliff_plan(const CliffConfig& config, const sim::TerrainModel& terrain);

CliffReport run_cliff_experiment(const CliffConfig& config);

}  // namespace landmap::eval

#endif  // LANDMAP_EVAL_EXPERIMENTS_HPP
