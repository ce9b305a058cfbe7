#ifndef LANDMAP_EVAL_METRICS_HPP
#define LANDMAP_EVAL_METRICS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "landmap/detect/detector.hpp"
#include "landmap/map/pyramid_map.hpp"
#include "landmap/sim/terrain.hpp"

namespace landmap::eval {

struct RmseBreakdown {
  std::optional<double> flat;
  std::optional<double> rock;
  std::optional<double> cliff;
  std::optional<double> total;
  std::size_t flat_cells = 0;
  std::size_t rock_cells = 0;
  std::size_t cliff_cells = 0;
};

/// RMSE of reconstructed heights (deepest resolved level, or `level` when
/// given) against the terrain at observed finest-cell centers, per class.
/// Classes without cells are absent.
RmseBreakdown map_rmse(const map::PyramidMap& map, const sim::TerrainModel& terrain,
                       std::optional<int> level = std::nullopt);
std::optional<double> map_rmse(const map::PyramidMap& map, const sim::TerrainModel& terrain, sim::TerrainClass cls);

/// Ground-truth labelling parameters.
struct TruthConfig {
  /// A cell is truly hazardous when its center is closer than this to a rock
  /// disc or to the cliff edge.
  double evaluation_keepout = 0.3;
  double max_slope_deg = 10.0;
};

struct RockOutcome {
  std::size_t rock = 0;  // index into terrain.rocks()
  double diameter = 0.0;
  bool detected = false;
};

struct LandingMetrics {
  std::size_t evaluated_cells = 0;
  std::size_t correct_cells = 0;
  std::size_t true_hazard_cells = 0;
  std::size_t false_safe_cells = 0;
  std::size_t rocks_visible = 0;
  std::size_t rocks_detected = 0;
  std::vector<RockOutcome> rocks;  // visible rocks only

  std::optional<double> recall() const;
  std::optional<double> detection_rate() const;
  std::optional<double> false_positive_rate() const;
  LandingMetrics& operator+=(const LandingMetrics& other);
};

/// Predicted hazard = any non-SAFE class. BORDER and NO_DATA cells are not
/// evaluated. A rock is visible when every cell its disc touches lies in the
/// map and is evaluated, and detected when none of those cells is SAFE.
LandingMetrics landing_metrics(const detect::LandingMap& landing, const sim::TerrainModel& terrain,
                               const TruthConfig& truth);

/// True-hazard label of a point.
bool truth_hazard(const sim::TerrainModel& terrain, double x, double y, const TruthConfig& truth);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t n = 0;
};
MeanStd mean_std(const std::vector<double>& xs);

}  // namespace landmap::eval

#endif  // LANDMAP_EVAL_METRICS_HPP
