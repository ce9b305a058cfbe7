#ifndef LANDMAP_DETECT_DETECTOR_HPP
#define LANDMAP_DETECT_DETECTOR_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "landmap/common.hpp"
#include "landmap/detect/surface_checks.hpp"
#include "landmap/map/pyramid_map.hpp"

namespace landmap::detect {

struct LandingConfig {
  double keepout_radius = 0.4;
  double safety_margin = 0.1;
  double rock_area_radius = 0.5;
  double max_slope_deg = 10.0;
  double max_roughness = 0.1;
  std::uint32_t min_observations = 3;
  /// Defaults to (2 * finest resolution)^2 of the map being analysed.
  std::optional<double> max_variance;

  void validate() const;
  double safe_area_radius() const { return keepout_radius + safety_margin; }
  double max_variance_for(const map::MapConfig& map) const;
};

enum class LandingClass : std::uint8_t { kSafe, kHazard, kUnknown, kBorder, kNoData };

std::string_view to_string(LandingClass c);
/// 8-bit export code: SAFE 255, HAZARD 64, UNKNOWN 128, BORDER 192, NO_DATA 0.
std::uint8_t pgm_code(LandingClass c);

enum class Confidence { kConfident, kUncertain };

/// Count and variance gate on the deepest observed layer at a finest cell.
Confidence confidence(const map::PyramidMap& map, int row, int col, std::uint32_t min_observations,
                      double max_variance);

struct Candidate {
  int row = 0;
  int col = 0;
  Vec2 world = Vec2::Zero();
  double clearance = 0.0;  // meters to the nearest non-SAFE cell
};

/// Classification grid at the finest map resolution, row-major.
struct LandingMap {
  int rows = 0;
  int cols = 0;
  double resolution = 0.0;
  Vec2 origin = Vec2::Zero();
  std::vector<LandingClass> classes;
  /// Meters to the nearest non-SAFE cell center; 0 on non-SAFE cells.
  std::vector<double> distance;
  std::vector<Candidate> candidates;

  LandingClass at(int row, int col) const { return classes[static_cast<std::size_t>(row) * cols + col]; }
  double distance_at(int row, int col) const { return distance[static_cast<std::size_t>(row) * cols + col]; }
  Vec2 cell_center(int row, int col) const { return origin + Vec2((col + 0.5) * resolution, (row + 0.5) * resolution); }
  std::size_t count(LandingClass c) const;

  friend bool operator==(const LandingMap& a, const LandingMap& b);
};

struct DetectOptions {
  /// Skip cells already hazardous at coarser layers and stop disc scans at the
  /// first violation. Disabled, every check runs in full for every cell.
  bool prune = true;
  std::size_t max_candidates = 64;
};

LandingMap detect(const map::PyramidMap& map, const LandingConfig& config, const DetectOptions& options = {});

/// Clearance field in meters: distance from SAFE cells to the nearest non-SAFE
/// cell center (cell-center metric); zero elsewhere.
std::vector<double> distance_transform(const std::vector<LandingClass>& classes, int rows, int cols,
                                       double resolution);

/// Local maxima of the clearance field with clearance >= min_clearance,
/// suppressed within `suppression_radius`, by clearance descending then
/// (row, col) ascending.
std::vector<Candidate> rank_candidates(const LandingMap& landing, double min_clearance, double suppression_radius,
                                       std::size_t max_count);

}  // namespace landmap::detect

#endif  // LANDMAP_DETECT_DETECTOR_HPP
