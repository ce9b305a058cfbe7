#ifndef LANDMAP_EVAL_REPORT_HPP
#define LANDMAP_EVAL_REPORT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "landmap/eval/benchmark.hpp"
#include "landmap/eval/experiments.hpp"

namespace landmap::eval {

/// Percentage with one decimal, or "n/a" when absent.
std::string percent(const std::optional<double>& rate, int decimals = 1);

/// One CSV row per (rock diameter, seed, margin) plus pooled rows (seed "all").
void write_rockfield_csv(const std::vector<RockfieldReport>& reports, std::ostream& out);
/// Plain-text table with the row layout of the rock-size evaluation: recall,
/// detection and false-positive rates without and with margin, one column per
/// rock diameter.
void write_rockfield_table(const std::vector<RockfieldReport>& reports, std::ostream& out);

void write_cell_size_csv(const std::vector<CellSizeResult>& results, const std::vector<double>& bin_edges,
                         std::ostream& out);
void write_altitude_csv(const std::vector<AltitudePoint>& points, std::ostream& out);
void write_cliff_csv(const CliffReport& report, std::ostream& out);

/// Columns: metric,median_ms,stddev_ms,min_ms,max_ms plus cell and memory rows.
void write_benchmark_csv(const BenchmarkReport& report, std::ostream& out);

}  // namespace landmap::eval

#endif  // LANDMAP_EVAL_REPORT_HPP
