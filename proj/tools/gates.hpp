#ifndef LANDMAP_TOOLS_GATES_HPP
#define LANDMAP_TOOLS_GATES_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace landmap::cli {

/// Named scalar results of an eval or bench run.
using Metrics = std::map<std::string, double>;

enum class GateOp { kLess, kLessEqual, kGreater, kGreaterEqual, kEqual };

/// One "metric op bound" line of a gate file.
struct Gate {
  std::string metric;
  GateOp op = GateOp::kGreaterEqual;
  double bound = 0.0;
  int line = 0;
};

struct GateResult {
  Gate gate;
  std::optional<double> measured;  // absent when the run did not produce the metric
  bool passed = false;
};

/// Gate file grammar: one gate per line, `metric op bound`, where op is one of
/// < <= > >= == and bound is a number with an optional '%' suffix (divided by
/// 100). Blank lines and text after '#' are ignored. Throws ConfigError.
std::vector<Gate> parse_gates(std::istream& in);
std::vector<Gate> load_gates(const std::filesystem::path& path);

std::vector<GateResult> check_gates(const std::vector<Gate>& gates, const Metrics& metrics);
std::string to_string(GateOp op);

/// "metric,value" rows sorted by name, values at full precision.
void write_metrics_csv(const Metrics& metrics, std::ostream& out);
/// One PASS/FAIL line per gate; returns true when every gate passed.
bool report_gates(const std::vector<GateResult>& results, std::ostream& out);

}  // namespace landmap::cli

#endif  // LANDMAP_TOOLS_GATES_HPP
