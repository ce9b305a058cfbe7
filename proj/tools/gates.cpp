#include "gates.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "landmap/common.hpp"

namespace landmap::cli {
namespace {

std::optional<GateOp> parse_op(const std::string& s) {
  if (s == "<") return GateOp::kLess;
  if (s == "<=") return GateOp::kLessEqual;
  if (s == ">") return GateOp::kGreater;
  if (s == ">=") return GateOp::kGreaterEqual;
  if (s == "==") return GateOp::kEqual;
  return std::nullopt;
}

std::optional<double> parse_bound(std::string s) {
  double scale = 1.0;
  if (!s.empty() && s.back() == '%') {
    s.pop_back();
    scale = 0.01;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v * scale;
}

bool holds(GateOp op, double x, double bound) {
  switch (op) {
    case GateOp::kLess: return x < bound;
    case GateOp::kLessEqual: return x <= bound;
    case GateOp::kGreater: return x > bound;
    case GateOp::kGreaterEqual: return x >= bound;
    case GateOp::kEqual: return x == bound;
  }
  return false;
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string to_string(GateOp op) {
  switch (op) {
    case GateOp::kLess: return "<";
    case GateOp::kLessEqual: return "<=";
    case GateOp::kGreater: return ">";
    case GateOp::kGreaterEqual: return ">=";
    case GateOp::kEqual: return "==";
  }
  return "?";
}

std::vector<Gate> parse_gates(std::istream& in) {
  std::vector<Gate> gates;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string metric, op, bound, extra;
    if (!(ls >> metric)) continue;
    if (!(ls >> op >> bound) || (ls >> extra))
      throw ConfigError("gate line " + std::to_string(n) + ": expected 'metric op bound'");
    const auto o = parse_op(op);
    if (!o) throw ConfigError("gate line " + std::to_string(n) + ": unknown operator '" + op + "'");
    const auto b = parse_bound(bound);
    if (!b) throw ConfigError("gate line " + std::to_string(n) + ": bad bound '" + bound + "'");
    gates.push_back({metric, *o, *b, n});
  }
  return gates;
}

std::vector<Gate> load_gates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open gate file " + path.string());
  return parse_gates(in);
}

std::vector<GateResult> check_gates(const std::vector<Gate>& gates, const Metrics& metrics) {
  std::vector<GateResult> out;
  out.reserve(gates.size());
  for (const auto& g : gates) {
    GateResult r{g, std::nullopt, false};
    if (const auto it = metrics.find(g.metric); it != metrics.end()) {
      r.measured = it->second;
      r.passed = holds(g.op, it->second, g.bound);
    }
    out.push_back(r);
  }
  return out;
}

void write_metrics_csv(const Metrics& metrics, std::ostream& out) {
  out << "metric,value\n";
  for (const auto& [name, value] : metrics) out << name << ',' << number(value) << '\n';
}

bool report_gates(const std::vector<GateResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    out << (r.passed ? "PASS " : "FAIL ") << r.gate.metric << ' ' << to_string(r.gate.op) << ' '
        << number(r.gate.bound) << " (measured " << (r.measured ? number(*r.measured) : std::string("nothing"))
        << ")\n";
  }
  return all;
}

}  // namespace landmap::cli
