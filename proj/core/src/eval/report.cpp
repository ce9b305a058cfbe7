#include "landmap/eval/report.hpp"

#include <cstdio>
#include <ostream>

namespace landmap::eval {
namespace {

std::string num(const std::optional<double>& v, const char* fmt = "%.6f") {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, *v);
  return buf;
}

void metrics_row(std::ostream& out, double diameter, const std::string& seed, bool margin, const LandingMetrics& m) {
  out << diameter << ',' << seed << ',' << (margin ? 1 : 0) << ',' << m.evaluated_cells << ',' << m.correct_cells
      << ',' << m.true_hazard_cells << ',' << m.false_safe_cells << ',' << m.rocks_visible << ','
      << m.rocks_detected << ',' << num(m.recall()) << ',' << num(m.detection_rate()) << ','
      << num(m.false_positive_rate(), "%.8f") << '\n';
}

}  // namespace

std::string percent(const std::optional<double>& rate, int decimals) {
  if (!rate) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, 100.0 * *rate);
  return buf;
}

void write_rockfield_csv(const std::vector<RockfieldReport>& reports, std::ostream& out) {
  out << "rock_diameter_m,seed,margin,evaluated_cells,correct_cells,true_hazard_cells,false_safe_cells,"
         "rocks_visible,rocks_detected,recall,detection_rate,false_positive_rate\n";
  for (const auto& r : reports) {
    LandingMetrics with;
    LandingMetrics without;
    for (const auto& s : r.seeds) {
      metrics_row(out, r.rock_diameter, std::to_string(s.seed), false, s.without_margin);
      metrics_row(out, r.rock_diameter, std::to_string(s.seed), true, s.with_margin);
      with += s.with_margin;
      without += s.without_margin;
    }
    metrics_row(out, r.rock_diameter, "all", false, without);
    metrics_row(out, r.rock_diameter, "all", true, with);
  }
}

void write_rockfield_table(const std::vector<RockfieldReport>& reports, std::ostream& out) {
  auto row = [&](const char* label, auto get) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-24s", label);
    out << buf;
    for (const auto& r : reports) {
      std::snprintf(buf, sizeof buf, " | %8s", get(r).c_str());
      out << buf;
    }
    out << '\n';
  };
  row("Rock Diameter [m]", [](const RockfieldReport& r) { return num(r.rock_diameter, "%.2f"); });
  row("Recall Rate [%]", [](const RockfieldReport& r) { return percent(r.without_margin.recall); });
  row("Detection Rate [%]", [](const RockfieldReport& r) { return percent(r.without_margin.detection_rate); });
  row("False Pos. Rate [%]", [](const RockfieldReport& r) { return percent(r.without_margin.false_positive_rate, 3); });
  row("Recall Rate M [%]", [](const RockfieldReport& r) { return percent(r.with_margin.recall); });
  row("Detection Rate M [%]", [](const RockfieldReport& r) { return percent(r.with_margin.detection_rate); });
  row("False Pos. Rate M [%]", [](const RockfieldReport& r) { return percent(r.with_margin.false_positive_rate, 3); });
  row("Rocks visible", [](const RockfieldReport& r) { return std::to_string(r.with_margin.rocks_visible); });
}

void write_cell_size_csv(const std::vector<CellSizeResult>& results, const std::vector<double>& bin_edges,
                         std::ostream& out) {
  out << "cell_size_m,bin_min_m,bin_max_m,rocks_visible,rocks_detected,detection_rate\n";
  for (const auto& r : results) {
    for (std::size_t b = 0; b < r.bin_visible.size(); ++b) {
      out << r.cell_size << ',' << bin_edges[b] << ',' << bin_edges[b + 1] << ',' << r.bin_visible[b] << ','
          << r.bin_detected[b] << ',' << num(r.bin_rate(b)) << '\n';
    }
  }
}

void write_altitude_csv(const std::vector<AltitudePoint>& points, std::ostream& out) {
  out << "altitude_m,recall,recall_mean,recall_std,detection_rate,false_positive_rate,rocks_visible\n";
  for (const auto& p : points) {
    out << p.altitude << ',' << num(p.rates.recall) << ',' << num(p.rates.recall_seeds.mean) << ','
        << num(p.rates.recall_seeds.stddev) << ',' << num(p.rates.detection_rate) << ','
        << num(p.rates.false_positive_rate, "%.8f") << ',' << p.rates.rocks_visible << '\n';
  }
}

void write_cliff_csv(const CliffReport& report, std::ostream& out) {
  out << "time_s,agl_m,rmse_flat,rmse_rock,rmse_cliff,rmse_total";
  const std::size_t layers = report.samples.empty() ? 0 : report.samples.front().per_layer_total.size();
  for (std::size_t l = 0; l < layers; ++l) out << ",rmse_total_layer" << l + 1;
  out << ",rmse_upper,rmse_lower,lower_cells,lower_finest_cells,cells_updated\n";
  for (const auto& s : report.samples) {
    out << s.time << ',' << num(s.agl) << ',' << num(s.deepest.flat) << ',' << num(s.deepest.rock) << ','
        << num(s.deepest.cliff) << ',' << num(s.deepest.total);
    for (const auto& v : s.per_layer_total) out << ',' << num(v);
    out << ',' << num(s.upper_rmse) << ',' << num(s.lower_rmse) << ',' << s.lower_cells << ',' << s.lower_fine_cells
        << ',' << s.cells_updated << '\n';
  }
}

void write_benchmark_csv(const BenchmarkReport& report, std::ostream& out) {
  out << "metric,median_ms,stddev_ms,min_ms,max_ms\n";
  auto row = [&](const char* name, const TimingStats& t) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s,%.4f,%.4f,%.4f,%.4f\n", name, t.median_ms, t.stddev_ms, t.min_ms, t.max_ms);
    out << buf;
  };
  row("fuse", report.fuse);
  row("detect", report.detect);
  out << "\nquantity,value\n";
  out << "frames," << report.frames << '\n';
  out << "median_cells_updated," << report.median_cells_updated << '\n';
  out << "map_cells," << report.map_cells << '\n';
  out << "payload_bytes," << report.payload_bytes << '\n';
}

}  // namespace landmap::eval
