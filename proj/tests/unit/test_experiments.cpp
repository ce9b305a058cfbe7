#include <gtest/gtest.h>

#include <sstream>

#include "landmap/eval/benchmark.hpp"
#include "landmap/eval/experiments.hpp"
#include "landmap/eval/report.hpp"

using namespace landmap;
using namespace landmap::eval;

namespace {

RockfieldConfig small_rockfield() {
  RockfieldConfig rc;
  rc.extent_x = 12;
  rc.extent_y = 10;
  rc.frames = 12;
  rc.camera = CameraModel{110.0, 160, 120, 0.25, 0.8};
  rc.map = map::MapConfig{3, 0.06, 128, 0.25};
  rc.seeds = {1, 2};
  return rc;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(Rockfield, SmallRunIsDeterministic) {
  const auto rc = small_rockfield();
  const auto a = run_rockfield_experiment(0.5, rc);
  const auto b = run_rockfield_experiment(0.5, rc);
  ASSERT_EQ(a.seeds.size(), 2u);
  for (std::size_t i = 0; i < a.seeds.size(); ++i) {
    EXPECT_EQ(a.seeds[i].with_margin.correct_cells, b.seeds[i].with_margin.correct_cells);
    EXPECT_EQ(a.seeds[i].with_margin.rocks_detected, b.seeds[i].with_margin.rocks_detected);
    EXPECT_GT(a.seeds[i].with_margin.evaluated_cells, 0u);
  }
  EXPECT_EQ(a.with_margin.recall, b.with_margin.recall);
  ASSERT_TRUE(a.with_margin.recall);
  EXPECT_GT(*a.with_margin.recall, 0.5);
  EXPECT_EQ(a.with_margin.recall_seeds.n, 2u);
}

TEST(Rockfield, PlanStartsAtConfiguredAgl) {
  const auto rc = small_rockfield();
  const auto terrain = sim::TerrainModel::generate(rockfield_terrain(rc, 0.3, 4));
  const auto plan = rockfield_plan(rc, terrain);
  ASSERT_GE(plan.waypoints.size(), 2u);
  const auto& w = plan.waypoints.front();
  EXPECT_NEAR(w.z() - terrain.height(w.x(), w.y()), rc.start_agl, 0.05);
  EXPECT_EQ(plan.waypoints.front().z(), plan.waypoints.back().z());
}

TEST(Rockfield, InvalidConfigIsRejected) {
  auto rc = small_rockfield();
  rc.seeds.clear();
  EXPECT_THROW(rc.validate(), ConfigError);
}

TEST(Summaries, PoolCountsAcrossSeeds) {
  LandingMetrics a;
  a.evaluated_cells = 100;
  a.correct_cells = 90;
  a.rocks_visible = 4;
  a.rocks_detected = 4;
  LandingMetrics b = a;
  b.correct_cells = 70;
  b.rocks_detected = 2;
  const auto s = summarize({a, b});
  EXPECT_DOUBLE_EQ(*s.recall, 0.8);
  EXPECT_DOUBLE_EQ(*s.detection_rate, 0.75);
  EXPECT_DOUBLE_EQ(s.recall_seeds.mean, 0.8);
  EXPECT_EQ(s.rocks_visible, 8u);
}

TEST(Writers, CsvHeaders) {
  const auto rc = small_rockfield();
  std::vector<RockfieldReport> reports{run_rockfield_experiment(0.5, rc)};
  std::ostringstream csv;
  write_rockfield_csv(reports, csv);
  EXPECT_EQ(first_line(csv.str()),
            "rock_diameter_m,seed,margin,evaluated_cells,correct_cells,true_hazard_cells,false_safe_cells,"
            "rocks_visible,rocks_detected,recall,detection_rate,false_positive_rate");
  EXPECT_NE(csv.str().find(",all,"), std::string::npos);
  std::ostringstream table;
  write_rockfield_table(reports, table);
  EXPECT_FALSE(table.str().empty());
  EXPECT_EQ(percent(0.1234), "12.3");
  EXPECT_EQ(percent(std::nullopt), "n/a");
}

TEST(Cliff, ShortRunProducesSamples) {
  CliffConfig cc;
  cc.extent_x = 40;
  cc.cliff_edge_x = 20;
  cc.extent_y = 16;
  cc.lead_in = 1.0;
  cc.duration = 12.0;  // ends about 3.9 m past the edge
  cc.camera = CameraModel{110.0, 120, 90, 0.25, 0.8};
  cc.map = map::MapConfig{3, 0.08, 256, 0.25};
  const auto report = run_cliff_experiment(cc);
  ASSERT_EQ(report.samples.size(), 25u);
  EXPECT_NEAR(report.samples.front().agl, cc.pre_agl, 0.3);
  EXPECT_GT(report.samples.back().agl, report.samples.front().agl + 3.0);
  for (const auto& s : report.samples) {
    ASSERT_EQ(s.per_layer_total.size(), 3u);
    EXPECT_TRUE(s.deepest.total);
    EXPECT_LE(s.lower_fine_cells, s.lower_cells);
  }
  std::ostringstream csv;
  write_cliff_csv(report, csv);
  EXPECT_NE(first_line(csv.str()).find("rmse_lower"), std::string::npos);
}

TEST(Benchmark, SmallRunReportsEveryFrame) {
  BenchmarkConfig bc;
  bc.frames = 4;
  bc.camera = CameraModel{90.0, 160, 120, 0.25, 0.8};
  const auto r = run_benchmark(bc);
  EXPECT_EQ(r.frames, 4);
  EXPECT_EQ(r.fuse_ms.size(), 4u);
  EXPECT_EQ(r.detect_ms.size(), 4u);
  EXPECT_EQ(r.map_cells, bc.map.total_cells());
  EXPECT_EQ(r.payload_bytes, bc.map.total_cells() * map::PyramidMap::kBytesPerCell);
  EXPECT_GT(r.median_cells_updated, 0.0);
  std::ostringstream csv;
  write_benchmark_csv(r, csv);
  EXPECT_EQ(first_line(csv.str()).rfind("metric,median_ms,stddev_ms,min_ms,max_ms", 0), 0u);
}

TEST(Benchmark, TimingStatistics) {
  const auto t = timing_stats({4.0, 1.0, 3.0, 2.0});
  EXPECT_DOUBLE_EQ(t.median_ms, 2.5);
  EXPECT_DOUBLE_EQ(t.min_ms, 1.0);
  EXPECT_DOUBLE_EQ(t.max_ms, 4.0);
  EXPECT_DOUBLE_EQ(timing_stats({5.0, 1.0, 3.0}).median_ms, 3.0);
}
