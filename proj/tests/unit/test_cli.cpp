#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "gates.hpp"

using namespace landmap;
using namespace landmap::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::path(LANDMAP_TEST_TMP) / "cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& name, const Json& j) {
  const auto path = dir / name;
  std::ofstream(path) << j.dump(2);
  return path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const Json kSmallScene = {{"scenario", "rockfield"}, {"extent_x", 10.0},   {"extent_y", 8.0},
                          {"frames", 4},             {"image_width", 80},  {"image_height", 60},
                          {"rock_diameter", 0.4},    {"start_agl", 4.0}};

}  // namespace

TEST(KeyReader, UnknownKeysAreReported) {
  KeyReader keys(Json{{"depth", 3}, {"depht", 4}}, "test");
  map::MapConfig c;
  read_map(keys, c);
  EXPECT_EQ(c.depth, 3);
  try {
    keys.finish();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("depht"), std::string::npos);
  }
}

TEST(KeyReader, WrongTypeIsAConfigError) {
  KeyReader keys(Json{{"depth", "three"}}, "test");
  map::MapConfig c;
  EXPECT_THROW(read_map(keys, c), ConfigError);
}

TEST(Config, TerrainJsonRoundTrip) {
  sim::TerrainParams p;
  p.extent_x = 12.5;
  p.seed = 99;
  p.cliff = sim::Cliff{3.0, 2.0};
  const auto back = terrain_from_json(to_json(p));
  EXPECT_EQ(to_json(back), to_json(p));
  EXPECT_THROW(terrain_from_json(Json::object()), FormatError);
  CameraModel cam{70.0, 100, 50, 0.1, 0.7};
  EXPECT_EQ(to_json(camera_from_json(to_json(cam))), to_json(cam));
}

TEST(Gates, ParseAllOperatorsAndPercent) {
  std::istringstream in(
      "# comment\n"
      "recall[d=0.3] >= 95%\n"
      "\n"
      "fuse_median_ms < 50   # trailing\n"
      "a <= 1e-3\n"
      "b > -2\n"
      "c == 4\n");
  const auto gates = parse_gates(in);
  ASSERT_EQ(gates.size(), 5u);
  EXPECT_EQ(gates[0].metric, "recall[d=0.3]");
  EXPECT_EQ(gates[0].op, GateOp::kGreaterEqual);
  EXPECT_DOUBLE_EQ(gates[0].bound, 0.95);
  EXPECT_EQ(gates[0].line, 2);
  EXPECT_EQ(gates[1].op, GateOp::kLess);
  EXPECT_EQ(gates[2].op, GateOp::kLessEqual);
  EXPECT_EQ(gates[3].op, GateOp::kGreater);
  EXPECT_EQ(gates[4].op, GateOp::kEqual);
}

TEST(Gates, MalformedLinesAreRejected) {
  for (const char* bad : {"x >=\n", "x => 3\n", "x >= abc\n", ">= 3\n", "x >= 3 4\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(parse_gates(in), ConfigError) << bad;
  }
}

TEST(Gates, MissingMetricFails) {
  std::istringstream in("a >= 1\nb < 2\nmissing == 0\n");
  const auto results = check_gates(parse_gates(in), Metrics{{"a", 1.0}, {"b", 2.0}});
  ASSERT_EQ(results.size(), 3u);
  EXPECT_TRUE(results[0].passed);
  EXPECT_FALSE(results[1].passed);
  EXPECT_FALSE(results[2].passed);
  EXPECT_FALSE(results[2].measured);
  std::ostringstream out;
  EXPECT_FALSE(report_gates(results, out));
  EXPECT_NE(out.str().find("PASS a"), std::string::npos);
  EXPECT_NE(out.str().find("FAIL missing"), std::string::npos);
}

TEST(Commands, SimulateIsDeterministicAndFuseDetectRun) {
  const auto dir = scratch("pipeline");
  const auto cfg = write_config(dir, "sim.json", kSmallScene);
  std::ostringstream log;
  RunOptions a{cfg, 7, dir / "a", {}, false};
  RunOptions b{cfg, 7, dir / "b", {}, false};
  ASSERT_EQ(cmd_simulate(a, log), 0);
  ASSERT_EQ(cmd_simulate(b, log), 0);
  for (const auto* name : {"frame_000000.rimg", "frame_000003.rimg", "poses.txt", "terrain.meta"})
    EXPECT_EQ(slurp(dir / "a" / name), slurp(dir / "b" / name)) << name;
  EXPECT_FALSE(fs::exists(dir / "a" / "frame_000004.rimg"));

  const auto fuse_cfg = write_config(dir, "fuse.json", Json{{"finest_resolution", 0.05}, {"extent_cells", 128}});
  ASSERT_EQ(cmd_fuse({fuse_cfg, {}, dir / "fused", dir / "a", false}, log), 0);
  EXPECT_TRUE(fs::exists(dir / "fused" / "map" / "header.json"));
  EXPECT_TRUE(fs::exists(dir / "fused" / "stats.csv"));

  ASSERT_EQ(cmd_detect({{}, {}, dir / "landing", dir / "fused", false}, log), 0);
  EXPECT_TRUE(fs::exists(dir / "landing" / "landing.pgm"));
  EXPECT_TRUE(fs::exists(dir / "landing" / "candidates.csv"));

  const auto mismatch = write_config(dir, "detect.json", Json{{"finest_resolution", 0.08}});
  EXPECT_THROW(cmd_detect({mismatch, {}, dir / "landing2", dir / "fused", false}, log), ConfigError);
}

TEST(Commands, FuseRejectsBrokenInputBeforeWriting) {
  const auto dir = scratch("fuse_errors");
  std::ostringstream log;
  fs::create_directories(dir / "empty");
  EXPECT_THROW(cmd_fuse({{}, {}, dir / "out1", dir / "empty", false}, log), Error);
  EXPECT_FALSE(fs::exists(dir / "out1"));

  const auto cfg = write_config(dir, "sim.json", kSmallScene);
  ASSERT_EQ(cmd_simulate({cfg, 1, dir / "frames", {}, false}, log), 0);
  std::ofstream(dir / "frames" / "frame_000001.rimg", std::ios::binary | std::ios::trunc) << "RIMG0";
  EXPECT_THROW(cmd_fuse({{}, {}, dir / "out2", dir / "frames", false}, log), FormatError);
  EXPECT_FALSE(fs::exists(dir / "out2"));

  fs::remove(dir / "frames" / "poses.txt");
  EXPECT_THROW(cmd_fuse({{}, {}, dir / "out3", dir / "frames", false}, log), Error);
}

TEST(Commands, UnknownConfigKeyIsAnError) {
  const auto dir = scratch("unknown_key");
  auto j = kSmallScene;
  j["frame_rte"] = 3;
  const auto cfg = write_config(dir, "sim.json", j);
  std::ostringstream log;
  EXPECT_THROW(cmd_simulate({cfg, {}, dir / "out", {}, false}, log), ConfigError);
}

TEST(Commands, EvalCheckReturnsGateStatus) {
  const auto dir = scratch("eval_check");
  std::ofstream(dir / "pass.gates") << "recall[d=0.5] >= 0\n";
  std::ofstream(dir / "fail.gates") << "recall[d=0.5] > 1\n";
  Json j{{"experiment", "rockfield"}, {"extent_x", 10.0},  {"extent_y", 8.0},     {"frames", 6},
         {"image_width", 80},         {"image_height", 60}, {"extent_cells", 128}, {"seed_count", 1},
         {"diameters", {0.5}},        {"gates", "pass.gates"}};
  std::ostringstream log;
  const auto pass_cfg = write_config(dir, "pass.json", j);
  EXPECT_EQ(cmd_eval({pass_cfg, {}, dir / "pass", {}, true}, log), 0);
  EXPECT_TRUE(fs::exists(dir / "pass" / "metrics.csv"));
  EXPECT_TRUE(fs::exists(dir / "pass" / "gates.txt"));
  j["gates"] = "fail.gates";
  const auto fail_cfg = write_config(dir, "fail.json", j);
  EXPECT_EQ(cmd_eval({fail_cfg, {}, dir / "fail", {}, true}, log), 1);
  // without --check the gates are not evaluated
  EXPECT_EQ(cmd_eval({fail_cfg, {}, dir / "nocheck", {}, false}, log), 0);
  j.erase("gates");
  const auto none = write_config(dir, "none.json", j);
  EXPECT_THROW(cmd_eval({none, {}, dir / "none", {}, true}, log), ConfigError);
}

TEST(Commands, BenchWritesMetrics) {
  const auto dir = scratch("bench");
  std::ofstream(dir / "b.gates") << "payload_bytes <= 1200000\nfuse_median_ms < 1e9\n";
  const auto cfg = write_config(
      dir, "bench.json",
      Json{{"frames", 3}, {"image_width", 160}, {"image_height", 120}, {"gates", "b.gates"}});
  std::ostringstream log;
  EXPECT_EQ(cmd_bench({cfg, {}, dir / "out", {}, true}, log), 0);
  const auto metrics = slurp(dir / "out" / "metrics.csv");
  EXPECT_NE(metrics.find("cells_updated_median,"), std::string::npos);
  EXPECT_NE(metrics.find("payload_bytes,"), std::string::npos);
}
