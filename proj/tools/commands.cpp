#include "commands.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "gates.hpp"
#include "landmap/detect/landing_io.hpp"
#include "landmap/eval/benchmark.hpp"
#include "landmap/eval/experiments.hpp"
#include "landmap/eval/report.hpp"
#include "landmap/map/map_io.hpp"
#include "landmap/map/pyramid_map.hpp"
#include "landmap/sim/flight.hpp"

namespace landmap::cli {
namespace fs = std::filesystem;

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string tag(const char* name, double v) { return std::string(name) + "=" + fmt("%g", v); }

/// Config-relative paths resolve against the directory of the config file.
fs::path resolve(const fs::path& config, const std::string& value) {
  const fs::path p(value);
  if (p.is_absolute() || config.empty()) return p;
  return config.parent_path() / p;
}

void prepare_output(const fs::path& out) {
  if (out.empty()) throw ConfigError("an output directory is required (--out)");
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw Error("cannot create output directory " + out.string());
  const fs::path probe = out / ".landmap-write-test";
  {
    std::ofstream f(probe);
    if (!f) throw Error("output directory " + out.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  return f;
}

std::uint64_t base_seed(KeyReader& keys, const RunOptions& options) {
  std::uint64_t seed = 1;
  keys.read("seed", seed);
  if (options.seed) seed = *options.seed;
  return seed;
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, int count) {
  if (count < 1) throw ConfigError("seed_count must be at least 1");
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < count; ++i) seeds.push_back(first + static_cast<std::uint64_t>(i));
  return seeds;
}

std::optional<std::vector<Gate>> gates_for(KeyReader& keys, const RunOptions& options) {
  std::string path;
  const bool given = keys.read("gates", path);
  if (!options.check) return std::nullopt;
  if (!given) throw ConfigError("--check needs a 'gates' file in the config");
  return load_gates(resolve(options.config, path));
}

int finish_gates(const std::optional<std::vector<Gate>>& gates, const Metrics& metrics, const fs::path& out,
                 std::ostream& log) {
  {
    auto f = open_out(out / "metrics.csv");
    write_metrics_csv(metrics, f);
  }
  if (!gates) return 0;
  const auto results = check_gates(*gates, metrics);
  auto f = open_out(out / "gates.txt");
  const bool ok = report_gates(results, f);
  report_gates(results, log);
  return ok ? 0 : 1;
}

void put_rate(Metrics& m, const std::string& name, const std::optional<double>& v) {
  if (v) m[name] = *v;
}

// ---------------------------------------------------------------------------
// simulate

struct Scene {
  sim::TerrainParams terrain;
  CameraModel camera;
  std::function<sim::FlightPlan(const sim::TerrainModel&)> plan;
  int max_frames = -1;
};

Scene rockfield_scene(KeyReader& keys, std::uint64_t seed) {
  eval::RockfieldConfig rc;
  rc.seeds = {seed};
  double diameter = 0.3;
  keys.read("extent_x", rc.extent_x);
  keys.read("extent_y", rc.extent_y);
  keys.read("slope_deg", rc.slope_deg);
  keys.read("fractal_amplitude", rc.fractal_amplitude);
  keys.read("rock_coverage", rc.rock_coverage);
  keys.read("rock_diameter", diameter);
  keys.read("rock_diameter_max", rc.rock_diameter_max);
  keys.read("start_agl", rc.start_agl);
  keys.read("speed", rc.speed);
  keys.read("frame_rate", rc.frame_rate);
  keys.read("frames", rc.frames);
  read_camera(keys, rc.camera);
  rc.validate();
  return {eval::rockfield_terrain(rc, diameter, seed), rc.camera,
          [rc](const sim::TerrainModel& t) { return eval::rockfield_plan(rc, t); }, rc.frames};
}

Scene cliff_scene(KeyReader& keys, std::uint64_t seed) {
  eval::CliffConfig cc;
  cc.seed = seed;
  keys.read("extent_x", cc.extent_x);
  keys.read("extent_y", cc.extent_y);
  keys.read("slope_deg", cc.slope_deg);
  keys.read("fractal_amplitude", cc.fractal_amplitude);
  keys.read("rock_diameter", cc.rock_diameter);
  keys.read("rock_coverage", cc.rock_coverage);
  keys.read("cliff_drop", cc.cliff_drop);
  keys.read("cliff_edge_x", cc.cliff_edge_x);
  keys.read("start_agl", cc.pre_agl);
  keys.read("lead_in", cc.lead_in);
  keys.read("duration", cc.duration);
  keys.read("speed", cc.speed);
  keys.read("frame_rate", cc.frame_rate);
  read_camera(keys, cc.camera);
  cc.validate();
  Scene s{eval::cliff_terrain(cc), cc.camera, [cc](const sim::TerrainModel& t) { return eval::cliff_plan(cc, t); }};
  keys.read("frames", s.max_frames);
  return s;
}

Scene benchmark_scene(KeyReader& keys, std::uint64_t seed) {
  eval::BenchmarkConfig bc;
  bc.seed = seed;
  keys.read("start_agl", bc.agl);
  keys.read("speed", bc.speed);
  keys.read("frame_rate", bc.frame_rate);
  keys.read("frames", bc.frames);
  keys.read("slope_deg", bc.slope_deg);
  keys.read("fractal_amplitude", bc.fractal_amplitude);
  keys.read("rock_diameter", bc.rock_diameter);
  keys.read("rock_coverage", bc.rock_coverage);
  read_camera(keys, bc.camera);
  bc.validate();
  return {eval::benchmark_terrain(bc), bc.camera,
          [bc](const sim::TerrainModel& t) { return eval::benchmark_plan(bc, t); }, bc.frames};
}

Scene custom_scene(KeyReader& keys, std::uint64_t seed) {
  Scene s;
  auto& tp = s.terrain;
  tp.seed = seed;
  keys.read("extent_x", tp.extent_x);
  keys.read("extent_y", tp.extent_y);
  keys.read("slope_deg", tp.slope_deg);
  keys.read("slope_azimuth_deg", tp.slope_azimuth_deg);
  keys.read("fractal_amplitude", tp.fractal_amplitude);
  keys.read("rock_diameter", tp.rock_diameter);
  keys.read("rock_diameter_max", tp.rock_diameter_max);
  keys.read("rock_coverage", tp.rock_coverage);
  std::optional<double> edge;
  keys.read("cliff_edge_x", edge);
  sim::Cliff cliff;
  keys.read("cliff_drop", cliff.drop);
  if (edge) {
    cliff.edge_x = *edge;
    tp.cliff = cliff;
  }
  read_camera(keys, s.camera);
  double speed = 1.0;
  double rate = 2.0;
  keys.read("speed", speed);
  keys.read("frame_rate", rate);
  keys.read("frames", s.max_frames);
  if (!keys.has("waypoints")) throw ConfigError("custom scenario needs 'waypoints'");
  s.plan = [speed, rate](const sim::TerrainModel&) {
    sim::FlightPlan p;
    p.speed = speed;
    p.frame_rate = rate;
    return p;
  };
  return s;
}

Json plan_json(const sim::FlightPlan& plan) {
  Json w = Json::array();
  for (const auto& p : plan.waypoints) w.push_back({p.x(), p.y(), p.z()});
  return {{"waypoints", w}, {"speed", plan.speed}, {"frame_rate", plan.frame_rate}, {"pitch_deg", plan.pitch_deg}};
}

Json render_json(const sim::RenderOptions& r) {
  return {{"march_step", r.march_step},
          {"intersection_tolerance", r.intersection_tolerance},
          {"variance_disparity_3sigma", r.variance_disparity_3sigma}};
}

std::string frame_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06zu.rimg", k);
  return buf;
}

// ---------------------------------------------------------------------------
// fuse / detect inputs

std::vector<fs::path> range_image_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".rimg") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

void check_rimg_magic(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::array<char, 5> magic{};
  in.read(magic.data(), magic.size());
  if (!in || std::string(magic.data(), magic.size()) != "RIMG1")
    throw FormatError("corrupt range image " + path.string() + ": bad RIMG1 magic");
}

fs::path map_dump_dir(const fs::path& input) {
  if (fs::is_regular_file(input / "header.json")) return input;
  if (fs::is_regular_file(input / "map" / "header.json")) return input / "map";
  throw ConfigError("no map dump (header.json) in " + input.string());
}

fs::path input_dir(KeyReader& keys, const RunOptions& options) {
  std::string value;
  const bool given = keys.read("input", value);
  if (!options.input.empty()) return options.input;
  if (!given) throw ConfigError("an input directory is required (--input or 'input')");
  return resolve(options.config, value);
}

void read_rockfield(KeyReader& keys, eval::RockfieldConfig& rc) {
  keys.read("extent_x", rc.extent_x);
  keys.read("extent_y", rc.extent_y);
  keys.read("slope_deg", rc.slope_deg);
  keys.read("fractal_amplitude", rc.fractal_amplitude);
  keys.read("rock_coverage", rc.rock_coverage);
  keys.read("start_agl", rc.start_agl);
  keys.read("speed", rc.speed);
  keys.read("frame_rate", rc.frame_rate);
  keys.read("frames", rc.frames);
  keys.read("evaluation_keepout", rc.evaluation_keepout);
  read_camera(keys, rc.camera);
  read_map(keys, rc.map);
  read_landing(keys, rc.landing);
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_simulate(const RunOptions& options, std::ostream& log) {
  KeyReader keys(load_config(options.config), "simulate config");
  std::string scenario = "rockfield";
  keys.read("scenario", scenario);
  const std::uint64_t seed = base_seed(keys, options);

  Scene scene;
  if (scenario == "rockfield") scene = rockfield_scene(keys, seed);
  else if (scenario == "cliff") scene = cliff_scene(keys, seed);
  else if (scenario == "benchmark") scene = benchmark_scene(keys, seed);
  else if (scenario == "custom") scene = custom_scene(keys, seed);
  else throw ConfigError("unknown scenario '" + scenario + "' (rockfield, cliff, benchmark, custom)");

  keys.read("fractal_spacing", scene.terrain.fractal_spacing);
  keys.read("fractal_roughness", scene.terrain.fractal_roughness);
  keys.read("cliff_band", scene.terrain.cliff_band);
  double pitch = 0.0;
  keys.read("pitch_deg", pitch);
  std::optional<std::vector<std::array<double, 3>>> waypoints;
  keys.read("waypoints", waypoints);
  sim::RenderOptions render;
  read_render(keys, render);
  keys.finish();
  scene.camera.validate();

  const auto terrain = sim::TerrainModel::generate(scene.terrain);
  sim::FlightPlan plan = scene.plan(terrain);
  if (waypoints) {
    plan.waypoints.clear();
    for (const auto& w : *waypoints) plan.waypoints.emplace_back(w[0], w[1], w[2]);
  }
  plan.pitch_deg = pitch;
  plan.validate();

  prepare_output(options.out);
  const std::uint64_t noise_seed = split_seed(seed, "flight-noise");
  sim::FlightSimulator flight(terrain, plan, scene.camera, noise_seed, render);
  const std::size_t total = scene.max_frames < 0
                                ? flight.frame_count()
                                : std::min(flight.frame_count(), static_cast<std::size_t>(scene.max_frames));
  auto poses = open_out(options.out / "poses.txt");
  double agl_first = 0.0;
  double agl_last = 0.0;
  for (std::size_t k = 0; k < total; ++k) {
    const auto frame = flight.next();
    write_rimg(frame->image, options.out / frame_name(k));
    write_pose_line(poses, frame->pose);
    const double agl = sim::camera_agl(terrain, frame->pose.position);
    if (k == 0) agl_first = agl;
    agl_last = agl;
  }

  Json meta{{"format", "landmap-scene"},
            {"version", 1},
            {"scenario", scenario},
            {"seed", seed},
            {"noise_seed", noise_seed},
            {"frames", total},
            {"terrain", to_json(scene.terrain)},
            {"camera", to_json(scene.camera)},
            {"render", render_json(render)},
            {"plan", plan_json(plan)},
            {"rocks", terrain.rocks().size()}};
  auto f = open_out(options.out / "terrain.meta");
  f << meta.dump(2) << '\n';
  log << "simulate: " << total << " frames, " << terrain.rocks().size() << " rocks, AGL " << fmt("%.2f", agl_first)
      << " m -> " << fmt("%.2f", agl_last) << " m\n";
  return 0;
}

int cmd_fuse(const RunOptions& options, std::ostream& log) {
  KeyReader keys(load_config(options.config), "fuse config");
  const fs::path input = input_dir(keys, options);
  map::MapConfig mc;
  read_map(keys, mc);
  std::optional<double> cx;
  std::optional<double> cy;
  keys.read("center_x", cx);
  keys.read("center_y", cy);

  if (!fs::is_directory(input)) throw ConfigError("input directory " + input.string() + " does not exist");
  CameraModel camera;
  if (fs::is_regular_file(input / "terrain.meta")) {
    std::ifstream in(input / "terrain.meta");
    try {
      camera = camera_from_json(Json::parse(in).at("camera"));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("terrain.meta: " + std::string(e.what()));
    }
  }
  read_camera(keys, camera);
  keys.finish();
  mc.validate();
  camera.validate();

  const auto files = range_image_files(input);
  if (files.empty()) throw Error("no range images (*.rimg) in " + input.string());
  if (!fs::is_regular_file(input / "poses.txt")) throw Error("missing pose log " + (input / "poses.txt").string());
  const auto poses = read_pose_log(input / "poses.txt");
  if (poses.size() != files.size())
    throw Error("frame/pose count mismatch: " + std::to_string(files.size()) + " range images, " +
                std::to_string(poses.size()) + " poses");
  for (std::size_t i = 1; i < poses.size(); ++i)
    if (!(poses[i].timestamp > poses[i - 1].timestamp))
      throw Error("pose timestamps are not increasing at line " + std::to_string(i + 1));
  for (const auto& f : files) check_rimg_magic(f);

  prepare_output(options.out);
  const Vec2 center(cx.value_or(poses.front().position.x()), cy.value_or(poses.front().position.y()));
  auto m = map::PyramidMap::centered_at(mc, center);
  auto stats_csv = open_out(options.out / "stats.csv");
  stats_csv << "frame,timestamp,valid_points,point_updates,cells_updated";
  for (int l = 1; l <= mc.depth; ++l) stats_csv << ",cells_layer_" << l;
  stats_csv << ",rejected,shift_rows,shift_cols\n";
  std::vector<double> updates;
  for (std::size_t k = 0; k < files.size(); ++k) {
    const RangeImage image = read_rimg(files[k]);
    const auto s = map::integrate_frame(m, image, poses[k], camera);
    stats_csv << k << ',' << fmt("%.6f", poses[k].timestamp) << ',' << image.valid_count() << ','
              << s.total_point_updates() << ',' << s.total_cells_updated();
    for (const auto c : s.cells_updated) stats_csv << ',' << c;
    stats_csv << ',' << s.rejected() << ',' << s.shift.rows << ',' << s.shift.cols << '\n';
    updates.push_back(static_cast<double>(s.total_cells_updated()));
  }
  map::save_map(m, options.out / "map");
  map::export_layer_images(m, options.out);
  std::sort(updates.begin(), updates.end());
  log << "fuse: " << files.size() << " frames, median " << fmt("%.0f", updates[updates.size() / 2])
      << " cell updates per frame\n";
  return 0;
}

int cmd_detect(const RunOptions& options, std::ostream& log) {
  KeyReader keys(load_config(options.config), "detect config");
  const fs::path input = input_dir(keys, options);
  detect::LandingConfig lc;
  read_landing(keys, lc);
  detect::DetectOptions dopt;
  keys.read("prune", dopt.prune);
  keys.read("max_candidates", dopt.max_candidates);
  std::optional<double> expected_resolution;
  keys.read("finest_resolution", expected_resolution);
  keys.finish();
  lc.validate();

  if (!fs::is_directory(input)) throw ConfigError("input directory " + input.string() + " does not exist");
  const auto m = map::load_map(map_dump_dir(input));
  const double res = m.config().finest_resolution;
  if (expected_resolution && std::abs(*expected_resolution - res) > 1e-9 * res)
    throw ConfigError("config resolution " + fmt("%g", *expected_resolution) + " m does not match map resolution " +
                      fmt("%g", res) + " m");

  prepare_output(options.out);
  const auto landing = detect::detect(m, lc, dopt);
  detect::write_landing_pgm(landing, options.out / "landing.pgm");
  detect::write_candidates_csv(landing.candidates, options.out / "candidates.csv");
  auto classes = open_out(options.out / "classes.csv");
  classes << "class,cells\n";
  for (const auto c : {detect::LandingClass::kSafe, detect::LandingClass::kHazard, detect::LandingClass::kUnknown,
                       detect::LandingClass::kBorder, detect::LandingClass::kNoData})
    classes << detect::to_string(c) << ',' << landing.count(c) << '\n';
  const Json meta{{"rows", landing.rows},
                  {"cols", landing.cols},
                  {"resolution", landing.resolution},
                  {"origin", {landing.origin.x(), landing.origin.y()}}};
  open_out(options.out / "landing.json") << meta.dump(2) << '\n';
  log << "detect: " << landing.count(detect::LandingClass::kSafe) << " safe cells, " << landing.candidates.size()
      << " candidates\n";
  return 0;
}

int cmd_eval(const RunOptions& options, std::ostream& log) {
  KeyReader keys(load_config(options.config), "eval config");
  std::string experiment = "rockfield";
  keys.read("experiment", experiment);
  const std::uint64_t seed = base_seed(keys, options);
  const auto gates = gates_for(keys, options);
  Metrics metrics;

  if (experiment == "rockfield" || experiment == "altitude") {
    eval::RockfieldConfig rc;
    read_rockfield(keys, rc);
    int count = 8;
    keys.read("seed_count", count);
    rc.seeds = seed_range(seed, count);
    if (experiment == "rockfield") {
      std::vector<double> diameters{0.1, 0.2, 0.3, 0.4, 0.5, 1.0};
      keys.read("diameters", diameters);
      keys.finish();
      rc.validate();
      prepare_output(options.out);
      std::vector<eval::RockfieldReport> reports;
      for (const double d : diameters) {
        reports.push_back(eval::run_rockfield_experiment(d, rc));
        const auto& r = reports.back();
        put_rate(metrics, "recall[" + tag("d", d) + "]", r.with_margin.recall);
        put_rate(metrics, "detection_rate[" + tag("d", d) + "]", r.with_margin.detection_rate);
        put_rate(metrics, "fp_rate[" + tag("d", d) + "]", r.with_margin.false_positive_rate);
        put_rate(metrics, "recall_no_margin[" + tag("d", d) + "]", r.without_margin.recall);
        put_rate(metrics, "detection_rate_no_margin[" + tag("d", d) + "]", r.without_margin.detection_rate);
        put_rate(metrics, "fp_rate_no_margin[" + tag("d", d) + "]", r.without_margin.false_positive_rate);
        log << "eval: rock diameter " << fmt("%g", d) << " m done\n";
      }
      auto csv = open_out(options.out / "rockfield.csv");
      eval::write_rockfield_csv(reports, csv);
      auto table = open_out(options.out / "rockfield_table.txt");
      eval::write_rockfield_table(reports, table);
      eval::write_rockfield_table(reports, log);
    } else {
      std::vector<double> altitudes{5.0, 15.0};
      double diameter = 0.3;
      keys.read("altitudes", altitudes);
      keys.read("rock_diameter", diameter);
      keys.finish();
      rc.validate();
      prepare_output(options.out);
      const auto points = eval::run_altitude_sweep(altitudes, diameter, rc);
      for (const auto& p : points) {
        put_rate(metrics, "recall[" + tag("agl", p.altitude) + "]", p.rates.recall);
        put_rate(metrics, "detection_rate[" + tag("agl", p.altitude) + "]", p.rates.detection_rate);
        put_rate(metrics, "fp_rate[" + tag("agl", p.altitude) + "]", p.rates.false_positive_rate);
      }
      auto csv = open_out(options.out / "altitude.csv");
      eval::write_altitude_csv(points, csv);
      eval::write_altitude_csv(points, log);
    }
  } else if (experiment == "cell_size") {
    eval::CellSizeConfig cs;
    read_rockfield(keys, cs.base);
    int count = 4;
    keys.read("seed_count", count);
    cs.base.seeds = seed_range(seed, count);
    keys.read("cell_sizes", cs.cell_sizes);
    keys.read("extent_cells", cs.extent_cells);
    keys.read("min_diameter", cs.min_diameter);
    keys.read("max_diameter", cs.max_diameter);
    keys.read("bin_edges", cs.bin_edges);
    keys.finish();
    cs.base.validate();
    prepare_output(options.out);
    const auto results = eval::run_cell_size_experiment(cs);
    for (const auto& r : results) {
      put_rate(metrics, "recall[" + tag("cell", r.cell_size) + "]", r.metrics.recall());
      for (std::size_t b = 0; b < r.bin_visible.size(); ++b)
        put_rate(metrics,
                 "detection_rate[" + tag("cell", r.cell_size) + "," + tag("bin", cs.bin_edges[b]) + "]",
                 r.bin_rate(b));
    }
    auto csv = open_out(options.out / "cell_size.csv");
    eval::write_cell_size_csv(results, cs.bin_edges, csv);
    eval::write_cell_size_csv(results, cs.bin_edges, log);
  } else if (experiment == "cliff") {
    eval::CliffConfig cc;
    cc.seed = seed;
    keys.read("extent_x", cc.extent_x);
    keys.read("extent_y", cc.extent_y);
    keys.read("slope_deg", cc.slope_deg);
    keys.read("fractal_amplitude", cc.fractal_amplitude);
    keys.read("rock_diameter", cc.rock_diameter);
    keys.read("rock_coverage", cc.rock_coverage);
    keys.read("cliff_drop", cc.cliff_drop);
    keys.read("cliff_edge_x", cc.cliff_edge_x);
    keys.read("start_agl", cc.pre_agl);
    keys.read("lead_in", cc.lead_in);
    keys.read("duration", cc.duration);
    keys.read("speed", cc.speed);
    keys.read("frame_rate", cc.frame_rate);
    read_camera(keys, cc.camera);
    read_map(keys, cc.map);
    keys.finish();
    cc.validate();
    prepare_output(options.out);
    const auto report = eval::run_cliff_experiment(cc);
    if (!report.samples.empty()) {
      const auto& last = report.samples.back();
      put_rate(metrics, "rmse_flat", last.deepest.flat);
      put_rate(metrics, "rmse_rock", last.deepest.rock);
      put_rate(metrics, "rmse_cliff", last.deepest.cliff);
      put_rate(metrics, "rmse_total", last.deepest.total);
      put_rate(metrics, "rmse_lower", last.lower_rmse);
      metrics["lower_fine_cells"] = static_cast<double>(last.lower_fine_cells);
      for (const auto& s : report.samples) {
        if (s.time >= report.edge_in_view) break;
        put_rate(metrics, "rmse_total_before_edge", s.deepest.total);
        put_rate(metrics, "rmse_upper_before_edge", s.upper_rmse);
      }
    }
    auto csv = open_out(options.out / "cliff.csv");
    eval::write_cliff_csv(report, csv);
    log << "eval: cliff flight, " << report.samples.size() << " samples\n";
  } else {
    throw ConfigError("unknown experiment '" + experiment + "' (rockfield, cell_size, altitude, cliff)");
  }
  return finish_gates(gates, metrics, options.out, log);
}

int cmd_bench(const RunOptions& options, std::ostream& log) {
  KeyReader keys(load_config(options.config), "bench config");
  eval::BenchmarkConfig bc;
  bc.seed = base_seed(keys, options);
  const auto gates = gates_for(keys, options);
  keys.read("agl", bc.agl);
  keys.read("speed", bc.speed);
  keys.read("frame_rate", bc.frame_rate);
  keys.read("frames", bc.frames);
  keys.read("slope_deg", bc.slope_deg);
  keys.read("fractal_amplitude", bc.fractal_amplitude);
  keys.read("rock_diameter", bc.rock_diameter);
  keys.read("rock_coverage", bc.rock_coverage);
  read_camera(keys, bc.camera);
  read_map(keys, bc.map);
  read_landing(keys, bc.landing);
  keys.finish();
  bc.validate();
  prepare_output(options.out);

  const auto report = eval::run_benchmark(bc);
  {
    auto csv = open_out(options.out / "benchmark.csv");
    eval::write_benchmark_csv(report, csv);
    auto frames = open_out(options.out / "frame_times.csv");
    frames << "frame,fuse_ms,detect_ms,cells_updated\n";
    for (std::size_t k = 0; k < report.fuse_ms.size(); ++k)
      frames << k << ',' << fmt("%.4f", report.fuse_ms[k]) << ',' << fmt("%.4f", report.detect_ms[k]) << ','
             << report.cells_updated[k] << '\n';
  }
  eval::write_benchmark_csv(report, log);
  const Metrics metrics{{"fuse_median_ms", report.fuse.median_ms},
                        {"fuse_stddev_ms", report.fuse.stddev_ms},
                        {"detect_median_ms", report.detect.median_ms},
                        {"detect_stddev_ms", report.detect.stddev_ms},
                        {"cells_updated_median", report.median_cells_updated},
                        {"payload_bytes", static_cast<double>(report.payload_bytes)},
                        {"map_cells", static_cast<double>(report.map_cells)}};
  return finish_gates(gates, metrics, options.out, log);
}

}  // namespace landmap::cli
