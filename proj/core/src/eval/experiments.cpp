#include "landmap/eval/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "landmap/map/pyramid_map.hpp"

namespace landmap::eval {

void RockfieldConfig::validate() const {
  if (!(extent_x > 0.0 && extent_y > 0.0)) throw ConfigError("rockfield extent must be positive");
  if (!(start_agl > 0.0)) throw ConfigError("start_agl must be positive");
  if (!(speed > 0.0 && frame_rate > 0.0)) throw ConfigError("speed and frame_rate must be positive");
  if (frames < 1) throw ConfigError("frames must be at least 1");
  if (!(evaluation_keepout >= 0.0)) throw ConfigError("evaluation_keepout must be non-negative");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  camera.validate();
  map.validate();
  landing.validate();
}

sim::TerrainParams rockfield_terrain(const RockfieldConfig& config, double rock_diameter, std::uint64_t seed) {
  sim::TerrainParams tp;
  tp.seed = seed;
  tp.extent_x = config.extent_x;
  tp.extent_y = config.extent_y;
  tp.slope_deg = config.slope_deg;
  tp.fractal_amplitude = config.fractal_amplitude;
  tp.rock_diameter = rock_diameter;
  tp.rock_diameter_max = config.rock_diameter_max;
  tp.rock_coverage = rock_diameter > 0.0 ? config.rock_coverage : 0.0;
  return tp;
}

sim::FlightPlan rockfield_plan(const RockfieldConfig& config, const sim::TerrainModel& terrain) {
  const double length = config.speed * (config.frames - 1) / config.frame_rate;
  const double y = config.extent_y / 2.0;
  const double x_start = config.extent_x / 2.0 + length / 2.0;
  const double z = terrain.plane_height(x_start, y) + config.start_agl;
  sim::FlightPlan plan;
  // slope ascends along +x, so flying toward -x at constant altitude climbs in AGL
  plan.waypoints = {Vec3(x_start, y, z), Vec3(x_start - std::max(length, 1e-6), y, z)};
  plan.speed = config.speed;
  plan.frame_rate = config.frame_rate;
  return plan;
}

RateSummary summarize(const std::vector<LandingMetrics>& per_seed) {
  RateSummary s;
  LandingMetrics pooled;
  std::vector<double> recall;
  std::vector<double> detection;
  std::vector<double> fp;
  for (const auto& m : per_seed) {
    pooled += m;
    if (auto v = m.recall()) recall.push_back(*v);
    if (auto v = m.detection_rate()) detection.push_back(*v);
    if (auto v = m.false_positive_rate()) fp.push_back(*v);
  }
  s.recall = pooled.recall();
  s.detection_rate = pooled.detection_rate();
  s.false_positive_rate = pooled.false_positive_rate();
  s.recall_seeds = mean_std(recall);
  s.detection_seeds = mean_std(detection);
  s.false_positive_seeds = mean_std(fp);
  s.rocks_visible = pooled.rocks_visible;
  s.rocks_detected = pooled.rocks_detected;
  return s;
}

namespace {

map::PyramidMap fly_and_fuse(const sim::TerrainModel& terrain, const sim::FlightPlan& plan,
                             const CameraModel& camera, const map::MapConfig& map_config, std::uint64_t seed,
                             int max_frames) {
  sim::FlightSimulator flight(terrain, plan, camera, split_seed(seed, "flight-noise"));
  const Vec3& p0 = plan.waypoints.front();
  auto m = map::PyramidMap::centered_at(map_config, Vec2(p0.x(), p0.y()));
  int k = 0;
  while (auto frame = flight.next()) {
    if (k++ >= max_frames) break;
    map::integrate_frame(m, frame->image, frame->pose, camera);
  }
  return m;
}

}  // namespace

RockfieldReport run_rockfield_experiment(double rock_diameter, const RockfieldConfig& config) {
  config.validate();
  RockfieldReport report;
  report.rock_diameter = rock_diameter;
  detect::LandingConfig plain = config.landing;
  plain.safety_margin = 0.0;
  plain.rock_area_radius = std::min(plain.rock_area_radius, plain.keepout_radius);
  const TruthConfig truth{config.evaluation_keepout, config.landing.max_slope_deg};

  std::vector<LandingMetrics> with;
  std::vector<LandingMetrics> without;
  for (const auto seed : config.seeds) {
    const auto terrain = sim::TerrainModel::generate(rockfield_terrain(config, rock_diameter, seed));
    const auto plan = rockfield_plan(config, terrain);
    const auto m = fly_and_fuse(terrain, plan, config.camera, config.map, seed, config.frames);
    SeedResult r;
    r.seed = seed;
    r.rocks = terrain.rocks().size();
    r.with_margin = landing_metrics(detect::detect(m, config.landing), terrain, truth);
    r.without_margin = landing_metrics(detect::detect(m, plain), terrain, truth);
    with.push_back(r.with_margin);
    without.push_back(r.without_margin);
    report.seeds.push_back(std::move(r));
  }
  report.with_margin = summarize(with);
  report.without_margin = summarize(without);
  return report;
}

CellSizeConfig::CellSizeConfig() {
  base.slope_deg = 0.0;
  base.rock_coverage = 0.05;
  base.camera = CameraModel{110.0, 640, 480, 0.25, 0.8};
  base.landing = detect::LandingConfig{0.4, 0.1, 0.5, 10.0, 0.1, 3, std::nullopt};
  base.evaluation_keepout = 0.3;
  base.seeds = {1, 2, 3, 4};
}

std::optional<double> CellSizeResult::bin_rate(std::size_t bin) const {
  if (bin >= bin_visible.size() || bin_visible[bin] == 0) return std::nullopt;
  return static_cast<double>(bin_detected[bin]) / static_cast<double>(bin_visible[bin]);
}

std::vector<CellSizeResult> run_cell_size_experiment(const CellSizeConfig& config) {
  if (config.cell_sizes.size() != config.extent_cells.size())
    throw ConfigError("cell_sizes and extent_cells must have the same length");
  if (config.bin_edges.size() < 2) throw ConfigError("at least two bin edges are required");
  RockfieldConfig base = config.base;
  base.rock_diameter_max = config.max_diameter;
  base.validate();

  const std::size_t bins = config.bin_edges.size() - 1;
  std::vector<CellSizeResult> results(config.cell_sizes.size());
  std::vector<map::MapConfig> maps;
  for (std::size_t i = 0; i < config.cell_sizes.size(); ++i) {
    map::MapConfig mc = base.map;
    mc.finest_resolution = config.cell_sizes[i];
    mc.extent_cells = config.extent_cells[i];
    mc.validate();
    maps.push_back(mc);
    results[i].cell_size = config.cell_sizes[i];
    results[i].bin_visible.assign(bins, 0);
    results[i].bin_detected.assign(bins, 0);
  }
  const TruthConfig truth{base.evaluation_keepout, base.landing.max_slope_deg};

  for (const auto seed : base.seeds) {
    const auto terrain = sim::TerrainModel::generate(rockfield_terrain(base, config.min_diameter, seed));
    const auto plan = rockfield_plan(base, terrain);
    sim::FlightSimulator flight(terrain, plan, base.camera, split_seed(seed, "flight-noise"));
    const Vec3& p0 = plan.waypoints.front();
    std::vector<map::PyramidMap> fused;
    for (const auto& mc : maps) fused.push_back(map::PyramidMap::centered_at(mc, Vec2(p0.x(), p0.y())));
    int k = 0;
    while (auto frame = flight.next()) {
      if (k++ >= base.frames) break;
      for (auto& m : fused) map::integrate_frame(m, frame->image, frame->pose, base.camera);
    }
    for (std::size_t i = 0; i < fused.size(); ++i) {
      const auto metrics = landing_metrics(detect::detect(fused[i], base.landing), terrain, truth);
      for (const auto& rock : metrics.rocks) {
        for (std::size_t b = 0; b < bins; ++b) {
          const bool last = b + 1 == bins;
          if (rock.diameter >= config.bin_edges[b] &&
              (rock.diameter < config.bin_edges[b + 1] || (last && rock.diameter <= config.bin_edges[b + 1]))) {
            ++results[i].bin_visible[b];
            if (rock.detected) ++results[i].bin_detected[b];
            break;
          }
        }
      }
      results[i].metrics += metrics;
    }
  }
  return results;
}

std::vector<AltitudePoint> run_altitude_sweep(const std::vector<double>& altitudes, double rock_diameter,
                                              const RockfieldConfig& config) {
  std::vector<AltitudePoint> out;
  for (const double agl : altitudes) {
    RockfieldConfig c = config;
    c.start_agl = agl;
    const auto report = run_rockfield_experiment(rock_diameter, c);
    out.push_back({agl, report.with_margin});
  }
  return out;
}

void CliffConfig::validate() const {
  if (!(extent_x > 0.0 && extent_y > 0.0)) throw ConfigError("cliff extent must be positive");
  if (!(cliff_edge_x > 0.0 && cliff_edge_x < extent_x)) throw ConfigError("cliff edge must lie inside the extent");
  if (!(pre_agl > 0.0 && duration > 0.0 && speed > 0.0 && frame_rate > 0.0))
    throw ConfigError("cliff flight parameters must be positive");
  camera.validate();
  map.validate();
}

sim::TerrainParams cliff_terrain(const CliffConfig& config) {
  sim::TerrainParams tp;
  tp.seed = config.seed;
  tp.extent_x = config.extent_x;
  tp.extent_y = config.extent_y;
  tp.slope_deg = config.slope_deg;
  tp.slope_azimuth_deg = 90.0;  // constant ground height along the flight line
  tp.fractal_amplitude = config.fractal_amplitude;
  tp.rock_diameter = config.rock_coverage > 0.0 ? config.rock_diameter : 0.0;
  tp.rock_coverage = config.rock_coverage;
  tp.cliff = sim::Cliff{config.cliff_edge_x, config.cliff_drop};
  return tp;
}

sim::FlightPlan cliff_plan(const CliffConfig& config, const sim::TerrainModel& terrain) {
  const double reach = config.pre_agl * config.camera.tan_half_fov_x();
  const double x0 = config.cliff_edge_x - reach - config.lead_in * config.speed;
  const double y = config.extent_y / 2.0;
  const double z = terrain.plane_height(x0, y) + config.pre_agl;
  sim::FlightPlan plan;
  plan.waypoints = {Vec3(x0, y, z), Vec3(x0 + config.duration * config.speed, y, z)};
  plan.speed = config.speed;
  plan.frame_rate = config.frame_rate;
  return plan;
}

CliffReport run_cliff_experiment(const CliffConfig& config) {
  config.validate();
  const auto terrain = sim::TerrainModel::generate(cliff_terrain(config));
  const auto plan = cliff_plan(config, terrain);
  const double x0 = plan.waypoints.front().x();
  const double y = plan.waypoints.front().y();

  CliffReport report;
  report.edge_in_view = config.lead_in;
  sim::FlightSimulator flight(terrain, plan, config.camera, split_seed(config.seed, "flight-noise"));
  auto m = map::PyramidMap::centered_at(config.map, Vec2(x0, y));
  const int d = config.map.depth;
  while (auto frame = flight.next()) {
    const auto stats = map::integrate_frame(m, frame->image, frame->pose, config.camera);
    RmseSample s;
    s.time = frame->pose.timestamp;
    s.agl = sim::camera_agl(terrain, frame->pose.position);
    s.deepest = map_rmse(m, terrain);
    for (int l = 1; l <= d; ++l) s.per_layer_total.push_back(map_rmse(m, terrain, l).total);
    const double band = terrain.params().cliff_band;
    double sse_up = 0.0;
    double sse_low = 0.0;
    std::size_t n_up = 0;
    std::size_t n_low = 0;
    for (int r = 0; r < config.map.extent_cells; ++r) {
      for (int c = 0; c < config.map.extent_cells; ++c) {
        const auto rec = m.reconstruct(r, c, d);
        if (!rec) continue;
        const Vec2 p = m.cell_center(d, r, c);
        if (!terrain.contains(p.x(), p.y())) continue;
        const double e = rec->height - terrain.height(p.x(), p.y());
        if (p.x() < config.cliff_edge_x - band) {
          sse_up += e * e;
          ++n_up;
        } else if (p.x() > config.cliff_edge_x + band) {
          sse_low += e * e;
          ++n_low;
          if (rec->resolved_level == d) ++s.lower_fine_cells;
        }
      }
    }
    if (n_up) s.upper_rmse = std::sqrt(sse_up / static_cast<double>(n_up));
    s.lower_cells = n_low;
    if (n_low) s.lower_rmse = std::sqrt(sse_low / static_cast<double>(n_low));
    s.cells_updated = stats.total_cells_updated();
    report.samples.push_back(std::move(s));
  }
  return report;
}

}  // namespace landmap::eval
