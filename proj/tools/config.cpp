#include "config.hpp"

#include <fstream>

namespace landmap::cli {

Json load_config(const std::filesystem::path& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  Json j;
  try {
    j = Json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file " + path.string() + " must contain a JSON object");
  return j;
}

KeyReader::KeyReader(Json object, std::string context) : object_(std::move(object)), context_(std::move(context)) {
  if (!object_.is_object()) throw ConfigError(context_ + ": expected a key/value object");
}

void KeyReader::finish() const {
  std::string unknown;
  for (const auto& [key, value] : object_.items()) {
    if (consumed_.count(key)) continue;
    if (!unknown.empty()) unknown += ", ";
    unknown += "'" + key + "'";
  }
  if (!unknown.empty()) throw ConfigError(context_ + ": unknown key(s) " + unknown);
}

void read_camera(KeyReader& keys, CameraModel& camera) {
  keys.read("fov_x_deg", camera.fov_x_deg);
  keys.read("image_width", camera.image_width);
  keys.read("image_height", camera.image_height);
  keys.read("disparity_noise_3sigma", camera.disparity_noise_3sigma);
  keys.read("overlap_fraction", camera.overlap_fraction);
}

void read_map(KeyReader& keys, map::MapConfig& config) {
  keys.read("depth", config.depth);
  keys.read("finest_resolution", config.finest_resolution);
  keys.read("extent_cells", config.extent_cells);
  keys.read("disparity_error_px", config.disparity_error_px);
}

void read_landing(KeyReader& keys, detect::LandingConfig& config) {
  keys.read("keepout_radius", config.keepout_radius);
  keys.read("safety_margin", config.safety_margin);
  keys.read("rock_area_radius", config.rock_area_radius);
  keys.read("max_slope_deg", config.max_slope_deg);
  keys.read("max_roughness_m", config.max_roughness);
  keys.read("min_observations", config.min_observations);
  keys.read("max_variance", config.max_variance);
}

void read_render(KeyReader& keys, sim::RenderOptions& options) {
  keys.read("march_step", options.march_step);
  keys.read("intersection_tolerance", options.intersection_tolerance);
  keys.read("variance_disparity_3sigma", options.variance_disparity_3sigma);
}

Json to_json(const CameraModel& c) {
  return {{"fov_x_deg", c.fov_x_deg},
          {"image_width", c.image_width},
          {"image_height", c.image_height},
          {"disparity_noise_3sigma", c.disparity_noise_3sigma},
          {"overlap_fraction", c.overlap_fraction}};
}

CameraModel camera_from_json(const Json& j) {
  CameraModel c;
  KeyReader keys(j, "camera");
  read_camera(keys, c);
  keys.finish();
  return c;
}

Json to_json(const sim::TerrainParams& p) {
  Json j{{"seed", p.seed},
         {"extent_x", p.extent_x},
         {"extent_y", p.extent_y},
         {"slope_deg", p.slope_deg},
         {"slope_azimuth_deg", p.slope_azimuth_deg},
         {"fractal_amplitude", p.fractal_amplitude},
         {"fractal_spacing", p.fractal_spacing},
         {"fractal_roughness", p.fractal_roughness},
         {"rock_diameter", p.rock_diameter},
         {"rock_diameter_max", p.rock_diameter_max},
         {"rock_coverage", p.rock_coverage},
         {"cliff_band", p.cliff_band}};
  j["cliff"] = p.cliff ? Json{{"edge_x", p.cliff->edge_x}, {"drop", p.cliff->drop}} : Json(nullptr);
  return j;
}

sim::TerrainParams terrain_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("terrain parameters must be an object");
  sim::TerrainParams p;
  try {
    p.seed = j.at("seed").get<std::uint64_t>();
    p.extent_x = j.at("extent_x").get<double>();
    p.extent_y = j.at("extent_y").get<double>();
    p.slope_deg = j.at("slope_deg").get<double>();
    p.slope_azimuth_deg = j.at("slope_azimuth_deg").get<double>();
    p.fractal_amplitude = j.at("fractal_amplitude").get<double>();
    p.fractal_spacing = j.at("fractal_spacing").get<double>();
    p.fractal_roughness = j.at("fractal_roughness").get<double>();
    p.rock_diameter = j.at("rock_diameter").get<double>();
    p.rock_diameter_max = j.at("rock_diameter_max").get<double>();
    p.rock_coverage = j.at("rock_coverage").get<double>();
    p.cliff_band = j.at("cliff_band").get<double>();
    const Json& cliff = j.at("cliff");
    if (!cliff.is_null()) p.cliff = sim::Cliff{cliff.at("edge_x").get<double>(), cliff.at("drop").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("terrain parameters: ") + e.what());
  }
  return p;
}

}  // namespace landmap::cli
