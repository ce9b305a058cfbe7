#ifndef LANDMAP_TOOLS_CONFIG_HPP
#define LANDMAP_TOOLS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "landmap/common.hpp"
#include "landmap/detect/detector.hpp"
#include "landmap/map/lod.hpp"
#include "landmap/sim/render.hpp"
#include "landmap/sim/terrain.hpp"

namespace landmap::cli {

using Json = nlohmann::json;

/// Reads an optional config file. The file must hold one flat JSON object;
/// an empty path yields an empty object.
Json load_config(const std::filesystem::path& path);

/// Typed access to a flat key/value object. Every key must be consumed by
/// some reader before finish(), otherwise finish() reports the leftovers.
class KeyReader {
 public:
  KeyReader(Json object, std::string context);

  template <typename T>
  bool read(std::string_view key, T& out) {
    const auto it = object_.find(std::string(key));
    if (it == object_.end()) return false;
    consumed_.insert(std::string(key));
    try {
      out = it->template get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(context_ + ": key '" + std::string(key) + "' has the wrong type");
    }
    return true;
  }

  template <typename T>
  bool read(std::string_view key, std::optional<T>& out) {
    T v{};
    if (!read(key, v)) return false;
    out = v;
    return true;
  }

  bool has(std::string_view key) const { return object_.contains(std::string(key)); }
  void finish() const;

 private:
  Json object_;
  std::string context_;
  std::set<std::string> consumed_;
};

void read_camera(KeyReader& keys, CameraModel& camera);
void read_map(KeyReader& keys, map::MapConfig& config);
void read_landing(KeyReader& keys, detect::LandingConfig& config);
void read_render(KeyReader& keys, sim::RenderOptions& options);

Json to_json(const CameraModel& camera);
CameraModel camera_from_json(const Json& j);
Json to_json(const sim::TerrainParams& params);
/// Inverse of to_json(TerrainParams); every field is required.
sim::TerrainParams terrain_from_json(const Json& j);

}  // namespace landmap::cli

#endif  // LANDMAP_TOOLS_CONFIG_HPP
