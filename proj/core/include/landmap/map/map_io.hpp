#ifndef LANDMAP_MAP_MAP_IO_HPP
#define LANDMAP_MAP_MAP_IO_HPP

#include <filesystem>

#include "landmap/map/pyramid_map.hpp"

namespace landmap::map {

// Map dump layout inside `dir`:
//   header.json       config, origin, roll_offset
//   layer_<l>.csv     row,col,value,variance,observation_count (observed cells)
void save_map(const PyramidMap& map, const std::filesystem::path& dir);
/// Inverse of save_map. Throws FormatError on malformed input.
PyramidMap load_map(const std::filesystem::path& dir);

/// Writes layer_<l>.pgm (16-bit heights reconstructed through layer l,
/// normalized min to max; the scale is in the comment line) and
/// layer_<l>_mask.pgm (255 where layer l itself is observed, else 0) for
/// every layer.
void export_layer_images(const PyramidMap& map, const std::filesystem::path& dir);

}  // namespace landmap::map

#endif  // LANDMAP_MAP_MAP_IO_HPP
