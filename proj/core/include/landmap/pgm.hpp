#ifndef LANDMAP_PGM_HPP
#define LANDMAP_PGM_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace landmap {

/// Binary (P5) grayscale image. `maxval` is 255 or 65535; row 0 is written
/// first. Pixels are row-major.
struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint16_t> pixels;
  /// Comment lines without the leading '#'.
  std::vector<std::string> comments;
};

void write_pgm(const PgmImage& image, const std::filesystem::path& path);
/// Reads P5 images written by write_pgm. Throws FormatError.
PgmImage read_pgm(const std::filesystem::path& path);

}  // namespace landmap

#endif  // LANDMAP_PGM_HPP
