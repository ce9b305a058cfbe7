#ifndef LANDMAP_DETECT_LANDING_IO_HPP
#define LANDMAP_DETECT_LANDING_IO_HPP

#include <filesystem>
#include <vector>

#include "landmap/detect/detector.hpp"

namespace landmap::detect {

/// 8-bit PGM of class codes (see pgm_code); row 0 is the minimum-y row.
void write_landing_pgm(const LandingMap& landing, const std::filesystem::path& path);
/// Inverse of write_landing_pgm for the class grid. Throws FormatError.
std::vector<LandingClass> read_landing_pgm(const std::filesystem::path& path, int& rows, int& cols);

/// CSV with header "rank,world_x,world_y,clearance_m"; rank starts at 1.
void write_candidates_csv(const std::vector<Candidate>& candidates, const std::filesystem::path& path);
/// Reads world position and clearance back; row/col are left at 0.
std::vector<Candidate> read_candidates_csv(const std::filesystem::path& path);

}  // namespace landmap::detect

#endif  // LANDMAP_DETECT_LANDING_IO_HPP
