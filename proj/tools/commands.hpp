#ifndef LANDMAP_TOOLS_COMMANDS_HPP
#define LANDMAP_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace landmap::cli {

/// Flags shared by every subcommand. Flags win over config-file keys.
struct RunOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out;
  /// Overrides the "input" key of fuse and detect.
  std::filesystem::path input;
  bool check = false;
};

// Each command returns the process exit status (0, or 1 for failed gates in
// --check mode) and throws landmap::Error for anything else.
int cmd_simulate(const RunOptions& options, std::ostream& log);
int cmd_fuse(const RunOptions& options, std::ostream& log);
int cmd_detect(const RunOptions& options, std::ostream& log);
int cmd_eval(const RunOptions& options, std::ostream& log);
int cmd_bench(const RunOptions& options, std::ostream& log);

}  // namespace landmap::cli

#endif  // LANDMAP_TOOLS_COMMANDS_HPP
