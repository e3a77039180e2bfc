#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cover_games/io.hpp"

namespace cover_games::cli {

struct RunConfig {
  int horizon = 8;
  bool horizon_set = false;
  /// Defaults to the space mesh.
  std::optional<Rational> margin;
  int tail_slack = 1;
  std::size_t point_cap = default_point_cap();
  std::uint64_t seed = 0;
};

/// Overlays the fields present in a run.json object.
void apply_config(RunConfig& config, const io::Json& j);

/// Runs one subcommand. The Report goes to `out` (or to --out), diagnostics
/// to `err`. Returns 0 when every check passes, 1 on a failed check, 2 on
/// bad input or usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// decompose -> scplus -> haver on a built-in space, with stage attribution.
io::Json pipeline_demo(const std::string& label, const RunConfig& config, const std::vector<Rational>& epsilons);

}  // namespace cover_games::cli
