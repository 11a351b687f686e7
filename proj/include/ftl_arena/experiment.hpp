#pragma once

#include <optional>
#include <string>

#include "ftl_arena/config.hpp"

namespace ftla {

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  bool no_svg = false;
};

// Exit codes: 0 success, 1 config error, 2 runtime error.

/// Fixed-horizon experiment: every learner (x adversary L variant) against
/// the same per-trial loss streams. Writes trial-0 trace CSVs, a final-regret
/// summary CSV, a mean regret-curve CSV, and the requested SVG charts.
int cmd_run(const std::string& config_path, const RunOverrides& overrides = {});

/// Horizon-grid experiment: Monte-Carlo regret tables per series, the
/// log-vs-sqrt growth fit report, and SVG charts in both axis conventions.
int cmd_sweep(const std::string& config_path, const RunOverrides& overrides = {});

}  // namespace ftla
