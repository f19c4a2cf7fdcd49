#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "fracrobin/cli/run_config.hpp"

namespace fracrobin::cli {

/// Process exit statuses.
enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitInvalidInput = 2,
    kExitInapplicable = 3,
};

// Each command writes its CSVs into cfg.out_dir and progress/diagnostics to `log`.
int cmd_eigen(const RunConfig& cfg, std::ostream& log);
int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_oracle(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log, const std::optional<std::filesystem::path>& field = {});
int cmd_converge(const RunConfig& cfg, std::ostream& log);

/// Parses argv (subcommand plus --config/--out/--seed/--cache) and dispatches.
int run_cli(int argc, const char* const* argv, std::ostream& log);

}  // namespace fracrobin::cli
