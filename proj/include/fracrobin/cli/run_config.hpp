#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fracrobin/cli/catalog.hpp"

namespace fracrobin::cli {

struct SolverConfig {
    std::size_t modes = 0;  // 0: default for the domain
    std::size_t steps = 256;
    std::size_t fd_intervals = 256;
};

struct VerifyConfig {
    std::vector<std::string> checks{"weak_max", "strong_positivity", "hopf_max", "hopf_min", "extremum_caputo"};
    double tol = 1e-8;  // relative to max |u|
    bool skip_hypotheses = false;
    std::size_t suite_runs = 50;
    std::size_t suite_modes = 32;
    std::size_t suite_steps = 128;
};

struct ConvergeConfig {
    std::string study = "fd_time";  // fd_time | spectral_modes
    std::vector<std::size_t> levels{32, 64, 128};
};

struct RunConfig {
    ProblemConfig problem;
    SolverConfig solver;
    VerifyConfig verify;
    ConvergeConfig converge;
    std::uint64_t seed = 0;
    std::filesystem::path out_dir = ".";
    std::filesystem::path cache_dir;  // empty: <out>/eigen-cache

    /// Canonical key=value text of every setting that influences results.
    std::string canonical() const;
    std::uint64_t hash() const;
};

/// Reads an INI file with sections [problem], [solver], [verify], [converge].
/// Unknown keys are rejected so typos cannot silently fall back to defaults.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& text);

}  // namespace fracrobin::cli
