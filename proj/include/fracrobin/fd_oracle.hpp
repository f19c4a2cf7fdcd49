#pragma once

#include <cstddef>

#include "fracrobin/problem.hpp"

namespace fracrobin {

/// Implicit L1 / central-difference scheme on an interval.
struct FDConfig {
    std::size_t space_intervals = 256;  // J; the mesh has J + 1 nodes
    std::size_t time_steps = 256;       // K
    double pivot_tol = 1e-300;          // Thomas pivots below this count as breakdown
};

/// Solves the full problem on its own mesh of J + 1 nodes (the spec's mesh
/// is ignored). The field keeps u in u1, zeros in u2/u3 and the lift.
SolutionField solve_fd(const ProblemSpec& spec, const FDConfig& cfg);

struct ErrorReport {
    double rel_l2l2 = 0.0;
    double rel_max = 0.0;
    double abs_l2l2 = 0.0;
    double abs_max = 0.0;
};

/// Compares a against the reference b on the coarser of the two nested
/// space-time grids (trapezoid weights in space and time).
ErrorReport compare(const SolutionField& a, const SolutionField& b);

}  // namespace fracrobin
