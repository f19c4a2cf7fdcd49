#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "fracrobin/problem.hpp"
#include "fracrobin/robin_spectrum.hpp"
#include "fracrobin/time_series.hpp"

namespace fracrobin {

/// Harmonic function with Robin data b: closed form on an interval, a
/// five-point FD solve with ghost-node closure on a rectangle. The rectangle
/// factorization is reused across calls.
class LiftSolver {
public:
    LiftSolver(const Domain& dom, const RobinCoefficient& lambda);
    ~LiftSolver();
    LiftSolver(LiftSolver&&) noexcept;
    LiftSolver& operator=(LiftSolver&&) noexcept;

    std::vector<double> operator()(const BoundaryTrace& bt) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::vector<double> elliptic_lift(const BoundaryTrace& bt, const RobinCoefficient& lambda, const Domain& dom);

/// g_n(t_k) = int_0^{t_k} g(t_k - s) s^{a-1} E_{a,a}(-mu_n s^a) ds for each mode.
struct SourceKernelTable {
    double dt = 0.0;
    std::vector<std::vector<double>> values;  // [mode][k]

    double at(std::size_t n, std::size_t k) const { return values.at(n).at(k); }
};

/// Midpoint values of g against exactly integrated kernel weights
/// [E(-mu t_j^a) - E(-mu t_{j+1}^a)] / mu.
SourceKernelTable source_kernel_table(const TimeSeries& g, std::span<const double> mus, FracOrder a);

/// u1 + u2 for data with b == 0. `steps` is the number of time steps K.
SolutionField solve_homog_bc(const ProblemSpec& spec, const Spectrum& basis, std::size_t steps);
/// u3 for u0 == 0, f == 0. With require_zero_start the data must satisfy
/// b(., 0) == 0; otherwise the response to a jump at t = 0 is included.
SolutionField solve_boundary(const ProblemSpec& spec, const Spectrum& basis, std::size_t steps,
                             bool require_zero_start = true);
/// Full representation u1 + u2 + u3.
SolutionField solve(const ProblemSpec& spec, const Spectrum& basis, std::size_t steps);
/// Default mode count: 64 on an interval, 1024 (32 x 32 tensor) on a rectangle.
std::size_t default_modes(const Domain& dom) noexcept;

struct ResidualReport {
    double interior_max = 0.0;
    double interior_l2 = 0.0;
    double boundary_max = 0.0;
    double boundary_l2 = 0.0;
};

/// L1 Caputo - Lap_h u - F at interior nodes and one-sided du/dnu + lambda u - b
/// on the boundary, for t_1..t_K.
ResidualReport residual(const SolutionField& field, const ProblemSpec& spec);

}  // namespace fracrobin
