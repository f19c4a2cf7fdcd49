#pragma once

// Sampled checks of the maximum principles and the Hopf lemma for
// d^a u - Lap u = F with Robin data, plus the auxiliary function used to
// prove the Hopf lemma.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "fracrobin/problem.hpp"
#include "fracrobin/time_series.hpp"

namespace fracrobin {

enum class VerdictStatus { pass, fail, inapplicable };

const char* to_string(VerdictStatus s) noexcept;

struct Verdict {
    std::string check;
    VerdictStatus status = VerdictStatus::inapplicable;
    double witness_t = 0.0;
    std::array<double, 2> witness_x{0.0, 0.0};
    double value = 0.0;   // quantity compared against tol
    double margin = 0.0;  // signed distance to the threshold, positive when passing
    double tol = 0.0;
    std::string note;     // reason for inapplicability or caveats

    bool passed() const noexcept { return status == VerdictStatus::pass; }
};

// ---------------------------------------------------------------------------
// Auxiliary function h on the half ball B+.

/// Ball |x - xbar|^2 + (t - t0)^2 <= R^2 cut by the plane (x - xbar) . n = c;
/// B+ is the part with (x - xbar) . n >= c, and x0 = xbar + R n.
struct HalfBallRegion {
    int dim = 1;
    std::array<double, 2> center{0.0, 0.0};
    double t0 = 0.0;
    double radius = 0.0;
    std::array<double, 2> normal{1.0, 0.0};
    double offset = 0.0;
    std::size_t space_samples = 17;  // per axis
    std::size_t time_samples = 33;

    std::array<double, 2> x0() const noexcept;
    /// Throws std::invalid_argument unless 0 < c < R, |n| = 1 and t0 >= R.
    void validate() const;
    bool contains(const std::array<double, 2>& x, double t) const noexcept;
};

/// Default 1D region touching the right end of [0, 1].
HalfBallRegion default_hopf_region();

/// Graded L1 grid: each of [0, t0] and [t0, t] gets `points` nodes clustered at
/// t0 with exponent `grading` (0 selects 1 / a).
struct HopfGrid {
    std::size_t points = 400;
    double grading = 0.0;
};

struct HopfSample {
    std::array<double, 2> x{0.0, 0.0};
    double t = 0.0;
    double r = 0.0;  // |x - xbar|
    bool on_sphere = false;
    double h = 0.0;
    double caputo = 0.0;
    double laplacian = 0.0;
    double l_alpha = 0.0;     // caputo - laplacian
    double normalized = 0.0;  // e^{mu r^2} mu^{-1} l_alpha
};

struct HopfEvaluation {
    double mu = 0.0;
    std::vector<HopfSample> samples;
    double max_l_alpha = 0.0;
    double max_normalized = 0.0;
    std::size_t argmax = 0;
    double min_h_inside = 0.0;  // min of h over samples off the sphere
    double max_abs_h_sphere = 0.0;
};

/// h = E_{a,1}(-mu |t - t0|^{2a}) (e^{-mu |x - xbar|^2} - e^{-mu (R^2 - (t - t0)^2)})
/// and L^a h = d^a_t h - Lap h over the samples of B+.
HopfEvaluation hopf_auxiliary(const HalfBallRegion& region, double mu, FracOrder a, const HopfGrid& grid = {});

struct HopfScan {
    bool found = false;
    double mu_star = 0.0;
    std::vector<HopfEvaluation> ladder;  // mu = 1, 2, 4, ... then 2 mu*, 4 mu*
    bool persists = false;               // max L^a h < 0 at mu*, 2 mu*, 4 mu*
    bool decreasing = false;             // max normalized value decreases along them
    double grid_sensitivity = 0.0;       // max relative change of L^a h under grid doubling
};

HopfScan hopf_mu_scan(const HalfBallRegion& region, FracOrder a, const HopfGrid& grid = {},
                      double mu_cap = 1048576.0);

// ---------------------------------------------------------------------------
// Checks on solution fields.

struct WeakMaxOptions {
    /// Evaluate even when the data are not nonnegative (then a failure is expected).
    bool skip_hypotheses = false;
};

Verdict weak_max_check(const SolutionField& field, const ProblemSpec& spec, double tol, WeakMaxOptions opt = {});
Verdict strong_positivity_check(const SolutionField& field, const ProblemSpec& spec, double tol);

enum class HopfBranch { maximum, minimum };

struct HopfOptions {
    HopfBranch branch = HopfBranch::maximum;
    double strict_tol = 0.0;  // neighbours must stay below M - strict_tol (above m + strict_tol)
};

/// Sign of the one-sided outward normal derivative at the sampled boundary extremum.
Verdict hopf_normal_check(const SolutionField& field, double tol, HopfOptions opt = {});

/// L1 Caputo derivative at the minimum of the interior samples (must be <= tol).
Verdict extremum_caputo_check(const SolutionField& field, FracOrder a, double tol);
Verdict extremum_caputo_check(const TimeSeries& trace, FracOrder a, double tol);

}  // namespace fracrobin
