#pragma once

// Two-parameter Mittag-Leffler function E_{a,b}(z) = sum_k z^k / Gamma(a k + b)
// for real arguments, and the relaxation / response kernels built from it.
//
// Evaluation picks a method per argument and only returns values whose
// error estimate is certified:
//   - Taylor series when the summation is well conditioned
//     (all z >= 0, and z < 0 while sum|terms| / |sum| stays small);
//   - the algebraic expansion E_{a,b}(-x) ~ sum_k (-1)^{k+1} x^{-k} / Gamma(b - a k)
//     for large x (0 < a < 1);
//   - a Laplace-type integral over [0, 1] with a positive integrand for
//     0 < a < 1 and b in {1, a, 2} in the crossover band.

#include "fracrobin/time_series.hpp"

namespace fracrobin {

struct MLParams {
    double alpha;
    double beta;
};

enum class MLMethod { closed_form, series, asymptotic, integral };

struct MLResult {
    double value;
    MLMethod method;
    double error_estimate;  // relative
};

struct MLTuning {
    double z_switch = 5.0;        // series is tried first for |z| <= z_switch
    int asymptotic_terms = 10;    // maximum algebraic terms
    double certify = 1e-12;       // accepted relative error estimate
};

const char* to_string(MLMethod m) noexcept;

/// 1 / Gamma(x), zero at the poles.
double rgamma(double x);

/// Method-selecting evaluation; throws AccuracyError when no method certifies.
MLResult ml_evaluate(MLParams p, double z, const MLTuning& tuning = {});
double ml_eval(MLParams p, double z);

// Individual methods; they never throw on accuracy, the estimate says it all.
MLResult ml_series(MLParams p, double z);
MLResult ml_asymptotic(MLParams p, double z, int terms);
/// Requires 0 < alpha < 1, z < 0 and beta in {1, alpha, 2}.
MLResult ml_integral(MLParams p, double z);

/// E_{a,1}(-mu t^a), in (0, 1].
double relaxation(FracOrder a, double mu, double t);

/// t^{a-1} E_{a,a}(-mu t^a) for t > 0.
double kernel(FracOrder a, double mu, double t);

/// int_0^t E_{a,1}(-mu s^a) ds = t E_{a,2}(-mu t^a).
double relaxation_integral(FracOrder a, double mu, double t);

}  // namespace fracrobin
