#pragma once

// Discrete Riemann-Liouville integrals, Caputo / Riemann-Liouville derivatives
// and causal convolution on uniformly sampled time series.
//
// Integrals use piecewise-linear product integration (kernel moments exact),
// so they reproduce I^a of any piecewise-linear interpolant to rounding.
// The Caputo derivative is the L1 scheme, i.e. I^{1-a} applied to the
// piecewise-constant difference quotient.
//
// Derivative series are undefined at the first node; node 0 of every
// derivative series is NaN and must not be read.

#include <span>
#include <vector>

#include "fracrobin/time_series.hpp"

namespace fracrobin {

/// (I^a_{0+} y)(t_k). Order a in (0, 1]; a == 1 gives the trapezoid antiderivative.
TimeSeries rl_integral_left(const TimeSeries& y, FracOrder a);

/// (I^a_{T-} y)(t_k), the mirror image of rl_integral_left about the last node.
TimeSeries rl_integral_right(const TimeSeries& y, FracOrder a);

/// L1 Caputo derivative at t_1..t_K.
TimeSeries caputo_left(const TimeSeries& y, FracOrder a);

/// d/dt I^{1-a} y by second-order differences of rl_integral_left(y, 1 - a).
TimeSeries rl_derivative_left(const TimeSeries& y, FracOrder a);

/// Trapezoidal causal convolution (u * v)(t_k) = int_0^{t_k} u(t_k - s) v(s) ds.
TimeSeries convolve(const TimeSeries& u, const TimeSeries& v);

/// L1 Caputo derivative on a strictly increasing, possibly graded grid
/// starting at times[0]. Entry 0 is NaN.
std::vector<double> caputo_left_nonuniform(std::span<const double> times, std::span<const double> values,
                                           FracOrder a);

/// Single-node variant of caputo_left_nonuniform: derivative at times[n].
double caputo_at(std::span<const double> times, std::span<const double> values, std::size_t n, FracOrder a);

}  // namespace fracrobin
