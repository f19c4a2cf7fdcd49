#pragma once

// Named analytic data for experiments. A selector is a '+'-separated sum of
// terms, each optionally scaled as "coef*name[:param]", e.g.
//   "lift + 0.5*mode:2 + bump:1"
//
// Spatial samplers:
//   zero | const:c | mode:n (n-th Robin eigenfunction) | bump:a (smooth
//   compactly supported bump of height a at the centre) | poly (16 s^2 (1-s)^2
//   per axis, s = x / L) | sin (sin(pi x / L) per axis) | lift (harmonic
//   lift of b at t = 0)
// Time profiles (used for g and for the boundary data):
//   zero | const | ramp (t / T) | sinsq (sin^2(pi t / (2 T))) | exp (1 - e^{-t})

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "fracrobin/problem.hpp"

namespace fracrobin::cli {

/// Everything needed to turn selectors into a ProblemSpec.
struct ProblemConfig {
    double alpha = 0.5;
    double T = 1.0;
    bool rectangle = false;
    double lx = 1.0, ly = 1.0;
    std::size_t nx = 129, ny = 33;
    std::array<double, 4> lambda{1.0, 1.0, 1.0, 1.0};  // left, right, bottom, top
    std::string u0 = "zero";
    std::string f = "zero";
    std::string g = "zero";
    std::array<double, 4> b{0.0, 0.0, 0.0, 0.0};
    std::string b_profile = "const";
    bool enforce_compat = true;
    double comp_tol = 1e-8;
};

Domain make_domain(const ProblemConfig& c);
RobinCoefficient make_lambda(const ProblemConfig& c);

/// Throws std::invalid_argument naming the unknown sampler.
SpatialData spatial_sampler(const std::string& selector, const ProblemConfig& c);
std::function<double(double)> time_profile(const std::string& selector, double T);
BoundaryData boundary_sampler(const ProblemConfig& c);

ProblemSpec build_problem(const ProblemConfig& c);

/// Randomized problem with u0, F, b >= 0 whose data are finite modal sums on
/// top of the harmonic lift, so the truncated expansion is exact. Interval,
/// time-constant boundary data.
ProblemConfig random_nonnegative_config(std::uint64_t seed, double alpha, std::size_t nodes);

}  // namespace fracrobin::cli
