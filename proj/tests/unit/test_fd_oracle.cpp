#include <gtest/gtest.h>

#include <cmath>

#include "fracrobin/cli/catalog.hpp"
#include "fracrobin/fd_oracle.hpp"
#include "fracrobin/mittag_leffler.hpp"
#include "fracrobin/spectral_solver.hpp"

using namespace fracrobin;

namespace {

// u = t^2 (1 + x/2): exact in space for the central scheme.
ProblemSpec manufactured(double a, double l0, double l1) {
    const double p = 1.0, q = 0.5;
    return ProblemSpec{FracOrder(a),
                       1.0,
                       Domain::interval(1.0, 33),
                       RobinCoefficient::interval(l0, l1),
                       SpatialData::zero(),
                       {[=](double x, double) { return p + q * x; }, {}},
                       [a](double t) { return 2.0 * std::pow(t, 2.0 - a) / std::tgamma(3.0 - a); },
                       [=](Face f, double, double t) { return t * t * (f == Face::left ? -q + l0 * p : q + l1 * (p + q)); }};
}

double final_error(const ProblemSpec& spec, std::size_t steps) {
    const auto f = solve_fd(spec, FDConfig{32, steps});
    double e = 0.0;
    for (std::size_t i = 0; i < f.nodes(); ++i) e = std::max(e, std::abs(f.at(steps, i) - (1.0 + 0.5 * f.dom.x(i))));
    return e;
}

cli::ProblemConfig mode_problem(double alpha) {
    cli::ProblemConfig c;
    c.alpha = alpha;
    c.nx = 257;
    c.lambda = {1.0, 1.0, 1.0, 1.0};
    c.u0 = "mode:1";
    return c;
}

}  // namespace

TEST(FdOracle, RejectsCoarseGrids) {
    const auto spec = manufactured(0.5, 1.0, 1.0);
    EXPECT_THROW(solve_fd(spec, FDConfig{8, 64}), std::invalid_argument);
    EXPECT_THROW(solve_fd(spec, FDConfig{64, 8}), std::invalid_argument);
}

TEST(FdOracle, ZeroDataZeroField) {
    auto c = mode_problem(0.5);
    c.u0 = "zero";
    const auto f = solve_fd(cli::build_problem(c), FDConfig{32, 32});
    for (double v : f.u) EXPECT_EQ(v, 0.0);
}

TEST(FdOracle, TemporalOrderIsTwoMinusAlpha) {
    for (double a : {0.3, 0.5, 0.8}) {
        const auto spec = manufactured(a, 1.0, 2.0);
        std::vector<double> e;
        for (std::size_t k : {32u, 64u, 128u, 256u}) e.push_back(final_error(spec, k));
        const double order = std::log2(e[2] / e[3]);
        EXPECT_GE(order, 2 - a - 0.25) << a;
        EXPECT_LE(order, 2 - a + 0.25) << a;
    }
}

TEST(FdOracle, ModalProjectionTracksRelaxation) {
    const auto spec = cli::build_problem(mode_problem(0.5));
    const auto f = solve_fd(spec, FDConfig{256, 512});
    const auto b = eigen_interval(1.0, 1.0, f.dom, 1);
    double worst = 0.0;
    for (std::size_t k = 0; k <= 512; k += 16) {
        const double c = project(f.slice(k), b)[0];
        worst = std::max(worst, std::abs(c - relaxation(FracOrder(0.5), b.modes[0].mu, f.time(k))));
    }
    EXPECT_LT(worst, 0.02);
}

TEST(FdOracle, ClassicalLimitMatchesHeatSolution) {
    const auto spec = cli::build_problem(mode_problem(1.0));
    const auto f = solve_fd(spec, FDConfig{256, 1024});
    const auto b = eigen_interval(1.0, 1.0, f.dom, 1);
    for (std::size_t i = 0; i < f.nodes(); i += 32)
        EXPECT_NEAR(f.at(1024, i), std::exp(-b.modes[0].mu) * b.modes[0].psi[i], 2e-3);
}

TEST(FdOracle, NonnegativeDataStayNonnegative) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto c = cli::random_nonnegative_config(seed, 0.5, 65);
        const auto f = solve_fd(cli::build_problem(c), FDConfig{64, 64});
        for (double v : f.u) EXPECT_GE(v, -1e-10);
    }
}

TEST(FdOracle, StableForLargeStepRatios) {
    auto c = mode_problem(0.7);
    c.u0 = "poly";
    c.lambda = {1.0, 1.0, 1.0, 1.0};
    c.b = {0.0, 0.0, 0.0, 0.0};
    const auto spec = cli::build_problem(c);
    // dt / h^2 from 0.1 to 100 on J = 64.
    for (double ratio : {0.1, 1.0, 10.0, 100.0}) {
        const double h = 1.0 / 64, dt = ratio * h * h;
        auto s = spec;
        const std::size_t k = 32;
        s.T = dt * k;
        const auto f = solve_fd(s, FDConfig{64, k});
        double mx = 0.0;
        for (double v : f.u) mx = std::max(mx, std::abs(v));
        EXPECT_LE(mx, 1.0 + 1e-12) << ratio;
    }
}

TEST(Compare, SelfAndNesting) {
    const auto spec = cli::build_problem(mode_problem(0.5));
    const auto a = solve_fd(spec, FDConfig{64, 64});
    const auto r = compare(a, a);
    EXPECT_EQ(r.rel_l2l2, 0.0);
    EXPECT_EQ(r.abs_max, 0.0);
    EXPECT_THROW(compare(a, solve_fd(spec, FDConfig{40, 64})), std::invalid_argument);
}

TEST(Compare, ErrorDecreasesUnderJointRefinement) {
    auto c = mode_problem(0.6);
    c.u0 = "poly";
    c.f = "const:1";
    c.g = "ramp";
    const auto spec = cli::build_problem(c);
    const auto basis = eigen_interval(1.0, 1.0, spec.dom, 64);
    double prev = 1e300;
    for (std::size_t n : {32u, 64u, 128u}) {
        const auto fd = solve_fd(spec, FDConfig{n, n});
        const auto sp = solve(spec, basis, n);
        const double e = compare(fd, sp).rel_l2l2;
        EXPECT_LT(e, prev);
        prev = e;
    }
}
