#include <gtest/gtest.h>

#include <cmath>

#include "fracrobin/cli/catalog.hpp"
#include "fracrobin/principles.hpp"
#include "fracrobin/spectral_solver.hpp"

using namespace fracrobin;
using fracrobin::cli::ProblemConfig;

namespace {

struct Solved {
    ProblemSpec spec;
    SolutionField field;
};

Solved run(const ProblemConfig& c, std::size_t modes = 64, std::size_t steps = 128) {
    auto spec = cli::build_problem(c);
    auto field = solve(spec, eigen_auto(spec.dom, spec.lambda, modes), steps);
    return {std::move(spec), std::move(field)};
}

ProblemConfig interval(double alpha) {
    ProblemConfig c;
    c.alpha = alpha;
    c.nx = 129;
    return c;
}

double scale(const SolutionField& f) {
    double m = 0.0;
    for (double v : f.u) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST(HopfAuxiliary, VanishesOnTheSphereAndIsPositiveInside) {
    const auto region = default_hopf_region();
    const auto ev = hopf_auxiliary(region, 4096.0, FracOrder(0.6));
    EXPECT_LT(ev.max_abs_h_sphere, 1e-12);
    EXPECT_GT(ev.min_h_inside, 0.0);
    for (const auto& s : ev.samples)
        if (std::abs(s.x[0] - region.x0()[0]) < 1e-15 && std::abs(s.t - region.t0) < 1e-15) EXPECT_NEAR(s.h, 0.0, 1e-14);
}

TEST(HopfAuxiliary, RegionAndGridPreconditions) {
    auto region = default_hopf_region();
    region.offset = region.radius * 1.5;
    EXPECT_THROW(region.validate(), std::invalid_argument);
    region = default_hopf_region();
    region.t0 = region.radius * 0.5;
    EXPECT_THROW(region.validate(), std::invalid_argument);
    EXPECT_THROW(hopf_auxiliary(default_hopf_region(), 100.0, FracOrder(0.4), HopfGrid{400, 1.0}),
                 std::invalid_argument);
    EXPECT_THROW(hopf_auxiliary(default_hopf_region(), -1.0, FracOrder(0.7)), std::invalid_argument);
}

TEST(HopfAuxiliary, DoublingScanFindsPersistentNegativeSign) {
    const auto scan = hopf_mu_scan(default_hopf_region(), FracOrder(0.7));
    ASSERT_TRUE(scan.found);
    EXPECT_LE(scan.mu_star, 1048576.0);
    EXPECT_TRUE(scan.persists);
    EXPECT_TRUE(scan.decreasing);
    EXPECT_LT(scan.grid_sensitivity, 0.05);
    // Ladder entries below mu* have a nonnegative maximum.
    for (const auto& e : scan.ladder)
        if (e.mu < scan.mu_star) EXPECT_GE(e.max_l_alpha, 0.0);
}

TEST(WeakMax, PassesOnNonnegativeRandomData) {
    for (std::uint64_t seed = 100; seed < 106; ++seed) {
        const auto c = cli::random_nonnegative_config(seed, 0.5, 65);
        const auto r = run(c, 32, 128);
        const auto v = weak_max_check(r.field, r.spec, 1e-8 * scale(r.field));
        EXPECT_EQ(v.status, VerdictStatus::pass) << seed;
        EXPECT_GE(v.margin, 0.0);
    }
}

TEST(WeakMax, ZeroDataPassWithZeroMargin) {
    const auto r = run(interval(0.5), 8, 16);
    const auto v = weak_max_check(r.field, r.spec, 0.0);
    EXPECT_EQ(v.status, VerdictStatus::pass);
    EXPECT_EQ(v.margin, 0.0);
}

TEST(WeakMax, NegativeBumpIsInapplicableOrFailsAtStart) {
    auto c = interval(0.5);
    c.u0 = "-1*bump:1";
    const auto r = run(c);
    const auto gated = weak_max_check(r.field, r.spec, 1e-8);
    EXPECT_EQ(gated.status, VerdictStatus::inapplicable);
    const auto forced = weak_max_check(r.field, r.spec, 1e-8, {true});
    EXPECT_EQ(forced.status, VerdictStatus::fail);
    EXPECT_LT(forced.witness_t, 0.05);
    EXPECT_NEAR(forced.witness_x[0], 0.5, 0.05);
}

TEST(StrongPositivity, ConstantInitialDataStayPositive) {
    auto c = interval(0.5);
    c.u0 = "const:1";
    c.enforce_compat = false;  // u0 = 1 with b = 0 breaks the corner compatibility
    const auto r = run(c, 64, 128);
    const auto v = strong_positivity_check(r.field, r.spec, 1e-8);
    EXPECT_EQ(v.status, VerdictStatus::pass);
    EXPECT_GT(v.margin, 0.0);
    EXPECT_GT(v.value, 0.0);
}

TEST(StrongPositivity, ConstantPlusBoundaryInflow) {
    auto c = interval(0.7);
    c.u0 = "const:1";
    c.b = {2.0, 0.5, 0.0, 0.0};
    c.b_profile = "ramp";
    c.enforce_compat = false;
    const auto r = run(c);
    EXPECT_EQ(strong_positivity_check(r.field, r.spec, 1e-8).status, VerdictStatus::pass);
}

TEST(StrongPositivity, PartiallyVanishingU0IsInapplicable) {
    auto c = interval(0.5);
    c.u0 = "bump:1";
    const auto r = run(c);
    EXPECT_EQ(strong_positivity_check(r.field, r.spec, 1e-8).status, VerdictStatus::inapplicable);
}

TEST(HopfNormal, BoundaryForcedMaximumHasPositiveOutwardDerivative) {
    auto c = interval(0.7);
    c.b = {0.0, 5.0, 0.0, 0.0};
    c.b_profile = "ramp";
    const auto r = run(c, 64, 256);
    const auto v = hopf_normal_check(r.field, 0.0, {HopfBranch::maximum, 1e-10});
    EXPECT_EQ(v.status, VerdictStatus::pass);
    EXPECT_NEAR(v.witness_x[0], 1.0, 1e-12);
    EXPECT_GT(v.value, 0.0);
}

TEST(HopfNormal, InteriorMaximumIsInapplicable) {
    auto c = interval(0.5);
    c.u0 = "bump:1";
    const auto r = run(c);
    EXPECT_EQ(hopf_normal_check(r.field, 0.0).status, VerdictStatus::inapplicable);
}

TEST(HopfNormal, MinimumBranchAndConsistencyWithStrongPositivity) {
    auto c = interval(0.5);
    c.lambda = {2.0, 2.0, 1.0, 1.0};
    c.b = {1.0, 1.0, 0.0, 0.0};
    c.u0 = "lift + 0.4*mode:1";
    c.f = "mode:1";
    c.g = "0.5*exp";
    const auto r = run(c);
    const auto pos = strong_positivity_check(r.field, r.spec, 1e-8);
    const auto hop = hopf_normal_check(r.field, 0.0, {HopfBranch::minimum, 1e-10});
    ASSERT_EQ(pos.status, VerdictStatus::pass);
    EXPECT_EQ(hop.status, VerdictStatus::pass);
    EXPECT_LT(hop.value, 0.0);
}

TEST(ExtremumCaputo, TraceCases) {
    const auto dec = TimeSeries::sample([](double t) { return std::exp(-t); }, 0.0, 1.0, 64);
    const auto v = extremum_caputo_check(dec, FracOrder(0.5), 0.0);
    EXPECT_EQ(v.status, VerdictStatus::pass);
    EXPECT_LT(v.value, 0.0);
    const auto flat = TimeSeries::sample([](double) { return 2.0; }, 0.0, 1.0, 64);
    const auto f = extremum_caputo_check(flat, FracOrder(0.5), 1e-12);
    EXPECT_EQ(f.status, VerdictStatus::pass);
    EXPECT_NEAR(f.value, 0.0, 1e-12);
    const auto inc = TimeSeries::sample([](double t) { return t; }, 0.0, 1.0, 64);
    EXPECT_EQ(extremum_caputo_check(inc, FracOrder(0.5), 0.0).status, VerdictStatus::inapplicable);
}

TEST(ExtremumCaputo, SolverFieldWithInteriorMinimum) {
    auto c = interval(0.5);
    c.lambda = {2.0, 2.0, 1.0, 1.0};
    c.b = {1.0, 1.0, 0.0, 0.0};
    c.u0 = "lift + 0.4*mode:1";
    c.f = "mode:1";
    c.g = "0.5*exp";
    const auto r = run(c);
    const auto v = extremum_caputo_check(r.field, r.spec.alpha, 1e-6 * scale(r.field));
    EXPECT_EQ(v.status, VerdictStatus::pass);
}
