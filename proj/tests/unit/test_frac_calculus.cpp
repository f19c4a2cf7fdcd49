#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "fracrobin/frac_calculus.hpp"

using namespace fracrobin;

namespace {

double max_diff(const TimeSeries& s, double (*f)(double, double), double a, std::size_t from = 0) {
    double m = 0.0;
    for (std::size_t k = from; k < s.size(); ++k) m = std::max(m, std::abs(s[k] - f(s.time(k), a)));
    return m;
}

// u = t + t^2, v = t^2. Both (I^a v) * u and v * (I^a u) equal
// sum_{m,q} a_m b_q m! q! t^{m+q+a+1} / Gamma(m+q+a+2); the residual is the
// larger distance of the two discrete sides from that value.
double commutation_residual(double a, std::size_t steps) {
    const auto u = TimeSeries::sample([](double t) { return t + t * t; }, 0.0, 1.0, steps);
    const auto v = TimeSeries::sample([](double t) { return t * t; }, 0.0, 1.0, steps);
    const auto lhs = convolve(rl_integral_left(v, FracOrder(a)), u);
    const auto rhs = convolve(v, rl_integral_left(u, FracOrder(a)));
    double m = 0.0;
    for (std::size_t k = 0; k < lhs.size(); ++k) {
        const double t = lhs.time(k);
        const double exact = 2.0 * std::pow(t, a + 4) / std::tgamma(a + 5) + 4.0 * std::pow(t, a + 5) / std::tgamma(a + 6);
        m = std::max({m, std::abs(lhs[k] - exact), std::abs(rhs[k] - exact)});
    }
    return m;
}

}  // namespace

TEST(FracOrder, RejectsOutOfRange) {
    EXPECT_THROW(FracOrder(0.0), std::invalid_argument);
    EXPECT_THROW(FracOrder(1.2), std::invalid_argument);
    EXPECT_TRUE(FracOrder(1.0).classical());
    EXPECT_FALSE(FracOrder(0.5).classical());
}

TEST(TimeSeries, FromSamplesRejectsNonUniform) {
    const std::vector<double> t{0.0, 0.1, 0.3}, y{1.0, 2.0, 3.0};
    EXPECT_THROW(TimeSeries::from_samples(t, y), std::invalid_argument);
}

TEST(RlIntegral, ZeroInZeroOut) {
    const auto y = TimeSeries::sample([](double) { return 0.0; }, 0.0, 1.0, 32);
    const auto r = rl_integral_left(y, FracOrder(0.5));
    for (double v : r.values()) EXPECT_EQ(v, 0.0);
}

TEST(RlIntegral, PowerRuleOnConstantAndLinear) {
    // Piecewise-linear product integration is exact for linear data.
    const auto one = TimeSeries::sample([](double) { return 1.0; }, 0.0, 1.0, 64);
    const auto lin = TimeSeries::sample([](double t) { return t; }, 0.0, 1.0, 64);
    const auto r1 = rl_integral_left(one, FracOrder(0.5));
    const auto r2 = rl_integral_left(lin, FracOrder(0.5));
    EXPECT_EQ(r1[0], 0.0);
    EXPECT_LT(max_diff(r1, [](double t, double a) { return std::pow(t, a) / std::tgamma(1 + a); }, 0.5), 1e-13);
    EXPECT_LT(max_diff(r2, [](double t, double a) { return std::pow(t, 1 + a) / std::tgamma(2 + a); }, 0.5), 1e-13);
}

TEST(RlIntegral, RightMirrorsLeft) {
    const auto y = TimeSeries::sample([](double t) { return std::cos(3.0 * t) + t; }, 0.0, 2.0, 50);
    std::vector<double> rev(y.values().rbegin(), y.values().rend());
    const TimeSeries yr(0.0, y.dt(), rev);
    const auto right = rl_integral_right(y, FracOrder(0.3));
    const auto left = rl_integral_left(yr, FracOrder(0.3));
    for (std::size_t k = 0; k < y.size(); ++k) EXPECT_NEAR(right[k], left[y.size() - 1 - k], 1e-14);
    EXPECT_EQ(right[y.size() - 1], 0.0);
    const auto one = TimeSeries::sample([](double) { return 1.0; }, 0.0, 2.0, 50);
    const auto r1 = rl_integral_right(one, FracOrder(0.5));
    for (std::size_t k = 0; k < one.size(); ++k)
        EXPECT_NEAR(r1[k], std::sqrt(2.0 - one.time(k)) / std::tgamma(1.5), 1e-13);
}

TEST(RlIntegral, SemigroupProperty) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pick(0.1, 0.45);
    for (int trial = 0; trial < 5; ++trial) {
        const double a = pick(rng), b = pick(rng);
        double prev = 1.0;
        for (std::size_t n : {256u, 512u, 1024u}) {
            const auto y = TimeSeries::sample([](double t) { return std::exp(t); }, 0.0, 1.0, n);
            const auto lhs = rl_integral_left(rl_integral_left(y, FracOrder(a)), FracOrder(b));
            const auto rhs = rl_integral_left(y, FracOrder(a + b));
            double err = 0.0;
            for (std::size_t k = 0; k < y.size(); ++k) err = std::max(err, std::abs(lhs[k] - rhs[k]));
            EXPECT_LT(err, prev);
            prev = err;
            // The max sits at t = dt (t^b is not resolved there); at t = 1 it is small.
            EXPECT_LT(std::abs(lhs[n] - rhs[n]), 1e-3 * std::abs(rhs[n]));
        }
    }
}

TEST(Caputo, AnnihilatesConstantsExactly) {
    const auto y = TimeSeries::sample([](double) { return 3.7; }, 0.0, 1.0, 40);
    const auto c = caputo_left(y, FracOrder(0.6));
    EXPECT_TRUE(std::isnan(c[0]));
    for (std::size_t k = 1; k < c.size(); ++k) EXPECT_EQ(c[k], 0.0);
}

TEST(Caputo, LinearIsExactAndQuadraticConverges) {
    for (double a : {0.3, 0.5, 0.8}) {
        const auto lin = TimeSeries::sample([](double t) { return t; }, 0.0, 1.0, 64);
        EXPECT_LT(max_diff(caputo_left(lin, FracOrder(a)),
                           [](double t, double al) { return std::pow(t, 1 - al) / std::tgamma(2 - al); }, a, 1),
                  1e-12);
        std::vector<double> errs;
        for (std::size_t n : {64u, 128u, 256u, 512u}) {
            const auto sq = TimeSeries::sample([](double t) { return t * t; }, 0.0, 1.0, n);
            errs.push_back(max_diff(caputo_left(sq, FracOrder(a)),
                                    [](double t, double al) { return 2 * std::pow(t, 2 - al) / std::tgamma(3 - al); },
                                    a, 1));
        }
        for (std::size_t i = 1; i < errs.size(); ++i) EXPECT_GE(std::log2(errs[i - 1] / errs[i]), 2 - a - 0.2) << a;
    }
}

TEST(Caputo, ClassicalLimitIsBackwardDifference) {
    const auto y = TimeSeries::sample([](double t) { return t * t * t; }, 0.0, 1.0, 20);
    const auto c = caputo_left(y, FracOrder(1.0));
    for (std::size_t k = 1; k < y.size(); ++k) EXPECT_NEAR(c[k], (y[k] - y[k - 1]) / y.dt(), 1e-12);
}

TEST(RlDerivative, MatchesCaputoWhenStartingAtZero) {
    const auto y = TimeSeries::sample([](double t) { return std::sin(t) * t; }, 0.0, 1.0, 400);
    const auto rl = rl_derivative_left(y, FracOrder(0.4));
    const auto cap = caputo_left(y, FracOrder(0.4));
    for (std::size_t k = 10; k + 1 < y.size(); ++k) EXPECT_NEAR(rl[k], cap[k], 2e-3);
}

TEST(RlDerivative, OfOneIsPowerLaw) {
    const auto y = TimeSeries::sample([](double) { return 1.0; }, 0.0, 1.0, 400);
    const auto rl = rl_derivative_left(y, FracOrder(0.5));
    for (std::size_t k = 40; k + 1 < y.size(); k += 40)
        EXPECT_NEAR(rl[k], std::pow(y.time(k), -0.5) / std::tgamma(0.5), 2e-3 * rl[k]);
}

TEST(Convolve, BasicsAndGridCheck) {
    const auto one = TimeSeries::sample([](double) { return 1.0; }, 0.0, 1.0, 16);
    const auto c = convolve(one, one);
    for (std::size_t k = 0; k < c.size(); ++k) EXPECT_NEAR(c[k], one.time(k), 1e-14);
    const auto other = TimeSeries::sample([](double) { return 1.0; }, 0.0, 1.0, 17);
    EXPECT_THROW(convolve(one, other), std::invalid_argument);
}

TEST(Convolve, DiscreteSidesCommuteToRoundoff) {
    const auto u = TimeSeries::sample([](double t) { return std::sin(2.0 * t); }, 0.0, 1.0, 100);
    const auto v = TimeSeries::sample([](double t) { return t * std::exp(-t); }, 0.0, 1.0, 100);
    const auto lhs = convolve(rl_integral_left(v, FracOrder(0.4)), u);
    const auto rhs = convolve(v, rl_integral_left(u, FracOrder(0.4)));
    for (std::size_t k = 0; k < lhs.size(); ++k) EXPECT_NEAR(lhs[k], rhs[k], 1e-14);
}

TEST(Convolve, CommutationWithFractionalIntegralIsSecondOrder) {
    for (double a : {0.3, 0.7}) {
        double prev = commutation_residual(a, 128);
        for (std::size_t n : {256u, 512u, 1024u}) {
            const double cur = commutation_residual(a, n);
            EXPECT_GE(std::log2(prev / cur), 1.8) << "a=" << a << " n=" << n;
            prev = cur;
        }
    }
}

TEST(CaputoNonuniform, AgreesWithUniformOnUniformGrid) {
    const auto y = TimeSeries::sample([](double t) { return t * t + t; }, 0.0, 1.0, 32);
    std::vector<double> times(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) times[k] = y.time(k);
    const auto nu = caputo_left_nonuniform(times, y.values(), FracOrder(0.45));
    const auto u = caputo_left(y, FracOrder(0.45));
    for (std::size_t k = 1; k < y.size(); ++k) EXPECT_NEAR(nu[k], u[k], 1e-12);
    EXPECT_NEAR(caputo_at(times, y.values(), 20, FracOrder(0.45)), u[20], 1e-12);
}
