#include <gtest/gtest.h>

#include <cmath>

#include "fracrobin/cli/catalog.hpp"
#include "fracrobin/errors.hpp"
#include "fracrobin/fd_oracle.hpp"
#include "fracrobin/mittag_leffler.hpp"
#include "fracrobin/spectral_solver.hpp"

using namespace fracrobin;
using fracrobin::cli::ProblemConfig;

namespace {

ProblemConfig base(double alpha) {
    ProblemConfig c;
    c.alpha = alpha;
    c.nx = 129;
    c.lambda = {1.0, 2.0, 1.0, 1.0};
    return c;
}

Spectrum basis_for(const ProblemSpec& s, std::size_t n) { return eigen_auto(s.dom, s.lambda, n); }

double l2(std::span<const double> v, const Spectrum& b) { return weighted_norm(v, b.weights); }

}  // namespace

TEST(EllipticLift, IntervalClosedForm) {
    const auto dom = Domain::interval(1.0, 33);
    BoundaryTrace ones{{{1.0}, {1.0}, {}, {}}};
    for (double v : elliptic_lift(ones, RobinCoefficient::interval(1.0, 1.0), dom)) EXPECT_NEAR(v, 1.0, 1e-14);
    BoundaryTrace zero{{{0.0}, {0.0}, {}, {}}};
    for (double v : elliptic_lift(zero, RobinCoefficient::interval(1.0, 1.0), dom)) EXPECT_EQ(v, 0.0);

    // lambda = (1, 2), b = (1, 0): linear, and both Robin conditions hold.
    const auto lift = elliptic_lift({{{1.0}, {0.0}, {}, {}}}, RobinCoefficient::interval(1.0, 2.0), dom);
    const double c = (lift.back() - lift.front()) / 1.0, a = lift.front();
    for (std::size_t i = 0; i < lift.size(); ++i) EXPECT_NEAR(lift[i], a + c * dom.x(i), 1e-14);
    EXPECT_NEAR(-c + 1.0 * a, 1.0, 1e-12);
    EXPECT_NEAR(c + 2.0 * (a + c), 0.0, 1e-12);
}

TEST(EllipticLift, RectangleSatisfiesDiscreteSystem) {
    const auto dom = Domain::rectangle(1.0, 0.5, 33, 17);
    const auto lam = RobinCoefficient::rectangle(1.0, 2.0, 3.0, 0.5);
    BoundaryTrace bt;
    for (Face f : dom.faces()) bt[static_cast<int>(f)].assign(dom.face_size(f), 1.0 + static_cast<int>(f));
    const auto v = elliptic_lift(bt, lam, dom);
    // Interior five-point Laplacian vanishes.
    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < dom.ny(); ++j)
        for (std::size_t i = 1; i + 1 < dom.nx(); ++i) {
            const double lap = (v[dom.index(i + 1, j)] - 2 * v[dom.index(i, j)] + v[dom.index(i - 1, j)]) /
                                   (dom.hx() * dom.hx()) +
                               (v[dom.index(i, j + 1)] - 2 * v[dom.index(i, j)] + v[dom.index(i, j - 1)]) /
                                   (dom.hy() * dom.hy());
            worst = std::max(worst, std::abs(lap));
        }
    EXPECT_LT(worst, 1e-8);
    // Constant b / lambda on every face gives the constant lift.
    const auto lam1 = RobinCoefficient::rectangle(2.0, 2.0, 2.0, 2.0);
    BoundaryTrace flat;
    for (Face f : dom.faces()) flat[static_cast<int>(f)].assign(dom.face_size(f), 3.0);
    for (double x : elliptic_lift(flat, lam1, dom)) EXPECT_NEAR(x, 1.5, 1e-10);
}

TEST(SourceKernel, ZeroOneAndBound) {
    const std::vector<double> mus{0.5, 4.0, 40.0};
    const FracOrder a(0.6);
    const auto zero = source_kernel_table(TimeSeries::sample([](double) { return 0.0; }, 0.0, 1.0, 64), mus, a);
    for (const auto& row : zero.values)
        for (double v : row) EXPECT_EQ(v, 0.0);
    const auto one = source_kernel_table(TimeSeries::sample([](double) { return 1.0; }, 0.0, 1.0, 64), mus, a);
    for (std::size_t n = 0; n < mus.size(); ++n)
        for (std::size_t k = 0; k <= 64; k += 8) {
            const double t = k / 64.0;
            EXPECT_NEAR(one.at(n, k), (1.0 - relaxation(a, mus[n], t)) / mus[n], 1e-12);
        }
    const auto osc = source_kernel_table(TimeSeries::sample([](double t) { return std::cos(9 * t); }, 0.0, 1.0, 64), mus, a);
    for (std::size_t n = 0; n < mus.size(); ++n)
        for (std::size_t k = 0; k <= 64; ++k) {
            const double t = k / 64.0;
            const double bound = std::min(std::pow(t, 0.6) / std::tgamma(1.6), 1.0 / mus[n]);
            EXPECT_LE(std::abs(osc.at(n, k)), bound * (1 + 1e-12) + 1e-15);
        }
    EXPECT_THROW(source_kernel_table(TimeSeries::sample([](double) { return 1.0; }, 0.0, 1.0, 8),
                                     std::vector<double>{0.0}, a),
                 std::invalid_argument);
}

TEST(Solve, ZeroDataGiveZeroField) {
    const auto spec = cli::build_problem(base(0.5));
    const auto f = solve(spec, basis_for(spec, 16), 32);
    for (double v : f.u) EXPECT_EQ(v, 0.0);
}

TEST(Solve, SingleModeFollowsRelaxationAndDecouples) {
    for (double alpha : {0.4, 1.0}) {
        auto c = base(alpha);
        c.u0 = "mode:1";
        c.nx = 257;  // leakage into other modes is the quadrature's Gram error
        const auto spec = cli::build_problem(c);
        const auto b = basis_for(spec, 16);
        const auto f = solve(spec, b, 64);
        const auto psi = b.modes[0].psi;
        for (std::size_t k = 0; k <= 64; k += 4) {
            const double e = relaxation(FracOrder(alpha), b.modes[0].mu, f.time(k));
            for (std::size_t i = 0; i < f.nodes(); i += 8) EXPECT_NEAR(f.at(k, i), e * psi[i], 1e-9);
            const auto coeffs = project(f.slice(k), b);
            for (std::size_t n = 1; n < coeffs.size(); ++n) EXPECT_LT(std::abs(coeffs[n]), 1e-8);
        }
        if (alpha == 1.0)
            EXPECT_NEAR(f.at(64, 10), std::exp(-b.modes[0].mu) * psi[10], 1e-12);
    }
}

TEST(Solve, StationaryLiftIsPreserved) {
    auto c = base(0.6);
    c.b = {0.5, 1.5, 0.0, 0.0};
    c.u0 = "lift";
    const auto spec = cli::build_problem(c);
    const auto f = solve(spec, basis_for(spec, 64), 64);
    for (std::size_t k = 0; k <= 64; ++k)
        for (std::size_t i = 0; i < f.nodes(); ++i) EXPECT_NEAR(f.at(k, i), f.at(0, i), 1e-10);
    const auto r = residual(f, spec);
    EXPECT_LT(r.interior_max, 1e-8);
    EXPECT_LT(r.boundary_max, 1e-8);
}

TEST(Solve, AssemblyAndSuperposition) {
    auto ca = base(0.5);
    ca.u0 = "poly";
    ca.f = "bump:1";
    ca.g = "sinsq";
    auto cb = base(0.5);
    cb.b = {1.0, 0.3, 0.0, 0.0};
    cb.b_profile = "ramp";
    auto cab = ca;
    cab.b = cb.b;
    cab.b_profile = cb.b_profile;
    const auto sa = cli::build_problem(ca), sb = cli::build_problem(cb), sab = cli::build_problem(cab);
    const auto basis = basis_for(sa, 32);
    const auto fa = solve(sa, basis, 64), fb = solve(sb, basis, 64), fab = solve(sab, basis, 64);
    for (std::size_t j = 0; j < fab.u.size(); ++j) {
        EXPECT_NEAR(fab.u[j], fab.u1[j] + fab.u2[j] + fab.u3[j], 1e-15 * (1 + std::abs(fab.u[j])));
        EXPECT_NEAR(fab.u[j], fa.u[j] + fb.u[j], 1e-12);
    }
}

TEST(Solve, HomogeneousPartDecaysAndStartsAtU0) {
    for (double alpha : {0.3, 0.7}) {
        auto c = base(alpha);
        c.u0 = "poly + 0.4*mode:3";
        c.nx = 257;  // at 129 nodes the top of a 64-mode basis is under-resolved
        const auto spec = cli::build_problem(c);
        const auto b = basis_for(spec, 64);
        const auto f = solve(spec, b, 128);
        // Truncation error of u0 shrinks with the basis size.
        const auto coarse = solve(spec, basis_for(spec, 16), 128);
        EXPECT_LT(f.initial_error, 1e-4);
        EXPECT_LT(f.initial_error, coarse.initial_error);
        double prev = 1e300;
        for (std::size_t k = 0; k <= 128; ++k) {
            const double n = l2(std::span<const double>(f.u1.data() + k * f.nodes(), f.nodes()), b);
            EXPECT_LE(n, prev * (1 + 1e-12));
            prev = n;
        }
    }
}

TEST(Solve, BoundaryPartStartsAtZeroAndRelaxesToLift) {
    auto c = base(0.5);
    c.T = 20.0;
    c.b = {1.0, 2.0, 0.0, 0.0};
    c.b_profile = "exp";
    const auto spec = cli::build_problem(c);
    const auto b = basis_for(spec, 64);
    const auto f = solve_boundary(spec, b, 256);
    for (std::size_t i = 0; i < f.nodes(); ++i) EXPECT_NEAR(f.at(0, i), 0.0, 1e-12);
    // The lift of the limiting data is the steady state; the algebraic
    // relaxation tail leaves a few percent at t = 20.
    auto cs = c;
    cs.b_profile = "const";
    const auto lift = elliptic_lift(sample_boundary(cli::build_problem(cs), 0.0), spec.lambda, spec.dom);
    std::vector<double> diff_start(f.nodes()), diff_end(f.nodes());
    for (std::size_t i = 0; i < f.nodes(); ++i) {
        diff_start[i] = f.at(64, i) - lift[i];
        diff_end[i] = f.at(256, i) - lift[i];
    }
    EXPECT_LT(l2(diff_end, b), 0.1 * l2(lift, b));
    EXPECT_LT(l2(diff_end, b), l2(diff_start, b));
}

TEST(Solve, IncompatibleDataRejectedWithMismatch) {
    auto c = base(0.5);
    c.u0 = "const:1";
    const auto spec = cli::build_problem(c);
    try {
        solve(spec, basis_for(spec, 8), 16);
        FAIL();
    } catch (const CompatibilityError& e) {
        EXPECT_GT(e.violation(), 0.5);
        EXPECT_NE(std::string(e.what()).find("mismatch"), std::string::npos);
    }
}

TEST(Solve, MatchesFdOracle) {
    auto c = base(0.4);
    c.nx = 257;
    c.u0 = "0.5*poly + 0.3*mode:2";
    c.f = "bump:1";
    c.g = "sinsq";
    c.b = {1.0, 0.5, 0.0, 0.0};
    c.b_profile = "ramp";
    const auto spec = cli::build_problem(c);
    const auto sp = solve(spec, basis_for(spec, 64), 256);
    const auto fd = solve_fd(spec, FDConfig{256, 256});
    EXPECT_LT(compare(sp, fd).rel_l2l2, 0.01);
}

TEST(Solve, RectangleFieldIsSymmetricForSymmetricData) {
    ProblemConfig c;
    c.alpha = 0.6;
    c.rectangle = true;
    c.lx = c.ly = 1.0;
    c.nx = c.ny = 33;
    c.u0 = "poly";
    const auto spec = cli::build_problem(c);
    const auto f = solve(spec, basis_for(spec, 100), 32);
    const auto& d = f.dom;
    for (std::size_t j = 0; j < d.ny(); j += 4)
        for (std::size_t i = 0; i < d.nx(); i += 4) EXPECT_NEAR(f.at(32, d.index(i, j)), f.at(32, d.index(j, i)), 1e-10);
}
