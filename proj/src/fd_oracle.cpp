#include "fracrobin/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracrobin/errors.hpp"
#include "fracrobin/spectral_solver.hpp"

namespace fracrobin {

namespace {

// Tridiagonal solve; sub[i] couples row i to i - 1, sup[i] to i + 1.
void thomas(const std::vector<double>& sub, const std::vector<double>& diag, const std::vector<double>& sup,
            std::vector<double>& rhs, double pivot_tol) {
    const std::size_t n = diag.size();
    std::vector<double> c(n);
    double piv = diag[0];
    if (!(std::abs(piv) > pivot_tol)) throw InternalError("FD oracle: tridiagonal solve broke down");
    c[0] = sup[0] / piv;
    rhs[0] /= piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = diag[i] - sub[i] * c[i - 1];
        if (!(std::abs(piv) > pivot_tol)) throw InternalError("FD oracle: tridiagonal solve broke down");
        c[i] = sup[i] / piv;
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

std::size_t nest_ratio(std::size_t fine, std::size_t coarse) {
    if (coarse == 0 || fine % coarse != 0) throw std::invalid_argument("compare: grids do not nest");
    return fine / coarse;
}

}  // namespace

SolutionField solve_fd(const ProblemSpec& spec, const FDConfig& cfg) {
    if (spec.dom.kind() != DomainKind::interval) throw std::invalid_argument("FD oracle handles intervals only");
    if (cfg.space_intervals < 16 || cfg.time_steps < 16) throw std::invalid_argument("FD oracle needs J >= 16 and K >= 16");
    if (!(spec.T > 0.0)) throw std::invalid_argument("final time T must be positive");
    spec.lambda.validate(spec.dom);

    const std::size_t nodes = cfg.space_intervals + 1;
    const Domain dom = Domain::interval(spec.dom.lx(), nodes);
    ProblemSpec local = spec;
    local.dom = dom;
    if (local.compat.enforce) check_compatibility(local);

    const std::size_t steps = cfg.time_steps;
    SolutionField out(dom, spec.T, steps);
    const double a = spec.alpha.value();
    const double dt = out.dt();
    const double h = dom.hx();
    const double h2 = h * h;
    const double l0 = spec.lambda.at(Face::left, 0);
    const double l1 = spec.lambda.at(Face::right, 0);
    const double c = std::pow(dt, -a) / std::tgamma(2.0 - a);

    std::vector<double> bw(steps);  // L1 weights b_j = (j+1)^{1-a} - j^{1-a}
    for (std::size_t j = 0; j < steps; ++j)
        bw[j] = std::pow(static_cast<double>(j + 1), 1.0 - a) - std::pow(static_cast<double>(j), 1.0 - a);

    // (c I - Lap_h) with ghost-node Robin rows.
    std::vector<double> sub(nodes, -1.0 / h2), diag(nodes, c + 2.0 / h2), sup(nodes, -1.0 / h2);
    diag[0] = c + 2.0 * (1.0 + h * l0) / h2;
    sup[0] = -2.0 / h2;
    diag[nodes - 1] = c + 2.0 * (1.0 + h * l1) / h2;
    sub[nodes - 1] = -2.0 / h2;
    sub[0] = 0.0;
    sup[nodes - 1] = 0.0;

    const auto f = sample(dom, spec.f);
    const auto u0 = sample(dom, spec.u0);
    std::copy(u0.begin(), u0.end(), out.u1.begin());
    const LiftSolver lift(dom, spec.lambda);

    std::vector<double> rhs(nodes);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t = out.time(k);
        const double gk = spec.g(t);
        const double* prev = out.u1.data() + (k - 1) * nodes;
        for (std::size_t i = 0; i < nodes; ++i) rhs[i] = f[i] * gk + c * prev[i];
        // History: -c sum_{j>=1} b_j (u^{k-j} - u^{k-j-1})
        for (std::size_t j = 1; j < k; ++j) {
            const double* hi = out.u1.data() + (k - j) * nodes;
            const double* lo = out.u1.data() + (k - j - 1) * nodes;
            const double wj = c * bw[j];
            for (std::size_t i = 0; i < nodes; ++i) rhs[i] -= wj * (hi[i] - lo[i]);
        }
        rhs[0] += 2.0 * spec.b(Face::left, 0.0, t) / h;
        rhs[nodes - 1] += 2.0 * spec.b(Face::right, 0.0, t) / h;
        thomas(sub, diag, sup, rhs, cfg.pivot_tol);
        std::copy(rhs.begin(), rhs.end(), out.u1.begin() + static_cast<std::ptrdiff_t>(k * nodes));
    }
    for (std::size_t k = 0; k <= steps; ++k) {
        const auto lam = lift(sample_boundary(local, out.time(k)));
        std::copy(lam.begin(), lam.end(), out.lift.begin() + static_cast<std::ptrdiff_t>(k * nodes));
    }
    out.modes_used = 0;
    out.assemble();
    return out;
}

ErrorReport compare(const SolutionField& a, const SolutionField& b) {
    if (a.dom.kind() != b.dom.kind() || a.dom.lx() != b.dom.lx() || a.dom.ly() != b.dom.ly())
        throw std::invalid_argument("compare: fields live on different domains");
    if (std::abs(a.T - b.T) > 1e-12 * std::max(a.T, b.T)) throw std::invalid_argument("compare: different horizons");

    const bool a_coarse_t = a.steps <= b.steps;
    const std::size_t kc = std::min(a.steps, b.steps);
    const std::size_t rt = nest_ratio(std::max(a.steps, b.steps), kc);
    const Domain& cd = a.dom.nx() <= b.dom.nx() ? a.dom : b.dom;
    const std::size_t rx_a = nest_ratio(a.dom.nx() - 1, cd.nx() - 1);
    const std::size_t rx_b = nest_ratio(b.dom.nx() - 1, cd.nx() - 1);
    std::size_t ry_a = 1, ry_b = 1;
    if (cd.kind() == DomainKind::rectangle) {
        const std::size_t cny = std::min(a.dom.ny(), b.dom.ny());
        ry_a = nest_ratio(a.dom.ny() - 1, cny - 1);
        ry_b = nest_ratio(b.dom.ny() - 1, cny - 1);
    }
    const std::size_t cny = cd.kind() == DomainKind::rectangle ? std::min(a.dom.ny(), b.dom.ny()) : 1;
    const Domain coarse = cd.kind() == DomainKind::rectangle ? Domain::rectangle(cd.lx(), cd.ly(), cd.nx(), cny) : cd;
    const auto w = quadrature_weights(coarse, Quadrature::trapezoid);
    const double dt = a.T / static_cast<double>(kc);

    ErrorReport rep;
    double err_sq = 0.0, ref_sq = 0.0, ref_max = 0.0;
    for (std::size_t k = 0; k <= kc; ++k) {
        const std::size_t ka = a_coarse_t ? k : k * rt;
        const std::size_t kb = a_coarse_t ? k * rt : k;
        const double wt = (k == 0 || k == kc) ? 0.5 * dt : dt;
        for (std::size_t iy = 0; iy < coarse.ny(); ++iy)
            for (std::size_t ix = 0; ix < coarse.nx(); ++ix) {
                const double va = a.at(ka, a.dom.index(ix * rx_a, iy * ry_a));
                const double vb = b.at(kb, b.dom.index(ix * rx_b, iy * ry_b));
                const double wi = w[coarse.index(ix, iy)] * wt;
                err_sq += wi * (va - vb) * (va - vb);
                ref_sq += wi * vb * vb;
                rep.abs_max = std::max(rep.abs_max, std::abs(va - vb));
                ref_max = std::max(ref_max, std::abs(vb));
            }
    }
    rep.abs_l2l2 = std::sqrt(err_sq);
    rep.rel_l2l2 = ref_sq > 0.0 ? rep.abs_l2l2 / std::sqrt(ref_sq) : rep.abs_l2l2;
    rep.rel_max = ref_max > 0.0 ? rep.abs_max / ref_max : rep.abs_max;
    return rep;
}

}  // namespace fracrobin
