#include "fracrobin/spectral_solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracrobin/errors.hpp"
#include "fracrobin/frac_calculus.hpp"
#include "fracrobin/mittag_leffler.hpp"

namespace fracrobin {

namespace {

void require_same_mesh(const ProblemSpec& spec, const Spectrum& basis) {
    if (!spec.dom.same_mesh(basis.domain)) throw std::invalid_argument("basis and problem live on different meshes");
    if (basis.modes.empty()) throw std::invalid_argument("empty basis");
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double tail_ratio(const std::vector<double>& c) {
    const double all = norm2(c);
    if (all == 0.0) return 0.0;
    return norm2(std::span<const double>(c).subspan(c.size() / 2)) / all;
}

// field[k * nodes + i] += sum_n coeff[n][k] psi_n[i]
void synthesize_into(std::vector<double>& field, const std::vector<std::vector<double>>& coeff, const Spectrum& basis,
                     std::size_t times) {
    const std::size_t nodes = basis.domain.node_count();
    for (std::size_t n = 0; n < coeff.size(); ++n) {
        const auto& psi = basis.modes[n].psi;
        for (std::size_t k = 0; k < times; ++k) {
            const double c = coeff[n][k];
            if (c == 0.0) continue;
            double* row = field.data() + k * nodes;
            for (std::size_t i = 0; i < nodes; ++i) row[i] += c * psi[i];
        }
    }
}

std::vector<double> relaxation_table(FracOrder a, double mu, double dt, std::size_t times) {
    std::vector<double> r(times);
    for (std::size_t k = 0; k < times; ++k) r[k] = relaxation(a, mu, static_cast<double>(k) * dt);
    return r;
}

void fill_homog(SolutionField& out, const ProblemSpec& spec, const Spectrum& basis) {
    const std::size_t times = out.time_count();
    const double dt = out.dt();
    const auto u0 = sample(spec.dom, spec.u0);
    const auto fs = sample(spec.dom, spec.f);
    const auto c0 = project(u0, basis);
    const auto cf = project(fs, basis);

    std::vector<double> gv(times);
    for (std::size_t k = 0; k < times; ++k) gv[k] = spec.g(static_cast<double>(k) * dt);
    const auto table = source_kernel_table(TimeSeries(0.0, dt, gv), basis.mus(), spec.alpha);

    std::vector<std::vector<double>> a1(basis.size()), a2(basis.size());
    for (std::size_t n = 0; n < basis.size(); ++n) {
        a1[n].assign(times, 0.0);
        a2[n].assign(times, 0.0);
        if (c0[n] != 0.0) {
            const auto r = relaxation_table(spec.alpha, basis.modes[n].mu, dt, times);
            for (std::size_t k = 0; k < times; ++k) a1[n][k] = c0[n] * r[k];
        }
        if (cf[n] != 0.0)
            for (std::size_t k = 0; k < times; ++k) a2[n][k] = cf[n] * table.values[n][k];
    }
    synthesize_into(out.u1, a1, basis, times);
    synthesize_into(out.u2, a2, basis, times);

    out.modes_used = basis.size();
    out.tail_u0 = tail_ratio(c0);
    out.tail_f = tail_ratio(cf);
}

void fill_boundary(SolutionField& out, const ProblemSpec& spec, const Spectrum& basis) {
    const std::size_t times = out.time_count();
    const std::size_t nodes = out.nodes();
    const double dt = out.dt();
    const LiftSolver lift(spec.dom, spec.lambda);

    // Modal coefficients of the lift at every time node.
    std::vector<std::vector<double>> c(basis.size(), std::vector<double>(times));
    bool any = false;
    for (std::size_t k = 0; k < times; ++k) {
        const auto bt = sample_boundary(spec, static_cast<double>(k) * dt);
        if (trace_is_zero(bt, 0.0)) continue;
        any = true;
        const auto lam = lift(bt);
        std::copy(lam.begin(), lam.end(), out.lift.begin() + static_cast<std::ptrdiff_t>(k * nodes));
        const auto ck = project(lam, basis);
        for (std::size_t n = 0; n < basis.size(); ++n) c[n][k] = ck[n];
    }
    if (!any) return;

    // Modal part of u3 - lift solves d^a w + mu w = -d^a c, w(0) = -c(0):
    // w(t) = -c(0) E(-mu t^a) - int_0^t c'(t - s) E(-mu s^a) ds, with c'
    // piecewise constant and the E factor integrated exactly.
    std::vector<std::vector<double>> w(basis.size(), std::vector<double>(times, 0.0));
    std::vector<double> slope(times - 1), q(times), dq(times - 1);
    for (std::size_t n = 0; n < basis.size(); ++n) {
        const double mu = basis.modes[n].mu;
        bool nonzero = false;
        for (double v : c[n]) nonzero = nonzero || v != 0.0;
        if (!nonzero) continue;
        for (std::size_t j = 0; j + 1 < times; ++j) slope[j] = (c[n][j + 1] - c[n][j]) / dt;
        for (std::size_t k = 0; k < times; ++k) q[k] = relaxation_integral(spec.alpha, mu, static_cast<double>(k) * dt);
        for (std::size_t m = 0; m + 1 < times; ++m) dq[m] = q[m + 1] - q[m];
        const auto r = c[n][0] != 0.0 ? relaxation_table(spec.alpha, mu, dt, times) : std::vector<double>(times, 0.0);
        for (std::size_t k = 0; k < times; ++k) {
            double conv = 0.0;
            for (std::size_t m = 0; m < k; ++m) conv += slope[k - 1 - m] * dq[m];
            w[n][k] = -c[n][0] * r[k] - conv;
        }
    }
    synthesize_into(out.u3, w, basis, times);
    for (std::size_t i = 0; i < out.u3.size(); ++i) out.u3[i] += out.lift[i];
}

void finish(SolutionField& out, const ProblemSpec& spec) {
    out.assemble();
    const auto u0 = sample(spec.dom, spec.u0);
    double diff = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < u0.size(); ++i) {
        diff += (out.u[i] - u0[i]) * (out.u[i] - u0[i]);
        ref += u0[i] * u0[i];
    }
    out.initial_error = ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

}  // namespace

struct LiftSolver::Impl {
    Impl(const Domain& d, const RobinCoefficient& l) : dom(d), lambda(l) {}
    Domain dom;
    RobinCoefficient lambda;
    Eigen::SparseMatrix<double> a;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    double a_norm = 0.0;
};

LiftSolver::LiftSolver(const Domain& dom, const RobinCoefficient& lambda)
    : impl_(std::make_unique<Impl>(dom, lambda)) {
    lambda.validate(dom);
    if (dom.kind() == DomainKind::interval) return;

    const std::size_t n = dom.node_count();
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> row_abs(n, 0.0);
    auto add = [&](std::size_t r, std::size_t col, double v) {
        trip.emplace_back(static_cast<int>(r), static_cast<int>(col), v);
        row_abs[r] += std::abs(v);
    };
    auto axis = [&](std::size_t node, std::size_t pos, std::size_t len, std::size_t stride, double h, double l_lo,
                    double l_hi) {
        const double h2 = h * h;
        if (pos == 0) {
            add(node, node, 2.0 * (1.0 + h * l_lo) / h2);
            add(node, node + stride, -2.0 / h2);
        } else if (pos + 1 == len) {
            add(node, node, 2.0 * (1.0 + h * l_hi) / h2);
            add(node, node - stride, -2.0 / h2);
        } else {
            add(node, node, 2.0 / h2);
            add(node, node - stride, -1.0 / h2);
            add(node, node + stride, -1.0 / h2);
        }
    };
    for (std::size_t iy = 0; iy < dom.ny(); ++iy)
        for (std::size_t ix = 0; ix < dom.nx(); ++ix) {
            const std::size_t node = dom.index(ix, iy);
            axis(node, ix, dom.nx(), 1, dom.hx(), lambda.at(Face::left, iy), lambda.at(Face::right, iy));
            axis(node, iy, dom.ny(), dom.nx(), dom.hy(), lambda.at(Face::bottom, ix), lambda.at(Face::top, ix));
        }
    impl_->a.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    impl_->a.setFromTriplets(trip.begin(), trip.end());
    impl_->a_norm = *std::max_element(row_abs.begin(), row_abs.end());
    impl_->lu.compute(impl_->a);
    if (impl_->lu.info() != Eigen::Success) throw InternalError("Robin lift matrix is singular");
}

LiftSolver::~LiftSolver() = default;
LiftSolver::LiftSolver(LiftSolver&&) noexcept = default;
LiftSolver& LiftSolver::operator=(LiftSolver&&) noexcept = default;

std::vector<double> LiftSolver::operator()(const BoundaryTrace& bt) const {
    const Domain& dom = impl_->dom;
    const RobinCoefficient& lam = impl_->lambda;
    for (Face f : dom.faces())
        if (bt[static_cast<std::size_t>(f)].size() != dom.face_size(f))
            throw std::invalid_argument("boundary trace does not match the mesh");

    if (dom.kind() == DomainKind::interval) {
        // Lift = p + q x:  -q + l0 p = b0,  l1 p + (1 + l1 L) q = b1.
        const double l0 = lam.at(Face::left, 0), l1 = lam.at(Face::right, 0), len = dom.lx();
        const double b0 = bt[0][0], b1 = bt[1][0];
        const double det = l0 * (1.0 + l1 * len) + l1;
        if (!(std::abs(det) > 0.0) || !std::isfinite(det)) throw InternalError("singular Robin lift system");
        const double p = (b0 * (1.0 + l1 * len) + b1) / det;
        const double q = (l0 * b1 - l1 * b0) / det;
        std::vector<double> out(dom.nx());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = p + q * dom.x(i);
        return out;
    }

    const std::size_t n = dom.node_count();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (Face f : dom.faces()) {
        const double h = (f == Face::left || f == Face::right) ? dom.hx() : dom.hy();
        for (std::size_t m = 0; m < dom.face_size(f); ++m)
            rhs[static_cast<Eigen::Index>(dom.face_node(f, m))] += 2.0 * bt[static_cast<std::size_t>(f)][m] / h;
    }
    const Eigen::VectorXd x = impl_->lu.solve(rhs);
    const double res = (impl_->a * x - rhs).cwiseAbs().maxCoeff();
    const double scale = impl_->a_norm * x.cwiseAbs().maxCoeff() + rhs.cwiseAbs().maxCoeff();
    if (res > 1e-10 * std::max(scale, 1e-300)) {
        std::ostringstream msg;
        msg << "Robin lift solve residual " << res << " exceeds 1e-10 relative";
        throw InternalError(msg.str());
    }
    return std::vector<double>(x.data(), x.data() + x.size());
}

std::vector<double> elliptic_lift(const BoundaryTrace& bt, const RobinCoefficient& lambda, const Domain& dom) {
    return LiftSolver(dom, lambda)(bt);
}

SourceKernelTable source_kernel_table(const TimeSeries& g, std::span<const double> mus, FracOrder a) {
    if (g.t0() != 0.0) throw std::invalid_argument("source_kernel_table: g must start at t = 0");
    const std::size_t times = g.size();
    const double dt = g.dt();
    std::vector<double> mid(times - 1);
    for (std::size_t j = 0; j + 1 < times; ++j) mid[j] = 0.5 * (g[j] + g[j + 1]);
    const bool zero = std::all_of(mid.begin(), mid.end(), [](double v) { return v == 0.0; });

    SourceKernelTable table;
    table.dt = dt;
    table.values.reserve(mus.size());
    std::vector<double> d(times - 1);
    for (double mu : mus) {
        if (!(mu > 0.0)) throw std::invalid_argument("source_kernel_table: eigenvalues must be positive");
        std::vector<double> gn(times, 0.0);
        if (!zero) {
            const auto r = relaxation_table(a, mu, dt, times);
            for (std::size_t j = 0; j + 1 < times; ++j) d[j] = (r[j] - r[j + 1]) / mu;
            for (std::size_t k = 1; k < times; ++k) {
                double acc = 0.0;
                for (std::size_t j = 0; j < k; ++j) acc += mid[k - 1 - j] * d[j];
                gn[k] = acc;
            }
        }
        table.values.push_back(std::move(gn));
    }
    return table;
}

SolutionField solve_homog_bc(const ProblemSpec& spec, const Spectrum& basis, std::size_t steps) {
    require_same_mesh(spec, basis);
    SolutionField out(spec.dom, spec.T, steps);
    for (std::size_t k = 0; k < out.time_count(); ++k)
        if (!trace_is_zero(sample_boundary(spec, out.time(k)), spec.compat.tol))
            throw std::invalid_argument("solve_homog_bc needs b == 0");
    fill_homog(out, spec, basis);
    finish(out, spec);
    return out;
}

SolutionField solve_boundary(const ProblemSpec& spec, const Spectrum& basis, std::size_t steps,
                             bool require_zero_start) {
    require_same_mesh(spec, basis);
    if (require_zero_start) {
        const double v = trace_max_abs(sample_boundary(spec, 0.0));
        if (v > spec.compat.tol) {
            std::ostringstream msg;
            msg << "boundary subproblem needs b(., 0) == 0; measured max |b(., 0)| = " << v;
            throw CompatibilityError(msg.str(), v);
        }
    }
    SolutionField out(spec.dom, spec.T, steps);
    fill_boundary(out, spec, basis);
    out.modes_used = basis.size();
    out.assemble();
    return out;
}

SolutionField solve(const ProblemSpec& spec, const Spectrum& basis, std::size_t steps) {
    require_same_mesh(spec, basis);
    spec.validate();
    SolutionField out(spec.dom, spec.T, steps);
    fill_homog(out, spec, basis);
    fill_boundary(out, spec, basis);
    finish(out, spec);
    return out;
}

std::size_t default_modes(const Domain& dom) noexcept { return dom.kind() == DomainKind::interval ? 64 : 1024; }

ResidualReport residual(const SolutionField& field, const ProblemSpec& spec) {
    ResidualReport rep;
    const Domain& dom = field.dom;
    const std::size_t nodes = field.nodes();
    const std::size_t times = field.time_count();
    const double dt = field.dt();
    const auto fs = sample(dom, spec.f);
    const auto w = quadrature_weights(dom, Quadrature::trapezoid);
    const bool two_d = dom.kind() == DomainKind::rectangle;

    // Interior: L1 Caputo per node trace, five-point (three-point) Laplacian.
    std::vector<double> cap(times * nodes, 0.0);
    for (std::size_t i = 0; i < nodes; ++i) {
        if (dom.on_boundary(i)) continue;
        const auto c = caputo_left(field.trace(i), spec.alpha);
        for (std::size_t k = 1; k < times; ++k) cap[k * nodes + i] = c[k];
    }
    double int_sq = 0.0;
    const double hx2 = dom.hx() * dom.hx();
    const double hy2 = two_d ? dom.hy() * dom.hy() : 1.0;
    for (std::size_t k = 1; k < times; ++k) {
        const double gk = spec.g(field.time(k));
        for (std::size_t i = 0; i < nodes; ++i) {
            if (dom.on_boundary(i)) continue;
            const double uc = field.at(k, i);
            double lap = (field.at(k, i - 1) - 2.0 * uc + field.at(k, i + 1)) / hx2;
            if (two_d) lap += (field.at(k, i - dom.nx()) - 2.0 * uc + field.at(k, i + dom.nx())) / hy2;
            const double r = cap[k * nodes + i] - lap - fs[i] * gk;
            rep.interior_max = std::max(rep.interior_max, std::abs(r));
            int_sq += dt * w[i] * r * r;
        }
    }
    rep.interior_l2 = std::sqrt(int_sq);

    // Boundary: second-order one-sided outward derivative.
    double bnd_sq = 0.0;
    for (std::size_t k = 1; k < times; ++k) {
        const auto bt = sample_boundary(spec, field.time(k));
        for (Face f : dom.faces()) {
            const bool x_axis = f == Face::left || f == Face::right;
            const double h = x_axis ? dom.hx() : dom.hy();
            const std::ptrdiff_t inward = (f == Face::left) ? 1
                                          : (f == Face::right) ? -1
                                          : (f == Face::bottom) ? static_cast<std::ptrdiff_t>(dom.nx())
                                                                : -static_cast<std::ptrdiff_t>(dom.nx());
            const std::size_t len = dom.face_size(f);
            const double face_h = two_d ? (x_axis ? dom.hy() : dom.hx()) : 1.0;
            for (std::size_t m = 0; m < len; ++m) {
                const auto node = static_cast<std::ptrdiff_t>(dom.face_node(f, m));
                const double u0 = field.at(k, static_cast<std::size_t>(node));
                const double u1 = field.at(k, static_cast<std::size_t>(node + inward));
                const double u2 = field.at(k, static_cast<std::size_t>(node + 2 * inward));
                const double dnu = -(-3.0 * u0 + 4.0 * u1 - u2) / (2.0 * h);
                const double r = dnu + spec.lambda.at(f, m) * u0 - bt[static_cast<std::size_t>(f)][m];
                rep.boundary_max = std::max(rep.boundary_max, std::abs(r));
                const double fw = two_d ? ((m == 0 || m + 1 == len) ? 0.5 : 1.0) * face_h : 1.0;
                bnd_sq += dt * fw * r * r;
            }
        }
    }
    rep.boundary_l2 = std::sqrt(bnd_sq);
    return rep;
}

}  // namespace fracrobin
