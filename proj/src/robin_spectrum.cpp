#include "fracrobin/robin_spectrum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "fracrobin/errors.hpp"

namespace fracrobin {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_lambda(double v, const char* where) {
    if (!(v > 0.0)) {
        std::ostringstream msg;
        msg << where << ": Robin coefficient must be strictly positive (got " << v
            << "); lambda > 0 is what makes the first eigenvalue positive";
        throw std::invalid_argument(msg.str());
    }
}

std::vector<double> sample_axis(const AxisMode& m, std::size_t nodes, double h) {
    std::vector<double> out(nodes);
    for (std::size_t i = 0; i < nodes; ++i) out[i] = m.value(static_cast<double>(i) * h);
    return out;
}

// Rescales the amplitude so that the samples have unit weighted norm.
void normalize_axis(AxisMode& m, std::size_t nodes, double h, const std::vector<double>& w) {
    const auto s = sample_axis(m, nodes, h);
    m.amplitude /= weighted_norm(s, w);
}

void fix_sign(std::vector<double>& v) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    for (double x : v) {
        if (std::abs(x) > 1e-8 * peak) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

}  // namespace

RobinCoefficient RobinCoefficient::interval(double left, double right) {
    require_positive_lambda(left, "lambda_left");
    require_positive_lambda(right, "lambda_right");
    RobinCoefficient c;
    c.values_ = {left, right, 0.0, 0.0};
    c.faces_ = 2;
    return c;
}

RobinCoefficient RobinCoefficient::rectangle(double left, double right, double bottom, double top) {
    require_positive_lambda(left, "lambda_left");
    require_positive_lambda(right, "lambda_right");
    require_positive_lambda(bottom, "lambda_bottom");
    require_positive_lambda(top, "lambda_top");
    RobinCoefficient c;
    c.values_ = {left, right, bottom, top};
    c.faces_ = 4;
    return c;
}

RobinCoefficient RobinCoefficient::sampled(const Domain& dom, std::array<std::vector<double>, 4> traces) {
    RobinCoefficient c;
    c.faces_ = dom.faces().size();
    c.variable_ = true;
    for (Face f : dom.faces()) {
        auto& tr = traces[static_cast<std::size_t>(f)];
        if (tr.size() != dom.face_size(f))
            throw std::invalid_argument(std::string("lambda trace size mismatch on face ") + to_string(f));
        for (double v : tr) require_positive_lambda(v, "lambda trace");
        double sum = 0.0;
        for (double v : tr) sum += v;
        c.values_[static_cast<std::size_t>(f)] = sum / static_cast<double>(tr.size());
        c.traces_[static_cast<std::size_t>(f)] = std::move(tr);
    }
    return c;
}

double RobinCoefficient::face_value(Face f) const {
    if (static_cast<std::size_t>(f) >= faces_) throw std::invalid_argument("face not present");
    if (variable_) throw std::logic_error("face_value on a variable Robin coefficient");
    return values_[static_cast<std::size_t>(f)];
}

double RobinCoefficient::at(Face f, std::size_t m) const {
    const auto i = static_cast<std::size_t>(f);
    if (i >= faces_) throw std::invalid_argument("face not present");
    return variable_ ? traces_[i].at(m) : values_[i];
}

double RobinCoefficient::min_value() const noexcept {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < faces_; ++i) {
        if (variable_)
            for (double v : traces_[i]) lo = std::min(lo, v);
        else
            lo = std::min(lo, values_[i]);
    }
    return lo;
}

void RobinCoefficient::validate(const Domain& dom) const {
    if (faces_ != dom.faces().size())
        throw std::invalid_argument("Robin coefficient has " + std::to_string(faces_) + " faces, domain has " +
                                    std::to_string(dom.faces().size()));
    if (variable_)
        for (Face f : dom.faces())
            if (traces_[static_cast<std::size_t>(f)].size() != dom.face_size(f))
                throw std::invalid_argument("lambda trace does not match the mesh");
    require_positive_lambda(min_value(), "lambda");
}

double AxisMode::value(double x) const noexcept { return amplitude * std::cos(k * x - phase); }

double AxisMode::derivative(double x) const noexcept { return -amplitude * k * std::sin(k * x - phase); }

std::vector<double> Spectrum::mus() const {
    std::vector<double> out;
    out.reserve(modes.size());
    for (const auto& m : modes) out.push_back(m.mu);
    return out;
}

double robin_characteristic(double k, double l0, double l1, double length) {
    return (k * k - l0 * l1) * std::sin(k * length) - k * (l0 + l1) * std::cos(k * length);
}

double robin_root(double l0, double l1, double length, std::size_t n) {
    require_positive_lambda(l0, "lambda_left");
    require_positive_lambda(l1, "lambda_right");
    if (n == 0) throw std::invalid_argument("robin_root: n is 1-based");
    const double nudge = 1e-9 * kPi / length;
    double a = static_cast<double>(n - 1) * kPi / length + nudge;
    double b = static_cast<double>(n) * kPi / length - nudge;
    double fa = robin_characteristic(a, l0, l1, length);
    const double fb = robin_characteristic(b, l0, l1, length);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "no sign change of the Robin characteristic function in (" << a << ", " << b << ") for n = " << n;
        throw std::runtime_error(msg.str());
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = robin_characteristic(mid, l0, l1, length);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

AxisMode robin_axis_mode(double l0, double l1, double length, std::size_t n) {
    AxisMode m;
    m.index = n;
    m.k = robin_root(l0, l1, length, n);
    // cos(kx) + (l0/k) sin(kx) = R cos(kx - phase)
    const double ratio = l0 / m.k;
    m.amplitude = std::hypot(1.0, ratio);
    m.phase = std::atan(ratio);
    return m;
}

Spectrum eigen_interval(double lambda_left, double lambda_right, const Domain& dom, std::size_t count) {
    if (dom.kind() != DomainKind::interval) throw std::invalid_argument("eigen_interval needs an interval domain");
    if (count == 0) throw std::invalid_argument("eigen_interval: need at least one mode");
    auto lambda = RobinCoefficient::interval(lambda_left, lambda_right);
    const auto w = quadrature_weights(dom, Quadrature::gregory);
    Spectrum s{dom, lambda, SpectrumMethod::analytic, w, {}};
    s.modes.reserve(count);
    for (std::size_t n = 1; n <= count; ++n) {
        AxisMode m = robin_axis_mode(lambda_left, lambda_right, dom.lx(), n);
        normalize_axis(m, dom.nx(), dom.hx(), w);
        EigenPair p;
        p.index = n;
        p.mu = m.mu();
        p.psi = sample_axis(m, dom.nx(), dom.hx());
        p.analytic = {m};
        s.modes.push_back(std::move(p));
    }
    return s;
}

Spectrum eigen_rectangle(const RobinCoefficient& lambda, const Domain& dom, std::size_t count) {
    if (dom.kind() != DomainKind::rectangle) throw std::invalid_argument("eigen_rectangle needs a rectangle domain");
    if (lambda.variable())
        throw std::invalid_argument("eigen_rectangle needs constant lambda per edge; use eigen_fd for variable lambda");
    lambda.validate(dom);
    if (count == 0) throw std::invalid_argument("eigen_rectangle: need at least one mode");

    const double ll = lambda.face_value(Face::left), lr = lambda.face_value(Face::right);
    const double lb = lambda.face_value(Face::bottom), lt = lambda.face_value(Face::top);
    std::vector<AxisMode> xs, ys;
    for (std::size_t n = 1; n <= count; ++n) {
        xs.push_back(robin_axis_mode(ll, lr, dom.lx(), n));
        ys.push_back(robin_axis_mode(lb, lt, dom.ly(), n));
    }
    // The first `count` sums need at most `count` factors per axis; i * j <= count
    // prunes pairs that cannot rank in the first `count` (both lists ascend).
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; (i + 1) * (j + 1) <= count; ++j) pairs.emplace_back(xs[i].mu() + ys[j].mu(), i, j);
    std::sort(pairs.begin(), pairs.end());
    pairs.resize(std::min(count, pairs.size()));

    const auto wx = quadrature_weights_1d(dom.nx(), dom.hx(), Quadrature::gregory);
    const auto wy = quadrature_weights_1d(dom.ny(), dom.hy(), Quadrature::gregory);
    for (auto& m : xs) normalize_axis(m, dom.nx(), dom.hx(), wx);
    for (auto& m : ys) normalize_axis(m, dom.ny(), dom.hy(), wy);

    Spectrum s{dom, lambda, SpectrumMethod::analytic, quadrature_weights(dom, Quadrature::gregory), {}};
    s.modes.reserve(pairs.size());
    std::size_t n = 1;
    for (const auto& [mu, i, j] : pairs) {
        const auto px = sample_axis(xs[i], dom.nx(), dom.hx());
        const auto py = sample_axis(ys[j], dom.ny(), dom.hy());
        EigenPair p;
        p.index = n++;
        p.mu = mu;
        p.psi.resize(dom.node_count());
        for (std::size_t iy = 0; iy < dom.ny(); ++iy)
            for (std::size_t ix = 0; ix < dom.nx(); ++ix) p.psi[dom.index(ix, iy)] = px[ix] * py[iy];
        p.analytic = {xs[i], ys[j]};
        s.modes.push_back(std::move(p));
    }
    return s;
}

Spectrum eigen_fd(const Domain& dom, const RobinCoefficient& lambda, std::size_t count) {
    lambda.validate(dom);
    const std::size_t n = dom.node_count();
    if (n > 4096) throw std::invalid_argument("eigen_fd: dense solve limited to 4096 unknowns");
    if (count == 0 || count > n) throw std::invalid_argument("eigen_fd: mode count must be in [1, node count]");

    const auto w = quadrature_weights(dom, Quadrature::trapezoid);
    Eigen::VectorXd sqw(n);
    for (std::size_t i = 0; i < n; ++i) sqw[static_cast<Eigen::Index>(i)] = std::sqrt(w[i]);

    // -Delta_h with ghost nodes eliminated: a boundary row reads
    // (2 (1 + h lambda) u_b - 2 u_in) / h^2 along the normal axis.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    auto add_axis = [&](std::size_t node, std::size_t pos, std::size_t len, std::size_t stride, double h, double l_lo,
                        double l_hi) {
        const auto r = static_cast<Eigen::Index>(node);
        const double h2 = h * h;
        if (pos == 0) {
            a(r, r) += 2.0 * (1.0 + h * l_lo) / h2;
            a(r, static_cast<Eigen::Index>(node + stride)) -= 2.0 / h2;
        } else if (pos + 1 == len) {
            a(r, r) += 2.0 * (1.0 + h * l_hi) / h2;
            a(r, static_cast<Eigen::Index>(node - stride)) -= 2.0 / h2;
        } else {
            a(r, r) += 2.0 / h2;
            a(r, static_cast<Eigen::Index>(node - stride)) -= 1.0 / h2;
            a(r, static_cast<Eigen::Index>(node + stride)) -= 1.0 / h2;
        }
    };
    for (std::size_t iy = 0; iy < dom.ny(); ++iy) {
        for (std::size_t ix = 0; ix < dom.nx(); ++ix) {
            const std::size_t node = dom.index(ix, iy);
            const std::size_t m_x = dom.kind() == DomainKind::interval ? 0 : iy;
            add_axis(node, ix, dom.nx(), 1, dom.hx(), lambda.at(Face::left, m_x), lambda.at(Face::right, m_x));
            if (dom.kind() == DomainKind::rectangle)
                add_axis(node, iy, dom.ny(), dom.nx(), dom.hy(), lambda.at(Face::bottom, ix), lambda.at(Face::top, ix));
        }
    }

    const Eigen::MatrixXd s = sqw.asDiagonal() * a * sqw.cwiseInverse().asDiagonal();
    const double asym = (s - s.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * s.cwiseAbs().maxCoeff())
        throw InternalError("FD Robin matrix is not symmetric in the weighted inner product");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (s + s.transpose()));
    if (solver.info() != Eigen::Success) throw InternalError("symmetric eigensolve failed");

    Spectrum out{dom, lambda, SpectrumMethod::fd, w, {}};
    out.modes.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const auto col = static_cast<Eigen::Index>(k);
        EigenPair p;
        p.index = k + 1;
        p.mu = solver.eigenvalues()[col];
        if (!(p.mu > 0.0)) throw InternalError("FD Robin eigenvalue is not positive");
        p.psi.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = static_cast<Eigen::Index>(i);
            p.psi[i] = solver.eigenvectors()(r, col) / sqw[r];
        }
        fix_sign(p.psi);
        out.modes.push_back(std::move(p));
    }
    return out;
}

Spectrum eigen_auto(const Domain& dom, const RobinCoefficient& lambda, std::size_t count) {
    if (lambda.variable()) return eigen_fd(dom, lambda, count);
    lambda.validate(dom);
    if (dom.kind() == DomainKind::interval)
        return eigen_interval(lambda.face_value(Face::left), lambda.face_value(Face::right), dom, count);
    return eigen_rectangle(lambda, dom, count);
}

std::vector<double> project(std::span<const double> field, const Spectrum& basis) {
    if (field.size() != basis.domain.node_count())
        throw std::invalid_argument("project: field and basis live on different meshes");
    std::vector<double> c;
    c.reserve(basis.modes.size());
    for (const auto& m : basis.modes) c.push_back(weighted_dot(field, m.psi, basis.weights));
    return c;
}

std::vector<double> synthesize(std::span<const double> coeffs, const Spectrum& basis) {
    if (coeffs.size() > basis.modes.size()) throw std::invalid_argument("synthesize: more coefficients than modes");
    std::vector<double> out(basis.domain.node_count(), 0.0);
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        const double c = coeffs[n];
        if (c == 0.0) continue;
        const auto& psi = basis.modes[n].psi;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * psi[i];
    }
    return out;
}

double frac_power_norm(std::span<const double> coeffs, const Spectrum& basis, double gamma) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("frac_power_norm: gamma must be >= 0");
    if (coeffs.size() > basis.modes.size()) throw std::invalid_argument("frac_power_norm: more coefficients than modes");
    double acc = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        const double term = std::pow(basis.modes[n].mu, gamma) * coeffs[n];
        acc += term * term;
    }
    return std::sqrt(acc);
}

std::vector<double> gram_matrix(const Spectrum& basis, std::size_t count) {
    count = std::min(count, basis.modes.size());
    std::vector<double> g(count * count);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            g[i * count + j] = weighted_dot(basis.modes[i].psi, basis.modes[j].psi, basis.weights);
    return g;
}

std::pair<double, double> weyl_ratio_range(const Spectrum& basis) {
    const double power = 2.0 / static_cast<double>(basis.domain.dim());
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& m : basis.modes) {
        const double r = m.mu / std::pow(static_cast<double>(m.index), power);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi};
}

}  // namespace fracrobin
