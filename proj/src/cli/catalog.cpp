#include "fracrobin/cli/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fracrobin/robin_spectrum.hpp"
#include "fracrobin/spectral_solver.hpp"

namespace fracrobin::cli {

namespace {

constexpr double kPi = std::numbers::pi;
using Grad = std::array<double, 2>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

struct Term {
    double coef = 1.0;
    std::string name;
    std::string param;
};

std::vector<Term> parse_terms(const std::string& selector) {
    std::vector<Term> terms;
    std::stringstream ss(selector);
    std::string piece;
    while (std::getline(ss, piece, '+')) {
        piece = trim(piece);
        if (piece.empty()) throw std::invalid_argument("empty term in selector '" + selector + "'");
        Term t;
        if (const auto star = piece.find('*'); star != std::string::npos) {
            const auto coef = trim(piece.substr(0, star));
            try {
                std::size_t used = 0;
                t.coef = std::stod(coef, &used);
                if (used != coef.size()) throw std::invalid_argument(coef);
            } catch (const std::logic_error&) {
                throw std::invalid_argument("bad coefficient '" + coef + "' in selector '" + selector + "'");
            }
            piece = trim(piece.substr(star + 1));
        }
        if (const auto colon = piece.find(':'); colon != std::string::npos) {
            t.param = trim(piece.substr(colon + 1));
            piece = trim(piece.substr(0, colon));
        }
        t.name = piece;
        terms.push_back(t);
    }
    if (terms.empty()) throw std::invalid_argument("empty selector");
    return terms;
}

double param_real(const Term& t, double fallback) {
    if (t.param.empty()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(t.param, &used);
        if (used != t.param.size()) throw std::invalid_argument(t.param);
        return v;
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad parameter '" + t.param + "' for sampler " + t.name);
    }
}

// exp(-1 / (1 - rho^2)) on rho < 1, normalized to 1 at the centre.
SpatialData bump(const ProblemConfig& c, double height) {
    const bool two_d = c.rectangle;
    const double cx = 0.5 * c.lx, cy = 0.5 * c.ly;
    const double wx = 0.3 * c.lx, wy = 0.3 * c.ly;
    auto rho2 = [=](double x, double y) {
        const double dx = (x - cx) / wx, dy = two_d ? (y - cy) / wy : 0.0;
        return dx * dx + dy * dy;
    };
    SpatialData d;
    d.value = [=](double x, double y) {
        const double r2 = rho2(x, y);
        return r2 < 1.0 ? height * std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
    };
    d.gradient = [=](double x, double y) {
        const double r2 = rho2(x, y);
        if (r2 >= 1.0) return Grad{0.0, 0.0};
        const double v = height * std::exp(1.0 - 1.0 / (1.0 - r2));
        const double dv_dr2 = -v / ((1.0 - r2) * (1.0 - r2));
        return Grad{dv_dr2 * 2.0 * (x - cx) / (wx * wx), two_d ? dv_dr2 * 2.0 * (y - cy) / (wy * wy) : 0.0};
    };
    return d;
}

SpatialData per_axis(const ProblemConfig& c, std::function<double(double)> v, std::function<double(double)> dv) {
    const bool two_d = c.rectangle;
    const double lx = c.lx, ly = c.ly;
    SpatialData d;
    d.value = [=](double x, double y) { return two_d ? v(x / lx) * v(y / ly) : v(x / lx); };
    d.gradient = [=](double x, double y) {
        if (!two_d) return Grad{dv(x / lx) / lx, 0.0};
        return Grad{dv(x / lx) / lx * v(y / ly), v(x / lx) * dv(y / ly) / ly};
    };
    return d;
}

SpatialData mode(const ProblemConfig& c, std::size_t n) {
    if (n == 0) throw std::invalid_argument("mode index is 1-based");
    const Domain dom = make_domain(c);
    const auto lam = make_lambda(c);
    std::vector<AxisMode> factors;
    if (c.rectangle) {
        factors = eigen_rectangle(lam, dom, n).modes.back().analytic;
    } else {
        factors = eigen_interval(c.lambda[0], c.lambda[1], dom, n).modes.back().analytic;
    }
    SpatialData d;
    if (factors.size() == 1) {
        const AxisMode m = factors[0];
        d.value = [m](double x, double) { return m.value(x); };
        d.gradient = [m](double x, double) { return Grad{m.derivative(x), 0.0}; };
    } else {
        const AxisMode mx = factors[0], my = factors[1];
        d.value = [mx, my](double x, double y) { return mx.value(x) * my.value(y); };
        d.gradient = [mx, my](double x, double y) {
            return Grad{mx.derivative(x) * my.value(y), mx.value(x) * my.derivative(y)};
        };
    }
    return d;
}

SpatialData lift(const ProblemConfig& c) {
    const double p0 = time_profile(c.b_profile, c.T)(0.0);
    if (!c.rectangle) {
        // Same 2x2 system as the solver's interval lift.
        const double l0 = c.lambda[0], l1 = c.lambda[1], len = c.lx;
        const double b0 = c.b[0] * p0, b1 = c.b[1] * p0;
        const double det = l0 * (1.0 + l1 * len) + l1;
        const double p = (b0 * (1.0 + l1 * len) + b1) / det;
        const double q = (l0 * b1 - l1 * b0) / det;
        return {[p, q](double x, double) { return p + q * x; }, [q](double, double) { return Grad{q, 0.0}; }};
    }
    const double level = c.b[0] * p0 / c.lambda[0];
    for (int i = 1; i < 4; ++i)
        if (std::abs(c.b[static_cast<std::size_t>(i)] * p0 / c.lambda[static_cast<std::size_t>(i)] - level) >
            1e-14 * std::max(1.0, std::abs(level)))
            throw std::invalid_argument("sampler 'lift' on a rectangle needs b / lambda equal on all faces");
    return SpatialData::constant(level);
}

SpatialData single(const Term& t, const ProblemConfig& c) {
    if (t.name == "zero") return SpatialData::zero();
    if (t.name == "const") return SpatialData::constant(param_real(t, 1.0));
    if (t.name == "mode") return mode(c, static_cast<std::size_t>(param_real(t, 1.0)));
    if (t.name == "bump") return bump(c, param_real(t, 1.0));
    if (t.name == "poly")
        return per_axis(
            c, [](double s) { return 16.0 * s * s * (1.0 - s) * (1.0 - s); },
            [](double s) { return 32.0 * s * (1.0 - s) * (1.0 - 2.0 * s); });
    if (t.name == "sin")
        return per_axis(
            c, [](double s) { return std::sin(kPi * s); }, [](double s) { return kPi * std::cos(kPi * s); });
    if (t.name == "lift") return lift(c);
    throw std::invalid_argument("unknown spatial sampler '" + t.name + "'");
}

}  // namespace

Domain make_domain(const ProblemConfig& c) {
    return c.rectangle ? Domain::rectangle(c.lx, c.ly, c.nx, c.ny) : Domain::interval(c.lx, c.nx);
}

RobinCoefficient make_lambda(const ProblemConfig& c) {
    return c.rectangle ? RobinCoefficient::rectangle(c.lambda[0], c.lambda[1], c.lambda[2], c.lambda[3])
                       : RobinCoefficient::interval(c.lambda[0], c.lambda[1]);
}

SpatialData spatial_sampler(const std::string& selector, const ProblemConfig& c) {
    std::vector<std::pair<double, SpatialData>> parts;
    for (const auto& t : parse_terms(selector)) parts.emplace_back(t.coef, single(t, c));
    if (parts.size() == 1 && parts[0].first == 1.0) return parts[0].second;
    SpatialData d;
    d.value = [parts](double x, double y) {
        double s = 0.0;
        for (const auto& [k, p] : parts) s += k * p.value(x, y);
        return s;
    };
    d.gradient = [parts](double x, double y) {
        Grad g{0.0, 0.0};
        for (const auto& [k, p] : parts) {
            const auto gp = p.gradient(x, y);
            g[0] += k * gp[0];
            g[1] += k * gp[1];
        }
        return g;
    };
    return d;
}

std::function<double(double)> time_profile(const std::string& selector, double T) {
    std::vector<std::pair<double, std::function<double(double)>>> parts;
    for (const auto& t : parse_terms(selector)) {
        std::function<double(double)> fn;
        if (t.name == "zero")
            fn = [](double) { return 0.0; };
        else if (t.name == "const")
            fn = [v = param_real(t, 1.0)](double) { return v; };
        else if (t.name == "ramp")
            fn = [T](double s) { return s / T; };
        else if (t.name == "sinsq")
            fn = [T](double s) {
                const double v = std::sin(0.5 * kPi * s / T);
                return v * v;
            };
        else if (t.name == "exp")
            fn = [](double s) { return -std::expm1(-s); };
        else
            throw std::invalid_argument("unknown time profile '" + t.name + "'");
        parts.emplace_back(t.coef, std::move(fn));
    }
    return [parts](double s) {
        double v = 0.0;
        for (const auto& [k, p] : parts) v += k * p(s);
        return v;
    };
}

BoundaryData boundary_sampler(const ProblemConfig& c) {
    const auto profile = time_profile(c.b_profile, c.T);
    const auto values = c.b;
    return [profile, values](Face f, double, double t) { return values[static_cast<std::size_t>(f)] * profile(t); };
}

ProblemSpec build_problem(const ProblemConfig& c) {
    if (!(c.alpha > 0.0) || c.alpha > 1.0) throw std::invalid_argument("alpha must lie in (0, 1]");
    const Domain dom = make_domain(c);
    ProblemSpec spec{FracOrder(c.alpha), c.T, dom, make_lambda(c), spatial_sampler(c.u0, c), spatial_sampler(c.f, c),
                     time_profile(c.g, c.T), boundary_sampler(c)};
    spec.compat.enforce = c.enforce_compat;
    spec.compat.tol = c.comp_tol;
    return spec;
}

ProblemConfig random_nonnegative_config(std::uint64_t seed, double alpha, std::size_t nodes) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    ProblemConfig c;
    c.alpha = alpha;
    c.T = 1.0;
    c.nx = nodes;
    c.lambda = {uniform(0.5, 5.0), uniform(0.5, 5.0), 1.0, 1.0};
    c.b = {uniform(0.0, 2.0), uniform(0.0, 2.0), 0.0, 0.0};
    c.b_profile = "const";

    // A small admixture of higher modes keeps the data nonnegative: psi_1 > 0
    // dominates, and the candidate is shrunk until the samples stay >= 0.
    auto modal = [&](const char* base, double lead) {
        std::ostringstream s;
        s.precision(17);
        s << base << lead << "*mode:1";
        for (int n = 2; n <= 4; ++n) s << " + " << uniform(-0.15, 0.15) * lead << "*mode:" << n;
        return s.str();
    };
    const Domain dom = make_domain(c);
    auto min_on_mesh = [&](const std::string& sel) {
        const auto v = sample(dom, spatial_sampler(sel, c));
        return *std::min_element(v.begin(), v.end());
    };
    std::string u0 = modal("lift + ", uniform(0.2, 2.0));
    std::string f = modal("", uniform(0.0, 2.0));
    for (int tries = 0; tries < 8 && min_on_mesh(u0) < 0.0; ++tries) u0 = modal("lift + ", uniform(0.2, 2.0));
    for (int tries = 0; tries < 8 && min_on_mesh(f) < 0.0; ++tries) f = modal("", uniform(0.0, 2.0));
    if (min_on_mesh(u0) < 0.0) u0 = "lift + mode:1";
    if (min_on_mesh(f) < 0.0) f = "mode:1";
    c.u0 = u0;
    c.f = f;

    static const char* profiles[] = {"const", "ramp", "sinsq", "exp"};
    std::ostringstream g;
    g.precision(17);
    g << uniform(0.0, 2.0) << "*" << profiles[rng() % 4];
    c.g = g.str();
    return c;
}

}  // namespace fracrobin::cli
