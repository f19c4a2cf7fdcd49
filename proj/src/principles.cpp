#include "fracrobin/principles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fracrobin/frac_calculus.hpp"
#include "fracrobin/mittag_leffler.hpp"

namespace fracrobin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Verdict make_verdict(const char* check, double tol) {
    Verdict v;
    v.check = check;
    v.tol = tol;
    return v;
}

void set_witness(Verdict& v, const SolutionField& field, std::size_t k, std::size_t node) {
    v.witness_t = field.time(k);
    v.witness_x = field.dom.point(node);
}

struct Extremum {
    std::size_t k = 0;
    std::size_t node = 0;
    double value = 0.0;
};

Extremum field_min(const SolutionField& field) {
    Extremum e{0, 0, kInf};
    for (std::size_t k = 0; k < field.time_count(); ++k)
        for (std::size_t i = 0; i < field.nodes(); ++i)
            if (field.at(k, i) < e.value) e = {k, i, field.at(k, i)};
    return e;
}

// Smallest value of the data that must be nonnegative: u0, F = f g and b
// on the field's space-time samples. Returns the minimum and a description.
struct DataScan {
    double u0_min = kInf;
    double f_min = kInf;
    double b_min = kInf;
};

DataScan scan_data(const SolutionField& field, const ProblemSpec& spec) {
    DataScan s;
    ProblemSpec local = spec;
    local.dom = field.dom;
    const auto u0 = sample(field.dom, spec.u0);
    const auto f = sample(field.dom, spec.f);
    for (double v : u0) s.u0_min = std::min(s.u0_min, v);
    for (std::size_t k = 0; k < field.time_count(); ++k) {
        const double t = field.time(k);
        const double g = spec.g(t);
        for (double v : f) s.f_min = std::min(s.f_min, v * g);
        const auto bt = sample_boundary(local, t);
        for (const auto& face : bt)
            for (double v : face) s.b_min = std::min(s.b_min, v);
    }
    return s;
}

double data_scale(const SolutionField& field) {
    double m = 0.0;
    for (double v : field.u) m = std::max(m, std::abs(v));
    return std::max(m, 1.0);
}

std::string describe_scan(const DataScan& s) {
    std::ostringstream o;
    o.precision(3);
    o << "min u0 = " << s.u0_min << ", min F = " << s.f_min << ", min b = " << s.b_min;
    return o.str();
}

bool is_corner(const Domain& dom, std::size_t node) {
    if (dom.kind() == DomainKind::interval) return false;
    const std::size_t ix = node % dom.nx(), iy = node / dom.nx();
    return (ix == 0 || ix + 1 == dom.nx()) && (iy == 0 || iy + 1 == dom.ny());
}

// Outward one-sided second-order normal derivative at a non-corner boundary node.
double outward_derivative(const SolutionField& field, std::size_t k, std::size_t node) {
    const Domain& dom = field.dom;
    const std::size_t ix = node % dom.nx(), iy = node / dom.nx();
    std::ptrdiff_t inward = 0;
    double h = dom.hx();
    if (ix == 0) {
        inward = 1;
    } else if (ix + 1 == dom.nx()) {
        inward = -1;
    } else if (iy == 0) {
        inward = static_cast<std::ptrdiff_t>(dom.nx());
        h = dom.hy();
    } else {
        inward = -static_cast<std::ptrdiff_t>(dom.nx());
        h = dom.hy();
    }
    const auto n = static_cast<std::ptrdiff_t>(node);
    const double u0 = field.at(k, node);
    const double u1 = field.at(k, static_cast<std::size_t>(n + inward));
    const double u2 = field.at(k, static_cast<std::size_t>(n + 2 * inward));
    return -(-3.0 * u0 + 4.0 * u1 - u2) / (2.0 * h);
}

std::vector<double> graded_grid(double t, double t0, std::size_t m, double gamma) {
    std::vector<double> tau;
    const double fm = static_cast<double>(m);
    if (t <= t0) {
        tau.reserve(m + 1);
        for (std::size_t j = 0; j <= m; ++j) tau.push_back(t - t * std::pow(1.0 - static_cast<double>(j) / fm, gamma));
    } else {
        tau.reserve(2 * m + 1);
        for (std::size_t j = 0; j <= m; ++j) tau.push_back(t0 - t0 * std::pow(1.0 - static_cast<double>(j) / fm, gamma));
        for (std::size_t j = 1; j <= m; ++j)
            tau.push_back(t0 + (t - t0) * std::pow(static_cast<double>(j) / fm, gamma));
    }
    tau.front() = 0.0;
    tau.back() = t;
    // Grading can collapse neighbouring nodes in floating point; keep them strictly increasing.
    tau.erase(std::unique(tau.begin(), tau.end()), tau.end());
    return tau;
}

}  // namespace

const char* to_string(VerdictStatus s) noexcept {
    switch (s) {
        case VerdictStatus::pass: return "pass";
        case VerdictStatus::fail: return "fail";
        case VerdictStatus::inapplicable: return "inapplicable";
    }
    return "?";
}

std::array<double, 2> HalfBallRegion::x0() const noexcept {
    return {center[0] + radius * normal[0], center[1] + radius * normal[1]};
}

void HalfBallRegion::validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("half ball: dimension must be 1 or 2");
    if (!(radius > 0.0)) throw std::invalid_argument("half ball: radius must be positive");
    if (!(offset > 0.0) || !(offset < radius)) throw std::invalid_argument("half ball: need 0 < offset < radius");
    const double nn = std::hypot(normal[0], dim == 2 ? normal[1] : 0.0);
    if (std::abs(nn - 1.0) > 1e-12) throw std::invalid_argument("half ball: normal must be a unit vector");
    if (!(t0 >= radius)) throw std::invalid_argument("half ball: need t0 >= R so that B lies in t >= 0");
    if (space_samples < 3 || time_samples < 3) throw std::invalid_argument("half ball: too few samples");
}

bool HalfBallRegion::contains(const std::array<double, 2>& x, double t) const noexcept {
    const double dx = x[0] - center[0];
    const double dy = dim == 2 ? x[1] - center[1] : 0.0;
    const double slack = 1e-12 * radius * radius;
    if (dx * dx + dy * dy + (t - t0) * (t - t0) > radius * radius + slack) return false;
    return dx * normal[0] + dy * normal[1] >= offset - 1e-12 * radius;
}

HalfBallRegion default_hopf_region() {
    HalfBallRegion r;
    r.dim = 1;
    r.radius = 0.02;
    r.center = {1.0 - r.radius, 0.0};
    r.normal = {1.0, 0.0};
    r.offset = 0.8 * r.radius;
    r.t0 = r.radius;
    return r;
}

HopfEvaluation hopf_auxiliary(const HalfBallRegion& region, double mu, FracOrder a, const HopfGrid& grid) {
    region.validate();
    if (!(mu > 0.0)) throw std::invalid_argument("hopf_auxiliary: mu must be positive");
    const double alpha = a.value();
    const double gamma = grid.grading > 0.0 ? grid.grading : 1.0 / alpha;
    if (alpha <= 0.5 && gamma <= 1.0)
        throw std::invalid_argument("hopf_auxiliary: for a <= 1/2 the time grid must be graded at t0 (grading > 1)");
    if (grid.points < 8) throw std::invalid_argument("hopf_auxiliary: too few grid points");

    const double R = region.radius, t0 = region.t0, c = region.offset;
    const double d = static_cast<double>(region.dim);
    const std::size_t nt = region.time_samples | 1;  // odd, so t0 is a sample

    // Spatial samples of B+ (before the time cut).
    std::vector<std::array<double, 2>> xs;
    const std::size_t ns = region.space_samples;
    if (region.dim == 1) {
        for (std::size_t i = 0; i < ns; ++i) {
            const double s = c + (R - c) * static_cast<double>(i) / static_cast<double>(ns - 1);
            xs.push_back({region.center[0] + s * region.normal[0], 0.0});
        }
    } else {
        for (std::size_t j = 0; j < ns; ++j)
            for (std::size_t i = 0; i < ns; ++i) {
                const double px = region.center[0] - R + 2.0 * R * static_cast<double>(i) / static_cast<double>(ns - 1);
                const double py = region.center[1] - R + 2.0 * R * static_cast<double>(j) / static_cast<double>(ns - 1);
                if (region.contains({px, py}, t0)) xs.push_back({px, py});
            }
        xs.push_back(region.x0());
    }

    HopfEvaluation ev;
    ev.mu = mu;
    ev.max_l_alpha = -kInf;
    ev.max_normalized = -kInf;
    ev.min_h_inside = kInf;
    const double e_exp = 2.0;  // E_{a,1}(-mu |s|^{2a}) = relaxation(a, mu, s^2)
    for (std::size_t jt = 0; jt < nt; ++jt) {
        const double t = t0 - R + 2.0 * R * static_cast<double>(jt) / static_cast<double>(nt - 1);
        std::vector<std::array<double, 2>> here;
        for (const auto& x : xs)
            if (region.contains(x, t)) here.push_back(x);
        if (here.empty() || !(t > 0.0)) continue;

        // d^a_t of E(t) and of G(t) = E(t) e^{-mu (R^2 - (t - t0)^2)}; h = e^{-mu r^2} E - G.
        const auto tau = graded_grid(t, t0, grid.points, gamma);
        std::vector<double> ev_e(tau.size()), ev_g(tau.size());
        for (std::size_t j = 0; j < tau.size(); ++j) {
            const double s = std::abs(tau[j] - t0);
            ev_e[j] = relaxation(a, mu, std::pow(s, e_exp));
            ev_g[j] = ev_e[j] * std::exp(-mu * (R * R - s * s));
        }
        const std::size_t last = tau.size() - 1;
        const double cap_e = caputo_at(tau, ev_e, last, a);
        const double cap_g = caputo_at(tau, ev_g, last, a);
        const double e_t = relaxation(a, mu, (t - t0) * (t - t0));
        const double g_exp = -mu * (R * R - (t - t0) * (t - t0));

        for (const auto& x : here) {
            HopfSample s;
            s.x = x;
            s.t = t;
            const double dx = x[0] - region.center[0];
            const double dy = region.dim == 2 ? x[1] - region.center[1] : 0.0;
            const double r2 = dx * dx + dy * dy;
            s.r = std::sqrt(r2);
            s.on_sphere = std::abs(r2 + (t - t0) * (t - t0) - R * R) <= 1e-9 * R * R;
            s.h = e_t * (std::exp(-mu * r2) - std::exp(g_exp));
            if (s.on_sphere) s.h = 0.0;
            s.caputo = std::exp(-mu * r2) * cap_e - cap_g;
            s.laplacian = e_t * std::exp(-mu * r2) * (4.0 * mu * mu * r2 - 2.0 * d * mu);
            s.l_alpha = s.caputo - s.laplacian;
            s.normalized = (cap_e - std::exp(mu * r2) * cap_g) / mu - e_t * (4.0 * mu * r2 - 2.0 * d);
            if (s.on_sphere)
                ev.max_abs_h_sphere = std::max(ev.max_abs_h_sphere, std::abs(e_t * (std::exp(-mu * r2) - std::exp(g_exp))));
            else
                ev.min_h_inside = std::min(ev.min_h_inside, s.h);
            if (s.l_alpha > ev.max_l_alpha) {
                ev.max_l_alpha = s.l_alpha;
                ev.argmax = ev.samples.size();
            }
            ev.max_normalized = std::max(ev.max_normalized, s.normalized);
            ev.samples.push_back(s);
        }
    }
    return ev;
}

HopfScan hopf_mu_scan(const HalfBallRegion& region, FracOrder a, const HopfGrid& grid, double mu_cap) {
    HopfScan scan;
    for (double mu = 1.0; mu <= mu_cap; mu *= 2.0) {
        scan.ladder.push_back(hopf_auxiliary(region, mu, a, grid));
        if (scan.ladder.back().max_l_alpha < 0.0) {
            scan.found = true;
            scan.mu_star = mu;
            break;
        }
    }
    if (!scan.found) return scan;

    scan.ladder.push_back(hopf_auxiliary(region, 2.0 * scan.mu_star, a, grid));
    scan.ladder.push_back(hopf_auxiliary(region, 4.0 * scan.mu_star, a, grid));
    const auto n = scan.ladder.size();
    const HopfEvaluation* tail[3] = {&scan.ladder[n - 3], &scan.ladder[n - 2], &scan.ladder[n - 1]};
    scan.persists = true;
    scan.decreasing = true;
    for (int i = 0; i < 3; ++i) {
        scan.persists = scan.persists && tail[i]->max_l_alpha < 0.0;
        if (i > 0) scan.decreasing = scan.decreasing && tail[i]->max_normalized < tail[i - 1]->max_normalized;
    }

    // Sensitivity to doubling the graded-grid density, normwise over B+.
    HopfGrid fine = grid;
    fine.points *= 2;
    for (int i = 0; i < 3; ++i) {
        const auto refined = hopf_auxiliary(region, tail[i]->mu, a, fine);
        double diff = 0.0, ref = 0.0;
        for (std::size_t j = 0; j < refined.samples.size(); ++j) {
            diff = std::max(diff, std::abs(refined.samples[j].l_alpha - tail[i]->samples[j].l_alpha));
            ref = std::max(ref, std::abs(refined.samples[j].l_alpha));
        }
        scan.grid_sensitivity = std::max(scan.grid_sensitivity, ref > 0.0 ? diff / ref : diff);
    }
    return scan;
}

Verdict weak_max_check(const SolutionField& field, const ProblemSpec& spec, double tol, WeakMaxOptions opt) {
    Verdict v = make_verdict("weak_max", tol);
    const Extremum e = field_min(field);
    set_witness(v, field, e.k, e.node);
    v.value = e.value;
    v.margin = e.value + tol;
    if (!opt.skip_hypotheses) {
        const DataScan s = scan_data(field, spec);
        const double slack = 1e-12 * data_scale(field);
        if (s.u0_min < -slack || s.f_min < -slack || s.b_min < -slack) {
            v.status = VerdictStatus::inapplicable;
            v.note = "data not nonnegative (" + describe_scan(s) + ")";
            return v;
        }
    }
    v.status = e.value >= -tol ? VerdictStatus::pass : VerdictStatus::fail;
    return v;
}

Verdict strong_positivity_check(const SolutionField& field, const ProblemSpec& spec, double tol) {
    Verdict v = make_verdict("strong_positivity", tol);
    const Extremum e = field_min(field);
    set_witness(v, field, e.k, e.node);
    v.value = e.value;
    v.margin = e.value - tol;
    const DataScan s = scan_data(field, spec);
    const double slack = 1e-12 * data_scale(field);
    if (!(s.u0_min > 0.0) || s.f_min < -slack || s.b_min < -slack) {
        v.status = VerdictStatus::inapplicable;
        v.note = "needs u0 > 0, F >= 0, b >= 0 (" + describe_scan(s) + ")";
        return v;
    }
    if (!(tol > 0.0)) throw std::invalid_argument("strong_positivity_check: tol must be positive");
    v.status = e.value > tol ? VerdictStatus::pass : VerdictStatus::fail;
    return v;
}

Verdict hopf_normal_check(const SolutionField& field, double tol, HopfOptions opt) {
    const bool maximum = opt.branch == HopfBranch::maximum;
    Verdict v = make_verdict(maximum ? "hopf_normal_max" : "hopf_normal_min", tol);
    const double sign = maximum ? 1.0 : -1.0;

    // Extremum of sign * u over all samples (first occurrence).
    Extremum e{0, 0, -kInf};
    for (std::size_t k = 0; k < field.time_count(); ++k)
        for (std::size_t i = 0; i < field.nodes(); ++i)
            if (sign * field.at(k, i) > e.value) e = {k, i, sign * field.at(k, i)};
    const double extreme = sign * e.value;
    set_witness(v, field, e.k, e.node);
    v.value = extreme;

    const Domain& dom = field.dom;
    if (e.k == 0) {
        v.note = "extremum attained at t = 0";
        return v;
    }
    if (!dom.on_boundary(e.node)) {
        v.note = "extremum attained in the interior";
        return v;
    }
    if (is_corner(dom, e.node)) {
        v.note = "extremum at a corner, where the normal is undefined";
        return v;
    }

    // Interior samples within graph distance 2 (space and time) must be strictly below M.
    const auto ix = static_cast<long>(e.node % dom.nx()), iy = static_cast<long>(e.node / dom.nx());
    const auto kk = static_cast<long>(e.k);
    const long ny = static_cast<long>(dom.ny()), nx = static_cast<long>(dom.nx());
    for (long dk = -2; dk <= 2; ++dk)
        for (long dy = -2; dy <= 2; ++dy)
            for (long dx = -2; dx <= 2; ++dx) {
                if (std::abs(dk) + std::abs(dx) + std::abs(dy) > 2) continue;
                const long k = kk + dk, x = ix + dx, y = iy + dy;
                if (k < 0 || k > static_cast<long>(field.steps) || x < 0 || x >= nx || y < 0 || y >= ny) continue;
                const std::size_t node = dom.index(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
                if (dom.on_boundary(node)) continue;
                const double u = field.at(static_cast<std::size_t>(k), node);
                if (sign * (extreme - u) <= opt.strict_tol) {
                    v.note = "extremum not strict against nearby interior samples";
                    return v;
                }
            }

    const double dnu = outward_derivative(field, e.k, e.node);
    v.value = dnu;
    v.margin = sign * dnu - tol;
    v.status = v.margin > 0.0 ? VerdictStatus::pass : VerdictStatus::fail;
    v.note = maximum ? "outward derivative at boundary maximum" : "outward derivative at boundary minimum";
    return v;
}

Verdict extremum_caputo_check(const TimeSeries& trace, FracOrder a, double tol) {
    Verdict v = make_verdict("extremum_caputo", tol);
    std::size_t k = 0;
    for (std::size_t j = 1; j < trace.size(); ++j)
        if (trace[j] <= trace[k]) k = j;  // last occurrence: a flat trace is judged at its end
    v.witness_t = trace.time(k);
    v.value = trace[k];
    if (k == 0) {
        v.note = "minimum attained at the initial time";
        return v;
    }
    std::vector<double> times(k + 1), values(k + 1);
    for (std::size_t j = 0; j <= k; ++j) {
        times[j] = trace.time(j);
        values[j] = trace[j];
    }
    v.value = caputo_at(times, values, k, a);
    v.margin = tol - v.value;
    v.status = v.value <= tol ? VerdictStatus::pass : VerdictStatus::fail;
    v.note = "sampled minimum; sub-grid extrema are not resolved";
    return v;
}

Verdict extremum_caputo_check(const SolutionField& field, FracOrder a, double tol) {
    Extremum e{0, 0, kInf};
    for (std::size_t k = 0; k < field.time_count(); ++k)
        for (std::size_t i = 0; i < field.nodes(); ++i)
            if (!field.dom.on_boundary(i) && field.at(k, i) < e.value) e = {k, i, field.at(k, i)};
    Verdict v = extremum_caputo_check(field.trace(e.node), a, tol);
    set_witness(v, field, e.k, e.node);
    if (e.k == 0) {
        v.status = VerdictStatus::inapplicable;
        v.note = "interior minimum attained at the initial time";
        v.value = e.value;
    }
    return v;
}

}  // namespace fracrobin
