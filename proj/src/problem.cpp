#include "fracrobin/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracrobin/errors.hpp"

namespace fracrobin {

SpatialData SpatialData::zero() { return constant(0.0); }

SpatialData SpatialData::constant(double c) {
    return {[c](double, double) { return c; }, [](double, double) { return std::array<double, 2>{0.0, 0.0}; }};
}

void ProblemSpec::validate() const {
    if (!(T > 0.0)) throw std::invalid_argument("final time T must be positive");
    if (!u0.value || !f.value || !g || !b) throw std::invalid_argument("problem data sampler missing");
    lambda.validate(dom);
    if (compat.enforce) check_compatibility(*this);
}

std::vector<double> sample(const Domain& dom, const SpatialData& d) {
    std::vector<double> out(dom.node_count());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto p = dom.point(i);
        out[i] = d.value(p[0], p[1]);
    }
    return out;
}

BoundaryTrace sample_boundary(const ProblemSpec& spec, double t) {
    BoundaryTrace tr;
    for (Face f : spec.dom.faces()) {
        auto& v = tr[static_cast<std::size_t>(f)];
        v.resize(spec.dom.face_size(f));
        for (std::size_t m = 0; m < v.size(); ++m) v[m] = spec.b(f, spec.dom.face_coordinate(f, m), t);
    }
    return tr;
}

double trace_max_abs(const BoundaryTrace& tr) {
    double m = 0.0;
    for (const auto& v : tr)
        for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool trace_is_zero(const BoundaryTrace& tr, double tol) { return trace_max_abs(tr) <= tol; }

double normal_derivative(const Domain& dom, const SpatialData& d, Face face, std::size_t m) {
    const auto p = dom.point(dom.face_node(face, m));
    const double sign = (face == Face::left || face == Face::bottom) ? -1.0 : 1.0;
    const int axis = (face == Face::left || face == Face::right) ? 0 : 1;
    if (d.gradient) return sign * d.gradient(p[0], p[1])[static_cast<std::size_t>(axis)];
    // Fourth-order one-sided difference stepping into the domain.
    const double len = axis == 0 ? dom.lx() : dom.ly();
    const double eta = 2e-4 * len;
    const double step = -sign * eta;
    auto at = [&](int j) {
        double x = p[0], y = p[1];
        (axis == 0 ? x : y) += j * step;
        return d.value(x, y);
    };
    const double inward = (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) / (12.0 * eta);
    return -inward;
}

double compatibility_violation(const ProblemSpec& spec) {
    double worst = 0.0;
    for (Face f : spec.dom.faces()) {
        for (std::size_t m = 0; m < spec.dom.face_size(f); ++m) {
            const auto p = spec.dom.point(spec.dom.face_node(f, m));
            const double lhs = normal_derivative(spec.dom, spec.u0, f, m) + spec.lambda.at(f, m) * spec.u0.value(p[0], p[1]);
            const double rhs = spec.b(f, spec.dom.face_coordinate(f, m), 0.0);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

void check_compatibility(const ProblemSpec& spec) {
    const double v = compatibility_violation(spec);
    if (v > spec.compat.tol) {
        std::ostringstream msg;
        msg.precision(3);
        msg << "initial data violate the Robin compatibility condition du0/dnu + lambda u0 = b(., 0): max mismatch "
            << std::scientific << v << " > tol " << spec.compat.tol;
        throw CompatibilityError(msg.str(), v);
    }
}

SolutionField::SolutionField(Domain d, double horizon, std::size_t k) : dom(d), T(horizon), steps(k) {
    if (!(horizon > 0.0)) throw std::invalid_argument("SolutionField: T must be positive");
    if (k < 1) throw std::invalid_argument("SolutionField: need at least one time step");
    const std::size_t total = (k + 1) * d.node_count();
    u.assign(total, 0.0);
    u1.assign(total, 0.0);
    u2.assign(total, 0.0);
    u3.assign(total, 0.0);
    lift.assign(total, 0.0);
}

TimeSeries SolutionField::trace(std::size_t node) const {
    std::vector<double> v(time_count());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = at(k, node);
    return TimeSeries(0.0, dt(), std::move(v));
}

void SolutionField::assemble() {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = u1[i] + u2[i] + u3[i];
}

}  // namespace fracrobin
