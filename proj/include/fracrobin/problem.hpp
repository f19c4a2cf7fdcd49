#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fracrobin/mesh.hpp"
#include "fracrobin/robin_spectrum.hpp"
#include "fracrobin/time_series.hpp"

namespace fracrobin {

/// Spatial datum with an optional analytic gradient (used by the
/// compatibility check; a one-sided difference stands in when absent).
struct SpatialData {
    std::function<double(double x, double y)> value;
    std::function<std::array<double, 2>(double x, double y)> gradient;

    static SpatialData zero();
    static SpatialData constant(double c);
};

/// Boundary datum b(face, s, t); s is the coordinate along the face.
using BoundaryData = std::function<double(Face face, double s, double t)>;

struct CompatibilityFlags {
    bool enforce = true;
    double tol = 1e-8;
};

/// d^a u - Lap u = f(x) g(t) in the domain, du/dnu + lambda u = b on the
/// boundary, u(., 0) = u0.
struct ProblemSpec {
    FracOrder alpha;
    double T;
    Domain dom;
    RobinCoefficient lambda;
    SpatialData u0;
    SpatialData f;
    std::function<double(double t)> g;
    BoundaryData b;
    CompatibilityFlags compat{};

    /// Checks shapes, T > 0 and (when enforced) the compatibility condition.
    void validate() const;
};

/// Per-face boundary samples, indexed by Face (unused faces empty).
using BoundaryTrace = std::array<std::vector<double>, 4>;

std::vector<double> sample(const Domain& dom, const SpatialData& d);
BoundaryTrace sample_boundary(const ProblemSpec& spec, double t);
bool trace_is_zero(const BoundaryTrace& tr, double tol);
double trace_max_abs(const BoundaryTrace& tr);

/// Outward normal derivative of a datum at the m-th node of a face.
double normal_derivative(const Domain& dom, const SpatialData& d, Face face, std::size_t m);
/// max over boundary nodes of |du0/dnu + lambda u0 - b(., 0)|.
double compatibility_violation(const ProblemSpec& spec);
/// Throws CompatibilityError when the violation exceeds spec.compat.tol.
void check_compatibility(const ProblemSpec& spec);

/// Space-time samples on a uniform time grid t_k = k T / K, k = 0..K, stored
/// time-major (index k * nodes + node).
struct SolutionField {
    Domain dom;
    double T;
    std::size_t steps;  // K
    std::vector<double> u, u1, u2, u3, lift;
    std::size_t modes_used = 0;
    double initial_error = 0.0;  // relative discrete L2 distance of u(., 0) to u0
    double tail_u0 = 0.0;        // coefficient-tail ratios (upper half of modes)
    double tail_f = 0.0;

    SolutionField(Domain d, double horizon, std::size_t k);

    std::size_t nodes() const noexcept { return dom.node_count(); }
    std::size_t time_count() const noexcept { return steps + 1; }
    double dt() const noexcept { return T / static_cast<double>(steps); }
    double time(std::size_t k) const noexcept { return static_cast<double>(k) * dt(); }
    double at(std::size_t k, std::size_t node) const noexcept { return u[k * nodes() + node]; }
    std::span<const double> slice(std::size_t k) const noexcept { return {u.data() + k * nodes(), nodes()}; }
    TimeSeries trace(std::size_t node) const;
    /// Recomputes u = u1 + u2 + u3.
    void assemble();
};

}  // namespace fracrobin
