#include "fracrobin/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fracrobin {

namespace {

constexpr std::size_t kMinNodes = 8;

// Gregory endpoint-correction coefficients (magnitudes of the Gregory /
// Bernoulli-second-kind numbers G_2 .. G_8).
constexpr std::array<double, 7> kGregory = {
    1.0 / 12.0, 1.0 / 24.0, 19.0 / 720.0, 3.0 / 160.0, 863.0 / 60480.0, 275.0 / 24192.0, 33953.0 / 3628800.0,
};

}  // namespace

const char* to_string(Face f) noexcept {
    switch (f) {
        case Face::left: return "left";
        case Face::right: return "right";
        case Face::bottom: return "bottom";
        case Face::top: return "top";
    }
    return "?";
}

Domain::Domain(DomainKind kind, double lx, double ly, std::size_t nx, std::size_t ny)
    : kind_(kind), lx_(lx), ly_(ly), nx_(nx), ny_(ny) {}

Domain Domain::interval(double length, std::size_t nodes) {
    if (!(length > 0.0)) throw std::invalid_argument("interval length must be positive");
    if (nodes < kMinNodes) throw std::invalid_argument("mesh needs at least 8 nodes per axis");
    return Domain(DomainKind::interval, length, 0.0, nodes, 1);
}

Domain Domain::rectangle(double lx, double ly, std::size_t nx, std::size_t ny) {
    if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("rectangle side lengths must be positive");
    if (nx < kMinNodes || ny < kMinNodes) throw std::invalid_argument("mesh needs at least 8 nodes per axis");
    return Domain(DomainKind::rectangle, lx, ly, nx, ny);
}

bool Domain::same_mesh(const Domain& other) const noexcept {
    return kind_ == other.kind_ && nx_ == other.nx_ && ny_ == other.ny_ && lx_ == other.lx_ && ly_ == other.ly_;
}

bool Domain::on_boundary(std::size_t node) const noexcept {
    const std::size_t ix = node % nx_;
    const std::size_t iy = node / nx_;
    if (ix == 0 || ix + 1 == nx_) return true;
    return kind_ == DomainKind::rectangle && (iy == 0 || iy + 1 == ny_);
}

std::vector<Face> Domain::faces() const {
    if (kind_ == DomainKind::interval) return {Face::left, Face::right};
    return {Face::left, Face::right, Face::bottom, Face::top};
}

std::size_t Domain::face_size(Face f) const noexcept {
    if (kind_ == DomainKind::interval) return 1;
    return (f == Face::left || f == Face::right) ? ny_ : nx_;
}

std::size_t Domain::face_node(Face f, std::size_t m) const noexcept {
    switch (f) {
        case Face::left: return index(0, kind_ == DomainKind::interval ? 0 : m);
        case Face::right: return index(nx_ - 1, kind_ == DomainKind::interval ? 0 : m);
        case Face::bottom: return index(m, 0);
        case Face::top: return index(m, ny_ - 1);
    }
    return 0;
}

double Domain::face_coordinate(Face f, std::size_t m) const noexcept {
    if (kind_ == DomainKind::interval) return 0.0;
    return (f == Face::left || f == Face::right) ? y(m) : x(m);
}

std::vector<double> quadrature_weights_1d(std::size_t nodes, double h, Quadrature rule) {
    if (nodes < 2) throw std::invalid_argument("quadrature needs at least 2 nodes");
    std::vector<double> w(nodes, h);
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
    if (rule == Quadrature::trapezoid) return w;

    const std::size_t order = std::min<std::size_t>(kGregory.size(), nodes - 2);
    for (std::size_t k = 1; k <= order; ++k) {
        double binom = 1.0;  // C(k, j), updated incrementally
        for (std::size_t j = 0; j <= k; ++j) {
            if (j > 0) binom = binom * static_cast<double>(k - j + 1) / static_cast<double>(j);
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            const double delta = h * kGregory[k - 1] * sign * binom;
            w[j] -= delta;
            w[nodes - 1 - j] -= delta;
        }
    }
    return w;
}

std::vector<double> quadrature_weights(const Domain& dom, Quadrature rule) {
    const auto wx = quadrature_weights_1d(dom.nx(), dom.hx(), rule);
    if (dom.kind() == DomainKind::interval) return wx;
    const auto wy = quadrature_weights_1d(dom.ny(), dom.hy(), rule);
    std::vector<double> w(dom.node_count());
    for (std::size_t iy = 0; iy < dom.ny(); ++iy)
        for (std::size_t ix = 0; ix < dom.nx(); ++ix) w[dom.index(ix, iy)] = wx[ix] * wy[iy];
    return w;
}

double weighted_dot(std::span<const double> a, std::span<const double> b, std::span<const double> w) {
    if (a.size() != b.size() || a.size() != w.size()) throw std::invalid_argument("weighted_dot: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += w[i] * a[i] * b[i];
    return acc;
}

double weighted_norm(std::span<const double> a, std::span<const double> w) {
    return std::sqrt(std::max(0.0, weighted_dot(a, a, w)));
}

}  // namespace fracrobin
