#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace fracrobin {

enum class DomainKind { interval, rectangle };

/// Boundary faces; an interval only has left (x = 0) and right (x = L).
enum class Face { left = 0, right = 1, bottom = 2, top = 3 };

const char* to_string(Face f) noexcept;

/// Interval [0, Lx] or rectangle [0, Lx] x [0, Ly] with a uniform node mesh.
/// Node index is iy * nx + ix (x fastest).
class Domain {
public:
    static Domain interval(double length, std::size_t nodes);
    static Domain rectangle(double lx, double ly, std::size_t nx, std::size_t ny);

    DomainKind kind() const noexcept { return kind_; }
    int dim() const noexcept { return kind_ == DomainKind::interval ? 1 : 2; }
    double lx() const noexcept { return lx_; }
    double ly() const noexcept { return ly_; }
    std::size_t nx() const noexcept { return nx_; }
    std::size_t ny() const noexcept { return ny_; }
    std::size_t node_count() const noexcept { return nx_ * ny_; }
    double hx() const noexcept { return lx_ / static_cast<double>(nx_ - 1); }
    double hy() const noexcept { return ny_ > 1 ? ly_ / static_cast<double>(ny_ - 1) : 0.0; }
    double x(std::size_t ix) const noexcept { return static_cast<double>(ix) * hx(); }
    double y(std::size_t iy) const noexcept { return static_cast<double>(iy) * hy(); }
    std::size_t index(std::size_t ix, std::size_t iy) const noexcept { return iy * nx_ + ix; }
    std::array<double, 2> point(std::size_t node) const noexcept {
        return {x(node % nx_), y(node / nx_)};
    }

    bool same_mesh(const Domain& other) const noexcept;
    bool on_boundary(std::size_t node) const noexcept;

    std::vector<Face> faces() const;
    std::size_t face_size(Face f) const noexcept;
    /// Node index of the m-th point on a face (ordered by increasing coordinate).
    std::size_t face_node(Face f, std::size_t m) const noexcept;
    /// Coordinate along the face of its m-th point (0 for interval ends).
    double face_coordinate(Face f, std::size_t m) const noexcept;

private:
    Domain(DomainKind kind, double lx, double ly, std::size_t nx, std::size_t ny);

    DomainKind kind_;
    double lx_;
    double ly_;
    std::size_t nx_;
    std::size_t ny_;
};

/// Inner-product rule on the uniform mesh. Gregory is the trapezoid rule with
/// endpoint corrections (interior weights unchanged), high order for smooth data.
enum class Quadrature { trapezoid, gregory };

std::vector<double> quadrature_weights_1d(std::size_t nodes, double h, Quadrature rule);
/// Tensor-product weights matching the Domain node order.
std::vector<double> quadrature_weights(const Domain& dom, Quadrature rule);

double weighted_dot(std::span<const double> a, std::span<const double> b, std::span<const double> w);
double weighted_norm(std::span<const double> a, std::span<const double> w);

}  // namespace fracrobin
