#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fracrobin/mesh.hpp"

namespace fracrobin {

/// Robin coefficient of du/dnu + lambda u = b, one constant per face, or a
/// sampled trace per face (FD eigen-solves only). Faces are indexed by Face.
class RobinCoefficient {
public:
    RobinCoefficient() = default;
    static RobinCoefficient interval(double left, double right);
    static RobinCoefficient rectangle(double left, double right, double bottom, double top);
    /// Per-face samples, one value per face node (face_size entries).
    static RobinCoefficient sampled(const Domain& dom, std::array<std::vector<double>, 4> traces);

    bool variable() const noexcept { return variable_; }
    double face_value(Face f) const;
    /// lambda at the m-th node of a face.
    double at(Face f, std::size_t m) const;
    double min_value() const noexcept;
    std::size_t face_count() const noexcept { return faces_; }
    /// Throws std::invalid_argument unless every value is positive and the
    /// layout fits the domain.
    void validate(const Domain& dom) const;

private:
    std::array<double, 4> values_{};
    std::array<std::vector<double>, 4> traces_{};
    std::size_t faces_ = 0;
    bool variable_ = false;
};

/// One axis factor A cos(k x - phase) of an analytic eigenfunction; it solves
/// -psi'' = k^2 psi, -psi'(0) + l0 psi(0) = 0 and psi'(L) + l1 psi(L) = 0.
struct AxisMode {
    std::size_t index = 0;  // 1-based
    double k = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;

    double mu() const noexcept { return k * k; }
    double value(double x) const noexcept;
    double derivative(double x) const noexcept;
};

struct EigenPair {
    std::size_t index = 0;  // 1-based, ascending mu
    double mu = 0.0;
    std::vector<double> psi;             // samples in Domain node order
    std::vector<AxisMode> analytic;      // empty for FD modes; one factor per axis otherwise
};

enum class SpectrumMethod { analytic, fd };

struct Spectrum {
    Domain domain;
    RobinCoefficient lambda;
    SpectrumMethod method;
    std::vector<double> weights;  // inner-product weights on the mesh
    std::vector<EigenPair> modes;

    std::size_t size() const noexcept { return modes.size(); }
    std::vector<double> mus() const;
};

/// (k^2 - l0 l1) sin(kL) - k (l0 + l1) cos(kL).
double robin_characteristic(double k, double l0, double l1, double length);
/// n-th positive root, bisected inside ((n-1) pi / L, n pi / L).
double robin_root(double l0, double l1, double length, std::size_t n);
AxisMode robin_axis_mode(double l0, double l1, double length, std::size_t n);

/// Analytic modes on an interval; psi normalized with Gregory weights.
Spectrum eigen_interval(double lambda_left, double lambda_right, const Domain& dom, std::size_t count);
/// Tensor-product modes on a rectangle with constant lambda per face.
Spectrum eigen_rectangle(const RobinCoefficient& lambda, const Domain& dom, std::size_t count);
/// Symmetric FD Laplacian with ghost-node Robin closure; trapezoid weights.
Spectrum eigen_fd(const Domain& dom, const RobinCoefficient& lambda, std::size_t count);
/// Analytic path for constant per-face lambda, FD otherwise.
Spectrum eigen_auto(const Domain& dom, const RobinCoefficient& lambda, std::size_t count);

/// Weighted inner products (field, psi_n) for every mode.
std::vector<double> project(std::span<const double> field, const Spectrum& basis);
/// sum_n c_n psi_n on the mesh.
std::vector<double> synthesize(std::span<const double> coeffs, const Spectrum& basis);
/// (sum_n |mu_n^gamma c_n|^2)^(1/2) over the first coeffs.size() modes.
double frac_power_norm(std::span<const double> coeffs, const Spectrum& basis, double gamma);
/// Gram matrix of the first `count` modes, row-major.
std::vector<double> gram_matrix(const Spectrum& basis, std::size_t count);
/// min and max of mu_n / n^(2/d) over the spectrum.
std::pair<double, double> weyl_ratio_range(const Spectrum& basis);

}  // namespace fracrobin
