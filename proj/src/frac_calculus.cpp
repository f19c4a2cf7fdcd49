#include "fracrobin/frac_calculus.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracrobin {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// L1 weights b_m = (m+1)^{1-a} - m^{1-a}; the classical limit is the backward difference.
std::vector<double> l1_weights(std::size_t count, double alpha) {
    std::vector<double> b(count, 0.0);
    if (alpha == 1.0) {
        if (count > 0) b[0] = 1.0;
        return b;
    }
    const double p = 1.0 - alpha;
    for (std::size_t m = 0; m < count; ++m) {
        const double md = static_cast<double>(m);
        b[m] = std::pow(md + 1.0, p) - std::pow(md, p);
    }
    return b;
}

}  // namespace

TimeSeries rl_integral_left(const TimeSeries& y, FracOrder a) {
    const double alpha = a.value();
    const std::size_t n = y.size();
    const double h = y.dt();
    const double scale = std::pow(h, alpha) / std::tgamma(alpha + 2.0);
    const double q = alpha + 1.0;

    // c[m] = (m+1)^q - 2 m^q + (m-1)^q for interior weights with distance m = k - j.
    std::vector<double> pw(n + 1);
    for (std::size_t m = 0; m <= n; ++m) pw[m] = std::pow(static_cast<double>(m), q);
    std::vector<double> interior(n, 0.0);
    for (std::size_t m = 1; m < n; ++m) interior[m] = pw[m + 1] - 2.0 * pw[m] + pw[m - 1];

    std::vector<double> out(n, 0.0);
    const auto v = y.values();
    for (std::size_t k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        double acc = (pw[k - 1] - (kd - alpha - 1.0) * std::pow(kd, alpha)) * v[0];
        for (std::size_t j = 1; j < k; ++j) acc += interior[k - j] * v[j];
        acc += v[k];
        out[k] = scale * acc;
    }
    return TimeSeries(y.t0(), h, std::move(out));
}

TimeSeries rl_integral_right(const TimeSeries& y, FracOrder a) {
    const auto v = y.values();
    std::vector<double> reversed(v.rbegin(), v.rend());
    const TimeSeries left = rl_integral_left(TimeSeries(y.t0(), y.dt(), std::move(reversed)), a);
    const auto lv = left.values();
    return TimeSeries(y.t0(), y.dt(), std::vector<double>(lv.rbegin(), lv.rend()));
}

TimeSeries caputo_left(const TimeSeries& y, FracOrder a) {
    const double alpha = a.value();
    const std::size_t n = y.size();
    const auto v = y.values();
    const std::vector<double> b = l1_weights(n, alpha);
    const double scale = std::pow(y.dt(), -alpha) / std::tgamma(2.0 - alpha);

    std::vector<double> diff(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) diff[j] = v[j + 1] - v[j];

    std::vector<double> out(n, kNaN);
    for (std::size_t k = 1; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) acc += b[k - 1 - j] * diff[j];
        out[k] = scale * acc;
    }
    return TimeSeries(y.t0(), y.dt(), std::move(out));
}

TimeSeries rl_derivative_left(const TimeSeries& y, FracOrder a) {
    const std::size_t n = y.size();
    const double h = y.dt();
    std::vector<double> j_vals;
    if (a.classical()) {
        j_vals.assign(y.values().begin(), y.values().end());
    } else {
        const TimeSeries j = rl_integral_left(y, FracOrder(1.0 - a.value()));
        j_vals.assign(j.values().begin(), j.values().end());
    }
    std::vector<double> out(n, kNaN);
    for (std::size_t k = 1; k + 1 < n; ++k) out[k] = (j_vals[k + 1] - j_vals[k - 1]) / (2.0 * h);
    if (n >= 3) {
        out[n - 1] = (3.0 * j_vals[n - 1] - 4.0 * j_vals[n - 2] + j_vals[n - 3]) / (2.0 * h);
    } else {
        out[n - 1] = (j_vals[1] - j_vals[0]) / h;
    }
    return TimeSeries(y.t0(), h, std::move(out));
}

TimeSeries convolve(const TimeSeries& u, const TimeSeries& v) {
    if (!u.same_grid(v)) throw std::invalid_argument("convolve: operands live on different time grids");
    const std::size_t n = u.size();
    const double h = u.dt();
    const auto uv = u.values();
    const auto vv = v.values();
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        double acc = 0.5 * (uv[k] * vv[0] + uv[0] * vv[k]);
        for (std::size_t j = 1; j < k; ++j) acc += uv[k - j] * vv[j];
        out[k] = h * acc;
    }
    return TimeSeries(u.t0(), h, std::move(out));
}

double caputo_at(std::span<const double> times, std::span<const double> values, std::size_t n, FracOrder a) {
    if (n == 0) return kNaN;
    const double alpha = a.value();
    const double tn = times[n];
    double acc = 0.0;
    if (a.classical()) return (values[n] - values[n - 1]) / (times[n] - times[n - 1]);
    const double p = 1.0 - alpha;
    for (std::size_t j = 0; j < n; ++j) {
        const double step = times[j + 1] - times[j];
        const double w = std::pow(tn - times[j], p) - std::pow(tn - times[j + 1], p);
        acc += (values[j + 1] - values[j]) / step * w;
    }
    return acc / std::tgamma(2.0 - alpha);
}

std::vector<double> caputo_left_nonuniform(std::span<const double> times, std::span<const double> values,
                                           FracOrder a) {
    if (times.size() != values.size() || times.size() < 2) {
        throw std::invalid_argument("caputo_left_nonuniform: need matching times/values with >= 2 samples");
    }
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) throw std::invalid_argument("caputo_left_nonuniform: times not increasing");
    }
    std::vector<double> out(times.size(), kNaN);
    for (std::size_t n = 1; n < times.size(); ++n) out[n] = caputo_at(times, values, n, a);
    return out;
}

}  // namespace fracrobin
