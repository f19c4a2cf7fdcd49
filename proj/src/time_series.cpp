#include "fracrobin/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fracrobin {

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("fractional order must lie in (0, 1], got " + std::to_string(alpha));
    }
}

TimeSeries::TimeSeries(double t0, double dt, std::vector<double> values)
    : t0_(t0), dt_(dt), values_(std::move(values)) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time series spacing must be positive");
    if (values_.size() < 2) throw std::invalid_argument("time series needs at least 2 samples");
}

TimeSeries TimeSeries::from_samples(std::span<const double> times, std::span<const double> values) {
    if (times.size() != values.size()) throw std::invalid_argument("times/values length mismatch");
    if (times.size() < 2) throw std::invalid_argument("time series needs at least 2 samples");
    const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double step = times[k] - times[k - 1];
        if (std::abs(step - dt) > 1e-9 * std::abs(dt)) {
            throw std::invalid_argument("non-uniform time grid at sample " + std::to_string(k));
        }
    }
    return TimeSeries(times.front(), dt, std::vector<double>(values.begin(), values.end()));
}

bool TimeSeries::same_grid(const TimeSeries& other) const noexcept {
    const double scale = std::max(std::abs(dt_), std::abs(other.dt_));
    return size() == other.size() && std::abs(dt_ - other.dt_) <= 1e-12 * scale &&
           std::abs(t0_ - other.t0_) <= 1e-12 * std::max(1.0, std::abs(t0_));
}

double TimeSeries::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace fracrobin
