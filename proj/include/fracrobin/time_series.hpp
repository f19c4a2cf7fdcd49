#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracrobin {

/// Order of the time-fractional derivative, 0 < alpha <= 1.
/// alpha == 1 is the classical (first-derivative) limit.
class FracOrder {
public:
    explicit FracOrder(double alpha);

    double value() const noexcept { return alpha_; }
    bool classical() const noexcept { return alpha_ == 1.0; }

private:
    double alpha_;
};

/// Uniformly sampled time series: values[k] ~ y(t0 + k*dt).
class TimeSeries {
public:
    TimeSeries(double t0, double dt, std::vector<double> values);

    /// Builds a series from explicit sample times; rejects non-uniform spacing.
    static TimeSeries from_samples(std::span<const double> times, std::span<const double> values);

    template <class F>
    static TimeSeries sample(F&& f, double t0, double t_end, std::size_t steps) {
        const double dt = (t_end - t0) / static_cast<double>(steps);
        std::vector<double> v(steps + 1);
        for (std::size_t k = 0; k <= steps; ++k) v[k] = f(t0 + static_cast<double>(k) * dt);
        return TimeSeries(t0, dt, std::move(v));
    }

    double t0() const noexcept { return t0_; }
    double dt() const noexcept { return dt_; }
    std::size_t size() const noexcept { return values_.size(); }
    double time(std::size_t k) const noexcept { return t0_ + static_cast<double>(k) * dt_; }
    double end_time() const noexcept { return time(values_.size() - 1); }

    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t k) const noexcept { return values_[k]; }

    /// Same start, spacing (to 1e-12 relative) and length.
    bool same_grid(const TimeSeries& other) const noexcept;

    double max_abs() const noexcept;

private:
    double t0_;
    double dt_;
    std::vector<double> values_;
};

}  // namespace fracrobin
