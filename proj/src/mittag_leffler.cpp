#include "fracrobin/mittag_leffler.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracrobin/errors.hpp"

namespace fracrobin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kUlp = 1e-15;  // per-term relative rounding budget
constexpr int kMaxSeriesTerms = 20000;

void check_params(MLParams p) {
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
        throw std::invalid_argument("Mittag-Leffler alpha must be positive, got " + std::to_string(p.alpha));
    }
    if (!std::isfinite(p.beta)) throw std::invalid_argument("Mittag-Leffler beta must be finite");
}

double series_term(double z, int k, double arg) {
    if (k == 0) return rgamma(arg);
    const double log_abs_pow = static_cast<double>(k) * std::log(std::abs(z));
    if (arg < 160.0 && log_abs_pow < 650.0) return std::pow(z, k) * rgamma(arg);
    const double sign = (z < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
    return sign * std::exp(log_abs_pow - std::lgamma(arg));
}

}  // namespace

const char* to_string(MLMethod m) noexcept {
    switch (m) {
        case MLMethod::closed_form: return "closed_form";
        case MLMethod::series: return "series";
        case MLMethod::asymptotic: return "asymptotic";
        case MLMethod::integral: return "integral";
    }
    return "unknown";
}

double rgamma(double x) {
    if (x <= 0.0 && std::floor(x) == x) return 0.0;
    if (x > 170.0) return std::exp(-std::lgamma(x));
    return 1.0 / std::tgamma(x);
}

MLResult ml_series(MLParams p, double z) {
    check_params(p);
    if (z == 0.0) return {rgamma(p.beta), MLMethod::series, 0.0};
    double sum = 0.0;
    double abs_sum = 0.0;
    double comp = 0.0;  // Kahan compensation
    double last = kInf;
    bool converged = false;
    const double log_z = std::log(std::abs(z));
    for (int k = 0; k < kMaxSeriesTerms; ++k) {
        const double arg = p.alpha * k + p.beta;
        const double term = series_term(z, k, arg);
        if (!std::isfinite(term)) break;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        abs_sum += std::abs(term);
        last = std::abs(term);
        // Stop once past the peak and the terms are negligible.
        if (k > 2 && arg > 1.0) {
            const double next_arg = arg + p.alpha;
            const double log_ratio = log_z + std::lgamma(arg) - std::lgamma(next_arg);
            if (log_ratio < 0.0 && last <= 1e-17 * abs_sum) {
                converged = true;
                break;
            }
        }
    }
    if (!converged || !std::isfinite(sum) || sum == 0.0) {
        return {sum, MLMethod::series, kInf};
    }
    const double err = kUlp * 8.0 * abs_sum / std::abs(sum) + last / std::abs(sum);
    return {sum, MLMethod::series, err};
}

MLResult ml_asymptotic(MLParams p, double z, int terms) {
    check_params(p);
    if (!(z < 0.0)) return {0.0, MLMethod::asymptotic, kInf};
    // E_{a,b}(z) ~ -sum_{k>=1} z^{-k} / Gamma(b - a k) as z -> -inf, 0 < a < 1.
    const double inv = 1.0 / z;
    double sum = 0.0;
    double power = 1.0;
    double prev_mag = kInf;
    int used = 0;
    for (int k = 1; k <= terms; ++k) {
        power *= inv;
        const double term = -power * rgamma(p.beta - p.alpha * k);
        const double mag = std::abs(term);
        if (mag > prev_mag && mag != 0.0) break;  // divergent tail begins
        sum += term;
        if (mag != 0.0) prev_mag = mag;
        used = k;
    }
    if (sum == 0.0 || used == 0) return {sum, MLMethod::asymptotic, kInf};
    double tail = 0.0;
    double pw = power;
    for (int k = used + 1; k <= used + 2; ++k) {
        pw = std::pow(inv, k);
        tail = std::max(tail, std::abs(pw * rgamma(p.beta - p.alpha * k)));
    }
    return {sum, MLMethod::asymptotic, tail / std::abs(sum) + kUlp};
}

MLResult ml_integral(MLParams p, double z) {
    check_params(p);
    const double a = p.alpha;
    const bool beta_one = p.beta == 1.0;
    const bool beta_alpha = p.beta == a;
    const bool beta_two = p.beta == 2.0;
    if (!(a > 0.0 && a < 1.0) || !(z < 0.0) || !(beta_one || beta_alpha || beta_two)) {
        return {0.0, MLMethod::integral, kInf};
    }
    const double x = -z;
    const double s = std::pow(x, 1.0 / a);
    const double theta = a * std::numbers::pi;
    const double c_half = std::cos(0.5 * theta);
    const double four_c2 = 4.0 * c_half * c_half;  // 2 (1 + cos theta), cancellation-free
    const double inv_a = 1.0 / a;
    const double prefactor = std::sin(theta) / (a * std::numbers::pi);

    auto denom = [four_c2](double w) { return (1.0 - w) * (1.0 - w) + four_c2 * w; };

    auto integrand = [&](double w) -> double {
        const double d = denom(w);
        const double lo = std::pow(w, inv_a);                     // r on [0, 1]
        const double hi = w > 0.0 ? std::pow(w, -inv_a) : kInf;   // r on [1, inf)
        double val = 0.0;
        if (beta_one) {
            val = std::exp(-s * lo) + (std::isfinite(hi) ? std::exp(-s * hi) : 0.0);
        } else if (beta_alpha) {
            const double upper = std::isfinite(hi) && s * hi < 745.0 ? hi * std::exp(-s * hi) : 0.0;
            val = lo * std::exp(-s * lo) + upper;
        } else {
            const double lower = lo > 0.0 ? -std::expm1(-s * lo) / lo : s;
            const double upper = std::isfinite(hi) ? -std::expm1(-s * hi) * lo : lo;
            val = lower + upper;
        }
        return val / d;
    };

    thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
    double err = 0.0;
    double l1 = 0.0;
    const double integral = integrator.integrate(integrand, 0.0, 1.0, 1e-14, &err, &l1);
    double value = prefactor * integral;
    if (beta_alpha) value *= std::pow(s, 1.0 - a);
    if (beta_two) value /= s;
    const double rel = integral != 0.0 ? err / std::abs(integral) + kUlp * 4.0 : kInf;
    return {value, MLMethod::integral, rel};
}

MLResult ml_evaluate(MLParams p, double z, const MLTuning& tuning) {
    check_params(p);
    if (std::isnan(z)) throw std::invalid_argument("Mittag-Leffler argument is NaN");
    if (z == 0.0) return {rgamma(p.beta), MLMethod::closed_form, 0.0};
    if (p.alpha == 1.0 && p.beta == 1.0) return {std::exp(z), MLMethod::closed_form, kUlp};
    if (p.alpha == 1.0 && p.beta == 2.0) return {std::expm1(z) / z, MLMethod::closed_form, kUlp};

    MLResult best{0.0, MLMethod::series, kInf};
    auto consider = [&](const MLResult& r) {
        if (r.error_estimate < best.error_estimate) best = r;
        return r.error_estimate <= tuning.certify;
    };

    if (z > 0.0 || p.alpha >= 1.0) {
        if (consider(ml_series(p, z))) return best;
        throw AccuracyError("E_{" + std::to_string(p.alpha) + "," + std::to_string(p.beta) +
                                "}(" + std::to_string(z) + "): series cannot certify the value",
                            best.error_estimate);
    }

    const double x = -z;
    if (x <= tuning.z_switch) {
        if (consider(ml_series(p, z))) return best;
        if (consider(ml_integral(p, z))) return best;
        if (consider(ml_asymptotic(p, z, tuning.asymptotic_terms))) return best;
    } else {
        if (consider(ml_asymptotic(p, z, tuning.asymptotic_terms))) return best;
        if (consider(ml_integral(p, z))) return best;
        if (consider(ml_series(p, z))) return best;
    }
    throw AccuracyError("E_{" + std::to_string(p.alpha) + "," + std::to_string(p.beta) + "}(" +
                            std::to_string(z) + "): no evaluation method reached the target",
                        best.error_estimate);
}

double ml_eval(MLParams p, double z) { return ml_evaluate(p, z).value; }

double relaxation(FracOrder a, double mu, double t) {
    if (mu < 0.0 || t < 0.0) throw std::invalid_argument("relaxation requires mu >= 0 and t >= 0");
    if (t == 0.0 || mu == 0.0) return 1.0;
    if (a.classical()) return std::exp(-mu * t);
    return ml_eval({a.value(), 1.0}, -mu * std::pow(t, a.value()));
}

double kernel(FracOrder a, double mu, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("response kernel is singular at t <= 0");
    if (mu < 0.0) throw std::invalid_argument("response kernel requires mu >= 0");
    const double alpha = a.value();
    if (a.classical()) return std::exp(-mu * t);
    const double base = std::pow(t, alpha - 1.0);
    if (mu == 0.0) return base * rgamma(alpha);
    return base * ml_eval({alpha, alpha}, -mu * std::pow(t, alpha));
}

double relaxation_integral(FracOrder a, double mu, double t) {
    if (mu < 0.0 || t < 0.0) throw std::invalid_argument("relaxation_integral requires mu >= 0 and t >= 0");
    if (t == 0.0) return 0.0;
    if (mu == 0.0) return t;
    if (a.classical()) return -std::expm1(-mu * t) / mu;
    return t * ml_eval({a.value(), 2.0}, -mu * std::pow(t, a.value()));
}

}  // namespace fracrobin
