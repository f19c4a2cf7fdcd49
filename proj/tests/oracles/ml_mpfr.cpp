#include "ml_mpfr.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracrobin::oracle {

namespace {

// log2 of the largest |z|^k / Gamma(a k + b) and the index after which
// terms drop below 2^-guard of that maximum.
struct Budget {
    double log2_max;
    long last_k;
};

Budget budget(double a, double b, double z, double guard_bits) {
    const double lz = z == 0.0 ? -1e300 : std::log(std::abs(z));
    double best = 0.0;
    long k = 0;
    for (;; ++k) {
        const double v = (k * lz - std::lgamma(a * k + b)) / std::log(2.0);
        best = std::max(best, v);
        if (k > 8 && v < best - guard_bits && v < -guard_bits) break;
    }
    return {best, k};
}

class Mp {
public:
    explicit Mp(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
    ~Mp() { mpfr_clear(v_); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
    Mp(Mp&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

}  // namespace

long ml_series_bits(Rational a, Rational b, double z) {
    const auto bud = budget(a.value(), b.value(), z, 100.0);
    return static_cast<long>(std::max(0.0, bud.log2_max)) + 128;
}

std::vector<double> ml_series_mpfr(Rational a, Rational b, const std::vector<double>& zs) {
    if (a.num <= 0 || a.den <= 0 || b.den <= 0 || b.num <= 0)
        throw std::invalid_argument("ml_series_mpfr: needs a > 0 and b > 0");
    mpfr_prec_t bits = 128;
    for (double z : zs) bits = std::max<mpfr_prec_t>(bits, ml_series_bits(a, b, z));
    const long p = a.num, q = a.den;
    // a k + b = n_k / den with n_k = p bq k + bp q.
    const long den = a.den * b.den;
    const auto numer = [&](long k) { return p * b.den * k + b.num * a.den; };

    std::vector<Mp> inv_gamma;
    inv_gamma.reserve(static_cast<std::size_t>(q));
    {
        Mp x(bits);
        for (long r = 0; r < q; ++r) {
            inv_gamma.emplace_back(bits);
            mpfr_set_si(x.get(), numer(r), MPFR_RNDN);
            mpfr_div_si(x.get(), x.get(), den, MPFR_RNDN);
            mpfr_gamma(x.get(), x.get(), MPFR_RNDN);
            mpfr_ui_div(inv_gamma.back().get(), 1, x.get(), MPFR_RNDN);
        }
    }

    std::vector<double> out;
    out.reserve(zs.size());
    for (double z : zs) {
        const mpfr_prec_t zb = std::max<mpfr_prec_t>(128, ml_series_bits(a, b, z));
        const long last_k = budget(a.value(), b.value(), z, 100.0).last_k;
        Mp sum(zb);
        mpfr_set_ui(sum.get(), 0, MPFR_RNDN);
        // term[r] = z^k / Gamma(a k + b) for the latest k = r (mod q); moving to
        // k + q multiplies by z^q / prod_{j<p} (a k + b + j). Only O(n) operations.
        std::vector<Mp> term;
        term.reserve(static_cast<std::size_t>(q));
        for (long k = 0; k <= last_k; ++k) {
            const long r = k % q;
            if (k < q) {
                term.emplace_back(zb);
                mpfr_set(term.back().get(), inv_gamma[r].get(), MPFR_RNDN);
                for (long i = 0; i < k; ++i) mpfr_mul_d(term.back().get(), term.back().get(), z, MPFR_RNDN);
            } else {
                auto* t = term[r].get();
                const long n = numer(k - q);
                for (long j = 0; j < p; ++j) {
                    mpfr_mul_si(t, t, den, MPFR_RNDN);
                    mpfr_div_si(t, t, n + j * den, MPFR_RNDN);
                }
                for (long i = 0; i < q; ++i) mpfr_mul_d(t, t, z, MPFR_RNDN);
            }
            mpfr_add(sum.get(), sum.get(), term[r].get(), MPFR_RNDN);
        }
        out.push_back(mpfr_get_d(sum.get(), MPFR_RNDN));
    }
    return out;
}

double ml_series_mpfr(Rational a, Rational b, double z) { return ml_series_mpfr(a, b, std::vector<double>{z})[0]; }

}  // namespace fracrobin::oracle
