#pragma once
// Multiprecision reference for E_{a,b}(z) by direct power-series summation.
// a = p / q and b = bp / bq are rational so that 1/Gamma(a k + b) can be
// advanced with integer shifts: a (k + q) + b = (a k + b) + p.

#include <cstdint>
#include <vector>

namespace fracrobin::oracle {

struct Rational {
    std::int64_t num;
    std::int64_t den;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Sums the series at a working precision chosen from the largest term so
/// that the result is good to ~1e-25 relative; rounded to double at the end.
double ml_series_mpfr(Rational a, Rational b, double z);

/// Same for several z sharing (a, b): the starting values 1/Gamma(a r + b),
/// r < q, are computed once at the precision of the hardest z.
std::vector<double> ml_series_mpfr(Rational a, Rational b, const std::vector<double>& zs);

/// Bits the summation would use (for budgeting test runtime).
long ml_series_bits(Rational a, Rational b, double z);

}  // namespace fracrobin::oracle
