// Writes the frozen Mittag-Leffler reference table consumed by the tests:
//   ml_reference_gen > tests/data/ml_reference.inc
// The expensive entries (a = 0.3, z near -20) need ~31k bits and ~2e5 terms.

#include <cstdio>
#include <vector>

#include "ml_mpfr.hpp"

using fracrobin::oracle::Rational;

int main() {
    const std::vector<Rational> alphas = {{3, 10}, {1, 2}, {7, 10}, {9, 10}};
    const std::vector<double> zs = {-20, -18, -16, -14, -12, -10, -8, -6, -5, -4, -3,
                                    -2,  -1.5, -1, -0.5, -0.1, 0.3, 1,  1.5, 2};
    std::printf("// alpha_num, alpha_den, beta_num, beta_den, z, E(z); generated by ml_reference_gen\n");
    std::fflush(stdout);
    // Rows are flushed per (a, b) block so a long run can be inspected while it works.
    for (const auto& a : alphas)
        for (const Rational& b : {Rational{1, 1}, a}) {
            const auto values = fracrobin::oracle::ml_series_mpfr(a, b, zs);
            for (std::size_t i = 0; i < zs.size(); ++i) {
                const double z = zs[i], v = values[i];
                std::printf("{%lld, %lld, %lld, %lld, %.17g, %.17g},\n", static_cast<long long>(a.num),
                            static_cast<long long>(a.den), static_cast<long long>(b.num),
                            static_cast<long long>(b.den), z, v);
                std::fflush(stdout);
            }
        }
}
