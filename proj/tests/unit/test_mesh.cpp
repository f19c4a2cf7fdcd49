#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fracrobin/mesh.hpp"

using namespace fracrobin;

TEST(Domain, Construction) {
    EXPECT_THROW(Domain::interval(1.0, 7), std::invalid_argument);
    EXPECT_THROW(Domain::interval(-1.0, 9), std::invalid_argument);
    const auto d = Domain::rectangle(2.0, 1.0, 9, 8);
    EXPECT_EQ(d.node_count(), 72u);
    EXPECT_EQ(d.index(3, 2), 21u);
    EXPECT_DOUBLE_EQ(d.hx(), 0.25);
    EXPECT_TRUE(d.on_boundary(0));
    EXPECT_FALSE(d.on_boundary(d.index(4, 2)));
}

TEST(Quadrature, WeightsSumToLength) {
    for (auto rule : {Quadrature::trapezoid, Quadrature::gregory})
        for (std::size_t n : {9u, 10u, 33u, 129u}) {
            const auto w = quadrature_weights_1d(n, 2.0 / (n - 1), rule);
            EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 2.0, 1e-13);
        }
}

TEST(Quadrature, GregoryIsExactForLowDegreePolynomials) {
    // Endpoint corrections of order 7 integrate polynomials up to degree 7 exactly.
    const std::size_t n = 33;
    const double h = 1.0 / (n - 1);
    const auto w = quadrature_weights_1d(n, h, Quadrature::gregory);
    for (int p = 0; p <= 7; ++p) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += w[i] * std::pow(i * h, p);
        EXPECT_NEAR(s, 1.0 / (p + 1), 1e-13) << p;
    }
}

TEST(Quadrature, GregoryConvergesFasterThanTrapezoid) {
    const std::size_t n = 65;
    const double h = M_PI / (n - 1);
    double trap = 0.0, greg = 0.0;
    const auto wt = quadrature_weights_1d(n, h, Quadrature::trapezoid);
    const auto wg = quadrature_weights_1d(n, h, Quadrature::gregory);
    for (std::size_t i = 0; i < n; ++i) {
        trap += wt[i] * std::exp(i * h);
        greg += wg[i] * std::exp(i * h);
    }
    const double exact = std::exp(M_PI) - 1.0;
    EXPECT_LT(std::abs(greg - exact), 1e-10 * exact);
    EXPECT_GT(std::abs(trap - exact), 1e-5 * exact);
}

TEST(Quadrature, TensorWeights) {
    const auto d = Domain::rectangle(2.0, 3.0, 9, 17);
    const auto w = quadrature_weights(d, Quadrature::trapezoid);
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 6.0, 1e-13);
    std::vector<double> one(d.node_count(), 1.0);
    EXPECT_NEAR(weighted_norm(one, w), std::sqrt(6.0), 1e-13);
}
