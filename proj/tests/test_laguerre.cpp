#include <doctest.h>

#include <cmath>

#include <Eigen/Sparse>

#include "jcps/expm.hpp"
#include "jcps/laguerre.hpp"

using namespace jcps;

namespace {

struct Explicit {
    long double value;
    long double scale;  // sum of |terms|, the conditioning of the explicit sum
};

// L_n^k(x) = sum_j (-1)^j C(n+k, n-j) x^j / j!
Explicit explicit_laguerre(int n, int k, long double x) {
    Explicit out{0.0L, 0.0L};
    for (int j = 0; j <= n; ++j) {
        long double binom = 1.0L;  // C(n+k, n-j)
        for (int i = 1; i <= n - j; ++i) binom = binom * (k + j + i) / i;
        long double t = binom;
        for (int i = 1; i <= j; ++i) t *= x / i;
        out.value += (j % 2 ? -t : t);
        out.scale += t;
    }
    return out;
}

}  // namespace

TEST_CASE("recurrence matches the explicit sum") {
    for (double x : {0.0, 0.3, 1.0, 2.5, 6.0, 10.0}) {
        for (int k = 0; k <= 6; ++k) {
            for (int n = 0; n <= 20; ++n) {
                const auto ref = explicit_laguerre(n, k, x);
                const double got = laguerre(n, k, x);
                CHECK(std::abs(got - static_cast<double>(ref.value)) <= 1e-12 * static_cast<double>(ref.scale));
            }
        }
    }
    CHECK(laguerre(0, 3, 1.7) == 1.0);
    CHECK(laguerre(1, 2, 1.5) == doctest::Approx(1.5));
    CHECK(laguerre(5, 0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("normalized table matches the scaled raw polynomial") {
    LaguerreTable table(30);
    for (double x : {0.5, 3.0, 12.0, 20.0}) {
        table.reset(x);
        CHECK(table.x() == x);
        for (int k = 0; k <= 10; ++k) {
            for (int n = 0; n + k <= 30; ++n) {
                const double log_scale = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(n + k + 1.0)) +
                                         0.5 * k * std::log(x) - 0.5 * x;
                const double expected = std::exp(log_scale) * laguerre(n, k, x);
                CHECK(std::abs(table.scaled(n, k) - expected) <= 1e-12 * (1.0 + std::abs(expected)));
                CHECK(table.value(n, k) == doctest::Approx(laguerre(n, k, x)).epsilon(1e-10));
            }
        }
    }
    LaguerreTable zero(10, 0.0);
    CHECK(zero.value(4, 2) == doctest::Approx(laguerre(4, 2, 0.0)));
    CHECK(zero.scaled(4, 0) == doctest::Approx(1.0));
    CHECK(zero.scaled(4, 2) == 0.0);
}

TEST_CASE("table entries stay bounded for large arguments") {
    LaguerreTable table(120);
    for (double x : {50.0, 200.0, 400.0}) {
        table.reset(x);
        for (int k = 0; k <= 120; ++k) {
            for (int n = 0; n + k <= 120; ++n) {
                const double f = table.scaled(n, k);
                CHECK(std::isfinite(f));
                CHECK(std::abs(f) <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("table reproduces displacement matrix elements") {
    // <m|D(b)|n> = f_n^{m-n}(b^2) for real b > 0 and m >= n
    const double b = std::sqrt(60.0);
    const int cutoff = 40, dim = 700;
    linalg::SparseMatrix gen(dim, dim);
    std::vector<Eigen::Triplet<std::complex<double>>> trips;
    for (int n = 1; n < dim; ++n) {
        trips.emplace_back(n, n - 1, b * std::sqrt(double(n)));   // b a^dag
        trips.emplace_back(n - 1, n, -b * std::sqrt(double(n)));  // -b a
    }
    gen.setFromTriplets(trips.begin(), trips.end());
    const Eigen::MatrixXcd cols = linalg::expm_action(gen, Eigen::MatrixXcd::Identity(dim, cutoff + 1));
    LaguerreTable table(2 * cutoff, b * b);
    for (int n = 0; n <= cutoff; ++n) {
        for (int m = n; m <= cutoff; ++m) {
            CHECK(std::abs(cols(m, n).real() - table.scaled(n, m - n)) < 1e-10);
        }
    }
}
