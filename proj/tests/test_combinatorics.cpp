#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "fpt/combinatorics.hpp"
#include "support/testutil.hpp"

using namespace fpt::comb;
using testutil::rel_err;

TEST_CASE("stirling triangle base cases and table values") {
    StirlingTable t(20);
    CHECK(t.value(0, 0) == 1.0);
    CHECK(t.value(1, 1) == 1.0);
    CHECK(t.value(5, 0) == 0.0);
    CHECK(t.value(7, 7) == 1.0);
    CHECK(t.value(4, 1) == 6.0);   // (n-1)! at n = 4
    CHECK(t.value(3, 2) == 3.0);   // (n-1)! H_{n-1} at n = 3

    CHECK_THROWS_AS(t.value(3, 4), std::domain_error);
    CHECK_THROWS_AS(t.value(21, 1), std::domain_error);
    CHECK_THROWS_AS(t.exact(21, 1), std::domain_error);
}

TEST_CASE("stirling column identities up to n = 20, exact backing") {
    StirlingTable t(20);
    std::uint64_t fact = 1;
    for (int n = 1; n <= 20; ++n) {
        if (n >= 2) fact *= static_cast<std::uint64_t>(n - 1);
        CHECK(t.exact(n, 1) == fact);  // [n,1] = (n-1)!
        if (n >= 2) {
            const double expect = static_cast<double>(fact) * harmonic(n - 1);
            CHECK(rel_err(t.value(n, 2), expect) < 1e-12);
        }
        // row sum = n!
        std::uint64_t sum = 0;
        for (int j = 0; j <= n; ++j) sum += t.exact(n, j);
        std::uint64_t nfact = 1;
        for (int q = 2; q <= n; ++q) nfact *= static_cast<std::uint64_t>(q);
        CHECK(sum == nfact);
    }
}

TEST_CASE("stirling table grows lazily and keeps the recurrence") {
    StirlingTable t(10);
    t.grow(120);
    CHECK(t.max_n() == 120);
    for (int n : {40, 99, 119})
        for (int j : {1, 3, 10})
            CHECK(rel_err(t.value(n + 1, j), t.value(n, j - 1) + n * t.value(n, j)) <
                  1e-14);
    CHECK(std::isfinite(t.value(120, 60)));
}

TEST_CASE("normalized stirling row sums to one") {
    NormalizedStirlingRow row(12);
    StirlingTable t(12);
    for (int n = 1; n <= 12; ++n) {
        row.advance();
        double sum = 0.0;
        for (int j = 0; j <= 12; ++j) sum += row.at(j);
        CHECK(rel_err(sum, 1.0) < 1e-14);
    }
    // n = 12 row against the raw triangle / 12!
    double fact = 1.0;
    for (int q = 2; q <= 12; ++q) fact *= q;
    for (int j = 1; j <= 12; ++j)
        CHECK(rel_err(row.at(j), t.value(12, j) / fact) < 1e-13);
}

TEST_CASE("rising factorial") {
    CHECK(rising_factorial(2.5, 0) == 1.0);
    CHECK(rising_factorial(2.5, 3) == doctest::Approx(39.375).epsilon(1e-15));
    double fact = 1.0;
    for (int n = 1; n <= 10; ++n) {
        fact *= n;
        CHECK(rising_factorial(1.0, n) == fact);
    }
    CHECK(rel_err(log_rising_factorial(2.5, 3), std::log(39.375)) < 1e-14);
    // usable where the direct product would overflow
    CHECK(std::isfinite(log_rising_factorial(1.8, 500)));
    CHECK_THROWS_AS(log_rising_factorial(-1.0, 3), std::domain_error);
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(0) == 0.0);
    CHECK(harmonic(1) == 1.0);
    CHECK(rel_err(harmonic(4), 25.0 / 12.0) < 1e-15);
    CHECK(rel_err(harmonic(100), 5.187377517639621) < 1e-14);
}

TEST_CASE("bell partial: closed cases and error paths") {
    std::vector<double> x{1.3, -0.7, 2.1, 0.4};
    // single-block partitions: B_{k,k}(x1) = x1^k
    for (int k = 1; k <= 4; ++k)
        CHECK(rel_err(bell_partial(k, k, x), std::pow(x[0], k)) < 1e-14);
    // B_{4,2}(x1,x2,x3) = 4 x3 x1 + 3 x2^2
    CHECK(rel_err(bell_partial(4, 2, x), 4 * x[2] * x[0] + 3 * x[1] * x[1]) < 1e-14);
    CHECK_THROWS_AS(bell_partial(2, 3, x), std::domain_error);
}

TEST_CASE("bell partial reproduces the stirling triangle") {
    StirlingTable t(9);
    std::vector<double> factorials{1, 1, 2, 6, 24, 120, 720, 5040, 40320};  // 0!..8!
    for (int n = 1; n <= 9; ++n)
        for (int j = 1; j <= n; ++j)
            CHECK(rel_err(bell_partial(n, j, factorials), t.value(n, j)) < 1e-13);
}

TEST_CASE("bell partial recurrence equals partition enumeration, k <= 8") {
    auto rng = testutil::test_rng();
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> x(8);
        for (auto& v : x) v = u(rng);
        for (int k = 1; k <= 8; ++k)
            for (int j = 1; j <= k; ++j)
                CHECK(rel_err(bell_partial(k, j, x),
                              testutil::bell_partial_bruteforce(k, j, x)) < 1e-12);
    }
}

TEST_CASE("bell partial homogeneity of degree j") {
    auto rng = testutil::test_rng(7);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::vector<double> x(7), ax(7);
    for (auto& v : x) v = u(rng);
    const double a = 1.7;
    for (std::size_t i = 0; i < x.size(); ++i) ax[i] = a * x[i];
    for (int k = 1; k <= 7; ++k)
        for (int j = 1; j <= k; ++j)
            CHECK(rel_err(bell_partial(k, j, ax),
                          std::pow(a, j) * bell_partial(k, j, x)) < 1e-12);
}

TEST_CASE("complete bell polynomials") {
    CHECK(bell_complete(0, {}) == 1.0);
    std::vector<double> y{0.8, -1.1, 0.3, 2.0, -0.5, 1.2};
    CHECK(rel_err(bell_complete(2, y), y[1] + y[0] * y[0]) < 1e-14);

    // graded homogeneity: Y_k(a y1, a^2 y2, ...) = a^k Y_k(y)
    const double a = -1.3;
    std::vector<double> ay(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) ay[i] = std::pow(a, i + 1) * y[i];
    for (int k = 1; k <= 6; ++k)
        CHECK(rel_err(bell_complete(k, ay), std::pow(a, k) * bell_complete(k, y)) < 1e-12);

    // sign alternation: Y_i(-y) = sum_j (-1)^j B_{i,j}(y)
    std::vector<double> ny(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) ny[i] = -y[i];
    for (int i = 1; i <= 6; ++i) {
        double rhs = 0.0;
        for (int j = 1; j <= i; ++j)
            rhs += ((j % 2) ? -1.0 : 1.0) * bell_partial(i, j, y);
        CHECK(rel_err(bell_complete(i, ny), rhs) < 1e-12);
    }
}

TEST_CASE("logarithmic partition polynomials, low-order closed forms") {
    std::vector<double> x{1.7, -0.4, 0.9};
    CHECK(log_partition_poly(1, x) == x[0]);
    CHECK(rel_err(log_partition_poly(2, x), x[1] - x[0] * x[0]) < 1e-14);
    CHECK(rel_err(log_partition_poly(3, x),
                  x[2] - 3 * x[1] * x[0] + 2 * x[0] * x[0] * x[0]) < 1e-13);
}

TEST_CASE("round trip: complete bell inverts the logarithmic polynomials") {
    auto rng = testutil::test_rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> x(8);
        for (auto& v : x) v = u(rng);
        auto P = log_partition_all(8, x);
        for (int k = 1; k <= 8; ++k)
            CHECK(rel_err(bell_complete(k, P), x[static_cast<std::size_t>(k) - 1]) <
                  1e-10);
    }
}

namespace {

// rows of the general partition polynomial table, k = 1..5
double table_row(int k, const std::vector<double>& a, const std::vector<double>& x) {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4];
    switch (k) {
        case 1: return a[0] * x1;
        case 2: return a[0] * x2 + a[1] * x1 * x1;
        case 3: return a[0] * x3 + 3 * a[1] * x2 * x1 + a[2] * x1 * x1 * x1;
        case 4:
            return a[0] * x4 + 4 * a[1] * x3 * x1 + 6 * a[2] * x2 * x1 * x1 +
                   a[3] * std::pow(x1, 4) + 3 * a[1] * x2 * x2;
        case 5:
            return a[0] * x5 + 5 * a[1] * x4 * x1 + 10 * a[1] * x3 * x2 +
                   10 * a[2] * x3 * x1 * x1 + 15 * a[2] * x2 * x2 * x1 +
                   10 * a[3] * x2 * x1 * x1 * x1 + a[4] * std::pow(x1, 5);
        default: return 0.0;
    }
}

}  // namespace

TEST_CASE("general partition polynomial matches the explicit table rows") {
    auto rng = testutil::test_rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> a(5), x(5);
        for (auto& v : a) v = u(rng);
        for (auto& v : x) v = u(rng);
        for (int k = 1; k <= 5; ++k)
            CHECK(rel_err(general_partition_poly(k, a, x), table_row(k, a, x)) < 1e-12);
    }
}

TEST_CASE("general partition polynomial specializations") {
    std::vector<double> x{0.6, -1.2, 0.8, 1.5, -0.3, 0.9};
    std::vector<double> ones(6, 1.0);
    std::vector<double> log_weights(6);
    double fact = 1.0;
    for (int j = 1; j <= 6; ++j) {
        if (j > 1) fact *= (j - 1);
        log_weights[static_cast<std::size_t>(j) - 1] = ((j % 2) ? 1.0 : -1.0) * fact;
    }
    for (int k = 1; k <= 6; ++k) {
        CHECK(rel_err(general_partition_poly(k, ones, x), bell_complete(k, x)) < 1e-12);
        CHECK(rel_err(general_partition_poly(k, log_weights, x), log_partition_poly(k, x)) <
              1e-12);
    }
}
