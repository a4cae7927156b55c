#include "fpt/combinatorics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fpt::comb {

StirlingTable::StirlingTable(int max_n) {
    rows_.push_back({1.0});
    exact_rows_.push_back({1});
    grow(max_n);
}

void StirlingTable::grow(int new_max) {
    for (int n = max_n(); n < new_max; ++n) {
        const auto& prev = rows_.back();
        std::vector<double> row(static_cast<std::size_t>(n) + 2, 0.0);
        for (int j = 1; j <= n + 1; ++j) {
            double carry = (j <= n) ? n * prev[static_cast<std::size_t>(j)] : 0.0;
            row[static_cast<std::size_t>(j)] = prev[static_cast<std::size_t>(j) - 1] + carry;
        }
        rows_.push_back(std::move(row));
        if (n + 1 <= exact_horizon()) {
            const auto& eprev = exact_rows_.back();
            std::vector<std::uint64_t> erow(static_cast<std::size_t>(n) + 2, 0);
            for (int j = 1; j <= n + 1; ++j) {
                std::uint64_t carry =
                    (j <= n) ? static_cast<std::uint64_t>(n) * eprev[static_cast<std::size_t>(j)] : 0;
                erow[static_cast<std::size_t>(j)] = eprev[static_cast<std::size_t>(j) - 1] + carry;
            }
            exact_rows_.push_back(std::move(erow));
        }
    }
}

double StirlingTable::value(int n, int j) const {
    if (n < 0 || j < 0 || j > n || n > max_n())
        throw std::domain_error("StirlingTable::value: need 0 <= j <= n <= max_n, got n=" +
                                std::to_string(n) + " j=" + std::to_string(j));
    return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
}

std::uint64_t StirlingTable::exact(int n, int j) const {
    if (n < 0 || j < 0 || j > n || n > exact_horizon())
        throw std::domain_error("StirlingTable::exact: need 0 <= j <= n <= " +
                                std::to_string(exact_horizon()));
    return exact_rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
}

NormalizedStirlingRow::NormalizedStirlingRow(int width)
    : row_(static_cast<std::size_t>(width) + 1, 0.0),
      next_(static_cast<std::size_t>(width) + 1, 0.0) {
    row_[0] = 1.0;  // [0,0]/0! = 1
}

void NormalizedStirlingRow::advance() {
    // [n+1,j]/(n+1)! = ([n,j-1]/n! + n [n,j]/n!) / (n+1)
    const double np1 = n_ + 1;
    next_[0] = 0.0;
    for (std::size_t j = 1; j < row_.size(); ++j)
        next_[j] = (row_[j - 1] + n_ * row_[j]) / np1;
    row_.swap(next_);
    ++n_;
}

double rising_factorial(double a, int n) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= a + i;
    return p;
}

double log_rising_factorial(double a, int n) {
    if (a <= 0.0)
        throw std::domain_error("log_rising_factorial: requires a > 0");
    return std::lgamma(a + n) - std::lgamma(a);
}

double harmonic(int n) {
    double sum = 0.0, comp = 0.0;
    for (int j = 1; j <= n; ++j) {
        double x = 1.0 / j;
        double t = sum + x;
        comp += (std::abs(sum) >= x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    // running product equals C(n-k+i, i) after step i, an integer, so the
    // division below is exact in double for the orders used here
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

// Full table of B_{kk,jj} for kk <= k, jj <= j, filled by the recurrence
// B_{k,j} = sum_i C(k-1,i-1) x_i B_{k-i,j-1}.
std::vector<std::vector<double>> bell_table(int k, int j, std::span<const double> x) {
    std::vector<std::vector<double>> B(static_cast<std::size_t>(k) + 1,
                                       std::vector<double>(static_cast<std::size_t>(j) + 1, 0.0));
    B[0][0] = 1.0;
    for (int kk = 1; kk <= k; ++kk) {
        for (int jj = 1; jj <= std::min(j, kk); ++jj) {
            double acc = 0.0;
            for (int i = 1; i <= kk - jj + 1; ++i)
                acc += binomial(kk - 1, i - 1) * x[static_cast<std::size_t>(i) - 1] *
                       B[static_cast<std::size_t>(kk - i)][static_cast<std::size_t>(jj) - 1];
            B[static_cast<std::size_t>(kk)][static_cast<std::size_t>(jj)] = acc;
        }
    }
    return B;
}

}  // namespace

double bell_partial(int k, int j, std::span<const double> x) {
    if (j < 1 || j > k)
        throw std::domain_error("bell_partial: requires 1 <= j <= k");
    if (static_cast<int>(x.size()) < k - j + 1)
        throw std::domain_error("bell_partial: x too short, need k-j+1 entries");
    return bell_table(k, j, x)[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
}

double bell_complete(int k, std::span<const double> y) {
    if (k == 0) return 1.0;
    if (static_cast<int>(y.size()) < k)
        throw std::domain_error("bell_complete: y too short");
    auto B = bell_table(k, k, y);
    double sum = 0.0;
    for (int j = 1; j <= k; ++j) sum += B[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    return sum;
}

std::vector<double> log_partition_all(int K, std::span<const double> x) {
    if (K < 1)
        throw std::domain_error("log_partition_all: requires K >= 1");
    if (static_cast<int>(x.size()) < K)
        throw std::domain_error("log_partition_all: x too short");
    std::vector<double> P(static_cast<std::size_t>(K) + 1, 0.0);
    P[1] = x[0];
    for (int k = 2; k <= K; ++k) {
        double acc = x[static_cast<std::size_t>(k) - 1];
        for (int r = 1; r <= k - 1; ++r)
            acc -= binomial(k - 1, r) * x[static_cast<std::size_t>(r) - 1] *
                   P[static_cast<std::size_t>(k - r)];
        P[static_cast<std::size_t>(k)] = acc;
    }
    return {P.begin() + 1, P.end()};
}

double log_partition_poly(int k, std::span<const double> x) {
    return log_partition_all(k, x)[static_cast<std::size_t>(k) - 1];
}

double general_partition_poly(int k, std::span<const double> a, std::span<const double> x) {
    if (k < 1)
        throw std::domain_error("general_partition_poly: requires k >= 1");
    if (static_cast<int>(a.size()) < k || static_cast<int>(x.size()) < k)
        throw std::domain_error("general_partition_poly: inputs too short");
    auto B = bell_table(k, k, x);
    double sum = 0.0;
    for (int j = 1; j <= k; ++j)
        sum += a[static_cast<std::size_t>(j) - 1] *
               B[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    return sum;
}

}  // namespace fpt::comb
