#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fpt::comb {

/// Triangle of unsigned Stirling numbers of the first kind, [n,j], built by
/// the recurrence [n+1,j] = [n,j-1] + n*[n,j].
///
/// Entries are stored in double precision (good through n ~ 170 before the
/// raw values overflow) with an exact uint64 backing kept for rows n <= 20,
/// where the values still fit a 64-bit integer. The triangle grows lazily;
/// growth is single-writer, after which lookups are safe from any thread.
class StirlingTable {
public:
    explicit StirlingTable(int max_n = 20);

    /// [n,j] as a double. Throws std::domain_error if j > n or n > max_n().
    double value(int n, int j) const;

    /// Exact value for n <= exact_horizon() (currently 20).
    std::uint64_t exact(int n, int j) const;

    /// Extend the triangle. No-op if new_max <= max_n().
    void grow(int new_max);

    int max_n() const { return static_cast<int>(rows_.size()) - 1; }
    static constexpr int exact_horizon() { return 20; }

private:
    std::vector<std::vector<double>> rows_;
    std::vector<std::vector<std::uint64_t>> exact_rows_;
};

/// One row of the factorial-normalized triangle [n,j]/n! for j = 0..width,
/// advanced one n at a time. Entries stay in [0,1] for any n (row sums are
/// exactly 1), which is what keeps the inner series of the model finite-range
/// even when n runs into the thousands.
class NormalizedStirlingRow {
public:
    explicit NormalizedStirlingRow(int width);

    void advance();  // n -> n+1
    int n() const { return n_; }
    double at(int j) const { return row_[static_cast<std::size_t>(j)]; }

private:
    int n_ = 0;
    std::vector<double> row_;
    std::vector<double> next_;
};

/// Rising factorial <a>_n = a(a+1)...(a+n-1), <a>_0 = 1.
double rising_factorial(double a, int n);

/// log <a>_n for a > 0; usable far beyond the overflow point of the product.
double log_rising_factorial(double a, int n);

/// Harmonic number H_n, compensated accumulation.
double harmonic(int n);

/// Binomial coefficient as a double (exact for the orders used here).
double binomial(int n, int k);

/// Partial exponential Bell polynomial B_{k,j}(x_1, ..., x_{k-j+1}),
/// computed by the recurrence on k (degree-j homogeneous in x).
/// Requires 1 <= j <= k and x.size() >= k-j+1.
double bell_partial(int k, int j, std::span<const double> x);

/// Complete Bell polynomial Y_k(y_1,...,y_k) = sum_j B_{k,j}; Y_0 = 1.
double bell_complete(int k, std::span<const double> y);

/// Logarithmic partition polynomial P_k via
/// P_1 = x_1,  P_k = x_k - sum_{r=1}^{k-1} C(k-1,r) x_r P_{k-r}.
double log_partition_poly(int k, std::span<const double> x);

/// All of P_1..P_K in one pass (same recurrence, shared prefix work).
std::vector<double> log_partition_all(int K, std::span<const double> x);

/// General partition polynomial G_k(a; x) = sum_j a_j B_{k,j}(x).
/// a_j = 1 recovers Y_k; a_j = (-1)^{j-1}(j-1)! recovers P_k.
double general_partition_poly(int k, std::span<const double> a,
                              std::span<const double> x);

}  // namespace fpt::comb
