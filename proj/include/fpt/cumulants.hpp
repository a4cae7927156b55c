#pragma once

#include <utility>
#include <vector>

#include "fpt/series.hpp"

namespace fpt {

/// Raw moments m_j = E[T^j] for j = 1..K (m_0 = 1 implicit).
struct MomentVector {
    std::vector<double> m;

    int order() const { return static_cast<int>(m.size()); }
    double at(int j) const { return j == 0 ? 1.0 : m[static_cast<std::size_t>(j) - 1]; }
};

/// Cumulants c_k for k = 1..K, with the truncation diagnostics of whichever
/// series produced them and a per-order cancellation report (used by the
/// Feller builders; empty when the vector came from exact conversions).
struct CumulantVector {
    CumulantVector() = default;
    explicit CumulantVector(std::vector<double> values) : c(std::move(values)) {}

    std::vector<double> c;
    SeriesDiag diag{};
    std::vector<double> cancellation;  ///< |c*_k(y0)-c*_k(S)| / |c*_k(S)|, per k

    int order() const { return static_cast<int>(c.size()); }
    double at(int k) const { return c[static_cast<std::size_t>(k) - 1]; }

    /// true when the k-th order lost more than ten digits to cancellation
    bool cancellation_suspect(int k) const {
        return cancellation[static_cast<std::size_t>(k) - 1] < 1e-10;
    }
};

namespace cum {

/// Cumulants from raw moments via the logarithmic partition polynomials
/// applied to the alternating-sign Laplace coefficients. All sign bookkeeping
/// between the transform coefficients and raw moments of T lives here;
/// callers only ever see raw moments and cumulants of T.
CumulantVector cumulants_from_moments(const MomentVector& m);

/// Moments from cumulants through the complete Bell polynomials,
/// m_k = Y_k(c_1, ..., c_k). Cross-check route.
MomentVector moments_from_cumulants_bell(const CumulantVector& c);

/// Moments from cumulants through the binomial recursion
/// m_k = c_k + sum_i C(k-1,i-1) c_i m_{k-i}. Production route (O(K^2)).
MomentVector moments_from_cumulants_recursive(const CumulantVector& c);

/// (skewness, excess kurtosis) = (c3/c2^{3/2}, c4/c2^2). Requires K >= 4.
std::pair<double, double> standardized_shape(const CumulantVector& c);

}  // namespace cum
}  // namespace fpt
