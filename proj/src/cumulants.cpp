#include "fpt/cumulants.hpp"

#include <cmath>
#include <stdexcept>

#include "fpt/combinatorics.hpp"

namespace fpt::cum {

CumulantVector cumulants_from_moments(const MomentVector& m) {
    const int K = m.order();
    if (K < 1)
        throw std::domain_error("cumulants_from_moments: empty moment vector");
    // transform coefficients g_k = (-1)^k m_k, then c_k = (-1)^k P_k(g_1..g_k)
    std::vector<double> g(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k)
        g[static_cast<std::size_t>(k) - 1] = (k % 2 ? -1.0 : 1.0) * m.at(k);
    auto P = comb::log_partition_all(K, g);
    CumulantVector out;
    out.c.resize(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k)
        out.c[static_cast<std::size_t>(k) - 1] =
            (k % 2 ? -1.0 : 1.0) * P[static_cast<std::size_t>(k) - 1];
    return out;
}

MomentVector moments_from_cumulants_bell(const CumulantVector& c) {
    const int K = c.order();
    if (K < 1)
        throw std::domain_error("moments_from_cumulants_bell: empty cumulant vector");
    MomentVector out;
    out.m.resize(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k)
        out.m[static_cast<std::size_t>(k) - 1] = comb::bell_complete(k, c.c);
    return out;
}

MomentVector moments_from_cumulants_recursive(const CumulantVector& c) {
    const int K = c.order();
    if (K < 1)
        throw std::domain_error("moments_from_cumulants_recursive: empty cumulant vector");
    MomentVector out;
    out.m.resize(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) {
        double acc = c.at(k);
        for (int i = 1; i <= k - 1; ++i)
            acc += comb::binomial(k - 1, i - 1) * c.at(i) *
                   out.m[static_cast<std::size_t>(k - i) - 1];
        out.m[static_cast<std::size_t>(k) - 1] = acc;
    }
    return out;
}

std::pair<double, double> standardized_shape(const CumulantVector& c) {
    if (c.order() < 4)
        throw std::domain_error("standardized_shape: needs cumulants up to order 4");
    const double c2 = c.at(2);
    if (!(c2 > 0.0))
        throw std::domain_error("standardized_shape: c2 must be > 0");
    return {c.at(3) / std::pow(c2, 1.5), c.at(4) / (c2 * c2)};
}

}  // namespace fpt::cum
