#pragma once

#include <string>
#include <vector>

#include "fpt/cumulants.hpp"
#include "fpt/pdf_table.hpp"

namespace fpt {

/// Moment-matching diagnostics for the gamma reference density.
struct MatchDiagnostics {
    bool beta_bound_ok = false;   ///< beta < 2/c1  (equivalently 2 c2 > c1^2)
    bool alpha_in_range = false;  ///< -1 < alpha < 1 (same condition, restated)
    bool mode_defined = false;    ///< alpha >= 1: the reference density has a mode
};

/// Gamma-weighted Laguerre expansion of a density on (0, inf):
///   ghat(t) = beta (beta t)^alpha e^{-beta t} sum_{k<=n} A_k L_k^{(alpha)}(beta t).
struct LaguerreGammaApprox {
    double alpha = 0.0;  ///< gamma shape minus one, > -1
    double beta = 1.0;   ///< gamma rate, > 0
    int n = 0;           ///< truncation degree
    std::vector<double> A;  ///< coefficients A_0..A_n
    MatchDiagnostics diag{};
};

/// Advisory report from check_conditions; never blocks evaluation.
struct ConditionReport {
    MatchDiagnostics match{};
    std::vector<double> normalized_coeffs;  ///< a_k, orthonormal scaling of A_k
    double decay_slope = 0.0;  ///< slope of log|a_k| vs log k over nonzero a_k
    int decay_points = 0;      ///< how many points entered the regression
};

namespace lag {

/// Generalized Laguerre polynomial L_k^{(alpha)}(t) by the three-term
/// recurrence, L_0 = 1, L_1 = alpha + 1 - t.
double laguerre(int k, double alpha, double t);

/// Method-of-moments choice of the reference gamma:
/// beta = c1/c2, alpha = c1^2/c2 - 1. Fills the bound diagnostics.
/// Requires c1 > 0 and c2 > 0.
LaguerreGammaApprox match_parameters(const CumulantVector& c);

/// Expansion coefficients A_0..A_n from raw moments at fixed (alpha, beta).
/// Runs the Laguerre recurrence symbolically in powers of (beta m) and then
/// applies the linear functional m^j -> m_j; this avoids the alternating
/// binomial sums of the direct formula.
std::vector<double> coefficients(const MomentVector& m, double alpha, double beta, int n);

/// match_parameters + coefficients in one call.
LaguerreGammaApprox build_approx(const CumulantVector& c, const MomentVector& m, int n);

/// ghat(t) for t > 0. For alpha < 0 the factor t^alpha diverges at 0+, so
/// t <= 0 is a domain error; grids must keep away from 0.
double evaluate(const LaguerreGammaApprox& approx, double t);

/// Advisory condition report: bound status plus the empirical decay rate of
/// the orthonormal coefficient sequence.
ConditionReport check_conditions(const LaguerreGammaApprox& approx, const CumulantVector& c);

struct GridSpec {
    double t_min = 0.0;  ///< must be > 0
    double t_max = 0.0;
    int points = 0;
};

/// Sample ghat on a uniform grid (or an explicit one); counts negative
/// values in the table flags. clip_negative replaces negative samples by 0
/// WITHOUT renormalizing and is recorded in the metadata.
PdfTable build_pdf_table(const LaguerreGammaApprox& approx, const GridSpec& grid,
                         bool clip_negative = false);
PdfTable build_pdf_table(const LaguerreGammaApprox& approx, std::vector<double> grid,
                         bool clip_negative = false);

}  // namespace lag
}  // namespace fpt
