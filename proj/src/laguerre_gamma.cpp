#include "fpt/laguerre_gamma.hpp"

#include <cmath>
#include <stdexcept>

#include "fpt/combinatorics.hpp"

namespace fpt::lag {

double laguerre(int k, double alpha, double t) {
    if (!(alpha > -1.0))
        throw std::domain_error("laguerre: alpha > -1 required");
    if (k < 0)
        throw std::domain_error("laguerre: k >= 0 required");
    if (k == 0) return 1.0;
    double lm1 = 1.0;              // L_0
    double l = alpha + 1.0 - t;    // L_1
    for (int i = 1; i < k; ++i) {
        double lp1 = ((2 * i + 1 + alpha - t) * l - (i + alpha) * lm1) / (i + 1);
        lm1 = l;
        l = lp1;
    }
    return l;
}

LaguerreGammaApprox match_parameters(const CumulantVector& c) {
    if (c.order() < 2)
        throw std::domain_error("match_parameters: needs cumulants up to order 2");
    const double c1 = c.at(1), c2 = c.at(2);
    if (!(c2 > 0.0))
        throw std::domain_error("match_parameters: c2 must be > 0");
    if (!(c1 > 0.0))
        throw std::domain_error("match_parameters: c1 must be > 0");
    LaguerreGammaApprox a;
    a.beta = c1 / c2;
    a.alpha = c1 * c1 / c2 - 1.0;
    a.diag.beta_bound_ok = 2.0 * c2 > c1 * c1;       // beta < 2/c1
    a.diag.alpha_in_range = a.alpha > -1.0 && a.alpha < 1.0;
    a.diag.mode_defined = a.alpha >= 1.0;
    return a;
}

std::vector<double> coefficients(const MomentVector& m, double alpha, double beta, int n) {
    if (n < 0)
        throw std::domain_error("coefficients: n >= 0 required");
    if (m.order() < n)
        throw std::domain_error("coefficients: moment vector shorter than degree n");

    // Polynomials in w = beta*m, stored as coefficient rows. The recurrence
    //   L_{k+1}(w) = ((2k+1+alpha-w) L_k - (k+alpha) L_{k-1}) / (k+1)
    // is run on the rows; applying m^j -> m_j afterwards gives A_k up to the
    // k!/Gamma(alpha+1+k) normalization.
    std::vector<std::vector<double>> L(static_cast<std::size_t>(n) + 1);
    L[0] = {1.0};
    if (n >= 1) L[1] = {alpha + 1.0, -1.0};
    for (int k = 1; k < n; ++k) {
        const auto& lk = L[static_cast<std::size_t>(k)];
        const auto& lkm1 = L[static_cast<std::size_t>(k) - 1];
        std::vector<double> next(static_cast<std::size_t>(k) + 2, 0.0);
        for (std::size_t j = 0; j < lk.size(); ++j) {
            next[j] += (2 * k + 1 + alpha) * lk[j];
            next[j + 1] -= lk[j];  // the -w L_k term
        }
        for (std::size_t j = 0; j < lkm1.size(); ++j) next[j] -= (k + alpha) * lkm1[j];
        for (auto& v : next) v /= (k + 1);
        L[static_cast<std::size_t>(k) + 1] = std::move(next);
    }

    std::vector<double> A(static_cast<std::size_t>(n) + 1);
    double log_fact = 0.0;  // log k!
    for (int k = 0; k <= n; ++k) {
        if (k > 0) log_fact += std::log(static_cast<double>(k));
        double acc = 0.0;
        double beta_pow = 1.0;
        for (int j = 0; j <= k; ++j) {
            acc += L[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] * beta_pow *
                   m.at(j);
            beta_pow *= beta;
        }
        // k!/Gamma(alpha+1+k) via logs; alpha+1+k > 0 throughout
        A[static_cast<std::size_t>(k)] =
            acc * std::exp(log_fact - std::lgamma(alpha + 1.0 + k));
    }
    return A;
}

LaguerreGammaApprox build_approx(const CumulantVector& c, const MomentVector& m, int n) {
    LaguerreGammaApprox a = match_parameters(c);
    a.n = n;
    a.A = coefficients(m, a.alpha, a.beta, n);
    return a;
}

double evaluate(const LaguerreGammaApprox& approx, double t) {
    if (!(t > 0.0))
        throw std::domain_error("evaluate: t must be > 0");
    if (approx.A.size() != static_cast<std::size_t>(approx.n) + 1)
        throw std::invalid_argument("evaluate: coefficient count does not match degree");
    const double bt = approx.beta * t;
    // Laguerre values for all orders in one recurrence sweep
    double sum = approx.A.empty() ? 0.0 : approx.A[0];
    double lm1 = 1.0;
    double l = approx.alpha + 1.0 - bt;
    if (approx.n >= 1) sum += approx.A[1] * l;
    for (int k = 1; k < approx.n; ++k) {
        double lp1 = ((2 * k + 1 + approx.alpha - bt) * l - (k + approx.alpha) * lm1) /
                     (k + 1);
        lm1 = l;
        l = lp1;
        sum += approx.A[static_cast<std::size_t>(k) + 1] * lp1;
    }
    return approx.beta * std::pow(bt, approx.alpha) * std::exp(-bt) * sum;
}

ConditionReport check_conditions(const LaguerreGammaApprox& approx,
                                 const CumulantVector& c) {
    ConditionReport rep;
    rep.match = approx.diag;
    if (c.order() >= 2) {
        const double c1 = c.at(1), c2 = c.at(2);
        rep.match.beta_bound_ok = c2 > 0.0 && 2.0 * c2 > c1 * c1;
    }
    const double lg_a1 = std::lgamma(approx.alpha + 1.0);
    rep.normalized_coeffs.resize(approx.A.size());
    for (std::size_t k = 0; k < approx.A.size(); ++k) {
        const double kk = static_cast<double>(k);
        const double scale = std::exp(
            0.5 * (lg_a1 + std::lgamma(approx.alpha + 1.0 + kk) - std::lgamma(kk + 1.0)));
        rep.normalized_coeffs[k] = (k % 2 ? -1.0 : 1.0) * scale * approx.A[k];
    }
    // least-squares slope of log|a_k| against log k over the nonzero tail
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int npts = 0;
    for (std::size_t k = 1; k < rep.normalized_coeffs.size(); ++k) {
        const double a = std::abs(rep.normalized_coeffs[k]);
        if (a < 1e-250) continue;
        const double x = std::log(static_cast<double>(k)), y = std::log(a);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++npts;
    }
    if (npts >= 2 && sxx * npts - sx * sx > 0.0)
        rep.decay_slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
    rep.decay_points = npts;
    return rep;
}

namespace {

PdfTable sample_table(const LaguerreGammaApprox& approx, std::vector<double> grid,
                      bool clip_negative) {
    PdfTable t;
    t.source = "approximant";
    t.grid = std::move(grid);
    t.values.resize(t.grid.size());
    t.flags.resize(t.grid.size(), 0);

    // pure per-point evaluation
    const auto npts = static_cast<long>(t.grid.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < npts; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        double v = evaluate(approx, t.grid[ui]);
        if (v < 0.0) {
            t.flags[ui] |= 1;
            if (clip_negative) v = 0.0;
        }
        t.values[ui] = v;
    }
    t.params["alpha"] = io::format_g17(approx.alpha);
    t.params["beta"] = io::format_g17(approx.beta);
    t.params["degree"] = std::to_string(approx.n);
    t.params["clip_negative"] = clip_negative ? "1" : "0";
    t.params["negative_count"] = std::to_string(t.negative_count());
    return t;
}

}  // namespace

PdfTable build_pdf_table(const LaguerreGammaApprox& approx, const GridSpec& spec,
                         bool clip_negative) {
    if (!(spec.t_min > 0.0))
        throw std::domain_error("build_pdf_table: t_min must be > 0");
    if (!(spec.t_max > spec.t_min))
        throw std::domain_error("build_pdf_table: t_max must exceed t_min");
    if (spec.points < 2)
        throw std::domain_error("build_pdf_table: need at least 2 grid points");
    std::vector<double> grid(static_cast<std::size_t>(spec.points));
    const double step = (spec.t_max - spec.t_min) / (spec.points - 1);
    for (int i = 0; i < spec.points; ++i)
        grid[static_cast<std::size_t>(i)] = spec.t_min + step * i;
    return sample_table(approx, std::move(grid), clip_negative);
}

PdfTable build_pdf_table(const LaguerreGammaApprox& approx, std::vector<double> grid,
                         bool clip_negative) {
    if (grid.size() < 2)
        throw std::domain_error("build_pdf_table: need at least 2 grid points");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::domain_error("build_pdf_table: grid must be strictly increasing");
    if (!(grid.front() > 0.0))
        throw std::domain_error("build_pdf_table: grid must start above 0");
    return sample_table(approx, std::move(grid), clip_negative);
}

}  // namespace fpt::lag
