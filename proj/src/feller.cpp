#include "fpt/feller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fpt/combinatorics.hpp"

namespace fpt {

void FellerParams::validate() const {
    if (!(tau > 0.0)) throw std::invalid_argument("FellerParams: tau > 0 violated");
    if (!(sigma > 0.0)) throw std::invalid_argument("FellerParams: sigma > 0 violated");
    if (!(c <= 0.0)) throw std::invalid_argument("FellerParams: c <= 0 violated");
    if (!(c < y0)) throw std::invalid_argument("FellerParams: c < y0 violated");
    if (!(y0 < S)) throw std::invalid_argument("FellerParams: y0 < S violated");
    if (!(shape() > 0.0)) throw std::invalid_argument("FellerParams: s > 0 violated");
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::suprathreshold: return "suprathreshold";
        case Regime::subthreshold: return "subthreshold";
        case Regime::threshold: return "threshold";
    }
    return "?";
}

namespace feller {

namespace {

// Shared convergence bookkeeping: accept after three consecutive relatively
// small terms; estimate the dropped tail geometrically from the last ratio.
struct Convergence {
    int small_streak = 0;

    bool accept(double term, double partial, const SeriesControl& ctl) {
        if (std::abs(term) < ctl.abs_floor ||
            std::abs(term) < ctl.rel_tol * std::abs(partial)) {
            ++small_streak;
        } else {
            small_streak = 0;
        }
        return small_streak >= 3;
    }
};

double geometric_tail(double last_term, double ratio) {
    if (!(ratio > 0.0) || ratio >= 1.0) return std::abs(last_term);
    return std::abs(last_term) * ratio / (1.0 - ratio);
}

}  // namespace

double kummer_1f1(double a, double b, double y, const SeriesControl& ctl,
                  SeriesDiag* diag) {
    ctl.validate();
    if (b <= 0.0 && b == std::floor(b))
        throw std::domain_error("kummer_1f1: b must not be a nonpositive integer");

    CompensatedSum acc;
    double plain = 1.0;
    acc.add(1.0);
    double term = 1.0;
    Convergence conv;
    for (int n = 0; n < ctl.max_terms; ++n) {
        term *= (a + n) / (b + n) * y / (n + 1);
        if (ctl.compensated) acc.add(term); else plain += term;
        double partial = ctl.compensated ? acc.value() : plain;
        if (conv.accept(term, partial, ctl)) {
            if (diag) *diag = {n + 2, geometric_tail(term, std::abs(y) / (n + 2))};
            return partial;
        }
        if (!std::isfinite(partial))
            throw truncation_error("kummer_1f1: series overflow", n + 2,
                                   std::numeric_limits<double>::infinity());
    }
    throw truncation_error("kummer_1f1: no convergence within max_terms",
                           ctl.max_terms, std::abs(term));
}

double laplace_fpt(double z, const FellerParams& p, const SeriesControl& ctl,
                   SeriesDiag* diag) {
    if (z < 0.0)
        throw std::domain_error("laplace_fpt: z must be >= 0");
    const double s = p.shape();
    SeriesDiag d_num{}, d_den{};
    double num = kummer_1f1(z / p.tau, s, p.arg_y0(), ctl, &d_num);
    double den = kummer_1f1(z / p.tau, s, p.arg_S(), ctl, &d_den);
    if (diag)
        *diag = {std::max(d_num.terms_used, d_den.terms_used),
                 std::max(d_num.tail_estimate, d_den.tail_estimate)};
    return num / den;
}

std::vector<double> h_vector(int K, double y, double s, const SeriesControl& ctl,
                             SeriesDiag* diag) {
    ctl.validate();
    if (K < 1) throw std::domain_error("h_vector: K >= 1 required");
    if (y < 0.0) throw std::domain_error("h_vector: y >= 0 required");
    if (!(s > 0.0)) throw std::domain_error("h_vector: s > 0 required");

    // term_j(n) = j! * ([n,j]/n!) * y^n / <s>_n; the normalized Stirling row
    // keeps every factor in range no matter how far n runs.
    comb::NormalizedStirlingRow row(K);
    std::vector<CompensatedSum> acc(static_cast<std::size_t>(K));
    std::vector<double> plain(static_cast<std::size_t>(K), 0.0);
    std::vector<Convergence> conv(static_cast<std::size_t>(K));
    std::vector<double> fact(static_cast<std::size_t>(K) + 1, 1.0);
    for (int j = 1; j <= K; ++j)
        fact[static_cast<std::size_t>(j)] = fact[static_cast<std::size_t>(j) - 1] * j;

    double f = 1.0;  // y^n / <s>_n
    double last_term = 0.0;
    for (int n = 1; n <= ctl.max_terms; ++n) {
        row.advance();
        f *= y / (s + n - 1);
        if (!std::isfinite(f))
            throw truncation_error("h_vector: magnitude overflow in y^n/<s>_n", n,
                                   std::numeric_limits<double>::infinity());
        bool all_done = n >= K + 3;
        for (int j = 1; j <= std::min(K, n); ++j) {
            const auto ji = static_cast<std::size_t>(j) - 1;
            double term = fact[static_cast<std::size_t>(j)] * row.at(j) * f;
            if (ctl.compensated) acc[ji].add(term); else plain[ji] += term;
            last_term = term;
            double partial = ctl.compensated ? acc[ji].value() : plain[ji];
            if (!conv[ji].accept(term, partial, ctl)) all_done = false;
        }
        if (n < K) all_done = false;
        if (all_done) {
            if (diag) *diag = {n, geometric_tail(last_term, y / (s + n))};
            std::vector<double> out(static_cast<std::size_t>(K));
            for (int j = 1; j <= K; ++j)
                out[static_cast<std::size_t>(j) - 1] =
                    ctl.compensated ? acc[static_cast<std::size_t>(j) - 1].value()
                                    : plain[static_cast<std::size_t>(j) - 1];
            return out;
        }
    }
    throw truncation_error("h_vector: no convergence within max_terms", ctl.max_terms,
                           std::abs(last_term));
}

double h_series(int j, double y, double s, const SeriesControl& ctl, SeriesDiag* diag) {
    return h_vector(j, y, s, ctl, diag)[static_cast<std::size_t>(j) - 1];
}

std::vector<double> c_star_vector(int K, double w, const FellerParams& p,
                                  const SeriesControl& ctl, SeriesDiag* diag) {
    if (!(w > p.c))
        throw std::domain_error("c_star: w must exceed the lower endpoint c");
    const double arg = 2.0 * p.tau * (w - p.c) / (p.sigma * p.sigma);
    auto h = h_vector(K, arg, p.shape(), ctl, diag);
    return comb::log_partition_all(K, h);
}

double c_star(int k, const double w, const FellerParams& p, const SeriesControl& ctl,
              SeriesDiag* diag) {
    return c_star_vector(k, w, p, ctl, diag)[static_cast<std::size_t>(k) - 1];
}

CumulantVector fpt_cumulants(int K, const FellerParams& p, const SeriesControl& ctl) {
    if (K < 1) throw std::domain_error("fpt_cumulants: K >= 1 required");
    p.validate();
    SeriesDiag d_y0{}, d_S{};
    auto cs_y0 = c_star_vector(K, p.y0, p, ctl, &d_y0);
    auto cs_S = c_star_vector(K, p.S, p, ctl, &d_S);

    CumulantVector out;
    out.c.resize(static_cast<std::size_t>(K));
    out.cancellation.resize(static_cast<std::size_t>(K));
    out.diag = {std::max(d_y0.terms_used, d_S.terms_used),
                std::max(d_y0.tail_estimate, d_S.tail_estimate)};
    double scale = 1.0;
    for (int k = 1; k <= K; ++k) {
        const auto ki = static_cast<std::size_t>(k) - 1;
        scale *= -1.0 / p.tau;
        const double diff = cs_y0[ki] - cs_S[ki];
        out.c[ki] = scale * diff;
        out.cancellation[ki] =
            cs_S[ki] != 0.0 ? std::abs(diff) / std::abs(cs_S[ki]) : 1.0;
    }
    return out;
}

std::pair<double, double> fpt_mean_variance_closed(const FellerParams& p,
                                                   const SeriesControl& ctl) {
    ctl.validate();
    p.validate();
    const double s = p.shape();
    const double A = p.arg_y0();
    const double B = p.arg_S();

    // a_{1,n} = 1/(n <s>_n), cached for the self-convolution in a_{2,n};
    // powers of A and B advance incrementally.
    std::vector<double> a1;
    a1.reserve(64);
    double inv_rising = 1.0;  // 1/<s>_n
    double powA = 1.0, powB = 1.0;
    CompensatedSum c1_acc, c2_acc;
    Convergence conv1, conv2;
    bool done1 = false, done2 = false;

    for (int n = 1; n <= ctl.max_terms; ++n) {
        inv_rising /= (s + n - 1);
        powA *= A;
        powB *= B;
        const double a1n = inv_rising / n;
        a1.push_back(a1n);
        const double bracket = powA - powB;  // (y0-c)^n - (S-c)^n, scaled

        if (!done1) {
            const double t1 = a1n * bracket;
            c1_acc.add(t1);
            done1 = conv1.accept(t1, c1_acc.value(), ctl);
        }
        if (!done2 && n >= 2) {
            double convo = 0.0;
            for (int k = 1; k <= n - 1; ++k)
                convo += a1[static_cast<std::size_t>(k) - 1] *
                         a1[static_cast<std::size_t>(n - k) - 1];
            const double a2n = 2.0 * comb::harmonic(n - 1) * inv_rising / n - convo;
            const double t2 = a2n * bracket;
            c2_acc.add(t2);
            done2 = conv2.accept(t2, c2_acc.value(), ctl);
        }
        if (done1 && done2) {
            const double c1 = (-1.0 / p.tau) * c1_acc.value();
            const double c2 = (1.0 / (p.tau * p.tau)) * c2_acc.value();
            return {c1, c2};
        }
        if (!std::isfinite(powB))
            throw truncation_error("fpt_mean_variance_closed: power overflow", n,
                                   std::numeric_limits<double>::infinity());
    }
    throw truncation_error("fpt_mean_variance_closed: no convergence", ctl.max_terms, 0.0);
}

double fpt_mean_series(const FellerParams& p, const SeriesControl& ctl) {
    ctl.validate();
    p.validate();
    const double s = p.shape();
    const double ratio = p.mu / p.tau - p.c;
    const double lead = (p.S - p.y0) / (p.mu - p.tau * p.c);

    // q_n = s^n Gamma(s)/Gamma(s+n) / ratio^n, advanced multiplicatively
    double q = 1.0;
    double powS = p.S - p.c, powY = p.y0 - p.c;
    CompensatedSum acc;
    Convergence conv;
    for (int n = 1; n <= ctl.max_terms; ++n) {
        q *= s / (ratio * (s + n - 1));
        if (n >= 2) {
            powS *= p.S - p.c;
            powY *= p.y0 - p.c;
            const double term = q / n * (powS - powY);
            acc.add(term);
            if (conv.accept(term, acc.value(), ctl))
                return lead + acc.value() / p.tau;
        }
    }
    throw truncation_error("fpt_mean_series: no convergence", ctl.max_terms, 0.0);
}

MomentVector fpt_moments(int K, const FellerParams& p, const SeriesControl& ctl) {
    if (K < 1) throw std::domain_error("fpt_moments: K >= 1 required");
    p.validate();
    auto cs_y0 = c_star_vector(K, p.y0, p, ctl);
    auto cs_S = c_star_vector(K, p.S, p, ctl);
    std::vector<double> neg_S(cs_S.size());
    for (std::size_t i = 0; i < cs_S.size(); ++i) neg_S[i] = -cs_S[i];

    MomentVector out;
    out.m.resize(static_cast<std::size_t>(K));
    double tau_pow = 1.0;
    for (int k = 1; k <= K; ++k) {
        tau_pow *= p.tau;
        double acc = 0.0;
        for (int i = 0; i <= k; ++i)
            acc += comb::binomial(k, i) * comb::bell_complete(k - i, cs_y0) *
                   comb::bell_complete(i, neg_S);
        out.m[static_cast<std::size_t>(k) - 1] = (k % 2 ? -1.0 : 1.0) / tau_pow * acc;
    }
    return out;
}

double forward_difference_check(int n, double s, double y, const SeriesControl& ctl) {
    if (n < 1) throw std::domain_error("forward_difference_check: n >= 1 required");
    // sum_i (-1)^{n-i} C(n,i) 1F1(-i; s; -y): each evaluation terminates after
    // i+1 terms, so the whole expression is a finite polynomial identity.
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double sign = ((n - i) % 2) ? -1.0 : 1.0;
        acc += sign * comb::binomial(n, i) *
               kummer_1f1(-static_cast<double>(i), s, -y, ctl);
    }
    return acc;
}

Classification classify(const FellerParams& p) {
    p.validate();
    const double s = p.shape();
    const double asymptotic_mean = p.mu / p.tau;
    const double tol = 1e-12 * std::max(1.0, std::abs(p.S));
    Regime regime;
    if (std::abs(asymptotic_mean - p.S) <= tol)
        regime = Regime::threshold;
    else if (asymptotic_mean > p.S)
        regime = Regime::suprathreshold;
    else
        regime = Regime::subthreshold;
    StationaryLaw law{s, p.sigma * p.sigma / (2.0 * p.tau), p.c, asymptotic_mean};
    return {s >= 1.0, regime, law};
}

}  // namespace feller
}  // namespace fpt
