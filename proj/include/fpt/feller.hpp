#pragma once

#include <utility>
#include <vector>

#include "fpt/cumulants.hpp"
#include "fpt/series.hpp"

namespace fpt {

/// Coefficients of the mean-reverting square-root diffusion
///   dY_t = (-tau Y_t + mu) dt + sigma sqrt(Y_t - c) dW_t,  Y_0 = y0,
/// together with the threshold S of the upcrossing problem. The state space
/// is (c, +inf); the derived shape s = 2(mu - c*tau)/sigma^2 controls the
/// boundary behaviour at c (entrance boundary iff s >= 1).
struct FellerParams {
    double mu = 0.0;     ///< drift level (state/time)
    double tau = 1.0;    ///< mean-reversion rate (1/time), > 0
    double sigma = 1.0;  ///< volatility scale, > 0
    double c = 0.0;      ///< lower endpoint of the state space, <= 0
    double y0 = 0.0;     ///< start value, c < y0 < S
    double S = 1.0;      ///< threshold

    double shape() const { return 2.0 * (mu - c * tau) / (sigma * sigma); }
    double arg_y0() const { return 2.0 * tau * (y0 - c) / (sigma * sigma); }
    double arg_S() const { return 2.0 * tau * (S - c) / (sigma * sigma); }

    /// Throws std::invalid_argument naming the violated invariant.
    void validate() const;
};

enum class Regime { suprathreshold, subthreshold, threshold };

/// Stationary law of the free process: a location-shifted gamma.
struct StationaryLaw {
    double shape;     ///< s
    double scale;     ///< sigma^2 / (2 tau)
    double location;  ///< c
    double mean;      ///< mu / tau  (= location + shape*scale)
};

struct Classification {
    bool entrance_boundary;
    Regime regime;
    StationaryLaw stationary;
};

const char* regime_name(Regime r);

namespace feller {

/// Kummer confluent hypergeometric function 1F1(a; b; y) by direct series,
/// summed under the truncation policy of `ctl`. Returns the value; writes
/// convergence info to *diag when given.
double kummer_1f1(double a, double b, double y, const SeriesControl& ctl,
                  SeriesDiag* diag = nullptr);

/// Laplace transform of the first-passage density at z >= 0:
/// ratio of two Kummer evaluations at the start and threshold arguments.
/// Equals 1 at z = 0 and decreases towards 0.
double laplace_fpt(double z, const FellerParams& p, const SeriesControl& ctl,
                   SeriesDiag* diag = nullptr);

/// h_j(y) = j! sum_{n>=j} [n,j] y^n / (n! <s>_n) for j = 1..K, all orders
/// accumulated in a single pass over n. h_j(y) is the j-th derivative of
/// u -> 1F1(u; s; y) at u = 0.
std::vector<double> h_vector(int K, double y, double s, const SeriesControl& ctl,
                             SeriesDiag* diag = nullptr);

/// Single-order convenience wrapper around h_vector.
double h_series(int j, double y, double s, const SeriesControl& ctl,
                SeriesDiag* diag = nullptr);

/// c*_k(w) = P_k[h_1(arg), ..., h_k(arg)] with arg = 2 tau (w - c)/sigma^2,
/// for k = 1..K.
std::vector<double> c_star_vector(int K, double w, const FellerParams& p,
                                  const SeriesControl& ctl, SeriesDiag* diag = nullptr);

double c_star(int k, double w, const FellerParams& p, const SeriesControl& ctl,
              SeriesDiag* diag = nullptr);

/// First-passage cumulants c_k(T) = (-1/tau)^k [c*_k(y0) - c*_k(S)], k = 1..K.
/// The result carries per-order cancellation diagnostics; positivity of c_1
/// and c_2 is reported there rather than enforced.
CumulantVector fpt_cumulants(int K, const FellerParams& p, const SeriesControl& ctl);

/// Mean and variance through the explicit coefficient series (a_{1,n}, a_{2,n}
/// with the harmonic-number term and the a_1 self-convolution). Independent
/// of the partition-polynomial route above.
std::pair<double, double> fpt_mean_variance_closed(const FellerParams& p,
                                                   const SeriesControl& ctl);

/// Mean first-passage time by the classical series
///   (S-y0)/(mu - tau c) + (1/tau) sum_{n>=2} s^n Gamma(s)/(n Gamma(s+n))
///       [(S-c)^n - (y0-c)^n] / (mu/tau - c)^n.
/// Kept as a structurally separate oracle for the k = 1 cumulant.
double fpt_mean_series(const FellerParams& p, const SeriesControl& ctl);

/// Moments by the binomial convolution of complete Bell polynomials over
/// c*(y0) and -c*(S). Agrees with running the cumulant recursion on
/// fpt_cumulants; both routes are exposed on purpose.
MomentVector fpt_moments(int K, const FellerParams& p, const SeriesControl& ctl);

/// n-th difference of the Kummer function along its first parameter at 0,
/// taken over the negated pair (-u, -y) where every evaluation terminates
/// after finitely many series terms. Under this convention the difference
/// collapses to y^n / <s>_n, which is what the test harness checks.
double forward_difference_check(int n, double s, double y, const SeriesControl& ctl);

/// Boundary flag, threshold regime and stationary law for a parameter set.
Classification classify(const FellerParams& p);

}  // namespace feller
}  // namespace fpt
