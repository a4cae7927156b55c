#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpt/feller.hpp"
#include "fpt/pdf_table.hpp"

namespace fpt {

/// Monte Carlo settings. workers = 0 leaves the thread count to OpenMP;
/// any positive value pins it (results are identical either way).
struct SimConfig {
    double dt = 1e-2;
    long n_paths = 10000;
    double t_max = 0.0;  ///< 0: use 20 * c1(T), resolved by the caller
    std::uint64_t seed = 12345;

    enum class Estimator { histogram, gaussian_kde };
    Estimator estimator = Estimator::gaussian_kde;
    double bandwidth = 0.0;  ///< 0: Silverman (KDE) / Freedman-Diaconis (histogram)
    int workers = 0;

    void validate() const;
};

/// First-passage sample: one entry per path, in path order. Censored paths
/// carry the horizon t_max and are flagged. Summary statistics cover the
/// uncensored times only.
struct FptSample {
    std::vector<double> times;
    std::vector<std::uint8_t> censored;
    long censored_count = 0;
    long reflections = 0;  ///< square-root domain violations, reflected at c
    double mean = 0.0, variance = 0.0, skewness = 0.0;
    bool censor_warning = false;  ///< censored fraction above 50%

    double dt = 0.0, t_max = 0.0;
    std::uint64_t seed = 0;

    long uncensored_count() const {
        return static_cast<long>(times.size()) - censored_count;
    }
};

/// Density estimate built from an FptSample: a PdfTable plus the estimator
/// metadata needed downstream (bandwidth or bin width, censored fraction).
struct EmpiricalPdf {
    PdfTable table;
    SimConfig::Estimator estimator = SimConfig::Estimator::gaussian_kde;
    double bandwidth = 0.0;  ///< KDE bandwidth or histogram bin width
    double censored_fraction = 0.0;
    double dt = 0.0;
};

/// Pointwise comparison of an approximant table against an empirical one.
struct CompareReport {
    std::vector<double> grid;     ///< common grid (approximant points inside overlap)
    std::vector<double> abs_err;  ///< |approx - empirical| pointwise
    double sup_err = 0.0;         ///< over t >= t_cut
    double l1 = 0.0;              ///< trapezoid integral of |err| over the grid
    double t_cut = 0.0;           ///< the cut actually used
};

namespace sim {

/// One update of the strong order-1 scheme
///   y' = y + (-tau y + mu) dt + sigma sqrt(y - c) dW + sigma^2/4 ((dW)^2 - dt).
/// Requires y > c so the square root is defined; domain violations of the
/// *output* are the caller's to handle (see sample_fpt).
double milstein_step(double y, const FellerParams& p, double dt, double dW);

/// Simulate n_paths first passages through S. Per-path randomness is keyed
/// by (seed, path index): output is bit-identical for any worker count and
/// the first N times never change when n_paths grows. States falling below
/// c are reflected to 2c - y and counted.
FptSample sample_fpt(const FellerParams& p, const SimConfig& cfg);

/// Single-threaded reference implementation; must produce bit-identical
/// results to sample_fpt. Kept for tests and the benchmark.
FptSample sample_fpt_serial(const FellerParams& p, const SimConfig& cfg);

/// Density estimate on a grid (empty grid: automatic from the sample range).
/// Histogram uses Freedman-Diaconis bins and integrates to 1 - censored
/// fraction exactly; KDE uses a Gaussian kernel with Silverman's bandwidth.
/// Requires at least 100 uncensored times.
EmpiricalPdf empirical_pdf(const FptSample& sample, const SimConfig& cfg,
                           std::vector<double> grid = {});

/// Serial reference for the KDE evaluation kernel (identical output).
EmpiricalPdf empirical_pdf_serial(const FptSample& sample, const SimConfig& cfg,
                                  std::vector<double> grid = {});

/// Absolute-error report between an approximant table and an empirical
/// estimate, on the approximant grid restricted to the overlap (empirical
/// values linearly interpolated). t_cut < 0 picks the automatic cut
/// max(2 dt, 3 bandwidth) -- outside the estimator's smoothing zone.
CompareReport compare(const PdfTable& approx, const EmpiricalPdf& emp, double t_cut = -1.0);

}  // namespace sim
}  // namespace fpt
