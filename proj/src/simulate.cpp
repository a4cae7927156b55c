#include "fpt/simulate.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fpt/rng.hpp"

namespace fpt {

void SimConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt > 0 violated");
    if (n_paths < 1) throw std::invalid_argument("SimConfig: n_paths >= 1 violated");
    if (t_max != 0.0 && !(t_max > dt))
        throw std::invalid_argument("SimConfig: t_max > dt violated");
    if (bandwidth < 0.0) throw std::invalid_argument("SimConfig: bandwidth >= 0 violated");
    if (workers < 0) throw std::invalid_argument("SimConfig: workers >= 0 violated");
}

namespace sim {

double milstein_step(double y, const FellerParams& p, double dt, double dW) {
    const double drift = (-p.tau * y + p.mu) * dt;
    const double diffusion = p.sigma * std::sqrt(y - p.c) * dW;
    const double correction = 0.25 * p.sigma * p.sigma * (dW * dW - dt);
    return y + drift + diffusion + correction;
}

namespace {

// Walks one path on the time grid; returns the crossing step (1-based) or 0
// if censored, and accumulates reflections.
long walk_path(const FellerParams& p, double dt, long n_steps, CounterRng& rng,
               long& reflections) {
    const double sqrt_dt = std::sqrt(dt);
    double y = p.y0;
    for (long n = 1; n <= n_steps; ++n) {
        const double dW = sqrt_dt * rng.normal();
        y = milstein_step(y, p, dt, dW);
        if (y < p.c) {
            y = 2.0 * p.c - y;
            ++reflections;
        }
        if (y >= p.S) return n;
    }
    return 0;
}

void finalize_stats(FptSample& s) {
    // order-insensitive: moments accumulated over a sorted copy
    std::vector<double> t;
    t.reserve(s.times.size());
    for (std::size_t i = 0; i < s.times.size(); ++i)
        if (!s.censored[i]) t.push_back(s.times[i]);
    std::sort(t.begin(), t.end());
    const auto n = static_cast<double>(t.size());
    if (t.empty()) return;
    double m = std::accumulate(t.begin(), t.end(), 0.0) / n;
    double m2 = 0.0, m3 = 0.0;
    for (double x : t) {
        const double d = x - m;
        m2 += d * d;
        m3 += d * d * d;
    }
    s.mean = m;
    s.variance = t.size() > 1 ? m2 / (n - 1.0) : 0.0;
    s.skewness = m2 > 0.0 ? (m3 / n) / std::pow(m2 / n, 1.5) : 0.0;
    s.censor_warning = s.censored_count * 2 > static_cast<long>(s.times.size());
}

FptSample run_sample(const FellerParams& p, const SimConfig& cfg, bool parallel) {
    p.validate();
    cfg.validate();
    if (!(cfg.t_max > 0.0))
        throw std::invalid_argument("sample_fpt: t_max must be resolved (> 0)");

    const long n_steps = static_cast<long>(std::ceil(cfg.t_max / cfg.dt - 1e-9));
    FptSample out;
    out.dt = cfg.dt;
    out.t_max = cfg.t_max;
    out.seed = cfg.seed;
    out.times.resize(static_cast<std::size_t>(cfg.n_paths));
    out.censored.assign(static_cast<std::size_t>(cfg.n_paths), 0);

    long reflections = 0;
    long censored = 0;
    const int threads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();

#pragma omp parallel for schedule(static) reduction(+ : reflections, censored) \
    num_threads(threads) if (parallel)
    for (long i = 0; i < cfg.n_paths; ++i) {
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(i));
        long refl = 0;
        const long hit = walk_path(p, cfg.dt, n_steps, rng, refl);
        reflections += refl;
        const auto ui = static_cast<std::size_t>(i);
        if (hit > 0) {
            out.times[ui] = static_cast<double>(hit) * cfg.dt;
        } else {
            out.times[ui] = cfg.t_max;
            out.censored[ui] = 1;
            ++censored;
        }
    }
    out.reflections = reflections;
    out.censored_count = censored;
    finalize_stats(out);
    return out;
}

}  // namespace

FptSample sample_fpt(const FellerParams& p, const SimConfig& cfg) {
    return run_sample(p, cfg, true);
}

FptSample sample_fpt_serial(const FellerParams& p, const SimConfig& cfg) {
    return run_sample(p, cfg, false);
}

namespace {

double quantile_sorted(const std::vector<double>& x, double q) {
    if (x.empty()) return 0.0;
    const double pos = q * (static_cast<double>(x.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= x.size()) return x.back();
    const double frac = pos - static_cast<double>(lo);
    return x[lo] * (1.0 - frac) + x[lo + 1] * frac;
}

EmpiricalPdf run_empirical(const FptSample& sample, const SimConfig& cfg,
                           std::vector<double> grid, bool parallel) {
    std::vector<double> t;
    t.reserve(sample.times.size());
    for (std::size_t i = 0; i < sample.times.size(); ++i)
        if (!sample.censored[i]) t.push_back(sample.times[i]);
    if (t.size() < 100)
        throw std::domain_error("empirical_pdf: need at least 100 uncensored samples");
    std::sort(t.begin(), t.end());
    if (t.front() == t.back())
        throw std::domain_error("empirical_pdf: degenerate sample (single point mass)");

    const auto n_total = static_cast<double>(sample.times.size());
    const double sd = [&] {
        double m = std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(t.size());
        double acc = 0.0;
        for (double x : t) acc += (x - m) * (x - m);
        return std::sqrt(acc / (static_cast<double>(t.size()) - 1.0));
    }();
    const double iqr = quantile_sorted(t, 0.75) - quantile_sorted(t, 0.25);

    EmpiricalPdf out;
    out.estimator = cfg.estimator;
    out.censored_fraction = static_cast<double>(sample.censored_count) / n_total;
    out.dt = sample.dt;
    out.table.source = "simulation";

    if (cfg.estimator == SimConfig::Estimator::histogram) {
        double width = cfg.bandwidth > 0.0
                           ? cfg.bandwidth
                           : 2.0 * iqr * std::pow(static_cast<double>(t.size()), -1.0 / 3.0);
        if (!(width > 0.0)) width = (t.back() - t.front()) / 50.0;
        const auto bins = static_cast<long>(std::ceil((t.back() - t.front()) / width));
        const double lo = t.front();
        std::vector<long> count(static_cast<std::size_t>(bins), 0);
        for (double x : t) {
            auto b = static_cast<long>((x - lo) / width);
            if (b >= bins) b = bins - 1;
            ++count[static_cast<std::size_t>(b)];
        }
        // integral over bins = (sum counts)/n_total = 1 - censored fraction
        out.bandwidth = width;
        out.table.grid.resize(static_cast<std::size_t>(bins));
        out.table.values.resize(static_cast<std::size_t>(bins));
        out.table.flags.assign(static_cast<std::size_t>(bins), 0);
        for (long b = 0; b < bins; ++b) {
            out.table.grid[static_cast<std::size_t>(b)] = lo + (b + 0.5) * width;
            out.table.values[static_cast<std::size_t>(b)] =
                static_cast<double>(count[static_cast<std::size_t>(b)]) / (n_total * width);
        }
        out.table.params["estimator"] = "histogram";
        out.table.params["bandwidth"] = io::format_g17(width);
        out.table.params["dt"] = io::format_g17(sample.dt);
        out.table.params["censored_fraction"] = io::format_g17(out.censored_fraction);
        return out;
    }

    // Gaussian KDE, Silverman's rule unless a bandwidth is given
    double h = cfg.bandwidth > 0.0
                   ? cfg.bandwidth
                   : 0.9 * std::min(sd, iqr / 1.34) *
                         std::pow(static_cast<double>(t.size()), -0.2);
    if (!(h > 0.0)) h = sd > 0.0 ? sd : 1.0;

    if (grid.empty()) {
        const int points = 400;
        const double lo = std::max(sample.dt, t.front() - 2.0 * h);
        const double hi = t.back() + 2.0 * h;
        grid.resize(points);
        for (int i = 0; i < points; ++i)
            grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    }

    out.bandwidth = h;
    out.table.grid = std::move(grid);
    out.table.values.resize(out.table.grid.size());
    out.table.flags.assign(out.table.grid.size(), 0);

    const double norm = 1.0 / (n_total * h * std::sqrt(2.0 * M_PI));
    const auto npts = static_cast<long>(out.table.grid.size());
    const int threads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
    // per-point sums run over the sorted sample in a fixed order, so the
    // result is bit-identical for any thread count
#pragma omp parallel for schedule(static) num_threads(threads) if (parallel)
    for (long i = 0; i < npts; ++i) {
        const double g = out.table.grid[static_cast<std::size_t>(i)];
        double acc = 0.0;
        for (double x : t) {
            const double u = (g - x) / h;
            acc += std::exp(-0.5 * u * u);
        }
        out.table.values[static_cast<std::size_t>(i)] = acc * norm;
    }
    out.table.params["estimator"] = "gaussian-kde";
    out.table.params["bandwidth"] = io::format_g17(h);
    out.table.params["dt"] = io::format_g17(sample.dt);
    out.table.params["censored_fraction"] = io::format_g17(out.censored_fraction);
    return out;
}

}  // namespace

EmpiricalPdf empirical_pdf(const FptSample& sample, const SimConfig& cfg,
                           std::vector<double> grid) {
    return run_empirical(sample, cfg, std::move(grid), true);
}

EmpiricalPdf empirical_pdf_serial(const FptSample& sample, const SimConfig& cfg,
                                  std::vector<double> grid) {
    return run_empirical(sample, cfg, std::move(grid), false);
}

CompareReport compare(const PdfTable& approx, const EmpiricalPdf& emp, double t_cut) {
    approx.validate();
    emp.table.validate();
    const auto& eg = emp.table.grid;
    if (eg.empty() || approx.grid.empty())
        throw std::domain_error("compare: empty table");
    const double lo = std::max(approx.grid.front(), eg.front());
    const double hi = std::min(approx.grid.back(), eg.back());
    if (!(lo < hi))
        throw std::domain_error("compare: disjoint supports");

    CompareReport rep;
    if (t_cut < 0.0) {
        const double est_zone = emp.estimator == SimConfig::Estimator::gaussian_kde
                                    ? 3.0 * emp.bandwidth
                                    : 1.5 * emp.bandwidth;
        rep.t_cut = std::max(2.0 * emp.dt, est_zone);
    } else {
        rep.t_cut = t_cut;
    }

    std::size_t j = 0;
    for (std::size_t i = 0; i < approx.grid.size(); ++i) {
        const double x = approx.grid[i];
        if (x < lo || x > hi) continue;
        while (j + 1 < eg.size() && eg[j + 1] < x) ++j;
        // linear interpolation of the empirical estimate at x
        const double x0 = eg[j], x1 = eg[std::min(j + 1, eg.size() - 1)];
        double v;
        if (x1 == x0) {
            v = emp.table.values[j];
        } else {
            const double w = (x - x0) / (x1 - x0);
            v = emp.table.values[j] * (1.0 - w) +
                emp.table.values[std::min(j + 1, eg.size() - 1)] * w;
        }
        rep.grid.push_back(x);
        rep.abs_err.push_back(std::abs(approx.values[i] - v));
    }
    if (rep.grid.empty())
        throw std::domain_error("compare: no overlapping grid points");

    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        if (rep.grid[i] >= rep.t_cut) rep.sup_err = std::max(rep.sup_err, rep.abs_err[i]);
        if (i + 1 < rep.grid.size())
            rep.l1 += 0.5 * (rep.abs_err[i] + rep.abs_err[i + 1]) *
                      (rep.grid[i + 1] - rep.grid[i]);
    }
    return rep;
}

}  // namespace sim
}  // namespace fpt
