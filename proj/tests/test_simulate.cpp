#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <vector>

#include "fpt/rng.hpp"
#include "fpt/simulate.hpp"
#include "support/testutil.hpp"

using namespace fpt;
using testutil::rel_err;

namespace {
const SeriesControl kCtl{};

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}
}  // namespace

TEST_CASE("counter rng is a pure function of (seed, path, index)") {
    CounterRng a(42, 7), b(42, 7), c(42, 8);
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x > 0.0);
        CHECK(x < 1.0);
    }
    CHECK(a.uniform() != c.uniform());

    // inverse CDF sanity at known quantiles
    CHECK(std::abs(CounterRng::inverse_normal_cdf(0.5)) < 1e-9);
    CHECK(rel_err(CounterRng::inverse_normal_cdf(0.975), 1.959963984540054) < 1e-7);
    CHECK(rel_err(CounterRng::inverse_normal_cdf(0.025), -1.959963984540054) < 1e-7);
}

TEST_CASE("milstein step limits") {
    auto p = testutil::example1();

    // noise-free: plain Euler step of the drift ODE
    FellerParams det = p;
    det.sigma = 0.0;
    const double y = 0.4, dt = 1e-2;
    const double euler = y + (-p.tau * y + p.mu) * dt;
    CHECK(rel_err(sim::milstein_step(y, det, dt, 0.77), euler) < 1e-14);

    // dW = sqrt(dt) kills the correction term exactly
    const double dW = std::sqrt(dt);
    const double em = y + (-p.tau * y + p.mu) * dt + p.sigma * std::sqrt(y - p.c) * dW;
    CHECK(rel_err(sim::milstein_step(y, p, dt, dW), em) < 1e-14);
}

TEST_CASE("one-step conditional mean matches the drift") {
    // E[Y_n | Y_{n-1} = y] = y + (-tau y + mu) dt since E[(dW)^2] = dt
    auto p = testutil::example1();
    const double y = 0.4, dt = 1e-2, sqdt = std::sqrt(dt);
    CounterRng rng(2024, 0);
    const long n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < n; ++i) {
        const double next = sim::milstein_step(y, p, dt, sqdt * rng.normal());
        sum += next;
        sumsq += next * next;
    }
    const double mean = sum / n;
    const double sd = std::sqrt((sumsq / n - mean * mean) / n);
    const double expect = y + (-p.tau * y + p.mu) * dt;
    CHECK(std::abs(mean - expect) < 3.0 * sd);
}

TEST_CASE("sampling determinism contracts") {
    auto p = testutil::example1();
    SimConfig cfg;
    cfg.dt = 1e-2;
    cfg.n_paths = 500;
    cfg.t_max = 25.0;
    cfg.seed = 99;

    auto serial = sim::sample_fpt_serial(p, cfg);
    auto parallel = sim::sample_fpt(p, cfg);
    CHECK(bitwise_equal(serial.times, parallel.times));
    CHECK(serial.censored == parallel.censored);
    CHECK(serial.reflections == parallel.reflections);

    for (int workers : {1, 2, 8}) {
        SimConfig w = cfg;
        w.workers = workers;
        auto s = sim::sample_fpt(p, w);
        CHECK(bitwise_equal(s.times, serial.times));
    }

    // growing the path count preserves the existing stream
    SimConfig doubled = cfg;
    doubled.n_paths = 1000;
    auto big = sim::sample_fpt(p, doubled);
    CHECK(std::memcmp(big.times.data(), serial.times.data(), 500 * sizeof(double)) == 0);
}

TEST_CASE("sample statistics and the fine-step mean") {
    auto p = testutil::example1();
    const double c1 = feller::fpt_cumulants(1, p, kCtl).at(1);

    // at dt = 1e-4 the grid-crossing bias sits below the noise floor
    SimConfig cfg;
    cfg.dt = 1e-4;
    cfg.n_paths = 1500;
    cfg.t_max = 20.0 * c1;
    cfg.seed = 31;
    auto s = sim::sample_fpt(p, cfg);
    CHECK(s.censored_count == 0);
    const double se = std::sqrt(s.variance / static_cast<double>(s.uncensored_count()));
    CHECK(std::abs(s.mean - c1) < 3.0 * se);
    CHECK(s.skewness > 0.0);  // first-passage laws here are right-skewed
}

TEST_CASE("coarse grids bias the recorded crossing upward, shrinking with dt") {
    auto p = testutil::example1();
    const double c1 = feller::fpt_cumulants(1, p, kCtl).at(1);
    SimConfig coarse;
    coarse.dt = 1e-2;
    coarse.n_paths = 4000;
    coarse.t_max = 25.0;
    coarse.seed = 7;
    SimConfig fine = coarse;
    fine.dt = 2.5e-3;
    const double mc = sim::sample_fpt(p, coarse).mean;
    const double mf = sim::sample_fpt(p, fine).mean;
    CHECK(mc > c1);
    CHECK(mf > c1);
    CHECK(std::abs(mf - c1) < std::abs(mc - c1));
}

TEST_CASE("censoring is reported, warned about, and never fatal") {
    auto p = testutil::example1();
    const double c1 = feller::fpt_cumulants(1, p, kCtl).at(1);
    SimConfig cfg;
    cfg.dt = 1e-2;
    cfg.n_paths = 400;
    cfg.t_max = 0.1 * c1;  // far too short a horizon
    cfg.seed = 4;
    auto s = sim::sample_fpt(p, cfg);
    CHECK(s.censored_count * 2 > static_cast<long>(s.times.size()));
    CHECK(s.censor_warning);
    for (std::size_t i = 0; i < s.times.size(); ++i)
        if (s.censored[i]) CHECK(s.times[i] == cfg.t_max);
}

TEST_CASE("reflections at the lower endpoint are counted") {
    // s = 0.1 < 1: the discrete scheme dips below c frequently
    FellerParams p{0.05, 1.0, 1.0, 0.0, 0.2, 2.0};
    SimConfig cfg;
    cfg.dt = 1e-2;
    cfg.n_paths = 200;
    cfg.t_max = 10.0;
    cfg.seed = 11;
    auto s = sim::sample_fpt(p, cfg);
    CHECK(s.reflections > 0);
}

TEST_CASE("empirical density estimators") {
    // synthetic Gamma(3,1) sample through the library's own uniforms
    FptSample synth;
    synth.dt = 1e-3;
    synth.t_max = 100.0;
    const long n = 10000;
    for (long i = 0; i < n; ++i) {
        CounterRng rng(555, static_cast<std::uint64_t>(i));
        synth.times.push_back(-std::log(rng.uniform() * rng.uniform() * rng.uniform()));
        synth.censored.push_back(0);
    }

    SimConfig cfg;
    cfg.estimator = SimConfig::Estimator::gaussian_kde;
    auto kde = sim::empirical_pdf(synth, cfg);
    CHECK(kde.bandwidth > 0.0);
    CHECK(kde.censored_fraction == 0.0);
    double sup = 0.0;
    for (std::size_t i = 0; i < kde.table.grid.size(); ++i) {
        const double t = kde.table.grid[i];
        if (t < 3.0 * kde.bandwidth) continue;  // estimator smoothing zone
        sup = std::max(sup, std::abs(kde.table.values[i] - testutil::gamma_pdf(3.0, 1.0, t)));
    }
    CHECK(sup < 0.05);

    // the parallel KDE kernel matches the serial reference bit for bit
    auto kde_ser = sim::empirical_pdf_serial(synth, cfg);
    CHECK(bitwise_equal(kde.table.values, kde_ser.table.values));

    // histogram: integral equals 1 - censored fraction exactly
    SimConfig hcfg;
    hcfg.estimator = SimConfig::Estimator::histogram;
    auto hist = sim::empirical_pdf(synth, hcfg);
    double integral = 0.0;
    for (double v : hist.table.values) integral += v * hist.bandwidth;
    CHECK(rel_err(integral, 1.0) < 1e-12);

    // too few samples is a precondition violation
    FptSample tiny;
    tiny.times.assign(50, 1.0);
    tiny.censored.assign(50, 0);
    CHECK_THROWS_AS(sim::empirical_pdf(tiny, cfg), std::domain_error);

    // single-point mass is degenerate
    FptSample degen;
    degen.times.assign(200, 2.5);
    degen.censored.assign(200, 0);
    CHECK_THROWS_AS(sim::empirical_pdf(degen, cfg), std::domain_error);
}

TEST_CASE("comparison report") {
    PdfTable a;
    a.source = "approximant";
    for (int i = 0; i <= 100; ++i) {
        const double t = 0.1 + 0.05 * i;
        a.grid.push_back(t);
        a.values.push_back(std::exp(-t));
        a.flags.push_back(0);
    }

    EmpiricalPdf e;
    e.estimator = SimConfig::Estimator::gaussian_kde;
    e.bandwidth = 0.05;
    e.dt = 0.01;
    e.table = a;
    e.table.source = "simulation";

    auto same = sim::compare(a, e, 0.0);
    CHECK(same.sup_err == 0.0);
    CHECK(same.l1 == 0.0);

    // constant offset shows up in both norms
    for (auto& v : e.table.values) v += 0.01;
    auto off = sim::compare(a, e, 0.0);
    CHECK(rel_err(off.sup_err, 0.01) < 1e-9);
    CHECK(rel_err(off.l1, 0.01 * (a.grid.back() - a.grid.front())) < 1e-6);

    // automatic cut: max(2 dt, 3 bandwidth)
    auto autocut = sim::compare(a, e);
    CHECK(autocut.t_cut == doctest::Approx(0.15));

    // disjoint supports are rejected
    EmpiricalPdf far = e;
    far.table.grid.clear();
    far.table.values.clear();
    far.table.flags.clear();
    for (int i = 0; i <= 10; ++i) {
        far.table.grid.push_back(100.0 + i);
        far.table.values.push_back(0.0);
        far.table.flags.push_back(0);
    }
    CHECK_THROWS_AS(sim::compare(a, far), std::domain_error);
}

TEST_CASE("config validation") {
    SimConfig bad;
    bad.dt = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = SimConfig{};
    bad.n_paths = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = SimConfig{};
    bad.t_max = 1e-3;  // below dt
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
