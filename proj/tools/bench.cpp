// Timing comparison of the serial reference kernels against their
// OpenMP-parallel counterparts: path sampling and KDE evaluation.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "fpt/simulate.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

int main() {
    const fpt::FellerParams p{0.9, 1.0 / 1.5, 1.0, 0.0, 0.2, 1.0};
    fpt::SimConfig cfg;
    cfg.dt = 1e-3;
    cfg.n_paths = 20000;
    cfg.t_max = 25.0;
    cfg.seed = 2024;

    std::printf("hardware threads (omp): %d\n\n", omp_get_max_threads());
    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial s", "parallel s", "speedup");

    auto t0 = clock_type::now();
    auto sample_serial = fpt::sim::sample_fpt_serial(p, cfg);
    const double ts = seconds_since(t0);

    t0 = clock_type::now();
    auto sample_par = fpt::sim::sample_fpt(p, cfg);
    const double tp = seconds_since(t0);
    std::printf("%-34s %10.3f %10.3f %7.2fx\n", "path sampling (20k paths, dt 1e-3)", ts,
                tp, ts / tp);

    const bool same = sample_serial.times == sample_par.times;
    if (!same) {
        std::printf("ERROR: serial and parallel samples differ\n");
        return 1;
    }

    fpt::SimConfig kcfg = cfg;
    std::vector<double> grid(3000);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = 0.02 + 0.005 * static_cast<double>(i);

    t0 = clock_type::now();
    auto kde_serial = fpt::sim::empirical_pdf_serial(sample_serial, kcfg, grid);
    const double ks = seconds_since(t0);

    t0 = clock_type::now();
    auto kde_par = fpt::sim::empirical_pdf(sample_serial, kcfg, grid);
    const double kp = seconds_since(t0);
    std::printf("%-34s %10.3f %10.3f %7.2fx\n", "kde evaluation (20k x 3000)", ks, kp,
                ks / kp);

    if (kde_serial.table.values != kde_par.table.values) {
        std::printf("ERROR: serial and parallel KDE values differ\n");
        return 1;
    }
    std::printf("\nserial and parallel outputs are bit-identical\n");
    return 0;
}
