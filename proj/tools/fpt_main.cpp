// Command-line front end: closed-form first-passage cumulants/moments,
// gamma-Laguerre density approximants, Monte Carlo sampling and comparison.
//
// Exit codes: 0 success, 2 usage/validation, 3 numerical failure, 4 I/O.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpt/config.hpp"
#include "fpt/cumulants.hpp"
#include "fpt/feller.hpp"
#include "fpt/laguerre_gamma.hpp"
#include "fpt/pdf_table.hpp"
#include "fpt/simulate.hpp"

namespace {

using fpt::io::format_g17;

struct Cli {
    std::string params_file;
    std::optional<double> mu, tau, sigma, c, y0, threshold;
    std::optional<int> order;
    std::optional<long> paths;
    std::optional<double> dt, tmax;
    std::optional<std::uint64_t> seed;
    std::optional<double> grid_min, grid_max;
    std::optional<int> grid_points;
    double t_cut = -1.0;
    bool clip_negative = false;
    std::string out = "fpt_out";
    std::string format = "csv";

    // compare inputs
    std::string approx_path, empirical_path;
};

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// layered resolution: built-in default < params file < explicit flag
class Resolved {
public:
    Resolved(const Cli& cli, bool needs_model) {
        fpt::Config file;
        if (!cli.params_file.empty()) file = fpt::Config::from_file(cli.params_file);

        auto num = [&](const char* key, const std::optional<double>& flag,
                       std::optional<double> fallback) -> double {
            if (flag) return put(key, *flag);
            if (file.has(key)) return put(key, file.get_double(key));
            if (fallback) return put(key, *fallback);
            throw std::invalid_argument(std::string("missing required parameter '") + key +
                                        "' (flag or params file)");
        };
        if (needs_model) {
            p.mu = num("mu", cli.mu, {});
            p.tau = num("tau", cli.tau, {});
            p.sigma = num("sigma", cli.sigma, {});
            p.c = num("c", cli.c, 0.0);
            p.y0 = num("y0", cli.y0, {});
            p.S = num("S", cli.threshold, {});
            p.validate();
        }
        sim.dt = num("dt", cli.dt, 1e-2);
        sim.n_paths = cli.paths ? *cli.paths : file.get_long("n_paths", 10000);
        put("n_paths", static_cast<double>(sim.n_paths));
        sim.t_max = num("t_max", cli.tmax, 0.0);
        sim.seed = cli.seed ? *cli.seed : file.get_u64("seed", 12345);
        echo["seed"] = std::to_string(sim.seed);
        const auto est = file.get_string("estimator", "gaussian-kde");
        if (est == "histogram")
            sim.estimator = fpt::SimConfig::Estimator::histogram;
        else if (est == "gaussian-kde")
            sim.estimator = fpt::SimConfig::Estimator::gaussian_kde;
        else
            throw std::invalid_argument("estimator must be histogram or gaussian-kde");
        echo["estimator"] = est;
        sim.bandwidth = file.get_double("bandwidth", 0.0);
        put("bandwidth", sim.bandwidth);
        ctl.rel_tol = file.get_double("rel_tol", ctl.rel_tol);
        ctl.max_terms = static_cast<int>(file.get_long("max_terms", ctl.max_terms));
        ctl.compensated = file.get_long("compensated", 0) != 0;
        put("rel_tol", ctl.rel_tol);
        put("max_terms", static_cast<double>(ctl.max_terms));
        ctl.validate();
    }

    double put(const std::string& key, double v) {
        echo[key] = format_g17(v);
        return v;
    }

    fpt::FellerParams p{};
    fpt::SimConfig sim{};
    fpt::SeriesControl ctl{};
    std::map<std::string, std::string> echo;
};

void write_manifest(const std::string& prefix, const std::string& subcommand,
                    const std::map<std::string, std::string>& config,
                    const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["version"] = fpt::kLibraryVersion;
    j["timestamp"] = timestamp_utc();
    j["config"] = config;
    j["outputs"] = outputs;
    const auto path = prefix + "_manifest.json";
    std::ofstream out(path);
    if (!out) throw fpt::io::io_error("cannot open " + path);
    out << j.dump(2) << "\n";
}

void write_table(const fpt::PdfTable& t, const std::string& path, const std::string& format) {
    if (format == "json")
        fpt::io::write_json(t, path);
    else
        fpt::io::write_csv(t, path);
}

std::string table_ext(const std::string& format) { return format == "json" ? ".json" : ".csv"; }

// ---------------------------------------------------------------------------

int cmd_cumulants(const Cli& cli) {
    Resolved r(cli, true);
    const int K = cli.order.value_or(5);
    if (K < 1) throw std::invalid_argument("order must be >= 1");
    const fpt::SeriesControl& ctl = r.ctl;

    auto c = fpt::feller::fpt_cumulants(K, r.p, ctl);
    auto m = fpt::cum::moments_from_cumulants_recursive(c);
    const auto cls = fpt::feller::classify(r.p);
    const double mean_series = fpt::feller::fpt_mean_series(r.p, ctl);
    const double mean_dev = std::abs(mean_series - c.at(1)) / c.at(1);

    const std::string manifest = cli.out + "_manifest.json";
    const std::string table_path = cli.out + "_cumulants" + table_ext(cli.format);

    if (cli.format == "json") {
        nlohmann::json j;
        j["manifest"] = manifest;
        for (int k = 1; k <= K; ++k) {
            j["cumulants"].push_back(format_g17(c.at(k)));
            j["moments"].push_back(format_g17(m.at(k)));
            j["cancellation"].push_back(format_g17(c.cancellation[static_cast<std::size_t>(k) - 1]));
        }
        if (K >= 4) {
            auto [sk, ku] = fpt::cum::standardized_shape(c);
            j["skewness"] = format_g17(sk);
            j["excess_kurtosis"] = format_g17(ku);
        }
        j["terms_used"] = c.diag.terms_used;
        j["tail_estimate"] = format_g17(c.diag.tail_estimate);
        j["mean_series_rel_dev"] = format_g17(mean_dev);
        j["regime"] = fpt::regime_name(cls.regime);
        j["entrance_boundary"] = cls.entrance_boundary;
        std::ofstream out(table_path);
        if (!out) throw fpt::io::io_error("cannot open " + table_path);
        out << j.dump(2) << "\n";
    } else {
        std::ofstream out(table_path);
        if (!out) throw fpt::io::io_error("cannot open " + table_path);
        out << "# manifest=" << manifest << "\n";
        out << "# regime=" << fpt::regime_name(cls.regime) << "\n";
        out << "# entrance_boundary=" << (cls.entrance_boundary ? 1 : 0) << "\n";
        if (K >= 4) {
            auto [sk, ku] = fpt::cum::standardized_shape(c);
            out << "# skewness=" << format_g17(sk) << "\n";
            out << "# excess_kurtosis=" << format_g17(ku) << "\n";
        }
        out << "# terms_used=" << c.diag.terms_used << "\n";
        out << "# tail_estimate=" << format_g17(c.diag.tail_estimate) << "\n";
        out << "# mean_series_rel_dev=" << format_g17(mean_dev) << "\n";
        out << "k,cumulant,moment,cancellation\n";
        for (int k = 1; k <= K; ++k)
            out << k << ',' << format_g17(c.at(k)) << ',' << format_g17(m.at(k)) << ','
                << format_g17(c.cancellation[static_cast<std::size_t>(k) - 1]) << "\n";
    }
    write_manifest(cli.out, "cumulants", r.echo, {table_path});

    std::printf("c1 = %.10g  c2 = %.10g  regime = %s  (table: %s)\n", c.at(1), c.at(2),
                fpt::regime_name(cls.regime), table_path.c_str());
    return 0;
}

int cmd_approx(const Cli& cli) {
    Resolved r(cli, true);
    const int n = cli.order.value_or(5);
    if (n < 2) throw std::invalid_argument("order must be >= 2 for the approximant");
    const fpt::SeriesControl& ctl = r.ctl;

    auto c = fpt::feller::fpt_cumulants(std::max(n, 2), r.p, ctl);
    auto m = fpt::cum::moments_from_cumulants_recursive(c);
    auto approx = fpt::lag::build_approx(c, m, n);
    auto cond = fpt::lag::check_conditions(approx, c);

    fpt::lag::GridSpec spec;
    spec.t_min = cli.grid_min.value_or(std::max(1e-6, 0.005 * c.at(1)));
    spec.t_max = cli.grid_max.value_or(c.at(1) + 8.0 * std::sqrt(c.at(2)));
    spec.points = cli.grid_points.value_or(400);
    auto table = fpt::lag::build_pdf_table(approx, spec, cli.clip_negative);

    const std::string manifest = cli.out + "_manifest.json";
    table.params["manifest"] = manifest;
    for (const auto& [k, v] : r.echo) table.params["model." + k] = v;
    const std::string table_path = cli.out + "_pdf" + table_ext(cli.format);
    write_table(table, table_path, cli.format);

    nlohmann::json j;
    j["manifest"] = manifest;
    j["alpha"] = format_g17(approx.alpha);
    j["beta"] = format_g17(approx.beta);
    j["degree"] = approx.n;
    for (double a : approx.A) j["A"].push_back(format_g17(a));
    j["beta_bound_ok"] = cond.match.beta_bound_ok;
    j["alpha_in_range"] = cond.match.alpha_in_range;
    j["mode_defined"] = cond.match.mode_defined;
    j["coefficient_decay_slope"] = format_g17(cond.decay_slope);
    j["negative_values"] = table.negative_count();
    const std::string coeff_path = cli.out + "_coeffs.json";
    std::ofstream out(coeff_path);
    if (!out) throw fpt::io::io_error("cannot open " + coeff_path);
    out << j.dump(2) << "\n";

    write_manifest(cli.out, "approx", r.echo, {table_path, coeff_path});
    std::printf("alpha = %.6g  beta = %.6g  degree = %d  negatives = %ld  (table: %s)\n",
                approx.alpha, approx.beta, approx.n, table.negative_count(),
                table_path.c_str());
    return 0;
}

int cmd_simulate(const Cli& cli) {
    Resolved r(cli, true);
    const fpt::SeriesControl& ctl = r.ctl;
    fpt::SimConfig cfg = r.sim;
    if (cfg.t_max <= 0.0) {
        // default horizon: 20 mean first-passage times
        cfg.t_max = 20.0 * fpt::feller::fpt_cumulants(1, r.p, ctl).at(1);
        r.put("t_max", cfg.t_max);
    }
    cfg.validate();

    auto sample = fpt::sim::sample_fpt(r.p, cfg);
    if (sample.censor_warning)
        std::fprintf(stderr,
                     "warning: %ld of %zu paths censored at t_max=%g; statistics cover "
                     "the uncensored part only\n",
                     sample.censored_count, sample.times.size(), cfg.t_max);

    std::vector<double> grid;
    if (cli.grid_min && cli.grid_max && cli.grid_points) {
        grid.resize(static_cast<std::size_t>(*cli.grid_points));
        for (int i = 0; i < *cli.grid_points; ++i)
            grid[static_cast<std::size_t>(i)] =
                *cli.grid_min + (*cli.grid_max - *cli.grid_min) * i / (*cli.grid_points - 1);
    }
    auto emp = fpt::sim::empirical_pdf(sample, cfg, std::move(grid));

    const std::string manifest = cli.out + "_manifest.json";
    const std::string sample_path = cli.out + "_sample" + table_ext(cli.format);
    if (cli.format == "json") {
        nlohmann::json js;
        js["manifest"] = manifest;
        js["config"] = r.echo;
        for (std::size_t i = 0; i < sample.times.size(); ++i) {
            js["time"].push_back(format_g17(sample.times[i]));
            js["censored"].push_back(static_cast<int>(sample.censored[i]));
        }
        std::ofstream out(sample_path);
        if (!out) throw fpt::io::io_error("cannot open " + sample_path);
        out << js.dump(2) << "\n";
    } else {
        std::ofstream out(sample_path);
        if (!out) throw fpt::io::io_error("cannot open " + sample_path);
        out << "# manifest=" << manifest << "\n";
        for (const auto& [k, v] : r.echo) out << "# " << k << "=" << v << "\n";
        out << "path,time,censored\n";
        for (std::size_t i = 0; i < sample.times.size(); ++i)
            out << i << ',' << format_g17(sample.times[i]) << ','
                << static_cast<int>(sample.censored[i]) << "\n";
    }

    emp.table.params["manifest"] = manifest;
    const std::string pdf_path = cli.out + "_pdf" + table_ext(cli.format);
    write_table(emp.table, pdf_path, cli.format);

    nlohmann::json j;
    j["manifest"] = manifest;
    j["n_paths"] = static_cast<long>(sample.times.size());
    j["censored"] = sample.censored_count;
    j["censor_warning"] = sample.censor_warning;
    j["reflections"] = sample.reflections;
    j["mean"] = format_g17(sample.mean);
    j["variance"] = format_g17(sample.variance);
    j["skewness"] = format_g17(sample.skewness);
    j["bandwidth"] = format_g17(emp.bandwidth);
    j["estimator"] = emp.estimator == fpt::SimConfig::Estimator::histogram
                         ? "histogram"
                         : "gaussian-kde";
    const std::string summary_path = cli.out + "_summary.json";
    std::ofstream out(summary_path);
    if (!out) throw fpt::io::io_error("cannot open " + summary_path);
    out << j.dump(2) << "\n";

    write_manifest(cli.out, "simulate", r.echo, {sample_path, pdf_path, summary_path});
    std::printf("paths = %zu  mean = %.6g  var = %.6g  censored = %ld  (sample: %s)\n",
                sample.times.size(), sample.mean, sample.variance, sample.censored_count,
                sample_path.c_str());
    return 0;
}

fpt::PdfTable read_table(const std::string& path) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
        return fpt::io::read_json(path);
    return fpt::io::read_csv(path);
}

int cmd_compare(const Cli& cli) {
    auto approx = read_table(cli.approx_path);
    auto emp_table = read_table(cli.empirical_path);

    fpt::EmpiricalPdf emp;
    emp.estimator = emp_table.params.count("estimator") &&
                            emp_table.params.at("estimator") == "histogram"
                        ? fpt::SimConfig::Estimator::histogram
                        : fpt::SimConfig::Estimator::gaussian_kde;
    auto numeric = [&](const char* key) {
        return emp_table.params.count(key) ? std::stod(emp_table.params.at(key)) : 0.0;
    };
    emp.bandwidth = numeric("bandwidth");
    emp.dt = numeric("dt");
    emp.censored_fraction = numeric("censored_fraction");
    emp.table = std::move(emp_table);

    auto rep = fpt::sim::compare(approx, emp, cli.t_cut);

    const std::string manifest = cli.out + "_manifest.json";
    const std::string err_path = cli.out + "_error.csv";
    {
        std::ofstream out(err_path);
        if (!out) throw fpt::io::io_error("cannot open " + err_path);
        out << "# manifest=" << manifest << "\n";
        out << "# t_cut=" << format_g17(rep.t_cut) << "\n";
        out << "t,abs_error\n";
        for (std::size_t i = 0; i < rep.grid.size(); ++i)
            out << format_g17(rep.grid[i]) << ',' << format_g17(rep.abs_err[i]) << "\n";
    }
    nlohmann::json j;
    j["manifest"] = manifest;
    j["sup_error"] = format_g17(rep.sup_err);
    j["l1_distance"] = format_g17(rep.l1);
    j["t_cut"] = format_g17(rep.t_cut);
    j["points"] = static_cast<long>(rep.grid.size());
    const std::string summary_path = cli.out + "_summary.json";
    std::ofstream out(summary_path);
    if (!out) throw fpt::io::io_error("cannot open " + summary_path);
    out << j.dump(2) << "\n";

    std::map<std::string, std::string> echo{{"approx", cli.approx_path},
                                            {"empirical", cli.empirical_path},
                                            {"t_cut", format_g17(rep.t_cut)}};
    write_manifest(cli.out, "compare", echo, {err_path, summary_path});
    std::printf("sup|err| (t >= %.4g) = %.6g   L1 = %.6g\n", rep.t_cut, rep.sup_err, rep.l1);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Cli cli;
    CLI::App app{"first-passage-time analysis for the mean-reverting square-root diffusion"};
    app.require_subcommand(1);

    auto add_model = [&](CLI::App* sub) {
        sub->add_option("--params", cli.params_file, "flat key=value parameter file");
        sub->add_option("--mu", cli.mu, "drift level");
        sub->add_option("--tau", cli.tau, "mean-reversion rate (> 0)");
        sub->add_option("--sigma", cli.sigma, "volatility scale (> 0)");
        sub->add_option("--c", cli.c, "lower endpoint of the state space (<= 0)");
        sub->add_option("--y0", cli.y0, "start value");
        sub->add_option("--threshold", cli.threshold, "threshold S");
        sub->add_option("--out", cli.out, "output path prefix");
        sub->add_option("--format", cli.format, "table format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* cums = app.add_subcommand("cumulants", "closed-form cumulants and moments");
    add_model(cums);
    cums->add_option("--order", cli.order, "number of cumulant orders (default 5)");

    auto* approx = app.add_subcommand("approx", "gamma-Laguerre density approximant");
    add_model(approx);
    approx->add_option("--order", cli.order, "truncation degree (default 5)");
    approx->add_option("--grid-min", cli.grid_min, "table grid start (> 0)");
    approx->add_option("--grid-max", cli.grid_max, "table grid end");
    approx->add_option("--grid-points", cli.grid_points, "table grid size");
    approx->add_flag("--clip-negative", cli.clip_negative,
                     "zero out negative dips in the table (no renormalization)");

    auto* simu = app.add_subcommand("simulate", "Monte Carlo first-passage sample");
    add_model(simu);
    simu->add_option("--paths", cli.paths, "number of paths (default 10000)");
    simu->add_option("--dt", cli.dt, "time step (default 1e-2)");
    simu->add_option("--tmax", cli.tmax, "censoring horizon (default 20 * mean)");
    simu->add_option("--seed", cli.seed, "random seed (default 12345)");
    simu->add_option("--grid-min", cli.grid_min, "density grid start");
    simu->add_option("--grid-max", cli.grid_max, "density grid end");
    simu->add_option("--grid-points", cli.grid_points, "density grid size");

    auto* comp = app.add_subcommand("compare", "absolute error between two density tables");
    comp->add_option("approx", cli.approx_path, "approximant table (csv/json)")->required();
    comp->add_option("empirical", cli.empirical_path, "empirical table (csv/json)")->required();
    comp->add_option("--t-cut", cli.t_cut,
                     "ignore t below this cut for the sup norm (default: automatic)");
    comp->add_option("--out", cli.out, "output path prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cums->parsed()) return cmd_cumulants(cli);
        if (approx->parsed()) return cmd_approx(cli);
        if (simu->parsed()) return cmd_simulate(cli);
        if (comp->parsed()) return cmd_compare(cli);
        return 2;
    } catch (const fpt::truncation_error& e) {
        std::fprintf(stderr, "numerical failure: %s (terms=%d, tail=%.3g)\n", e.what(),
                     e.terms_used, e.tail_estimate);
        return 3;
    } catch (const fpt::io::io_error& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
