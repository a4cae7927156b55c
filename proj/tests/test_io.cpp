#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "fpt/config.hpp"
#include "fpt/pdf_table.hpp"
#include "fpt/simulate.hpp"
#include "support/testutil.hpp"

using namespace fpt;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PdfTable random_table(unsigned seed) {
    auto rng = testutil::test_rng(seed);
    std::uniform_real_distribution<double> u(1e-9, 1e6);
    PdfTable t;
    t.source = "reference";
    t.params["alpha"] = io::format_g17(1.0 / 3.0);
    t.params["note"] = "round trip";
    double x = 0.0;
    for (int i = 0; i < 64; ++i) {
        x += u(rng);
        t.grid.push_back(x);
        t.values.push_back((u(rng) - 5e5) * 1e-7);
        t.flags.push_back(i % 3 == 0);
    }
    return t;
}

}  // namespace

TEST_CASE("g17 formatting round-trips doubles exactly") {
    for (double x : {1.0 / 3.0, 0.1, 2.2250738585072014e-308, -123456.789e-30,
                     6.02214076e23, -0.0, 1.0}) {
        const double back = std::stod(io::format_g17(x));
        CHECK(std::memcmp(&back, &x, sizeof x) == 0);
    }
}

TEST_CASE("csv and json serialization round-trip to the bit") {
    auto t = random_table(17);
    io::write_csv(t, "/tmp/fpt_test_table.csv");
    auto back = io::read_csv("/tmp/fpt_test_table.csv");
    REQUIRE(back.grid.size() == t.grid.size());
    CHECK(std::memcmp(back.grid.data(), t.grid.data(), t.grid.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(back.values.data(), t.values.data(), t.values.size() * sizeof(double)) == 0);
    CHECK(back.flags == t.flags);
    CHECK(back.source == t.source);
    CHECK(back.params.at("alpha") == t.params.at("alpha"));

    io::write_json(t, "/tmp/fpt_test_table.json");
    auto jback = io::read_json("/tmp/fpt_test_table.json");
    CHECK(std::memcmp(jback.grid.data(), t.grid.data(), t.grid.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(jback.values.data(), t.values.data(), t.values.size() * sizeof(double)) == 0);
    CHECK(jback.params.at("note") == "round trip");

    CHECK_THROWS_AS(io::read_csv("/tmp/does_not_exist_fpt.csv"), io::io_error);
}

TEST_CASE("table validation") {
    PdfTable bad;
    bad.grid = {1.0, 1.0};
    bad.values = {0.1, 0.2};
    bad.flags = {0, 0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.grid = {1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("flat key=value configuration") {
    const std::string text =
        "# worked example\n"
        "mu = 0.9\n"
        "tau=0.6666666666666666\n"
        "sigma = 1.0   # noise scale\n"
        "\n"
        "seed = 12345\n"
        "estimator = gaussian-kde\n";
    auto cfg = Config::from_string(text);
    CHECK(cfg.get_double("mu") == 0.9);
    CHECK(cfg.get_double("tau") == doctest::Approx(2.0 / 3.0));
    CHECK(cfg.get_u64("seed", 0) == 12345);
    CHECK(cfg.get_string("estimator", "") == "gaussian-kde");
    CHECK(cfg.get_double("missing", -1.0) == -1.0);
    CHECK_THROWS(cfg.get_double("missing"));
    CHECK_THROWS(Config::from_string("novalue\n"));
    CHECK_THROWS_AS(Config::from_file("/tmp/missing_fpt_config.cfg"), io::io_error);
}

TEST_CASE("simulation artifacts are byte-identical across runs and workers") {
    auto p = testutil::example1();
    SimConfig cfg;
    cfg.dt = 1e-2;
    cfg.n_paths = 300;
    cfg.t_max = 25.0;
    cfg.seed = 77;

    auto write_run = [&](const std::string& path, int workers) {
        SimConfig c = cfg;
        c.workers = workers;
        auto s = sim::sample_fpt(p, c);
        auto e = sim::empirical_pdf(s, c);
        io::write_csv(e.table, path);
        return path;
    };

    write_run("/tmp/fpt_run_a.csv", 1);
    write_run("/tmp/fpt_run_b.csv", 2);
    write_run("/tmp/fpt_run_c.csv", 8);
    const auto a = slurp("/tmp/fpt_run_a.csv");
    CHECK(a == slurp("/tmp/fpt_run_b.csv"));
    CHECK(a == slurp("/tmp/fpt_run_c.csv"));
    CHECK(!a.empty());
}
