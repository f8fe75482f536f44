#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fiolab/experiments.hpp"
#include "helpers.hpp"

using namespace fiolab;
using namespace fiolab::testing;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.is_open());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("critical order") {
    CHECK(critical_order(2.0, 1) == 0.0);
    CHECK(critical_order(2.0, 2) == 0.0);
    CHECK(critical_order(2.0, 7) == 0.0);
    CHECK(critical_order(std::numeric_limits<double>::infinity(), 2) == doctest::Approx(-0.5));
    for (double p : {0.3, 0.7, 1.0, 5.0}) CHECK(critical_order(p, 1) == 0.0);
    CHECK_THROWS_AS(critical_order(0.0, 2), ParameterError);

    SUBCASE("dual exponents share the critical order") {
        for (double p : {1.2, 1.5, 2.0, 3.0, 8.0}) {
            double dual = p / (p - 1.0);
            CHECK(critical_order(p, 3) == doctest::Approx(critical_order(dual, 3)).epsilon(1e-13));
        }
    }
}

TEST_CASE("config round-trip and hashing") {
    ExperimentConfig cfg;
    cfg.experiment = "scaling";
    cfg.p = std::numeric_limits<double>::infinity();
    cfg.seed = 1234;
    std::string text = cfg.to_json_text();
    ExperimentConfig back = ExperimentConfig::from_json_text(text);
    CHECK(back.p == cfg.p);
    CHECK(back.seed == cfg.seed);
    CHECK(back.to_json_text() == text);
    CHECK(cfg.hash() == back.hash());
    CHECK(cfg.hash().size() == 40);

    ExperimentConfig other = cfg;
    other.seed = 1235;
    CHECK(other.hash() != cfg.hash());
}

TEST_CASE("git blob hash matches the reference value") {
    // sha1 of "blob 5\0hello"
    CHECK(git_blob_sha1("hello") == "b6fc4c620b67d95f953a5c1c1230aaab5db5a1b0");
}

TEST_CASE("corpus generators are seed-deterministic") {
    GridSpec s = GridSpec::make(2, 2.0 * kPi, 32);
    DyadicCutoffFamily family(s, BumpProfile::mollifier());
    GridFunction a = shell_random(family, 2, 99);
    GridFunction b = shell_random(family, 2, 99);
    CHECK(max_abs_diff(a, b) == 0.0);
    GridFunction c = shell_random(family, 2, 100);
    CHECK(max_abs_diff(a, c) > 0.0);

    GridFunction r1 = random_band_function(s, 1, 2, 7);
    GridFunction r2 = random_band_function(s, 1, 2, 7);
    CHECK(max_abs_diff(r1, r2) == 0.0);
    CHECK(std::abs(lp_quasinorm(r1, 2.0) - 1.0) <= 1e-12);
}

TEST_CASE("scaling experiment on a small grid") {
    ExperimentConfig cfg;
    cfg.n = 2;
    cfg.N = 32;
    cfg.L = 2.0 * kPi / 4.0;  // xi_max = 64, J = 5
    cfg.phase = "wave";
    cfg.amplitude = "jap";
    cfg.m = 0.0;
    cfg.p = 2.0;
    cfg.j_min = 2;
    cfg.j_max = 4;
    cfg.corpus_size = 4;
    cfg.seed = 11;

    ScalingReport report = scaling_experiment(cfg);
    REQUIRE(report.levels.size() == 3);
    CHECK(report.target == 0.0);
    // L^2 with a unimodular band multiplier: ratios near 1, slope near 0.
    for (double r : report.ratios) {
        CHECK(r > 0.5);
        CHECK(r < 1.5);
    }
    CHECK(std::abs(report.slope) <= 0.1);
    CHECK(report.upper_bound_ok);

    SUBCASE("report bytes do not depend on the worker count") {
        namespace fs = std::filesystem;
        std::string base = (fs::temp_directory_path() / "fiolab_det").string();
        cfg.out_dir = base + "/a";
        set_thread_count(1);
        write_scaling_report(scaling_experiment(cfg), cfg);
        std::string one = slurp(cfg.out_dir + "/scaling_ratios.csv");
        cfg.out_dir = base + "/b";
        set_thread_count(4);
        write_scaling_report(scaling_experiment(cfg), cfg);
        std::string four = slurp(cfg.out_dir + "/scaling_ratios.csv");
        set_thread_count(0);
        CHECK(one == four);
        CHECK(one.find(cfg.hash()) != std::string::npos);
    }

    SUBCASE("level range validation") {
        cfg.j_max = 9;
        CHECK_THROWS_AS(scaling_experiment(cfg), ParameterError);
        cfg.j_max = 4;
        cfg.corpus_size = 0;
        CHECK_THROWS_AS(scaling_experiment(cfg), ParameterError);
    }
}

TEST_CASE("wave sweep on a small grid") {
    ExperimentConfig cfg;
    cfg.experiment = "wave-sweep";
    cfg.n = 2;
    cfg.N = 32;
    cfg.L = 2.0 * kPi;
    cfg.corpus_size = 4;
    cfg.sweep_p = {1.0, 2.0};
    cfg.sweep_s = {0.0};
    cfg.sweep_t = {0.5};
    cfg.seed = 21;

    WaveSweepReport report = wave_sweep(cfg);
    CHECK(!report.cells.empty());
    for (const auto& cell : report.cells) {
        CHECK(std::isfinite(cell.ratio));
        CHECK(cell.ratio >= 0.0);
    }
    // B and F cells at every admissible (p, q) pair from {p, 2}
    int besov = 0, triebel = 0;
    for (const auto& cell : report.cells)
        (cell.kind == SpaceKind::Besov ? besov : triebel)++;
    CHECK(besov == triebel);  // same admissible grid here
}

TEST_CASE("tail integral closed form") {
    // int_1^{8} x^{-0.8} dx against a Riemann sum
    double numeric = 0.0;
    const int steps = 200000;
    for (int i = 0; i < steps; ++i) {
        double x = 1.0 + (i + 0.5) * (7.0 / steps);
        numeric += std::pow(x, -0.8) * (7.0 / steps);
    }
    double closed = (std::pow(8.0, 0.2) - 1.0) / 0.2;
    CHECK(numeric == doctest::Approx(closed).epsilon(1e-6));
}

TEST_CASE("cli selftest passes") { CHECK(cli_run({"selftest"}) == 0); }

TEST_CASE("cli exit codes") {
    CHECK(cli_run({"definitely-not-a-subcommand"}) == 1);
    CHECK(cli_run({"scaling", "--config", "/nonexistent/path.json"}) == 1);
    CHECK(cli_run({"norm"}) == 1);  // missing required --in

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "fiolab_cli";
    fs::create_directories(dir);

    SUBCASE("norm on a stored function") {
        GridSpec s = GridSpec::make(1, 2.0 * kPi, 64);
        save_grid_function(random_function(s, 5), (dir / "f.bin").string());
        CHECK(cli_run({"norm", "--in", (dir / "f.bin").string(), "--kind", "B", "--s", "0.5",
                       "--p", "2", "--q", "2"}) == 0);
    }

    SUBCASE("decompose emits the cutoff table") {
        CHECK(cli_run({"decompose", "--n", "1", "--N", "64", "--L", "6.283185307179586", "--out",
                       (dir / "dec").string()}) == 0);
        CHECK(fs::exists(dir / "dec" / "cutoffs.csv"));
    }

    SUBCASE("fio-apply round-trips a container") {
        GridSpec s = GridSpec::make(1, 2.0 * kPi, 64);
        save_grid_function(random_function(s, 6), (dir / "in.bin").string());
        CHECK(cli_run({"fio-apply", "--in", (dir / "in.bin").string(), "--out-file",
                       (dir / "out.bin").string(), "--phase", "wave", "--t", "0.5",
                       "--amplitude", "one"}) == 0);
        GridFunction out = load_grid_function((dir / "out.bin").string());
        CHECK(out.spec.N == 64);
    }
}
