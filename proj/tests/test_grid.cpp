#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "fiolab/grid.hpp"
#include "helpers.hpp"

using namespace fiolab;
using namespace fiolab::testing;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS(GridSpec::make(3, 1.0, 64), ParameterError);
    CHECK_THROWS_AS(GridSpec::make(1, -1.0, 64), ParameterError);
    CHECK_THROWS_AS(GridSpec::make(1, 1.0, 48), ParameterError);   // not a power of two
    CHECK_THROWS_AS(GridSpec::make(1, 100.0, 8), ParameterError);  // J < 1
    GridSpec s = GridSpec::make(2, 2.0 * kPi, 32);
    CHECK(s.max_level() == 3);  // xi_max = 16
    CHECK(s.size() == 1024);
    CHECK(s.h() == doctest::Approx(2.0 * kPi / 32));
}

TEST_CASE("wavenumber layout round-trips") {
    GridSpec s = GridSpec::make(2, 4.0, 16);
    for (int k0 : {-8, -3, 0, 5, 7}) {
        for (int k1 : {-8, -1, 0, 7}) {
            std::size_t idx = s.index_of_wavenumber(k0, k1);
            auto k = s.wavenumber(idx);
            CHECK(k[0] == k0);
            CHECK(k[1] == k1);
        }
    }
    CHECK_THROWS_AS(s.index_of_wavenumber(8, 0), ParameterError);
}

TEST_CASE("forward transform of lattice exponentials") {
    GridSpec s = GridSpec::make(1, 8.0, 64);

    SUBCASE("constant function") {
        GridFunction f(s);
        for (auto& v : f.values) v = 1.0;
        Spectrum F = forward_transform(f);
        for (std::size_t i = 0; i < s.size(); ++i) {
            cd expect = s.wavenumber(i)[0] == 0 ? cd(8.0, 0.0) : cd(0.0, 0.0);
            CHECK(std::abs(F.coefficients[i] - expect) <= 1e-12 * 8.0);
        }
    }

    SUBCASE("single exponential lands on one coefficient") {
        GridFunction f(s);
        std::size_t k0 = s.index_of_wavenumber(-5);
        double xi = s.frequency(k0)[0];
        for (std::size_t i = 0; i < s.size(); ++i)
            f.values[i] = std::polar(1.0, s.point(i)[0] * xi);
        Spectrum F = forward_transform(f);
        for (std::size_t i = 0; i < s.size(); ++i) {
            cd expect = (i == k0) ? cd(8.0, 0.0) : cd(0.0, 0.0);
            CHECK(std::abs(F.coefficients[i] - expect) <= 1e-12 * 8.0);
        }
    }
}

// Closed-form oracle: the Gaussian e^{-x^2/2} transforms to
// sqrt(2 pi) e^{-xi^2/2}; periodization and aliasing are far below 1e-10 at
// L = 64, N = 4096.
TEST_CASE("gaussian matches its continuum transform") {
    GridSpec s = GridSpec::make(1, 64.0, 4096);
    GridFunction f(s);
    for (std::size_t i = 0; i < s.size(); ++i) {
        double x = s.point(i)[0];
        f.values[i] = std::exp(-0.5 * x * x);
    }
    Spectrum F = forward_transform(f);
    const double root = std::sqrt(2.0 * kPi);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        double xi = s.frequency(i)[0];
        worst = std::max(worst, std::abs(F.coefficients[i] - root * std::exp(-0.5 * xi * xi)));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("transform pair is mutually inverse and Parseval holds") {
    for (int n : {1, 2}) {
        GridSpec s = n == 1 ? GridSpec::make(1, 5.0, 128) : GridSpec::make(2, 3.0, 16);
        for (int trial = 0; trial < 100; ++trial) {
            GridFunction f = random_function(s, 100 * n + trial);
            Spectrum F = forward_transform(f);
            GridFunction back = inverse_transform(F);
            CHECK(max_abs_diff(back, f) <= 1e-12 * max_abs(f));

            double lhs = std::pow(lp_quasinorm(f, 2.0), 2);
            double rhs = 0.0;
            for (const cd& c : F.coefficients) rhs += std::norm(c);
            rhs /= std::pow(s.L, s.n);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * lhs);
        }
    }
}

TEST_CASE("spectral delta inverts to a lattice exponential") {
    GridSpec s = GridSpec::make(1, 8.0, 64);
    Spectrum F(s);
    std::size_t k0 = s.index_of_wavenumber(9);
    F.coefficients[k0] = 8.0;  // L^n
    GridFunction f = inverse_transform(F);
    double xi = s.frequency(k0)[0];
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(std::abs(f.values[i] - std::polar(1.0, s.point(i)[0] * xi)) <= 1e-12);
}

TEST_CASE("inverse transform is linear") {
    GridSpec s = GridSpec::make(1, 8.0, 64);
    GridFunction f = random_function(s, 1), g = random_function(s, 2);
    Spectrum F = forward_transform(f), G = forward_transform(g);
    cd alpha(0.3, -1.2), beta(2.0, 0.4);
    Spectrum combo(s);
    for (std::size_t i = 0; i < s.size(); ++i)
        combo.coefficients[i] = alpha * F.coefficients[i] + beta * G.coefficients[i];
    GridFunction direct = inverse_transform(combo);
    GridFunction via = pointwise_combine(inverse_transform(F), inverse_transform(G),
                                         CombineOp::Add, alpha, beta);
    CHECK(max_abs_diff(direct, via) <= 1e-12 * max_abs(direct));
}

TEST_CASE("lp quasi-norm") {
    GridSpec s = GridSpec::make(1, 8.0, 64);

    SUBCASE("rejects p <= 0") {
        GridFunction f(s);
        CHECK_THROWS_AS(lp_quasinorm(f, 0.0), ParameterError);
        CHECK_THROWS_AS(lp_quasinorm(f, -2.0), ParameterError);
    }

    SUBCASE("absolute homogeneity, including p < 1 and p = inf") {
        GridFunction f = random_function(s, 3);
        cd lambda(1.7, -0.6);
        for (double p : {0.3, 0.5, 1.0, 2.0, 7.5, std::numeric_limits<double>::infinity()}) {
            double lhs = lp_quasinorm(scale(f, lambda), p);
            double rhs = std::abs(lambda) * lp_quasinorm(f, p);
            CHECK(std::abs(lhs - rhs) <= 1e-13 * rhs);
        }
    }

    SUBCASE("p-triangle inequality is a finite-sum identity for p <= 1") {
        GridFunction f = random_function(s, 4), g = random_function(s, 5);
        GridFunction sum = pointwise_combine(f, g, CombineOp::Add);
        for (double p : {0.25, 0.5, 0.8, 1.0}) {
            double lhs = std::pow(lp_quasinorm(sum, p), p);
            double rhs = std::pow(lp_quasinorm(f, p), p) + std::pow(lp_quasinorm(g, p), p);
            CHECK(lhs <= rhs * (1.0 + 1e-13));
        }
    }

    SUBCASE("quasi-norm constant 2^{1/p-1} at p = 1/2") {
        GridFunction f = random_function(s, 6), g = random_function(s, 7);
        GridFunction sum = pointwise_combine(f, g, CombineOp::Add);
        double lhs = lp_quasinorm(sum, 0.5);
        double rhs = 2.0 * (lp_quasinorm(f, 0.5) + lp_quasinorm(g, 0.5));
        CHECK(lhs <= rhs * (1.0 + 1e-13));
    }
}

TEST_CASE("pointwise combine") {
    GridSpec s = GridSpec::make(1, 8.0, 64);
    GridFunction f = random_function(s, 8);
    GridFunction zero(s);

    CHECK(max_abs_diff(pointwise_combine(f, zero, CombineOp::Add), f) == 0.0);
    CHECK(max_abs(pointwise_combine(f, f, CombineOp::Sub)) == 0.0);

    GridFunction conj = f;
    for (auto& v : conj.values) v = std::conj(v);
    GridFunction sq = pointwise_combine(f, conj, CombineOp::Mul);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(sq.values[i].imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(sq.values[i].real() >= 0.0);
    }

    GridSpec other = GridSpec::make(1, 8.0, 128);
    GridFunction g(other);
    CHECK_THROWS_AS(pointwise_combine(f, g, CombineOp::Add), StructuralError);
}

TEST_CASE("container round-trip") {
    namespace fs = std::filesystem;
    GridSpec s = GridSpec::make(2, 4.0, 16);
    GridFunction f = random_function(s, 9);
    fs::path dir = fs::temp_directory_path() / "fiolab_grid_io";
    fs::create_directories(dir);
    std::string path = (dir / "f.bin").string();
    save_grid_function(f, path);
    GridFunction g = load_grid_function(path);
    CHECK(g.spec == f.spec);
    CHECK(max_abs_diff(f, g) == 0.0);
    save_grid_function_csv(f, (dir / "f.csv").string());
    CHECK_THROWS_AS(load_grid_function((dir / "missing.bin").string()), StructuralError);
}

TEST_CASE("quadrature order is radial then lexicographic") {
    GridSpec s = GridSpec::make(2, 4.0, 16);
    std::vector<std::size_t> order = quadrature_order(s);
    REQUIRE(order.size() == s.size());
    long prev = -1;
    for (std::size_t idx : order) {
        auto k = s.wavenumber(idx);
        long r = long(k[0]) * k[0] + long(k[1]) * k[1];
        CHECK(r >= prev);
        prev = r;
    }
    CHECK(s.wavenumber(order[0])[0] == 0);
    CHECK(s.wavenumber(order[0])[1] == 0);
}
