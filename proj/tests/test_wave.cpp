#include <cmath>

#include "doctest.h"
#include "fiolab/wave.hpp"
#include "helpers.hpp"

using namespace fiolab;
using namespace fiolab::testing;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

GridFunction band_limited(const GridSpec& s, int j_lo, int j_hi, std::uint64_t seed) {
    BumpProfile prof = BumpProfile::mollifier();
    GridFunction f = random_function(s, seed);
    Spectrum F = forward_transform(f);
    for (std::size_t i = 0; i < s.size(); ++i) {
        Vec xi = s.frequency(i);
        double r = std::hypot(xi[0], xi[1]);
        double mask = 0.0;
        for (int j = j_lo; j <= j_hi; ++j) mask += psi_level_radial(prof, j, r);
        F.coefficients[i] *= mask;
    }
    return inverse_transform(F);
}

}  // namespace

TEST_CASE("half-wave operator") {
    GridSpec s = GridSpec::make(2, 2.0 * kPi, 32);
    GridFunction f = random_function(s, 1);

    CHECK(max_abs_diff(half_wave(f, 0.0, +1), f) <= 1e-13 * max_abs(f));

    double before = lp_quasinorm(f, 2.0);
    CHECK(std::abs(lp_quasinorm(half_wave(f, 1.3, +1), 2.0) - before) <= 1e-11 * before);

    GridFunction chained = half_wave(half_wave(f, 0.4, +1), 0.8, +1);
    CHECK(max_abs_diff(chained, half_wave(f, 1.2, +1)) <= 1e-10 * max_abs(f));
}

TEST_CASE("wave solution") {
    GridSpec s = GridSpec::make(2, 2.0 * kPi, 32);

    SUBCASE("t = 0 returns the position data") {
        CauchyData data(random_function(s, 2), random_function(s, 3));
        CHECK(max_abs_diff(solve_wave(data, 0.0), data.f0) <= 1e-12 * max_abs(data.f0));
    }

    SUBCASE("eigenmode evolves by cos(t |xi|)") {
        std::size_t k = s.index_of_wavenumber(3, -2);
        Vec xi = s.frequency(k);
        GridFunction mode(s);
        for (std::size_t i = 0; i < s.size(); ++i) {
            Vec x = s.point(i);
            mode.values[i] = std::polar(1.0, x[0] * xi[0] + x[1] * xi[1]);
        }
        CauchyData data(mode, GridFunction(s));
        double t = 0.9;
        GridFunction u = solve_wave(data, t);
        double c = std::cos(t * std::hypot(xi[0], xi[1]));
        double worst = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i)
            worst = std::max(worst, std::abs(u.values[i] - c * mode.values[i]));
        CHECK(worst <= 1e-11);
    }

    // Finite-difference oracle for the velocity initial condition: the
    // centered difference error is O(delta^2), so halving delta divides the
    // defect by about four.
    SUBCASE("velocity initial condition") {
        CauchyData data(band_limited(s, 0, 3, 4), band_limited(s, 0, 3, 5));
        double defects[2];
        int slot = 0;
        for (double delta : {1e-2, 5e-3}) {
            GridFunction up = solve_wave(data, delta);
            GridFunction dn = solve_wave(data, -delta);
            GridFunction fd = pointwise_combine(up, dn, CombineOp::Sub, 0.5 / delta, 0.5 / delta);
            defects[slot++] = max_abs_diff(fd, data.f1);
        }
        CHECK(defects[1] <= defects[0] / 3.0);
        CHECK(defects[1] >= defects[0] / 5.0);
    }

    SUBCASE("time reversal flips the velocity sign") {
        GridFunction f0 = random_function(s, 6), f1 = random_function(s, 7);
        CauchyData data(f0, f1);
        CauchyData flipped(f0, scale(f1, -1.0));
        CHECK(max_abs_diff(solve_wave(data, 0.7), solve_wave(flipped, -0.7)) <=
              1e-11 * max_abs(f0));
    }
}

TEST_CASE("energy") {
    GridSpec s = GridSpec::make(2, 2.0 * kPi, 32);

    SUBCASE("conserved") {
        CauchyData data(random_function(s, 8), random_function(s, 9));
        double e0 = wave_energy(data, 0.0);
        for (double t : {0.5, 1.0, 2.0})
            CHECK(std::abs(wave_energy(data, t) - e0) <= 1e-9 * e0);
    }

    SUBCASE("single mode value") {
        std::size_t k = s.index_of_wavenumber(4, 0);
        Vec xi = s.frequency(k);
        GridFunction mode(s);
        for (std::size_t i = 0; i < s.size(); ++i) {
            Vec x = s.point(i);
            mode.values[i] = std::polar(1.0, x[0] * xi[0] + x[1] * xi[1]);
        }
        CauchyData data(mode, GridFunction(s));
        // F0 has the single coefficient L^n; energy = |xi|^2 |L^n|^2 / L^n.
        double expect = 16.0 * std::pow(2.0 * kPi, 2);
        CHECK(wave_energy(data, 0.0) == doctest::Approx(expect).epsilon(1e-11));
    }

    SUBCASE("zero data") {
        CauchyData data{GridFunction(s), GridFunction(s)};
        CHECK(wave_energy(data, 1.0) == 0.0);
    }
}

TEST_CASE("finite propagation proxy") {
    GridSpec s = GridSpec::make(2, 16.0, 128);
    // narrow bump at the origin
    BumpProfile prof = BumpProfile::mollifier();
    GridFunction f0(s);
    for (std::size_t i = 0; i < s.size(); ++i) {
        Vec x = s.point(i);
        f0.values[i] = prof(2.0 * std::hypot(x[0], x[1]) / 0.5);
    }
    CauchyData data(f0, GridFunction(s));
    double t = 2.0;
    GridFunction u = solve_wave(data, t);
    double inside = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Vec x = s.point(i);
        double mass = std::abs(u.values[i]);
        if (std::hypot(x[0], x[1]) <= t + 0.5 + 1.0)
            inside += mass;
        else
            outside += mass;
    }
    // reported, not asserted hard: periodization limits the vacuum quality
    CHECK(outside <= 1e-2 * (inside + outside));
}

TEST_CASE("estimate ratios") {
    SUBCASE("n = 1: no index shift, ratio stays O(1)") {
        GridSpec s = GridSpec::make(1, 2.0 * kPi, 256);
        DyadicCutoffFamily family(s, BumpProfile::mollifier());
        CHECK(wave_data_shift(2.0, 1) == 0.0);
        SpaceParams params = SpaceParams::make(SpaceKind::Besov, 0.0, 2.0, 2.0);
        for (int trial = 0; trial < 10; ++trial) {
            CauchyData data(band_limited(s, 2, family.max_level() - 1, 100 + trial),
                            band_limited(s, 2, family.max_level() - 1, 200 + trial));
            for (double t : {0.25, 1.0})
                CHECK(besov_estimate_ratio(data, t, params, family) <= 2.0);
        }
    }

    SUBCASE("t = 0 with zero velocity bounds the ratio by one") {
        GridSpec s = GridSpec::make(2, 2.0 * kPi, 64);
        DyadicCutoffFamily family(s, BumpProfile::mollifier());
        // nu > 0 for p != 2 and spectrum outside the unit ball
        SpaceParams params = SpaceParams::make(SpaceKind::Besov, 0.3, 1.0, 1.0);
        CHECK(wave_data_shift(1.0, 2) == doctest::Approx(0.5));
        CauchyData data(band_limited(s, 2, 3, 300), GridFunction(s));
        CHECK(besov_estimate_ratio(data, 0.0, params, family) <= 1.0 + 1e-12);
    }

    SUBCASE("n = 2, p = q = 2: bounded and stable under box doubling") {
        double worst = 0.0;
        for (double L : {2.0 * kPi, 4.0 * kPi}) {
            GridSpec s = GridSpec::make(2, L, L > 7.0 ? 128 : 64);
            DyadicCutoffFamily family(s, BumpProfile::mollifier());
            SpaceParams params = SpaceParams::make(SpaceKind::Besov, 0.7, 2.0, 2.0);
            double local = 0.0;
            for (int trial = 0; trial < 20; ++trial) {
                CauchyData data(band_limited(s, 2, family.max_level() - 1, 400 + trial),
                                band_limited(s, 2, family.max_level() - 1, 500 + trial));
                for (double t : {0.5, 1.0})
                    local = std::max(local, besov_estimate_ratio(data, t, params, family));
            }
            CHECK(local <= 4.0);  // recorded bound for the L^2-type cell
            worst = std::max(worst, local);
        }
        CHECK(worst <= 4.0);
    }

    SUBCASE("out-of-range parameters propagate") {
        GridSpec s = GridSpec::make(1, 2.0 * kPi, 64);
        DyadicCutoffFamily family(s, BumpProfile::mollifier());
        CauchyData data(random_function(s, 600), random_function(s, 601));
        const double inf = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(besov_estimate_ratio(
                            data, 1.0,
                            SpaceParams{SpaceKind::TriebelLizorkin, 0.0, inf, 3.0}, family),
                        ParameterError);
    }
}
