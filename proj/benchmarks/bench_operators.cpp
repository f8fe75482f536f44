#include <benchmark/benchmark.h>

#include <random>

#include "fiolab/cones.hpp"
#include "fiolab/wave.hpp"

using namespace fiolab;

namespace {

GridFunction random_function(const GridSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    GridFunction f(spec);
    for (auto& v : f.values) v = cd(gauss(rng), gauss(rng));
    return f;
}

}  // namespace

// Direct lattice quadrature, the O(N^{2n}) workhorse.
static void BM_ApplyFioDirect2D(benchmark::State& state) {
    GridSpec spec = GridSpec::make(2, 6.283185307179586, int(state.range(0)));
    GridFunction f = random_function(spec, 1);
    FioOperator op{Amplitude::one(), Phase::wave(1.0), FreqWindow::All};
    for (auto _ : state) benchmark::DoNotOptimize(apply_fio(op, f, QuadratureMode::Direct));
}
BENCHMARK(BM_ApplyFioDirect2D)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_ApplyFioMultiplier2D(benchmark::State& state) {
    GridSpec spec = GridSpec::make(2, 6.283185307179586, int(state.range(0)));
    GridFunction f = random_function(spec, 2);
    FioOperator op{Amplitude::one(), Phase::wave(1.0), FreqWindow::All};
    for (auto _ : state) benchmark::DoNotOptimize(apply_fio(op, f, QuadratureMode::Auto));
}
BENCHMARK(BM_ApplyFioMultiplier2D)->Arg(64)->Arg(128)->Arg(256);

static void BM_ConeKernel(benchmark::State& state) {
    GridSpec spec = GridSpec::make(2, 8.0, int(state.range(0)));
    DyadicCutoffFamily family(spec, BumpProfile::mollifier());
    ConeCover cover = ConeCover::build(4, 2, family.profile());
    for (auto _ : state)
        benchmark::DoNotOptimize(cone_kernel(Amplitude::one(), Phase::wave(1.0), 4, 0,
                                             Vec{0.0, 0.0}, family, cover));
}
BENCHMARK(BM_ConeKernel)->Arg(256)->Arg(512);

static void BM_SolveWave2D(benchmark::State& state) {
    GridSpec spec = GridSpec::make(2, 6.283185307179586, int(state.range(0)));
    CauchyData data(random_function(spec, 3), random_function(spec, 4));
    for (auto _ : state) benchmark::DoNotOptimize(solve_wave(data, 1.0));
}
BENCHMARK(BM_SolveWave2D)->Arg(128)->Arg(256);
