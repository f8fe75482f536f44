#include <benchmark/benchmark.h>

#include <random>

#include "fiolab/littlewood.hpp"
#include "fiolab/spaces.hpp"

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

static void BM_ForwardTransform1D(benchmark::State& state) {
    GridSpec spec = GridSpec::make(1, 64.0, int(state.range(0)));
    GridFunction f = random_function(spec, 1);
    for (auto _ : state) benchmark::DoNotOptimize(forward_transform(f));
}
BENCHMARK(BM_ForwardTransform1D)->Arg(1 << 10)->Arg(1 << 13)->Arg(1 << 15);

static void BM_TransformRoundTrip2D(benchmark::State& state) {
    GridSpec spec = GridSpec::make(2, 6.283185307179586, int(state.range(0)));
    GridFunction f = random_function(spec, 2);
    for (auto _ : state) benchmark::DoNotOptimize(inverse_transform(forward_transform(f)));
}
BENCHMARK(BM_TransformRoundTrip2D)->Arg(64)->Arg(128)->Arg(256);

static void BM_BandProject2D(benchmark::State& state) {
    GridSpec spec = GridSpec::make(2, 6.283185307179586, int(state.range(0)));
    DyadicCutoffFamily family(spec, BumpProfile::mollifier());
    GridFunction f = random_function(spec, 3);
    for (auto _ : state) benchmark::DoNotOptimize(band_project(f, 3, family));
}
BENCHMARK(BM_BandProject2D)->Arg(64)->Arg(128)->Arg(256);

static void BM_BesovNorm2D(benchmark::State& state) {
    GridSpec spec = GridSpec::make(2, 6.283185307179586, 128);
    DyadicCutoffFamily family(spec, BumpProfile::mollifier());
    GridFunction f = random_function(spec, 4);
    SpaceParams params = SpaceParams::make(SpaceKind::Besov, 0.5, double(state.range(0)), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(besov_norm(f, params, family));
}
BENCHMARK(BM_BesovNorm2D)->Arg(1)->Arg(2);

BENCHMARK_MAIN();
