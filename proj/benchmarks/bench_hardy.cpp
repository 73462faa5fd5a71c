#include <benchmark/benchmark.h>

#include "hardylab/hardy.hpp"
#include "hardylab/rng.hpp"

using namespace hardylab;

namespace {

GridFunction random_grid(std::size_t d, std::size_t cells) {
    Rng rng(3);
    Axis ax = symmetric_axis(2.0, cells / 2);
    std::size_t total = 1;
    std::vector<Axis> axes;
    for (std::size_t i = 0; i < d; ++i) {
        axes.push_back(ax);
        total *= ax.cell_count();
    }
    std::vector<cplx> v(total);
    for (auto& x : v) x = rng.normal();
    return GridFunction(std::move(axes), std::move(v));
}

void bm_hardy_pointwise(benchmark::State& state) {
    const GridFunction f = random_grid(2, static_cast<std::size_t>(state.range(0)));
    const EpsilonMask eps{{0, 1}};
    const std::vector<double> t{0.7, -0.4};
    for (auto _ : state) benchmark::DoNotOptimize(hardy_pointwise(f, eps, t));
}

void bm_hardy_eps_1d(benchmark::State& state) {
    const GridFunction f = random_grid(1, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const GridFunction h = hardy_eps(f, EpsilonMask::zeros(1));
        benchmark::DoNotOptimize(h.values().data());
    }
}

void bm_hardy_on_grid(benchmark::State& state) {
    const GridFunction f = random_grid(1, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const GridFunction h = hardy_on_grid(f, EpsilonMask::ones(1));
        benchmark::DoNotOptimize(h.values().data());
    }
}

}  // namespace

BENCHMARK(bm_hardy_pointwise)->Arg(16)->Arg(64);
BENCHMARK(bm_hardy_eps_1d)->Arg(64)->Arg(256);
BENCHMARK(bm_hardy_on_grid)->Arg(256)->Arg(2048);
