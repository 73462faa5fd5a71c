#include <benchmark/benchmark.h>

#include "hardylab/netspace.hpp"
#include "hardylab/rng.hpp"

using namespace hardylab;

namespace {

GridFunction random_2d(std::size_t cells) {
    Rng rng(1);
    Axis ax = symmetric_axis(2.0, cells / 2);
    std::vector<cplx> v(ax.cell_count() * ax.cell_count());
    for (auto& x : v) x = rng.normal();
    return GridFunction({ax, ax}, std::move(v));
}

void bm_net_sup_2d(benchmark::State& state) {
    const GridFunction f = random_2d(static_cast<std::size_t>(state.range(0)));
    const std::vector<double> t{0.5, 0.5};
    for (auto _ : state) benchmark::DoNotOptimize(net_sup(f, t));
}

void bm_net_profile_2d(benchmark::State& state) {
    const GridFunction f = random_2d(static_cast<std::size_t>(state.range(0)));
    const DyadicLattice lat{{-4, -4}, {4, 4}};
    for (auto _ : state) {
        const NetProfile prof = net_profile(f, lat);
        benchmark::DoNotOptimize(prof.values.data());
    }
}

void bm_net_profile_1d(benchmark::State& state) {
    Rng rng(2);
    Axis ax = symmetric_axis(8.0, static_cast<std::size_t>(state.range(0)) / 2);
    std::vector<cplx> v(ax.cell_count());
    for (auto& x : v) x = rng.normal();
    const GridFunction f({ax}, std::move(v));
    const DyadicLattice lat{{-16}, {8}};
    for (auto _ : state) {
        const NetProfile prof = net_profile(f, lat);
        benchmark::DoNotOptimize(prof.values.data());
    }
}

}  // namespace

BENCHMARK(bm_net_sup_2d)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(bm_net_profile_2d)->Arg(8)->Arg(16);
BENCHMARK(bm_net_profile_1d)->Arg(256)->Arg(1024);
