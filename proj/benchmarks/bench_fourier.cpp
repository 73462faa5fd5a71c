#include <benchmark/benchmark.h>

#include <cmath>

#include "hardylab/fourier.hpp"

using namespace hardylab;

namespace {

GridFunction gaussian_1d(std::size_t cells) {
    Axis ax = symmetric_axis(6.0, cells / 2);
    std::vector<cplx> v(ax.cell_count());
    for (std::size_t c = 0; c < v.size(); ++c)
        v[c] = std::exp(-0.5 * ax.mid(c) * ax.mid(c));
    return GridFunction({ax}, std::move(v));
}

void bm_truncated_fourier_1d(benchmark::State& state) {
    const GridFunction f = gaussian_1d(static_cast<std::size_t>(state.range(0)));
    const std::vector<Axis> freq{symmetric_axis(32.0, 512)};
    for (auto _ : state) {
        const GridFunction g = truncated_fourier(f, 8.0, freq);
        benchmark::DoNotOptimize(g.values().data());
    }
}

void bm_truncated_fourier_2d(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Axis ax = symmetric_axis(3.0, n / 2);
    std::vector<cplx> v(ax.cell_count() * ax.cell_count());
    for (std::size_t i = 0; i < ax.cell_count(); ++i)
        for (std::size_t j = 0; j < ax.cell_count(); ++j)
            v[i * ax.cell_count() + j] =
                std::exp(-0.5 * (ax.mid(i) * ax.mid(i) + ax.mid(j) * ax.mid(j)));
    const GridFunction f({ax, ax}, std::move(v));
    const std::vector<Axis> freq(2, symmetric_axis(12.0, 64));
    for (auto _ : state) {
        const GridFunction g = truncated_fourier(f, 6.0, freq);
        benchmark::DoNotOptimize(g.values().data());
    }
}

}  // namespace

BENCHMARK(bm_truncated_fourier_1d)->Arg(128)->Arg(512);
BENCHMARK(bm_truncated_fourier_2d)->Arg(16)->Arg(64);
