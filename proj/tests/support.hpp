#pragma once

// Shared fixtures and independent oracles for the test suites. Everything
// here recomputes expected values from definitions, never through the
// library path it checks.

#include <algorithm>
#include <cmath>
#include <vector>

#include "hardylab/grid.hpp"
#include "hardylab/rng.hpp"

namespace testsup {

using hardylab::Axis;
using hardylab::cplx;
using hardylab::GridFunction;
using hardylab::Rng;

inline GridFunction step_1d(std::vector<double> bps, std::vector<cplx> vals) {
    Axis ax;
    ax.breakpoints = std::move(bps);
    return GridFunction::make({std::move(ax)}, std::move(vals));
}

inline GridFunction indicator_1d(double lo, double hi) {
    return step_1d({lo, hi}, {1.0});
}

// Gaussian exp(-x^2/2) discretized by midpoint sampling.
inline GridFunction gaussian_1d(double extent, std::size_t cells) {
    Axis ax = hardylab::symmetric_axis(extent, cells / 2);
    std::vector<cplx> v(ax.cell_count());
    for (std::size_t c = 0; c < ax.cell_count(); ++c)
        v[c] = std::exp(-0.5 * ax.mid(c) * ax.mid(c));
    return GridFunction({ax}, std::move(v));
}

// Random function on a uniform grid; extent and values drawn from the rng.
inline GridFunction random_uniform_grid(Rng& rng, std::size_t d,
                                        std::size_t cells_per_axis, bool nonneg,
                                        double max_extent = 3.0) {
    std::vector<Axis> axes;
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        const double lo = -rng.uniform(0.5, max_extent);
        const double hi = rng.uniform(0.5, max_extent);
        const std::size_t half = cells_per_axis / 2;
        Axis ax;
        for (std::size_t c = 0; c <= half; ++c) {
            ax.breakpoints.push_back(lo * (1.0 - static_cast<double>(c) / half));
        }
        ax.breakpoints.back() = 0.0;
        for (std::size_t c = 1; c <= half; ++c)
            ax.breakpoints.push_back(hi * static_cast<double>(c) / half);
        axes.push_back(std::move(ax));
        total *= axes.back().cell_count();
    }
    std::vector<cplx> vals(total);
    for (auto& v : vals) v = nonneg ? rng.uniform() : rng.normal();
    return GridFunction(std::move(axes), std::move(vals));
}

// Random function on a non-uniform sign-pure grid.
inline GridFunction random_jittered_grid(Rng& rng, std::size_t d,
                                         std::size_t cells_per_axis, bool nonneg) {
    std::vector<Axis> axes;
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        Axis ax;
        ax.breakpoints.push_back(0.0);
        double x = 0.0;
        for (std::size_t c = 0; c < cells_per_axis; ++c) {
            x += rng.uniform(0.05, 1.0);
            ax.breakpoints.push_back(x);
        }
        const double shift = rng.uniform(0.0, 1.0) < 0.4 ? 0.0 : -x * rng.uniform(0.2, 0.8);
        for (double& b : ax.breakpoints) b += shift;
        // keep the grid sign-pure cellwise
        std::sort(ax.breakpoints.begin(), ax.breakpoints.end());
        bool has_zero = false;
        for (double b : ax.breakpoints) has_zero = has_zero || b == 0.0;
        if (!has_zero && ax.breakpoints.front() < 0.0 && ax.breakpoints.back() > 0.0) {
            ax.breakpoints.push_back(0.0);
            std::sort(ax.breakpoints.begin(), ax.breakpoints.end());
        }
        total *= ax.cell_count();
        axes.push_back(std::move(ax));
    }
    std::vector<cplx> vals(total);
    for (auto& v : vals) v = nonneg ? rng.uniform() : rng.normal();
    return GridFunction(std::move(axes), std::move(vals));
}

// L_p norm straight from the sorted mass list (equimeasurability oracle).
inline double lp_norm_by_masses(const GridFunction& f, double p) {
    double acc = 0.0;
    for (std::size_t flat = 0; flat < f.cell_count(); ++flat)
        acc += std::pow(std::abs(f.value(flat)), p) * f.cell_volume(flat);
    return std::pow(acc, 1.0 / p);
}

// Direct rectangle mean |int_I f| / |I| by brute cell-overlap summation.
inline double rect_mean_brute(const GridFunction& f, const std::vector<double>& lo,
                              const std::vector<double>& hi) {
    const std::size_t d = f.dim();
    cplx acc = 0.0;
    std::array<std::size_t, 3> idx{};
    for (std::size_t flat = 0; flat < f.cell_count(); ++flat) {
        f.unflatten(flat, std::span<std::size_t>(idx.data(), d));
        double w = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double ov = std::min(f.axis(i).hi(idx[i]), hi[i]) -
                              std::max(f.axis(i).lo(idx[i]), lo[i]);
            w *= std::max(0.0, ov);
        }
        acc += w * f.value(flat);
    }
    double vol = 1.0;
    for (std::size_t i = 0; i < d; ++i) vol *= hi[i] - lo[i];
    return std::abs(acc) / vol;
}

// Composite-midpoint quadrature of f(x) e^{-i xi x} over [a,b]; an oracle for
// the closed-form transform kernels.
inline cplx oscillatory_quadrature(const std::function<double(double)>& f, double a,
                                   double b, double xi, int panels = 20000) {
    cplx s = 0.0;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        const double x = a + (i + 0.5) * h;
        s += f(x) * std::polar(1.0, -xi * x);
    }
    return s * h;
}

}  // namespace testsup
