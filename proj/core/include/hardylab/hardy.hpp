#pragma once

#include "hardylab/grid.hpp"
#include "hardylab/hardy_mask.hpp"

namespace hardylab {

// Exact contribution of each cell of `ax` to (H_{bit,i} f)(t) at fixed
// t != 0. Bit 0 is the Cesaro average over the box between 0 and t, bit 1
// the tail integral of f(sign(t) x)/x over x >= |t|.
std::vector<double> hardy_axis_weights(const Axis& ax, int bit, double t);

// Exact pointwise (H_eps f)(t) for piecewise-constant f; the composition
// collapses to one tensor contraction per axis, so axis order is immaterial.
cplx hardy_pointwise(const GridFunction& f, const EpsilonMask& eps,
                     std::span<const double> t);

struct HardyGridOptions {
    // Midpoint-vs-endpoint refinement tolerance of the output grid. Values
    // stored at cell midpoints are exact regardless; the tolerance only
    // controls how faithfully the piecewise-constant surrogate tracks the
    // rational/log profiles between representatives.
    double rel_tol = 1e-2;
    double tail_factor = 128.0;    // output reaches tail_factor * grid extent
    double inner_factor = 4096.0;  // near-0 resolution floor on Bellman axes
    std::size_t max_cells_per_axis = 6000;
};

// Piecewise-constant surrogate of H_{bit,axis} f on an adaptively refined
// output axis; the other axes are unchanged, so chained components remain
// exact at the representatives.
GridFunction hardy_component(const GridFunction& f, std::size_t axis, int bit,
                             const HardyGridOptions& opts = {});

// Full composition H_eps f. For all-zeros this is the Hardy-Cesaro operator
// H, for all-ones the Hardy-Bellman operator B.
GridFunction hardy_eps(const GridFunction& f, const EpsilonMask& eps,
                       const HardyGridOptions& opts = {});

// H_eps applied to an already-sampled field, evaluated back on the field's
// own grid (no refinement). Used for transform-side fields.
GridFunction hardy_on_grid(const GridFunction& field, const EpsilonMask& eps);

// Exact (H F f)(t): the Hardy-Cesaro average of the full Fourier transform
// of a compactly supported piecewise-constant f, via closed-form kernels.
cplx hardy_cesaro_of_transform(const GridFunction& f, std::span<const double> t);

struct TepsResult {
    GridFunction field;        // H_eps F_{N_last} f on the frequency grid
    std::vector<double> n;     // the schedule
    std::vector<double> gaps;  // sup gaps between consecutive schedule stages
    bool converged = false;    // last gap below tolerance
};

// T_eps f = lim_N H_eps F_N f, certified by sup-norm gaps along the
// schedule. Non-convergence is reported, not fatal.
TepsResult t_epsilon(const GridFunction& f, const EpsilonMask& eps,
                     std::span<const double> schedule,
                     const std::vector<Axis>& freq_axes, double tol);

struct CommuteResult {
    std::vector<double> samples;  // frequency sample points used
    std::vector<cplx> lhs;        // F(H g) exactly, closed form
    std::vector<cplx> rhs;        // B applied to the sampled transform of g
    double max_rel_err = 0.0;     // over samples with |rhs| > 1e-8
    double rhs_tail = 0.0;        // Bellman truncation bound past the grid
};

// Commutation identity F(H g) = B(F g) for one-dimensional g. The left side
// is the full transform of the piecewise-rational H g (cell kernels plus the
// analytic 1/x tails), the right side applies the Bellman weights to the
// sampled transform field; the two routes share no code path.
CommuteResult commute_check(const GridFunction& g,
                            const std::vector<Axis>& freq_axes,
                            double sample_min_abs = 0.25,
                            double sample_max_abs = 4.0);

}  // namespace hardylab
