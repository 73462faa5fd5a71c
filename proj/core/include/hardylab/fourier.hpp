#pragma once

#include "hardylab/grid.hpp"
#include "hardylab/netspace.hpp"

namespace hardylab {

// Frequency grids are ordinary axes, symmetric about 0 with a breakpoint at
// 0; validated by this helper.
void validate_frequency_axes(const std::vector<Axis>& axes);

// Truncated Fourier transform (F_N f)(xi) = \int_{Q_N} f(x) e^{-i(xi,x)} dx,
// where Q_N is the cube of edge length N centered at 0. Values are exact at
// the frequency-cell midpoints: per cell the kernel integral has the closed
// form e^{-i xi m} (b-a) sinc(xi (b-a)/2), with the Taylor branch below the
// removable-singularity threshold |xi| (b-a) < 1e-6.
GridFunction truncated_fourier(const GridFunction& f, double N,
                               const std::vector<Axis>& freq_axes);

// Mixed-jump constants: |F f(xi)| <= C_S prod_{i in S} 1/|xi_i| for every
// axis subset S (integration by parts once per axis in S). Index by bitmask.
std::vector<double> fourier_tail_constants(const GridFunction& f);

// Upper bound for \int_{outside box} (prod |xi_i|^{beta_i} |F f|)^q dxi given
// the transform is only represented inside the frequency grid. Returns +inf
// when an exponent combination is non-integrable.
double fourier_exterior_tail(const GridFunction& f,
                             const std::vector<Axis>& freq_axes,
                             std::span<const double> beta, double q);

struct NormRequest {
    enum class Kind { weighted, net } kind = Kind::weighted;
    WeightedNormSpec weighted;  // when kind == weighted
    double net_p = 2.0, net_q = 2.0;
    DyadicLattice net_lattice;  // when kind == net
};

// || F_{N2} f - F_{N1} f || in the requested norm, both transforms sampled on
// the same frequency grid.
double fourier_cauchy_gap(const GridFunction& f, double n1, double n2,
                          const std::vector<Axis>& freq_axes,
                          const NormRequest& norm);

}  // namespace hardylab
