#pragma once

#include "hardylab/grid.hpp"

namespace hardylab {

// Non-increasing rearrangement with respect to one variable: for each fixed
// tuple of the other coordinates the cell masses along `axis` are reordered
// by decreasing |value| onto (0, infinity). Ties break by original cell
// index. The output axis is the union of all fibers' cumulative widths, so
// the result is exactly equimeasurable with |f| fiber by fiber.
GridFunction rearrange_axis(const GridFunction& f, std::size_t axis);

// Applies rearrange_axis in axis order 0,...,d-1.
GridFunction iterative_rearrange(const GridFunction& f);

struct LorentzParams {
    std::vector<double> p;  // componentwise in (0, inf)
    std::vector<double> q;  // componentwise in (0, inf]; INFINITY = sup
};

// Iterated Lorentz norm built from the iterated rearrangement; exact per
// cell. q = infinity components are suprema (attained in the limit at the
// right cell endpoints, which is exact for step profiles).
double lorentz_norm(const GridFunction& f, const LorentzParams& lp);

struct PairingResult {
    double lhs = 0.0, rhs = 0.0;
};

// Hardy-Littlewood-Polya pairing for rearrangements (d = 1):
//   lhs = \int_0^inf g*(t) / (1/phi)*(t) dt,  rhs = \int g phi dx,
// with contract lhs <= rhs. Requires g >= 0, phi strictly positive and
// monotone on its (contiguous) support, and supp g inside supp phi; with
// disjoint pieces the left side is not comparable to the right.
PairingResult hlp_pairing(const GridFunction& g, const GridFunction& phi);

}  // namespace hardylab
