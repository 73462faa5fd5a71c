#pragma once

#include <cstdint>
#include <utility>

#include "hardylab/grid.hpp"

namespace hardylab {

// A simple p-atom: supported on a product of dyadic intervals (the
// moment-bearing axes) times a bounded box A (the remaining axes), with
// ||a||_2 <= (prod |I_i| * |A|)^{1/2 - 1/p} and vanishing fiber moments
// x_i^k, k = 0..N on the moment axes plus a vanishing fiber mean over A.
struct AtomSpec {
    double p = 1.0;  // in (0, 1]
    std::vector<std::pair<double, double>> moment_intervals;  // dyadic, >= 0 side
    std::vector<std::pair<double, double>> a_box;             // may be empty
    std::size_t cells_per_axis = 16;
};

// N = floor(2/p - 3/2).
int atom_moment_order(double p);

bool is_dyadic_interval(double lo, double hi);

// Random candidate, fiberwise moment projection, then rescaled to meet the
// L2 bound with equality. Retries internally on an annihilated candidate.
GridFunction make_simple_atom(const AtomSpec& spec, std::uint64_t seed);

struct AtomCheck {
    double max_moment = 0.0;  // largest absolute fiber moment
    double l2 = 0.0;
    double l2_bound = 0.0;
    bool ok = false;
};
AtomCheck check_atom(const GridFunction& a, const AtomSpec& spec);

// Product measure with density prod t_j^{-2}; per-axis interval unions whose
// closures avoid 0 (infinite outer endpoints allowed).
struct EtaRegion {
    std::vector<std::vector<std::pair<double, double>>> per_axis;
};
double eta_measure(const EtaRegion& region);

enum class DecayOp { fourier, hardy_fourier };
enum class DecaySide { interior, exterior };

// J(r) = \int over the r-indexed region of |Ta|^p d(eta) with
// Ta = (prod t_j) Ff (or the Cesaro-averaged transform), fitted as
// log2 J against r. The proof exponent predicts slope -(Np + 2p - 1).
struct DecayScan {
    std::vector<int> r;
    std::vector<double> j_value, log2_j;
    double slope = 0.0;
    double predicted = 0.0;
    bool flagged = false;  // degenerate scan (vanishing J)
};

DecayScan atom_decay_scan(const GridFunction& a, const AtomSpec& spec, int r_lo,
                          int r_hi, DecaySide side, DecayOp op);

}  // namespace hardylab
