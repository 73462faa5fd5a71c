#pragma once

#include <optional>

#include "hardylab/grid.hpp"
#include "hardylab/hardy_mask.hpp"

namespace hardylab {

struct DyadicLattice {
    std::vector<int> k_min, k_max;  // inclusive exponent bounds per axis

    std::size_t dim() const { return k_min.size(); }
    std::size_t count(std::size_t i) const {
        return static_cast<std::size_t>(k_max[i] - k_min[i] + 1);
    }
    std::size_t total() const;
    void validate(std::size_t d) const;
};

// Values of the net average on a dyadic lattice; entry (k_1,...,k_d) is
// fbar(2^{k_1},...,2^{k_d}; M), row-major with the last axis fastest.
struct NetProfile {
    DyadicLattice lattice;
    std::vector<double> values;

    double at(std::span<const int> k) const;
};

// fbar(t; M) = sup over axis-parallel rectangles I with |I_i| >= t_i of
// |\int_I f| / prod |I_i|. For piecewise-constant f the supremum is attained
// with every endpoint either a grid breakpoint or at distance exactly t_i
// from one (the rectangle integral is affine in each endpoint between
// breakpoints and the ratio is piecewise monotone there), so enumerating
// those candidates is exact.
double net_sup(const GridFunction& f, std::span<const double> t);

NetProfile net_profile(const GridFunction& f, const DyadicLattice& lattice);

struct NetNormResult {
    double value = 0.0;
    double tail_estimate = 0.0;  // crude geometric continuation past the lattice
    bool truncated = false;      // lattice too small to capture the profile
};

// Dyadic-sum net norm: (sum_k (2^{(k_1+...+k_d)/p} fbar(2^k))^q)^{1/q}, with
// q = infinity as a supremum.
NetNormResult net_norm(const NetProfile& profile, double p, double q);

struct BoundPair {
    double lhs = 0.0, rhs = 0.0;
};

struct Box {
    std::vector<double> lo, hi;
};

// Doubling bound: |I_i| <= t_i implies
//   |\int_I f| / prod t_i  <=  2^d fbar(t_1/2,...,t_d/2; M).
BoundPair doubling_check(const GridFunction& f, const Box& I,
                         std::span<const double> t);

// Dyadic-shell tail bound for the Hardy family:
//   sup_{2^{k_i} <= |t_i| <= 2^{k_i+1}} |H_eps f(t)|
//     <= 2^d sum_{m >= k} fbar(2^{m_1-1},...,2^{m_d-1}; M).
// The left side is sampled (which can only undershoot the supremum); the
// right sum is extended far enough past the support that the rest is below
// 1e-12 relative.
BoundPair hardy_tail_bound(const GridFunction& f, const EpsilonMask& eps,
                           std::span<const int> k);

// CSV form: one row per lattice point holding the exponent tuple and the
// value, preceded by a header row.
void write_net_profile_csv(std::ostream& os, const NetProfile& profile);

}  // namespace hardylab
