#pragma once

#include <cstdint>

#include "hardylab/grid.hpp"

namespace hardylab {

// Reverse-Hardy sharpness: a single bump of height a_n on (b_n, b_n + d_n)
// normalized so the weighted g-side integral I1 is exactly 1, against the
// weighted (Hg)-side integral I2. With b_n = b_base^n, d_n = d_base^n the
// ratio I2(n+1)/I2(n) tends to (b_base/d_base)^{1-p} per step. Everything is
// evaluated scale-free in rho = d_n/b_n, so large n cannot overflow.
struct ReverseHardyResult {
    int n = 0;
    double i1 = 1.0, i2 = 0.0;
    double log2_i2 = 0.0;
};
ReverseHardyResult reverse_hardy_pair(double p, int n, double b_base = 4.0,
                                      double d_base = 2.0);

// Signed failure of the direct inequality for 0 < p < 1: the alternating
// comb a_n = n^{(1-p)/p} on (2n-1, 2n) / (2n, 2n+1) for n < N gives
// I1 ~ log N while I2 stays bounded.
struct SignedHardyResult {
    int n_limit = 0;
    double i1 = 0.0, i2 = 0.0;
};
SignedHardyResult signed_hardy_pair(double p, int n_limit);

// Rudin-Shapiro signs, two independent routes.
int rudin_shapiro(std::uint64_t n);            // pairwise recurrence
int rudin_shapiro_substring(std::uint64_t n);  // parity of "11" factors in binary

// Incrementally extendable partial sums P_k(t) = sum_{r<=k} eps_r e^{-irt}.
class RudinShapiroSum {
public:
    explicit RudinShapiroSum(double t) : t_(t) {}
    // Extends to index k and returns P_k(t).
    cplx advance_to(int k);
    int index() const { return k_; }

private:
    double t_;
    int k_ = -1;
    cplx sum_ = 0.0;
};

// Coefficient magnitude 1/(sqrt(n+1) log^2(n+2)).
double carleman_coeff(int n);

// Step function with value eps_n c_n on (n - 1/2, n + 1/2), n = 0..n_max.
GridFunction carleman_g(int n_max);

struct CarlemanField {
    std::vector<double> t;
    std::vector<cplx> direct, abel;  // two algebraic routes to f_n(t)
    double max_diff = 0.0;
};
CarlemanField carleman_partial_f(int n, std::span<const double> t);

// Bound constant in a_k <= C / ((k+1) sqrt(k+1) log^2(k+2)); calibrated over
// k < 2^20 and frozen (the observed supremum is below 0.98).
inline constexpr double carleman_abel_constant = 1.5;

struct CarlemanCauchy {
    double sup_gap = 0.0;     // sup_t |f_{2n} - f_n| over the samples
    double tail_bound = 0.0;  // analytic bound from the partial-sum estimates
    bool ok = false;
};
CarlemanCauchy carleman_cauchy_gap(int n, int t_samples, std::uint64_t seed);

// Monotone partial sums of a coefficient functional, with the growth slope
// of log S against log m fitted on dyadic checkpoints.
enum class CarlemanSumKind { l2, lp, weighted };
struct PartialSumScan {
    std::vector<double> m, value;
    double slope = 0.0;  // d log(S) / d log(m) least-squares fit
};
PartialSumScan carleman_partial_sums(CarlemanSumKind kind, double p, int m_max);

}  // namespace hardylab
