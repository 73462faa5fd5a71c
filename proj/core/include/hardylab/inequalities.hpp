#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "hardylab/grid.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/netspace.hpp"

namespace hardylab {

// Constraint families for the Pitt-type index balance
// alpha = 1/r' - 1/q - beta.
//   pitt:          0 <= alpha < 1/r' and beta <= 0
//   alpha_nonneg:  0 <= alpha < 1/r'              (beta free)
//   beta_nonpos:   1/r' - 1/q <= alpha < 1/r'     (alpha may be negative)
enum class PittVariant { pitt, alpha_nonneg, beta_nonpos };

struct PittParams {
    int d = 1;
    double r = 2.0, q = 2.0;
    double alpha = 0.0, beta = 0.0;
    PittVariant variant = PittVariant::pitt;
};

// Empty result means the parameter tuple is admissible; otherwise one entry
// per violated clause.
std::vector<std::string> validate_params(const PittParams& p);

enum class InequalityKind {
    hausdorff_young,   // ||F_N f||_{r'} <= C ||f||_r, 1 < r <= 2
    pitt,              // weighted transform norm vs weighted function norm
    pitt_diag,         // alpha = 0, beta = 1 - 2/r, q = r in (1,2]
    teps_alpha,        // T_eps under alpha_nonneg conditions
    teps_alpha_diag,   // its diagonal case: alpha = 0, beta = 1 - 2/r
    teps_beta,         // T_eps under beta_nonpos conditions
    teps_beta_diag,    // its diagonal case: beta = 0, alpha = 1 - 2/r
    hardy_lp,          // ||H_eps f||_p <= C ||f||_p, 1 < p < inf
    hardy_hb,          // endpoint cases: H with p = inf, B with p = 1
    reverse_hardy,     // weighted g-side <= C weighted (Hg)-side, g >= 0, p <= 1
    hardy_averages,    // Cesaro + Bellman averages against the weighted norm
};

const char* kind_name(InequalityKind k);
std::optional<InequalityKind> kind_from_name(const std::string& s);

struct InequalityReport {
    std::string kind;
    int level = 0;
    double n = 0.0;  // truncation parameter when a transform is involved
    double lhs = 0.0, rhs = 0.0;
    double ratio = 0.0;  // inf if rhs = 0 < lhs, NaN if both vanish
    double tail_lhs = 0.0, tail_rhs = 0.0;
    std::vector<std::string> flags;

    bool flagged(const std::string& name) const;
    std::string flags_str() const;  // semicolon joined
};

struct HarnessSettings {
    PittParams pitt;
    double p = 2.0, q = 2.0;  // lp / net / lorentz indices
    EpsilonMask eps;          // empty = all zeros
    std::vector<double> schedule{1.0, 2.0, 4.0, 8.0};
    double freq_extent = 48.0;
    std::size_t freq_half_cells = 960;
    double teps_tol = 1e-8;
    HardyGridOptions hardy;
    DyadicLattice lattice;  // net-norm lattice; derived from the grid if empty
};

InequalityReport inequality_ratio(InequalityKind kind, const GridFunction& f,
                                  const HarnessSettings& s);

// Net-vs-Lorentz transform ratio: lhs is the dyadic net norm N_{p',q} of the
// truncated transform, rhs the iterated Lorentz norm L_{p,q} of f.
InequalityReport hlp_net_ratio(const GridFunction& f, double p, double q,
                               double N, const HarnessSettings& s);

struct FamilySpec {
    std::string name = "gaussian";  // indicator|gaussian|hat|two_bump|random|random_signed
    int d = 1;
    std::size_t base_half_cells = 8;  // per axis per side at level 0
    double extent = 2.0;
    std::uint64_t seed = 1;
};

// Level k refines the level-0 function onto a grid with cells halved k
// times; the underlying function is unchanged.
GridFunction make_family_function(const FamilySpec& spec, int level);

struct SweepResult {
    std::vector<InequalityReport> reports;
    bool growth_flagged = false;  // ratio grew by more than 25% in one step
};

SweepResult refinement_sweep(InequalityKind kind, const FamilySpec& family,
                             int levels, const HarnessSettings& s);

// Flat key = value text; '#' starts a comment. Unknown keys are rejected.
struct VerifyConfig {
    FamilySpec family;
    HarnessSettings settings;
    int levels = 3;
};
VerifyConfig parse_verify_config(std::istream& is);

}  // namespace hardylab
