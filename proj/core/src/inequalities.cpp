#include "hardylab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "hardylab/fourier.hpp"
#include "hardylab/parallel.hpp"
#include "hardylab/rearrange.hpp"
#include "hardylab/rng.hpp"

namespace hardylab {

namespace {

constexpr double kEqTol = 1e-12;

double conj_exp(double r) { return r / (r - 1.0); }

}  // namespace

std::vector<std::string> validate_params(const PittParams& p) {
    std::vector<std::string> v;
    if (!(p.d >= 1 && p.d <= 3)) v.push_back("d must be 1..3");
    if (!(p.r > 1.0) || std::isinf(p.r)) v.push_back("r must lie in (1,inf)");
    if (!(p.q > 1.0) || std::isinf(p.q)) v.push_back("q must lie in (1,inf)");
    if (!v.empty()) return v;
    if (!(p.r <= p.q)) v.push_back("requires r <= q");
    const double rp = conj_exp(p.r);
    const double balance = 1.0 / rp - 1.0 / p.q - p.beta;
    if (std::abs(p.alpha - balance) > kEqTol)
        v.push_back("index balance alpha = 1/r' - 1/q - beta violated");
    if (!(p.alpha < 1.0 / rp - kEqTol)) v.push_back("requires alpha < 1/r'");
    switch (p.variant) {
        case PittVariant::pitt:
            if (p.alpha < -kEqTol) v.push_back("requires alpha >= 0");
            if (p.beta > kEqTol) v.push_back("requires beta <= 0");
            break;
        case PittVariant::alpha_nonneg:
            if (p.alpha < -kEqTol) v.push_back("requires alpha >= 0");
            break;
        case PittVariant::beta_nonpos:
            if (p.alpha < 1.0 / rp - 1.0 / p.q - kEqTol)
                v.push_back("requires 1/r' - 1/q <= alpha");
            break;
    }
    return v;
}

const char* kind_name(InequalityKind k) {
    switch (k) {
        case InequalityKind::hausdorff_young: return "hausdorff_young";
        case InequalityKind::pitt: return "pitt";
        case InequalityKind::pitt_diag: return "pitt_diag";
        case InequalityKind::teps_alpha: return "teps_alpha";
        case InequalityKind::teps_alpha_diag: return "teps_alpha_diag";
        case InequalityKind::teps_beta: return "teps_beta";
        case InequalityKind::teps_beta_diag: return "teps_beta_diag";
        case InequalityKind::hardy_lp: return "hardy_lp";
        case InequalityKind::hardy_hb: return "hardy_hb";
        case InequalityKind::reverse_hardy: return "reverse_hardy";
        case InequalityKind::hardy_averages: return "hardy_averages";
    }
    return "?";
}

std::optional<InequalityKind> kind_from_name(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(InequalityKind::hardy_averages); ++k) {
        const auto kk = static_cast<InequalityKind>(k);
        if (s == kind_name(kk)) return kk;
    }
    return std::nullopt;
}

bool InequalityReport::flagged(const std::string& name) const {
    return std::find(flags.begin(), flags.end(), name) != flags.end();
}

std::string InequalityReport::flags_str() const {
    std::string s;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (i) s += ';';
        s += flags[i];
    }
    return s;
}

namespace {

void set_ratio(InequalityReport& rep) {
    if (rep.rhs == 0.0) {
        rep.ratio = rep.lhs == 0.0 ? std::nan("") : INFINITY;
        rep.flags.push_back(rep.lhs == 0.0 ? "nan" : "infinite_ratio");
    } else {
        rep.ratio = rep.lhs / rep.rhs;
    }
}

std::vector<Axis> default_freq_axes(std::size_t d, const HarnessSettings& s) {
    std::vector<Axis> axes(d);
    for (std::size_t i = 0; i < d; ++i)
        axes[i] = symmetric_axis(s.freq_extent, s.freq_half_cells);
    return axes;
}

WeightedNormSpec broadcast(double e, double power, std::size_t d) {
    WeightedNormSpec w;
    w.exponent_per_axis.assign(d, e);
    w.outer_power = power;
    return w;
}

EpsilonMask mask_or_zeros(const HarnessSettings& s, std::size_t d) {
    if (s.eps.bits.empty()) return EpsilonMask::zeros(d);
    EpsilonMask m = s.eps;
    m.validate(d);
    return m;
}

// Exterior weighted tail of a Hardy-composed field: Cesaro axes decay like
// 1/|t| past the support with constant bounded by \int |f|, Bellman axes
// vanish there exactly.
double hardy_exterior_tail(const GridFunction& f, const EpsilonMask& eps,
                           std::span<const double> outer_bound, double beta,
                           double q) {
    const std::size_t d = f.dim();
    const double mass = lp_norm(f, 1.0);
    double total = 0.0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
        bool possible = true;
        double piece = std::pow(mass, q);
        for (std::size_t i = 0; i < d; ++i) {
            const double X = outer_bound[i];
            double expo, integral_i;
            if ((mask >> i) & 1u) {
                if (eps.bits[i] == 1) {
                    possible = false;  // Bellman tail is exactly zero
                    break;
                }
                expo = (beta - 1.0) * q;
                if (expo >= -1.0) return INFINITY;
                integral_i = 2.0 * std::pow(X, expo + 1.0) / (-(expo + 1.0));
            } else {
                expo = beta * q;
                if (expo <= -1.0) return INFINITY;
                integral_i = 2.0 * std::pow(X, expo + 1.0) / (expo + 1.0);
            }
            piece *= integral_i;
        }
        if (possible) total += piece;
    }
    return std::pow(total, 1.0 / q);
}

void require_valid(const PittParams& p) {
    const auto v = validate_params(p);
    if (!v.empty()) {
        std::string msg = "invalid parameters:";
        for (const auto& s : v) msg += " [" + s + "]";
        throw std::invalid_argument(msg);
    }
}

PittParams diag_params(double r, bool alpha_zero) {
    PittParams p;
    p.r = r;
    p.q = r;
    if (alpha_zero) {  // alpha = 0, beta = 1 - 2/r
        p.alpha = 0.0;
        p.beta = 1.0 - 2.0 / r;
        p.variant = PittVariant::alpha_nonneg;
    } else {  // beta = 0, alpha = 1 - 2/r
        p.beta = 0.0;
        p.alpha = 1.0 - 2.0 / r;
        p.variant = PittVariant::beta_nonpos;
    }
    return p;
}

InequalityReport transform_side_report(InequalityKind kind, const GridFunction& f,
                                       const PittParams& pp, const HarnessSettings& s,
                                       bool through_teps) {
    const std::size_t d = f.dim();
    InequalityReport rep;
    rep.kind = kind_name(kind);
    rep.n = s.schedule.back();

    const std::vector<Axis> freq = default_freq_axes(d, s);
    const EpsilonMask eps = mask_or_zeros(s, d);

    GridFunction field;
    if (through_teps) {
        TepsResult tr = t_epsilon(f, eps, s.schedule, freq, s.teps_tol);
        if (!tr.converged) rep.flags.push_back("nonconverged");
        field = std::move(tr.field);
    } else {
        field = truncated_fourier(f, s.schedule.back(), freq);
    }

    rep.lhs = weighted_integral(field, broadcast(pp.beta, pp.q, d));
    rep.rhs = weighted_integral(f, broadcast(pp.alpha, pp.r, d));

    std::vector<double> X(d, s.freq_extent);
    if (through_teps) {
        rep.tail_lhs = hardy_exterior_tail(f, eps, X, pp.beta, pp.q);
    } else {
        std::vector<double> beta(d, pp.beta);
        rep.tail_lhs = fourier_exterior_tail(f, freq, beta, pp.q);
    }
    if (!(rep.tail_lhs <= 0.1 * rep.lhs)) rep.flags.push_back("unreliable_tail");
    set_ratio(rep);
    return rep;
}

}  // namespace

InequalityReport inequality_ratio(InequalityKind kind, const GridFunction& f,
                                  const HarnessSettings& s) {
    const std::size_t d = f.dim();
    switch (kind) {
        case InequalityKind::hausdorff_young: {
            PittParams pp = s.pitt;
            if (!(pp.r > 1.0 && pp.r <= 2.0))
                throw std::invalid_argument("hausdorff_young: requires 1 < r <= 2");
            pp.q = conj_exp(pp.r);
            pp.alpha = 0.0;
            pp.beta = 0.0;
            pp.variant = PittVariant::pitt;
            require_valid(pp);
            return transform_side_report(kind, f, pp, s, false);
        }
        case InequalityKind::pitt: {
            PittParams pp = s.pitt;
            pp.variant = PittVariant::pitt;
            require_valid(pp);
            return transform_side_report(kind, f, pp, s, false);
        }
        case InequalityKind::pitt_diag: {
            if (!(s.pitt.r > 1.0 && s.pitt.r <= 2.0))
                throw std::invalid_argument("pitt_diag: requires 1 < r <= 2");
            PittParams pp = diag_params(s.pitt.r, true);
            pp.variant = PittVariant::pitt;
            require_valid(pp);
            return transform_side_report(kind, f, pp, s, false);
        }
        case InequalityKind::teps_alpha: {
            PittParams pp = s.pitt;
            pp.variant = PittVariant::alpha_nonneg;
            require_valid(pp);
            return transform_side_report(kind, f, pp, s, true);
        }
        case InequalityKind::teps_alpha_diag: {
            const PittParams pp = diag_params(s.pitt.r, true);
            require_valid(pp);
            return transform_side_report(kind, f, pp, s, true);
        }
        case InequalityKind::teps_beta: {
            PittParams pp = s.pitt;
            pp.variant = PittVariant::beta_nonpos;
            require_valid(pp);
            return transform_side_report(kind, f, pp, s, true);
        }
        case InequalityKind::teps_beta_diag: {
            const PittParams pp = diag_params(s.pitt.r, false);
            require_valid(pp);
            return transform_side_report(kind, f, pp, s, true);
        }
        case InequalityKind::hardy_lp: {
            if (!(s.p > 1.0) || std::isinf(s.p))
                throw std::invalid_argument("hardy_lp: requires 1 < p < inf");
            InequalityReport rep;
            rep.kind = kind_name(kind);
            const EpsilonMask eps = mask_or_zeros(s, d);
            const GridFunction h = hardy_eps(f, eps, s.hardy);
            rep.lhs = lp_norm(h, s.p);
            rep.rhs = lp_norm(f, s.p);
            std::vector<double> X(d);
            for (std::size_t i = 0; i < d; ++i) X[i] = axis_extent(h, i);
            rep.tail_lhs = hardy_exterior_tail(f, eps, X, 0.0, s.p);
            if (!(rep.tail_lhs <= 0.1 * rep.lhs)) rep.flags.push_back("unreliable_tail");
            set_ratio(rep);
            return rep;
        }
        case InequalityKind::hardy_hb: {
            const EpsilonMask eps = mask_or_zeros(s, d);
            bool all0 = true, all1 = true;
            for (int b : eps.bits) {
                all0 = all0 && b == 0;
                all1 = all1 && b == 1;
            }
            if (!all0 && !all1)
                throw std::invalid_argument("hardy_hb: mask must be all zeros or all ones");
            if (all0 && !(s.p > 1.0))
                throw std::invalid_argument("hardy_hb: Cesaro side needs 1 < p <= inf");
            if (all1 && (!(s.p >= 1.0) || std::isinf(s.p)))
                throw std::invalid_argument("hardy_hb: Bellman side needs 1 <= p < inf");
            InequalityReport rep;
            rep.kind = kind_name(kind);
            const GridFunction h = hardy_eps(f, eps, s.hardy);
            if (std::isinf(s.p)) {
                rep.lhs = sup_norm(h);
                rep.rhs = sup_norm(f);
            } else {
                rep.lhs = lp_norm(h, s.p);
                rep.rhs = lp_norm(f, s.p);
                std::vector<double> X(d);
                for (std::size_t i = 0; i < d; ++i) X[i] = axis_extent(h, i);
                rep.tail_lhs = hardy_exterior_tail(f, eps, X, 0.0, s.p);
                if (!(rep.tail_lhs <= 0.1 * rep.lhs)) rep.flags.push_back("unreliable_tail");
            }
            set_ratio(rep);
            return rep;
        }
        case InequalityKind::reverse_hardy: {
            if (!(s.p > 0.0 && s.p <= 1.0))
                throw std::invalid_argument("reverse_hardy: requires 0 < p <= 1");
            if (!is_nonnegative(f))
                throw std::invalid_argument("reverse_hardy: requires f >= 0");
            InequalityReport rep;
            rep.kind = kind_name(kind);
            const WeightedNormSpec w = broadcast((s.p - 2.0) / s.p, s.p, d);
            rep.lhs = weighted_integral(f, w);
            const GridFunction h = hardy_eps(f, EpsilonMask::zeros(d), s.hardy);
            rep.rhs = weighted_integral(h, w);
            std::vector<double> X(d);
            for (std::size_t i = 0; i < d; ++i) X[i] = axis_extent(h, i);
            rep.tail_rhs = hardy_exterior_tail(f, EpsilonMask::zeros(d), X,
                                               (s.p - 2.0) / s.p, s.p);
            set_ratio(rep);
            return rep;
        }
        case InequalityKind::hardy_averages: {
            if (d != 1) throw std::invalid_argument("hardy_averages: one-dimensional only");
            const double q = s.pitt.q, beta = s.pitt.beta;
            if (!(q > 1.0) || !(beta > -1.0 / q) || !(beta < 1.0 - 1.0 / q))
                throw std::invalid_argument(
                    "hardy_averages: requires q > 1 and -1/q < beta < 1 - 1/q");
            if (!is_nonnegative(f))
                throw std::invalid_argument("hardy_averages: requires f >= 0");
            const SupportBox sb = support_box(f);
            if (!sb.empty && sb.lo[0] < 0.0)
                throw std::invalid_argument("hardy_averages: support must lie in (0,inf)");
            InequalityReport rep;
            rep.kind = kind_name(kind);
            const WeightedNormSpec w = broadcast(beta, q, 1);
            const double hterm = weighted_integral(hardy_eps(f, EpsilonMask::zeros(1), s.hardy), w);
            const double bterm = weighted_integral(hardy_eps(f, EpsilonMask::ones(1), s.hardy), w);
            rep.lhs = std::pow(std::pow(hterm, q) + std::pow(bterm, q), 1.0 / q);
            rep.rhs = weighted_integral(f, w);
            std::vector<double> X{axis_extent(f, 0) * s.hardy.tail_factor};
            rep.tail_lhs = hardy_exterior_tail(f, EpsilonMask::zeros(1), X, beta, q);
            if (!(rep.tail_lhs <= 0.1 * rep.lhs)) rep.flags.push_back("unreliable_tail");
            set_ratio(rep);
            return rep;
        }
        default:
            throw std::invalid_argument("inequality_ratio: unknown kind");
    }
}

InequalityReport hlp_net_ratio(const GridFunction& f, double p, double q,
                               double N, const HarnessSettings& s) {
    if (!(p > 1.0) || std::isinf(p))
        throw std::invalid_argument("hlp_net_ratio: requires 1 < p < inf");
    const std::size_t d = f.dim();
    InequalityReport rep;
    rep.kind = "hlp_net";
    rep.n = N;

    const std::vector<Axis> freq = default_freq_axes(d, s);
    const GridFunction field = truncated_fourier(f, N, freq);

    DyadicLattice lat = s.lattice;
    if (lat.k_min.empty()) {
        lat.k_min.assign(d, -16);
        lat.k_max.assign(d, static_cast<int>(std::ceil(std::log2(2.0 * s.freq_extent))));
    }
    lat.validate(d);

    const NetNormResult nn = net_norm(net_profile(field, lat), conj_exp(p), q);
    rep.lhs = nn.value;
    rep.tail_lhs = nn.tail_estimate;
    if (nn.truncated) rep.flags.push_back("lattice_truncated");

    LorentzParams lp;
    lp.p.assign(d, p);
    lp.q.assign(d, q);
    rep.rhs = lorentz_norm(f, lp);
    set_ratio(rep);
    return rep;
}

GridFunction make_family_function(const FamilySpec& spec, int level) {
    if (spec.d < 1 || spec.d > 3)
        throw std::invalid_argument("make_family_function: d must be 1..3");
    if (level < 0) throw std::invalid_argument("make_family_function: level >= 0");
    const std::size_t d = static_cast<std::size_t>(spec.d);
    const std::size_t half = spec.base_half_cells << level;

    std::vector<Axis> axes(d, symmetric_axis(spec.extent, half));
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= axes[i].cell_count();

    // Random families are drawn once on the level-0 grid and resampled, so
    // refinement changes the grid, not the function.
    std::vector<double> coarse;
    const Axis coarse_axis = symmetric_axis(spec.extent, spec.base_half_cells);
    if (spec.name == "random" || spec.name == "random_signed") {
        std::size_t ctotal = 1;
        for (std::size_t i = 0; i < d; ++i) ctotal *= coarse_axis.cell_count();
        Rng rng(spec.seed);
        coarse.resize(ctotal);
        for (double& v : coarse)
            v = spec.name == "random" ? rng.uniform() : rng.normal();
    }

    std::vector<cplx> values(total);
    std::array<std::size_t, 3> idx{};
    std::array<std::size_t, 3> stride{1, 1, 1};
    stride[d - 1] = 1;
    for (std::size_t i = d - 1; i-- > 0;) stride[i] = stride[i + 1] * axes[i + 1].cell_count();
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (std::size_t i = 0; i < d; ++i) {
            idx[i] = rest / stride[i];
            rest %= stride[i];
        }
        std::array<double, 3> x{};
        for (std::size_t i = 0; i < d; ++i) x[i] = axes[i].mid(idx[i]);

        double v = 0.0;
        if (spec.name == "zero") {
            v = 0.0;
        } else if (spec.name == "indicator") {
            v = 1.0;
            for (std::size_t i = 0; i < d; ++i)
                if (!(std::abs(x[i]) < 1.0)) v = 0.0;
        } else if (spec.name == "gaussian") {
            double ss = 0.0;
            for (std::size_t i = 0; i < d; ++i) ss += x[i] * x[i];
            v = std::exp(-0.5 * ss);
        } else if (spec.name == "hat") {
            v = 1.0;
            for (std::size_t i = 0; i < d; ++i)
                v *= std::max(0.0, 1.0 - std::abs(x[i]) / spec.extent);
        } else if (spec.name == "two_bump") {
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                s1 += (x[i] - 0.6) * (x[i] - 0.6);
                s2 += (x[i] + 0.5) * (x[i] + 0.5);
            }
            v = std::exp(-s1 / 0.18) - 0.8 * std::exp(-s2 / 0.08);
        } else if (spec.name == "random" || spec.name == "random_signed") {
            std::size_t cf = 0;
            for (std::size_t i = 0; i < d; ++i) {
                const std::size_t cc = coarse_axis.locate(x[i]);
                cf = cf * coarse_axis.cell_count() + cc;
            }
            v = coarse[cf];
        } else {
            throw std::invalid_argument("make_family_function: unknown family '" +
                                        spec.name + "'");
        }
        values[flat] = v;
    }
    return GridFunction(std::move(axes), std::move(values));
}

SweepResult refinement_sweep(InequalityKind kind, const FamilySpec& family,
                             int levels, const HarnessSettings& s) {
    if (levels < 1) throw std::invalid_argument("refinement_sweep: levels >= 1");
    SweepResult res;
    res.reports.resize(static_cast<std::size_t>(levels));
    parallel_for(static_cast<std::size_t>(levels), [&](std::size_t l) {
        InequalityReport rep =
            inequality_ratio(kind, make_family_function(family, static_cast<int>(l)), s);
        rep.level = static_cast<int>(l);
        res.reports[l] = std::move(rep);
    });
    for (std::size_t l = 0; l + 1 < res.reports.size(); ++l) {
        const double r0 = res.reports[l].ratio, r1 = res.reports[l + 1].ratio;
        if (std::isfinite(r0) && std::isfinite(r1) && r1 > 1.25 * r0)
            res.growth_flagged = true;
    }
    if (res.growth_flagged)
        for (auto& rep : res.reports) rep.flags.push_back("ratio_growth");
    return res;
}

VerifyConfig parse_verify_config(std::istream& is) {
    VerifyConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string t) {
            const auto b = t.find_first_not_of(" \t\r");
            const auto e = t.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto num = [&] { return std::stod(val); };
        if (key == "family") cfg.family.name = val;
        else if (key == "d") cfg.family.d = static_cast<int>(num());
        else if (key == "half_cells") cfg.family.base_half_cells = static_cast<std::size_t>(num());
        else if (key == "extent") cfg.family.extent = num();
        else if (key == "seed") cfg.family.seed = static_cast<std::uint64_t>(num());
        else if (key == "levels") cfg.levels = static_cast<int>(num());
        else if (key == "p") cfg.settings.p = num();
        else if (key == "q") { cfg.settings.q = num(); cfg.settings.pitt.q = num(); }
        else if (key == "r") cfg.settings.pitt.r = num();
        else if (key == "alpha") cfg.settings.pitt.alpha = num();
        else if (key == "beta") cfg.settings.pitt.beta = num();
        else if (key == "variant") {
            if (val == "pitt") cfg.settings.pitt.variant = PittVariant::pitt;
            else if (val == "alpha_nonneg") cfg.settings.pitt.variant = PittVariant::alpha_nonneg;
            else if (val == "beta_nonpos") cfg.settings.pitt.variant = PittVariant::beta_nonpos;
            else throw std::runtime_error("config: unknown variant '" + val + "'");
        }
        else if (key == "epsilon") cfg.settings.eps = EpsilonMask::parse(val);
        else if (key == "schedule") {
            cfg.settings.schedule.clear();
            std::istringstream ss(val);
            std::string tok;
            while (std::getline(ss, tok, ','))
                cfg.settings.schedule.push_back(std::stod(tok));
        }
        else if (key == "freq_extent") cfg.settings.freq_extent = num();
        else if (key == "freq_half_cells") cfg.settings.freq_half_cells = static_cast<std::size_t>(num());
        else throw std::runtime_error("config line " + std::to_string(lineno) +
                                      ": unknown key '" + key + "'");
    }
    cfg.settings.pitt.d = cfg.family.d;
    return cfg;
}

}  // namespace hardylab
