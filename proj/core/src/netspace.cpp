#include "hardylab/netspace.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hardylab/grid_io.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/parallel.hpp"

namespace hardylab {

std::size_t DyadicLattice::total() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < dim(); ++i) n *= count(i);
    return n;
}

void DyadicLattice::validate(std::size_t d) const {
    if (k_min.size() != d || k_max.size() != d)
        throw std::invalid_argument("DyadicLattice: dimension mismatch");
    for (std::size_t i = 0; i < d; ++i)
        if (k_min[i] > k_max[i])
            throw std::invalid_argument("DyadicLattice: k_min > k_max");
}

double NetProfile::at(std::span<const int> k) const {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < lattice.dim(); ++i) {
        if (k[i] < lattice.k_min[i] || k[i] > lattice.k_max[i])
            throw std::out_of_range("NetProfile::at: exponent outside lattice");
        flat = flat * lattice.count(i) + static_cast<std::size_t>(k[i] - lattice.k_min[i]);
    }
    return values[flat];
}

namespace {

struct Cand {
    double lo, hi, width;
};

std::vector<Cand> axis_candidates(const Axis& ax, double t) {
    const auto& B = ax.breakpoints;
    const double front = B.front(), back = B.back();
    const double tmin = t * (1.0 - 1e-12);
    std::vector<Cand> out;
    for (std::size_t i = 0; i < B.size(); ++i) {
        for (std::size_t j = i + 1; j < B.size(); ++j) {
            const double w = B[j] - B[i];
            if (w >= tmin) out.push_back({B[i], B[j], w});
        }
    }
    // Width-t intervals anchored at a breakpoint (the side-length constraint
    // active); skip ones that cannot overlap the grid.
    for (double b : B) {
        if (b < back) out.push_back({b, b + t, t});
        if (b > front) out.push_back({b - t, b, t});
    }
    return out;
}

// Prefix of a 1-D complex step profile given by (widths via axis) and data.
struct Prefix1D {
    const Axis* ax;
    std::vector<cplx> P;  // P[j] = integral over the first j cells
    const cplx* data;

    cplx eval(double x) const {
        if (x <= ax->front()) return 0.0;
        if (x >= ax->back()) return P.back();
        const std::size_t c = ax->locate(x);
        return P[c] + (x - ax->lo(c)) * data[c];
    }
};

void net_sup_recurse(const std::vector<Axis>& axes,
                     const std::vector<std::vector<Cand>>& cands,
                     std::size_t level, const std::vector<cplx>& data,
                     double denom, double& best) {
    const std::size_t d = axes.size();
    const Axis& ax = axes[level];
    const std::size_t n = ax.cell_count();
    if (level + 1 == d) {
        Prefix1D pref{&ax, std::vector<cplx>(n + 1, 0.0), data.data()};
        for (std::size_t c = 0; c < n; ++c)
            pref.P[c + 1] = pref.P[c] + data[c] * ax.width(c);
        for (const Cand& cd : cands[level]) {
            const double v = std::abs(pref.eval(cd.hi) - pref.eval(cd.lo));
            best = std::max(best, v / (denom * cd.width));
        }
        return;
    }
    const std::size_t rest = data.size() / n;
    std::vector<cplx> contracted(rest);
    for (const Cand& cd : cands[level]) {
        std::fill(contracted.begin(), contracted.end(), cplx(0.0));
        for (std::size_t c = 0; c < n; ++c) {
            const double w =
                std::max(0.0, std::min(ax.hi(c), cd.hi) - std::max(ax.lo(c), cd.lo));
            if (w == 0.0) continue;
            const cplx* row = data.data() + c * rest;
            for (std::size_t j = 0; j < rest; ++j) contracted[j] += w * row[j];
        }
        net_sup_recurse(axes, cands, level + 1, contracted, denom * cd.width, best);
    }
}

double net_sup_impl(const GridFunction& f, std::span<const double> t) {
    const std::size_t d = f.dim();
    std::vector<std::vector<Cand>> cands(d);
    for (std::size_t i = 0; i < d; ++i) cands[i] = axis_candidates(f.axis(i), t[i]);
    double best = 0.0;
    net_sup_recurse(f.axes(), cands, 0, f.values(), 1.0, best);
    return best;
}

void enforce_monotone(NetProfile& p) {
    // The exact supremum is non-increasing in every exponent; clean up
    // floating-point residue so the invariant holds bitwise.
    const std::size_t d = p.lattice.dim();
    std::array<std::size_t, 3> stride{1, 1, 1};
    stride[d - 1] = 1;
    for (std::size_t i = d - 1; i-- > 0;) stride[i] = stride[i + 1] * p.lattice.count(i + 1);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t cnt = p.lattice.count(i);
        for (std::size_t flat = p.values.size(); flat-- > 0;) {
            const std::size_t pos = (flat / stride[i]) % cnt;
            if (pos + 1 < cnt)
                p.values[flat] = std::max(p.values[flat], p.values[flat + stride[i]]);
        }
    }
}

}  // namespace

double net_sup(const GridFunction& f, std::span<const double> t) {
    if (t.size() != f.dim()) throw std::invalid_argument("net_sup: t dimension mismatch");
    for (double ti : t)
        if (!(ti > 0.0)) throw std::invalid_argument("net_sup: t components must be > 0");
    return net_sup_impl(f, t);
}

NetProfile net_profile(const GridFunction& f, const DyadicLattice& lattice) {
    const std::size_t d = f.dim();
    lattice.validate(d);
    NetProfile prof;
    prof.lattice = lattice;
    prof.values.assign(lattice.total(), 0.0);

    if (d == 1) {
        // All breakpoint pairs once, sorted by width; sweep the lattice from
        // the largest t down keeping a running maximum, then add the
        // anchored width-t candidates per lattice point.
        const Axis& ax = f.axis(0);
        const std::size_t n = ax.cell_count();
        Prefix1D pref{&ax, std::vector<cplx>(n + 1, 0.0), f.values().data()};
        for (std::size_t c = 0; c < n; ++c)
            pref.P[c + 1] = pref.P[c] + f.value(c) * ax.width(c);

        struct PairEntry {
            double width, ratio;
        };
        std::vector<PairEntry> pairs;
        pairs.reserve(n * (n + 1) / 2);
        const auto& B = ax.breakpoints;
        for (std::size_t i = 0; i < B.size(); ++i)
            for (std::size_t j = i + 1; j < B.size(); ++j)
                pairs.push_back({B[j] - B[i], std::abs(pref.P[j] - pref.P[i]) / (B[j] - B[i])});
        std::sort(pairs.begin(), pairs.end(),
                  [](const PairEntry& a, const PairEntry& b) { return a.width > b.width; });

        std::size_t next = 0;
        double running = 0.0;
        const int klo = lattice.k_min[0], khi = lattice.k_max[0];
        for (int k = khi; k >= klo; --k) {
            const double t = std::ldexp(1.0, k);
            const double tmin = t * (1.0 - 1e-12);
            while (next < pairs.size() && pairs[next].width >= tmin)
                running = std::max(running, pairs[next++].ratio);
            double best = running;
            for (double b : B) {
                if (b < ax.back())
                    best = std::max(best, std::abs(pref.eval(b + t) - pref.eval(b)) / t);
                if (b > ax.front())
                    best = std::max(best, std::abs(pref.eval(b) - pref.eval(b - t)) / t);
            }
            prof.values[static_cast<std::size_t>(k - klo)] = best;
        }
    } else {
        std::vector<std::size_t> counts(d);
        for (std::size_t i = 0; i < d; ++i) counts[i] = lattice.count(i);
        parallel_for(prof.values.size(), [&](std::size_t flat) {
            std::vector<double> t(d);
            std::size_t rest = flat;
            for (std::size_t i = d; i-- > 0;) {
                const int k = lattice.k_min[i] + static_cast<int>(rest % counts[i]);
                rest /= counts[i];
                t[i] = std::ldexp(1.0, k);
            }
            prof.values[flat] = net_sup_impl(f, t);
        });
    }
    enforce_monotone(prof);
    return prof;
}

NetNormResult net_norm(const NetProfile& profile, double p, double q) {
    if (!(p > 0.0) || std::isinf(p)) throw std::invalid_argument("net_norm: p in (0,inf)");
    if (!(q > 0.0)) throw std::invalid_argument("net_norm: q in (0,inf]");
    const DyadicLattice& lat = profile.lattice;
    const std::size_t d = lat.dim();

    NetNormResult res;
    double sum = 0.0, sup = 0.0;
    double top_sum = 0.0, bottom_sum = 0.0;
    bool sup_on_boundary = false;

    std::vector<std::size_t> counts(d);
    for (std::size_t i = 0; i < d; ++i) counts[i] = lat.count(i);

    for (std::size_t flat = 0; flat < profile.values.size(); ++flat) {
        const double v = profile.values[flat];
        std::size_t rest = flat;
        int ksum = 0;
        bool on_top = false, on_bottom = false;
        for (std::size_t i = d; i-- > 0;) {
            const std::size_t pos = rest % counts[i];
            rest /= counts[i];
            ksum += lat.k_min[i] + static_cast<int>(pos);
            on_top = on_top || (pos + 1 == counts[i]);
            on_bottom = on_bottom || (pos == 0);
        }
        const double scaled = std::exp2(ksum / p) * v;
        if (std::isinf(q)) {
            if (scaled > sup) {
                sup = scaled;
                sup_on_boundary = on_top || on_bottom;
            }
        } else {
            const double term = std::pow(scaled, q);
            sum += term;
            if (on_top) top_sum += term;
            if (on_bottom) bottom_sum += term;
        }
    }

    if (std::isinf(q)) {
        res.value = sup;
        res.truncated = sup_on_boundary && sup > 0.0;
        return res;
    }

    res.value = std::pow(sum, 1.0 / q);
    // Geometric continuation: past the top the profile of a finite-support
    // function decays like prod 2^{-k_i}, past the bottom it is bounded.
    const double rho_top = std::exp2((1.0 / p - 1.0) * q);
    const double rho_bot = std::exp2(-q / p);
    double est = bottom_sum * rho_bot / (1.0 - rho_bot);
    if (rho_top < 1.0) {
        est += top_sum * rho_top / (1.0 - rho_top);
    } else if (top_sum > 0.0) {
        res.truncated = true;
        est += top_sum;
    }
    res.tail_estimate = std::pow(sum + est, 1.0 / q) - res.value;
    if (res.tail_estimate > 1e-6 * (res.value + 1e-300)) res.truncated = true;
    return res;
}

BoundPair doubling_check(const GridFunction& f, const Box& I, std::span<const double> t) {
    const std::size_t d = f.dim();
    if (I.lo.size() != d || I.hi.size() != d || t.size() != d)
        throw std::invalid_argument("doubling_check: dimension mismatch");
    double denom = 1.0;
    std::vector<double> half(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double w = I.hi[i] - I.lo[i];
        if (!(w > 0.0)) throw std::invalid_argument("doubling_check: empty box side");
        if (w > t[i] * (1.0 + 1e-12))
            throw std::invalid_argument("doubling_check: requires |I_i| <= t_i");
        denom *= t[i];
        half[i] = 0.5 * t[i];
    }
    BoundPair bp;
    bp.lhs = std::abs(box_integral(f, I.lo, I.hi)) / denom;
    bp.rhs = std::exp2(static_cast<double>(d)) * net_sup(f, half);
    return bp;
}

BoundPair hardy_tail_bound(const GridFunction& f, const EpsilonMask& eps,
                           std::span<const int> k) {
    const std::size_t d = f.dim();
    eps.validate(d);
    if (k.size() != d) throw std::invalid_argument("hardy_tail_bound: k dimension mismatch");

    // Right side: profile values at 2^{m_i - 1}, summed well past the support
    // so the dropped geometric remainder is below 1e-12 relative.
    DyadicLattice lat;
    lat.k_min.resize(d);
    lat.k_max.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        lat.k_min[i] = k[i] - 1;
        const double ext = axis_extent(f, i);
        const int top = static_cast<int>(std::ceil(std::log2(std::max(ext, 1e-300)))) + 48;
        lat.k_max[i] = std::max(k[i] - 1, top);
    }
    const NetProfile prof = net_profile(f, lat);
    double sum = 0.0;
    for (double v : prof.values) sum += v;

    BoundPair bp;
    bp.rhs = std::exp2(static_cast<double>(d)) * sum;

    // Left side: sampled sup of |H_eps f| over the dyadic shell (all 2^d sign
    // quadrants). Sampling can only undershoot the true supremum.
    constexpr int kSamplesPerAxis = 5;
    std::vector<std::vector<double>> samples(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (int s = 0; s < kSamplesPerAxis; ++s) {
            const double frac = (s + 0.5) / kSamplesPerAxis;
            const double mag = std::ldexp(1.0, k[i]) * std::exp2(frac);
            samples[i].push_back(mag);
            samples[i].push_back(-mag);
        }
    }
    std::vector<std::size_t> sizes(d);
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        sizes[i] = samples[i].size();
        total *= sizes[i];
    }
    double lhs = 0.0;
    std::vector<double> t(d);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (std::size_t i = d; i-- > 0;) {
            t[i] = samples[i][rest % sizes[i]];
            rest /= sizes[i];
        }
        lhs = std::max(lhs, std::abs(hardy_pointwise(f, eps, t)));
    }
    bp.lhs = lhs;
    return bp;
}

void write_net_profile_csv(std::ostream& os, const NetProfile& profile) {
    const std::size_t d = profile.lattice.dim();
    for (std::size_t i = 0; i < d; ++i) os << 'k' << i << ',';
    os << "value\n";
    for (std::size_t flat = 0; flat < profile.values.size(); ++flat) {
        std::size_t rest = flat;
        std::array<int, 3> k{};
        for (std::size_t i = d; i-- > 0;) {
            k[i] = profile.lattice.k_min[i] +
                   static_cast<int>(rest % profile.lattice.count(i));
            rest /= profile.lattice.count(i);
        }
        for (std::size_t i = 0; i < d; ++i) os << k[i] << ',';
        os << format_double(profile.values[flat]) << '\n';
    }
}

}  // namespace hardylab
