#include "hardylab/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hardylab {

namespace {

constexpr std::size_t kMaxCells = 8u << 20;  // guards iterated-rearrangement growth

struct FiberEntry {
    double value;  // |f| on the cell
    double width;
    std::size_t orig;
};

}  // namespace

GridFunction rearrange_axis(const GridFunction& f, std::size_t axis) {
    const std::size_t d = f.dim();
    if (axis >= d) throw std::invalid_argument("rearrange_axis: axis out of range");
    const Axis& ax = f.axis(axis);
    const std::size_t n = ax.cell_count();

    // Enumerate fibers: the product of the other axes' cells.
    std::size_t fibers = 1;
    for (std::size_t i = 0; i < d; ++i)
        if (i != axis) fibers *= f.axis(i).cell_count();

    std::array<std::size_t, 3> idx{};
    auto fiber_flat = [&](std::size_t fib, std::size_t cell) {
        std::size_t rest = fib;
        for (std::size_t i = d; i-- > 0;) {
            if (i == axis) {
                idx[i] = cell;
            } else {
                idx[i] = rest % f.axis(i).cell_count();
                rest /= f.axis(i).cell_count();
            }
        }
        return f.flat_index(std::span<const std::size_t>(idx.data(), d));
    };

    // Sorted mass lists per fiber plus the union of cumulative widths.
    // Fibers accumulate the same widths in different orders, so their
    // partial sums can disagree by a few ulps; merging cuts within a
    // relative tolerance keeps the fibers' step boundaries aligned.
    std::vector<std::vector<FiberEntry>> sorted(fibers);
    std::vector<double> raw;
    raw.push_back(0.0);
    for (std::size_t fib = 0; fib < fibers; ++fib) {
        auto& list = sorted[fib];
        list.reserve(n);
        for (std::size_t c = 0; c < n; ++c)
            list.push_back({std::abs(f.value(fiber_flat(fib, c))), ax.width(c), c});
        std::sort(list.begin(), list.end(), [](const FiberEntry& a, const FiberEntry& b) {
            if (a.value != b.value) return a.value > b.value;
            return a.orig < b.orig;
        });
        double cum = 0.0;
        for (const FiberEntry& e : list) {
            cum += e.width;
            raw.push_back(cum);
        }
    }
    std::sort(raw.begin(), raw.end());
    const double merge_tol = 1e-12 * (raw.back() + 1.0);
    std::vector<double> cuts;
    for (double v : raw) {
        if (cuts.empty() || v - cuts.back() > merge_tol) cuts.push_back(v);
    }

    Axis out_axis;
    out_axis.breakpoints = cuts;
    const std::size_t m = out_axis.cell_count();
    if (m * fibers > kMaxCells)
        throw std::runtime_error("rearrange_axis: refined grid too large");

    std::vector<Axis> out_axes = f.axes();
    out_axes[axis] = out_axis;

    std::vector<cplx> out_values(m * fibers, 0.0);
    std::array<std::size_t, 3> ostride{1, 1, 1};
    ostride[d - 1] = 1;
    for (std::size_t i = d - 1; i-- > 0;)
        ostride[i] = ostride[i + 1] * out_axes[i + 1].cell_count();
    auto out_flat = [&](std::size_t fib, std::size_t cell) {
        std::size_t rest = fib, flat = 0;
        for (std::size_t i = d; i-- > 0;) {
            std::size_t component;
            if (i == axis) {
                component = cell;
            } else {
                component = rest % f.axis(i).cell_count();
                rest /= f.axis(i).cell_count();
            }
            flat += component * ostride[i];
        }
        return flat;
    };

    // Fill by snapping each fiber's cumulative segment ends onto the merged
    // cuts, so step boundaries coincide across fibers.
    auto cut_index = [&](double x) {
        const auto it = std::lower_bound(cuts.begin(), cuts.end(), x);
        std::size_t j = static_cast<std::size_t>(it - cuts.begin());
        if (j == cuts.size() || (j > 0 && x - cuts[j - 1] < cuts[j] - x)) --j;
        return j;
    };
    for (std::size_t fib = 0; fib < fibers; ++fib) {
        const auto& list = sorted[fib];
        std::size_t cell = 0;
        double cum = 0.0;
        for (const FiberEntry& e : list) {
            cum += e.width;
            const std::size_t end = cut_index(cum);
            for (; cell < end; ++cell) out_values[out_flat(fib, cell)] = e.value;
        }
        for (; cell < m; ++cell) out_values[out_flat(fib, cell)] = 0.0;
    }
    return GridFunction(std::move(out_axes), std::move(out_values));
}

GridFunction iterative_rearrange(const GridFunction& f) {
    GridFunction g = f;
    for (std::size_t i = 0; i < f.dim(); ++i) g = rearrange_axis(g, i);
    return g;
}

double lorentz_norm(const GridFunction& f, const LorentzParams& lp) {
    const std::size_t d = f.dim();
    if (lp.p.size() != d || lp.q.size() != d)
        throw std::invalid_argument("lorentz_norm: parameter dimension mismatch");
    for (std::size_t i = 0; i < d; ++i) {
        if (!(lp.p[i] > 0.0) || std::isinf(lp.p[i]))
            throw std::invalid_argument("lorentz_norm: p must be finite positive");
        if (!(lp.q[i] > 0.0)) throw std::invalid_argument("lorentz_norm: q must be positive");
    }

    const GridFunction r = iterative_rearrange(f);

    // Reduce axis 0, then 1, ... carrying the inner value at power one.
    std::vector<double> cur(r.cell_count());
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = std::abs(r.value(i));

    std::size_t rest = r.cell_count();
    for (std::size_t axisi = 0; axisi < d; ++axisi) {
        const Axis& ax = r.axis(axisi);
        const std::size_t n = ax.cell_count();
        rest /= n;
        const double p = lp.p[axisi], q = lp.q[axisi];
        std::vector<double> next(rest, 0.0);
        // cur is laid out with axis axisi slowest among the remaining axes.
        if (std::isinf(q)) {
            for (std::size_t c = 0; c < n; ++c) {
                const double tfac = std::pow(ax.hi(c), 1.0 / p);
                for (std::size_t j = 0; j < rest; ++j)
                    next[j] = std::max(next[j], tfac * cur[c * rest + j]);
            }
        } else {
            for (std::size_t c = 0; c < n; ++c) {
                // \int_cell t^{q/p - 1} dt; q/p > 0 so always integrable at 0
                const double wfac = power_cell_integral(ax.lo(c), ax.hi(c), q / p - 1.0);
                for (std::size_t j = 0; j < rest; ++j)
                    next[j] += std::pow(cur[c * rest + j], q) * wfac;
            }
            for (double& v : next) v = std::pow(v, 1.0 / q);
        }
        cur = std::move(next);
    }
    return cur[0];
}

namespace {

struct StepFn {  // nonnegative step function on (0, total)
    std::vector<double> cuts;  // starts at 0
    std::vector<double> vals;
};

// Decreasing rearrangement of (value, width) masses.
StepFn sort_masses(std::vector<std::pair<double, double>> masses) {
    std::stable_sort(masses.begin(), masses.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    StepFn s;
    s.cuts.push_back(0.0);
    double cum = 0.0;
    for (const auto& [v, w] : masses) {
        cum += w;
        s.cuts.push_back(cum);
        s.vals.push_back(v);
    }
    return s;
}

}  // namespace

PairingResult hlp_pairing(const GridFunction& g, const GridFunction& phi) {
    if (g.dim() != 1 || phi.dim() != 1)
        throw std::invalid_argument("hlp_pairing: one-dimensional inputs required");
    if (!is_nonnegative(g) || !is_nonnegative(phi))
        throw std::invalid_argument("hlp_pairing: nonnegative inputs required");

    // phi: contiguous strictly positive support, monotone there.
    const Axis& pax = phi.axis(0);
    std::size_t s_lo = pax.cell_count(), s_hi = 0;
    for (std::size_t c = 0; c < pax.cell_count(); ++c) {
        if (phi.value(c).real() > 0.0) {
            s_lo = std::min(s_lo, c);
            s_hi = std::max(s_hi, c);
        }
    }
    if (s_lo > s_hi) throw std::invalid_argument("hlp_pairing: phi vanishes");
    bool up = true, down = true;
    for (std::size_t c = s_lo; c <= s_hi; ++c) {
        const double v = phi.value(c).real();
        if (!(v > 0.0))
            throw std::invalid_argument("hlp_pairing: phi support has interior zeros");
        if (c > s_lo) {
            const double prev = phi.value(c - 1).real();
            up = up && v >= prev;
            down = down && v <= prev;
        }
    }
    if (!up && !down) throw std::invalid_argument("hlp_pairing: phi not monotone");

    const double supp_lo = pax.lo(s_lo), supp_hi = pax.hi(s_hi);
    for (std::size_t c = 0; c < g.axis(0).cell_count(); ++c) {
        if (std::abs(g.value(c)) == 0.0) continue;
        if (g.axis(0).lo(c) < supp_lo - 1e-15 || g.axis(0).hi(c) > supp_hi + 1e-15)
            throw std::invalid_argument("hlp_pairing: supp g must lie inside supp phi");
    }

    // lhs: g* against the increasing rearrangement of phi (the reciprocal of
    // the decreasing rearrangement of 1/phi).
    std::vector<std::pair<double, double>> gm, pm;
    for (std::size_t c = 0; c < g.axis(0).cell_count(); ++c)
        gm.push_back({g.value(c).real(), g.axis(0).width(c)});
    for (std::size_t c = s_lo; c <= s_hi; ++c)
        pm.push_back({1.0 / phi.value(c).real(), pax.width(c)});
    StepFn gs = sort_masses(std::move(gm));
    StepFn ps = sort_masses(std::move(pm));

    double lhs = 0.0;
    {
        std::size_t i = 0, j = 0;
        double pos = 0.0;
        while (i < gs.vals.size() && j < ps.vals.size()) {
            const double end = std::min(gs.cuts[i + 1], ps.cuts[j + 1]);
            if (end > pos) lhs += gs.vals[i] * (1.0 / ps.vals[j]) * (end - pos);
            pos = end;
            if (end == gs.cuts[i + 1]) ++i;
            if (end == ps.cuts[j + 1]) ++j;
        }
        // g* vanishes beyond |supp g| <= |supp phi|, so the remainder is 0.
    }

    // rhs: \int g phi over the common refinement.
    double rhs = 0.0;
    {
        const Axis& gax = g.axis(0);
        std::vector<double> cuts;
        cuts.insert(cuts.end(), gax.breakpoints.begin(), gax.breakpoints.end());
        cuts.insert(cuts.end(), pax.breakpoints.begin(), pax.breakpoints.end());
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double a = cuts[k], b = cuts[k + 1], m = 0.5 * (a + b);
            if (m < gax.front() || m > gax.back()) continue;
            if (m < pax.front() || m > pax.back()) continue;
            rhs += g.value(gax.locate(m)).real() * phi.value(pax.locate(m)).real() * (b - a);
        }
    }
    return {lhs, rhs};
}

}  // namespace hardylab
