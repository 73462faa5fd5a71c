#include "hardylab/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hardylab/fourier.hpp"
#include "hardylab/parallel.hpp"
#include "hardylab/special.hpp"

namespace hardylab {

std::vector<double> hardy_axis_weights(const Axis& ax, int bit, double t) {
    if (t == 0.0) throw std::domain_error("hardy_axis_weights: t must be nonzero");
    const std::size_t n = ax.cell_count();
    std::vector<double> w(n, 0.0);
    if (bit == 0) {
        const double lo = std::min(0.0, t), hi = std::max(0.0, t);
        const double inv = 1.0 / std::abs(t);
        for (std::size_t c = 0; c < n; ++c) {
            const double ov = std::min(ax.hi(c), hi) - std::max(ax.lo(c), lo);
            if (ov > 0.0) w[c] = ov * inv;
        }
    } else if (bit == 1) {
        const double at = std::abs(t);
        if (t > 0.0) {
            for (std::size_t c = 0; c < n; ++c) {
                if (ax.lo(c) < 0.0) continue;  // samples the positive side only
                const double a = std::max(ax.lo(c), at);
                if (ax.hi(c) > a) w[c] = std::log(ax.hi(c) / a);
            }
        } else {
            for (std::size_t c = 0; c < n; ++c) {
                if (ax.hi(c) > 0.0) continue;
                const double a = std::max(-ax.hi(c), at);
                if (-ax.lo(c) > a) w[c] = std::log(-ax.lo(c) / a);
            }
        }
    } else {
        throw std::invalid_argument("hardy_axis_weights: bit must be 0 or 1");
    }
    return w;
}

cplx hardy_pointwise(const GridFunction& f, const EpsilonMask& eps,
                     std::span<const double> t) {
    const std::size_t d = f.dim();
    eps.validate(d);
    if (t.size() != d) throw std::invalid_argument("hardy_pointwise: t dimension mismatch");

    std::vector<cplx> cur = f.values();
    std::size_t trail = f.cell_count();
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t n = f.axis(i).cell_count();
        trail /= n;
        const std::vector<double> w = hardy_axis_weights(f.axis(i), eps.bits[i], t[i]);
        std::vector<cplx> next(trail, 0.0);
        for (std::size_t c = 0; c < n; ++c) {
            if (w[c] == 0.0) continue;
            const cplx* row = cur.data() + c * trail;
            for (std::size_t j = 0; j < trail; ++j) next[j] += w[c] * row[j];
        }
        cur = std::move(next);
    }
    return cur[0];
}

namespace {

// Unit probe masses: the refinement must depend only on the axis geometry
// and the bit, never on intermediate values, so chained components over
// different axis orders land on identical grids.
std::vector<double> probe_weights(const Axis& ax) {
    return std::vector<double>(ax.cell_count(), 1.0);
}

double probe(const Axis& in, int bit, const std::vector<double>& collapse, double t) {
    if (t == 0.0) return 0.0;
    const std::vector<double> w = hardy_axis_weights(in, bit, t);
    double s = 0.0;
    for (std::size_t c = 0; c < w.size(); ++c) s += w[c] * collapse[c];
    return s;
}

Axis hardy_output_axis(const Axis& in, int bit, const std::vector<double>& collapse,
                       const HardyGridOptions& opts) {
    const double extent = std::max(std::abs(in.front()), std::abs(in.back()));
    const double T = opts.tail_factor * extent;

    // Per sign side: segments between profile kinks (the input breakpoints
    // on that side), bisected until the probe is resolved.
    std::vector<double> bps;
    bps.push_back(0.0);

    double scale = 0.0;
    auto add_side = [&](double sgn) {
        std::vector<double> kinks;
        kinks.push_back(0.0);
        for (double b : in.breakpoints) {
            const double m = sgn * b;
            if (m > 0.0) kinks.push_back(m);
        }
        std::sort(kinks.begin(), kinks.end());
        kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
        if (kinks.back() < T) kinks.push_back(T);

        // A Bellman axis whose support reaches 0 grows like log(1/t); keep a
        // resolution floor instead of chasing the divergence.
        if (bit == 1 && kinks.size() > 1 && kinks[1] > 0.0) {
            const double floor_t = kinks[1] / opts.inner_factor;
            kinks.insert(kinks.begin() + 1, floor_t);
        }

        for (double k : kinks) scale = std::max(scale, std::abs(probe(in, bit, collapse, sgn * k)));

        struct Seg {
            double a, b, fa, fb;
            int depth;
        };
        std::vector<Seg> stack;
        for (std::size_t i = 0; i + 1 < kinks.size(); ++i) {
            if (bit == 1 && i == 0 && kinks[0] == 0.0 && kinks.size() > 2) {
                // innermost floor cell, never bisected
                bps.push_back(sgn * kinks[1]);
                continue;
            }
            stack.push_back({kinks[i], kinks[i + 1],
                             probe(in, bit, collapse, sgn * std::max(kinks[i], 1e-300)),
                             probe(in, bit, collapse, sgn * kinks[i + 1]), 0});
            bps.push_back(sgn * kinks[i + 1]);
        }
        std::size_t budget = opts.max_cells_per_axis;
        while (!stack.empty()) {
            const Seg s = stack.back();
            stack.pop_back();
            const double mid = 0.5 * (s.a + s.b);
            const double fm = probe(in, bit, collapse, sgn * mid);
            const double disc = std::max(std::abs(fm - s.fa), std::abs(fm - s.fb));
            // the floor keeps near-zero stretches (support edges) from being
            // split all the way to the depth cap
            const double local = std::max({std::abs(fm), std::abs(s.fa), std::abs(s.fb),
                                           1e-3 * scale});
            if (disc > opts.rel_tol * local && s.depth < 26 && bps.size() < budget) {
                bps.push_back(sgn * mid);
                stack.push_back({s.a, mid, s.fa, fm, s.depth + 1});
                stack.push_back({mid, s.b, fm, s.fb, s.depth + 1});
            }
        }
    };
    add_side(+1.0);
    add_side(-1.0);

    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    Axis out;
    out.breakpoints = std::move(bps);
    out.validate();
    return out;
}

GridFunction contract_with_axes(const GridFunction& f,
                                const std::vector<Axis>& out_axes,
                                const EpsilonMask& eps,
                                const std::vector<bool>& touched) {
    const std::size_t d = f.dim();
    std::size_t out_total = 1;
    for (const Axis& a : out_axes) out_total *= a.cell_count();
    if (out_total > (std::size_t{1} << 25))
        throw std::runtime_error(
            "hardy surrogate: output grid too large; coarsen HardyGridOptions "
            "(rel_tol, tail_factor, max_cells_per_axis)");
    std::vector<cplx> cur = f.values();
    std::size_t lead = 1, trail = f.cell_count();
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t nc = f.axis(i).cell_count();
        trail /= nc;
        if (!touched[i]) {
            lead *= nc;
            continue;
        }
        const std::size_t ns = out_axes[i].cell_count();
        std::vector<cplx> next(lead * ns * trail, 0.0);
        parallel_for(ns, [&](std::size_t s) {
            const std::vector<double> w =
                hardy_axis_weights(f.axis(i), eps.bits[i], out_axes[i].mid(s));
            for (std::size_t L = 0; L < lead; ++L) {
                cplx* out = next.data() + (L * ns + s) * trail;
                for (std::size_t c = 0; c < nc; ++c) {
                    if (w[c] == 0.0) continue;
                    const cplx* in = cur.data() + (L * nc + c) * trail;
                    for (std::size_t j = 0; j < trail; ++j) out[j] += w[c] * in[j];
                }
            }
        });
        cur = std::move(next);
        lead *= ns;
    }
    return GridFunction(out_axes, std::move(cur));
}

}  // namespace

GridFunction hardy_component(const GridFunction& f, std::size_t axis, int bit,
                             const HardyGridOptions& opts) {
    const std::size_t d = f.dim();
    if (axis >= d) throw std::invalid_argument("hardy_component: axis out of range");
    EpsilonMask eps = EpsilonMask::zeros(d);
    eps.bits[axis] = bit;
    std::vector<Axis> out_axes = f.axes();
    out_axes[axis] = hardy_output_axis(f.axis(axis), bit, probe_weights(f.axis(axis)), opts);
    std::vector<bool> touched(d, false);
    touched[axis] = true;
    return contract_with_axes(f, out_axes, eps, touched);
}

GridFunction hardy_eps(const GridFunction& f, const EpsilonMask& eps,
                       const HardyGridOptions& opts) {
    const std::size_t d = f.dim();
    eps.validate(d);
    std::vector<Axis> out_axes(d);
    for (std::size_t i = 0; i < d; ++i)
        out_axes[i] = hardy_output_axis(f.axis(i), eps.bits[i], probe_weights(f.axis(i)), opts);
    return contract_with_axes(f, out_axes, eps, std::vector<bool>(d, true));
}

GridFunction hardy_on_grid(const GridFunction& field, const EpsilonMask& eps) {
    const std::size_t d = field.dim();
    eps.validate(d);
    return contract_with_axes(field, field.axes(), eps, std::vector<bool>(d, true));
}

cplx hardy_cesaro_of_transform(const GridFunction& f, std::span<const double> t) {
    const std::size_t d = f.dim();
    if (t.size() != d)
        throw std::invalid_argument("hardy_cesaro_of_transform: t dimension mismatch");
    double inv = 1.0;
    for (double ti : t) {
        if (ti == 0.0)
            throw std::domain_error("hardy_cesaro_of_transform: t on a hyperplane");
        inv /= ti;
    }
    // Per-axis kernels \int_cell (1 - e^{-i t x}) / (i x) dx, contracted.
    std::array<std::vector<cplx>, 3> K;
    for (std::size_t i = 0; i < d; ++i) {
        const Axis& ax = f.axis(i);
        K[i].resize(ax.cell_count());
        for (std::size_t c = 0; c < ax.cell_count(); ++c)
            K[i][c] = hardy_fourier_cell_integral(t[i], ax.lo(c), ax.hi(c));
    }
    std::vector<cplx> cur = f.values();
    std::size_t trail = f.cell_count();
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t n = f.axis(i).cell_count();
        trail /= n;
        std::vector<cplx> next(trail, 0.0);
        for (std::size_t c = 0; c < n; ++c) {
            const cplx k = K[i][c];
            if (k == cplx(0.0)) continue;
            const cplx* row = cur.data() + c * trail;
            for (std::size_t j = 0; j < trail; ++j) next[j] += k * row[j];
        }
        cur = std::move(next);
    }
    return inv * cur[0];
}

TepsResult t_epsilon(const GridFunction& f, const EpsilonMask& eps,
                     std::span<const double> schedule,
                     const std::vector<Axis>& freq_axes, double tol) {
    eps.validate(f.dim());
    if (schedule.empty()) throw std::invalid_argument("t_epsilon: empty schedule");
    for (std::size_t i = 0; i + 1 < schedule.size(); ++i)
        if (!(schedule[i] < schedule[i + 1]))
            throw std::invalid_argument("t_epsilon: schedule must increase");

    TepsResult res;
    res.n.assign(schedule.begin(), schedule.end());
    GridFunction prev;
    for (std::size_t s = 0; s < schedule.size(); ++s) {
        GridFunction h = hardy_on_grid(truncated_fourier(f, schedule[s], freq_axes), eps);
        if (s > 0) res.gaps.push_back(sup_norm(subtract(h, prev)));
        prev = std::move(h);
    }
    res.converged = !res.gaps.empty() && res.gaps.back() <= tol;
    res.field = std::move(prev);
    return res;
}

CommuteResult commute_check(const GridFunction& g,
                            const std::vector<Axis>& freq_axes,
                            double sample_min_abs, double sample_max_abs) {
    if (g.dim() != 1 || freq_axes.size() != 1)
        throw std::invalid_argument("commute_check: one-dimensional only");
    validate_frequency_axes(freq_axes);
    const Axis& gax = g.axis(0);
    const std::size_t n = gax.cell_count();

    if (!is_real(g)) throw std::invalid_argument("commute_check: g must be real");

    // Piecewise form of H g: on each input cell H g(x) = m + c/x, with the
    // exact 1/x tails beyond the grid. F is anchored at the breakpoint
    // nearest 0 so the cells touching 0 carry an exactly-zero 1/x part.
    std::vector<double> F(n + 1, 0.0);  // F(b_j) = int_0^{b_j} g
    {
        std::size_t z = 0;  // first breakpoint >= 0
        while (z < n && gax.breakpoints[z] < 0.0) ++z;
        F[z] = 0.0;
        for (std::size_t c = z; c < n; ++c)
            F[c + 1] = F[c] + g.value(c).real() * gax.width(c);
        for (std::size_t c = z; c-- > 0;)
            F[c] = F[c + 1] - g.value(c).real() * gax.width(c);
    }

    auto lhs_at = [&](double y) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            const double a = gax.lo(c), b = gax.hi(c);
            const double m = g.value(c).real();
            const double cc = F[c] - m * a;
            if (m != 0.0) s += m * oscillatory_cell_integral(y, a, b);
            if (cc != 0.0) s += cc * oscillatory_over_x_integral(a, b, y);
        }
        if (F[n] != 0.0) s += F[n] * oscillatory_over_x_integral(gax.back(), INFINITY, y);
        if (gax.front() < 0.0 && F[0] != 0.0)
            s += F[0] * oscillatory_over_x_integral(-INFINITY, gax.front(), y);
        // H g vanishes on (0, front) when the support starts right of 0, and
        // symmetrically below; nothing to add there.
        return s;
    };

    // Right side: Bellman weights applied to the exactly-sampled transform,
    // plus the closed-form tail past the grid. The transform of a step
    // function is exactly (1/iu) sum_j J_j e^{-i u b_j} over its jumps, so
    // \int_X^inf ... du/u is an E2 sum; without it the aliasing bands of the
    // sampled input (near multiples of 2 pi / cell width) are dropped.
    const double cover = 2.0 * std::max(std::abs(gax.front()), std::abs(gax.back())) + 1.0;
    const GridFunction ghat = truncated_fourier(g, cover, freq_axes);
    const GridFunction bfield = hardy_on_grid(ghat, EpsilonMask::ones(1));

    CommuteResult res;
    const Axis& fax = freq_axes[0];
    const double X = std::max(std::abs(fax.front()), std::abs(fax.back()));
    cplx tail_pos = 0.0, tail_neg = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        const double jump =
            (j < n ? g.value(j).real() : 0.0) - (j > 0 ? g.value(j - 1).real() : 0.0);
        if (jump == 0.0) continue;
        const cplx e2 = expint_e2_ix(gax.breakpoints[j] * X);
        tail_pos += jump * e2;
        tail_neg -= jump * std::conj(e2);
    }
    tail_pos /= cplx(0.0, X);
    tail_neg /= cplx(0.0, X);
    res.rhs_tail = std::max(std::abs(tail_pos), std::abs(tail_neg));

    for (std::size_t s = 0; s < fax.cell_count(); ++s) {
        const double y = fax.mid(s);
        if (std::abs(y) < sample_min_abs || std::abs(y) > sample_max_abs) continue;
        res.samples.push_back(y);
        res.lhs.push_back(lhs_at(y));
        res.rhs.push_back(bfield.value(s) + (y > 0.0 ? tail_pos : tail_neg));
    }
    for (std::size_t i = 0; i < res.samples.size(); ++i) {
        const double denom = std::abs(res.rhs[i]);
        if (denom > 1e-8)
            res.max_rel_err = std::max(res.max_rel_err, std::abs(res.lhs[i] - res.rhs[i]) / denom);
    }
    return res;
}

}  // namespace hardylab
