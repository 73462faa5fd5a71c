#include "hardylab/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hardylab/rng.hpp"
#include "hardylab/special.hpp"

namespace hardylab {

int atom_moment_order(double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("atom_moment_order: p must lie in (0,1]");
    return static_cast<int>(std::floor(2.0 / p - 1.5));
}

bool is_dyadic_interval(double lo, double hi) {
    const double w = hi - lo;
    if (!(w > 0.0)) return false;
    const double n = -std::log2(w);
    if (std::abs(n - std::round(n)) > 1e-9) return false;
    const double k = lo / w;
    return std::abs(k - std::round(k)) < 1e-9 && k > -1e-9;
}

namespace {

std::size_t atom_dim(const AtomSpec& spec) {
    return spec.moment_intervals.size() + spec.a_box.size();
}

std::vector<Axis> atom_axes(const AtomSpec& spec) {
    const std::size_t d = atom_dim(spec);
    if (d < 1 || d > 3) throw std::invalid_argument("atom: dimension must be 1..3");
    if (spec.moment_intervals.empty())
        throw std::invalid_argument("atom: needs at least one moment-bearing axis");
    if (spec.cells_per_axis < static_cast<std::size_t>(atom_moment_order(spec.p)) + 2)
        throw std::invalid_argument("atom: not enough cells for the moment order");
    std::vector<Axis> axes;
    for (const auto& [lo, hi] : spec.moment_intervals) {
        if (!is_dyadic_interval(lo, hi))
            throw std::invalid_argument("atom: moment interval is not dyadic");
        axes.push_back(uniform_axis(lo, hi, spec.cells_per_axis));
    }
    for (const auto& [lo, hi] : spec.a_box) {
        if (!(lo < hi)) throw std::invalid_argument("atom: empty A box side");
        if (lo < 0.0 && hi > 0.0)
            throw std::invalid_argument("atom: A box must be sign-pure per axis");
        axes.push_back(uniform_axis(lo, hi, spec.cells_per_axis));
    }
    return axes;
}

// Orthonormal basis of the moment functionals sum_c v_c \int_cell x^k dx on
// one axis, k = 0..kmax.
std::vector<std::vector<double>> moment_basis(const Axis& ax, int kmax) {
    const std::size_t n = ax.cell_count();
    std::vector<std::vector<double>> basis;
    for (int k = 0; k <= kmax; ++k) {
        std::vector<double> mu(n);
        for (std::size_t c = 0; c < n; ++c)
            mu[c] = (std::pow(ax.hi(c), k + 1) - std::pow(ax.lo(c), k + 1)) / (k + 1);
        for (const auto& e : basis) {
            double dot = 0.0;
            for (std::size_t c = 0; c < n; ++c) dot += mu[c] * e[c];
            for (std::size_t c = 0; c < n; ++c) mu[c] -= dot * e[c];
        }
        double nrm = 0.0;
        for (double v : mu) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm < 1e-14) throw std::runtime_error("atom: degenerate moment basis");
        for (double& v : mu) v /= nrm;
        basis.push_back(std::move(mu));
    }
    return basis;
}

// Projects every fiber along `axis` onto the complement of the given
// functionals.
void project_axis(std::vector<double>& vals, const std::vector<Axis>& axes,
                  std::size_t axis, const std::vector<std::vector<double>>& basis) {
    const std::size_t d = axes.size();
    const std::size_t n = axes[axis].cell_count();
    std::size_t fibers = 1;
    for (std::size_t i = 0; i < d; ++i)
        if (i != axis) fibers *= axes[i].cell_count();

    std::array<std::size_t, 3> stride{1, 1, 1};
    stride[d - 1] = 1;
    for (std::size_t i = d - 1; i-- > 0;) stride[i] = stride[i + 1] * axes[i + 1].cell_count();

    std::vector<double> fiber(n);
    for (std::size_t fib = 0; fib < fibers; ++fib) {
        std::size_t base = 0, rest = fib;
        for (std::size_t i = d; i-- > 0;) {
            if (i == axis) continue;
            base += (rest % axes[i].cell_count()) * stride[i];
            rest /= axes[i].cell_count();
        }
        for (std::size_t c = 0; c < n; ++c) fiber[c] = vals[base + c * stride[axis]];
        for (const auto& e : basis) {
            double dot = 0.0;
            for (std::size_t c = 0; c < n; ++c) dot += fiber[c] * e[c];
            for (std::size_t c = 0; c < n; ++c) fiber[c] -= dot * e[c];
        }
        for (std::size_t c = 0; c < n; ++c) vals[base + c * stride[axis]] = fiber[c];
    }
}

double atom_l2_bound(const AtomSpec& spec) {
    double prod = 1.0;
    for (const auto& [lo, hi] : spec.moment_intervals) prod *= hi - lo;
    for (const auto& [lo, hi] : spec.a_box) prod *= hi - lo;
    return std::pow(prod, 0.5 - 1.0 / spec.p);
}

}  // namespace

GridFunction make_simple_atom(const AtomSpec& spec, std::uint64_t seed) {
    const std::vector<Axis> axes = atom_axes(spec);
    const int N = atom_moment_order(spec.p);

    for (int attempt = 0; attempt < 8; ++attempt) {
        Rng rng(seed + 1000003ull * static_cast<std::uint64_t>(attempt));
        std::size_t total = 1;
        for (const Axis& a : axes) total *= a.cell_count();
        std::vector<double> vals(total);
        for (double& v : vals) v = rng.normal();

        // Two sweeps keep the residual functionals at rounding level.
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (std::size_t i = 0; i < spec.moment_intervals.size(); ++i)
                project_axis(vals, axes, i, moment_basis(axes[i], N));
            for (std::size_t i = 0; i < spec.a_box.size(); ++i)
                project_axis(vals, axes, spec.moment_intervals.size() + i,
                             moment_basis(axes[spec.moment_intervals.size() + i], 0));
        }

        std::vector<cplx> cvals(total);
        for (std::size_t i = 0; i < total; ++i) cvals[i] = vals[i];
        GridFunction a(axes, std::move(cvals));
        const double l2 = lp_norm(a, 2.0);
        if (l2 < 1e-10) continue;  // annihilated; retry with a fresh draw

        GridFunction scaled = scale(a, atom_l2_bound(spec) / l2);
        const AtomCheck chk = check_atom(scaled, spec);
        if (!chk.ok) continue;
        return scaled;
    }
    throw std::runtime_error("make_simple_atom: projection annihilated every candidate");
}

AtomCheck check_atom(const GridFunction& a, const AtomSpec& spec) {
    const std::size_t d = a.dim();
    const int N = atom_moment_order(spec.p);
    AtomCheck chk;
    chk.l2 = lp_norm(a, 2.0);
    chk.l2_bound = atom_l2_bound(spec);

    std::array<std::size_t, 3> stride{1, 1, 1};
    stride[d - 1] = 1;
    for (std::size_t i = d - 1; i-- > 0;) stride[i] = stride[i + 1] * a.axis(i + 1).cell_count();

    auto fiber_moment = [&](std::size_t axis, int kmax) {
        const Axis& ax = a.axis(axis);
        const std::size_t n = ax.cell_count();
        std::size_t fibers = 1;
        for (std::size_t i = 0; i < d; ++i)
            if (i != axis) fibers *= a.axis(i).cell_count();
        for (int k = 0; k <= kmax; ++k) {
            std::vector<double> mu(n);
            for (std::size_t c = 0; c < n; ++c)
                mu[c] = (std::pow(ax.hi(c), k + 1) - std::pow(ax.lo(c), k + 1)) / (k + 1);
            for (std::size_t fib = 0; fib < fibers; ++fib) {
                std::size_t base = 0, rest = fib;
                for (std::size_t i = d; i-- > 0;) {
                    if (i == axis) continue;
                    base += (rest % a.axis(i).cell_count()) * stride[i];
                    rest /= a.axis(i).cell_count();
                }
                double m = 0.0;
                for (std::size_t c = 0; c < n; ++c)
                    m += a.value(base + c * stride[axis]).real() * mu[c];
                chk.max_moment = std::max(chk.max_moment, std::abs(m));
            }
        }
    };
    for (std::size_t i = 0; i < spec.moment_intervals.size(); ++i) fiber_moment(i, N);
    for (std::size_t i = 0; i < spec.a_box.size(); ++i)
        fiber_moment(spec.moment_intervals.size() + i, 0);

    chk.ok = chk.max_moment < 1e-12 && chk.l2 <= chk.l2_bound * (1.0 + 1e-12);
    return chk;
}

double eta_measure(const EtaRegion& region) {
    if (region.per_axis.empty()) throw std::invalid_argument("eta_measure: no axes");
    double prod = 1.0;
    for (const auto& axis_intervals : region.per_axis) {
        double s = 0.0;
        for (const auto& [a, b] : axis_intervals) {
            if (!(a < b)) throw std::invalid_argument("eta_measure: empty interval");
            if (a <= 0.0 && b >= 0.0)
                throw std::domain_error("eta_measure: region touches 0");
            const double inv_a = std::isinf(a) ? 0.0 : 1.0 / a;
            const double inv_b = std::isinf(b) ? 0.0 : 1.0 / b;
            s += std::abs(inv_a - inv_b);
        }
        prod *= s;
    }
    return prod;
}

namespace {

struct AxisNodes {
    std::vector<double> t, w;  // quadrature nodes and weights (both signs)
};

// Shelled Gauss-Legendre nodes on {lo <= |t| <= hi}, geometric toward the
// refinement end.
AxisNodes shell_nodes(double lo, double hi, bool refine_toward_zero, int shells,
                      int order) {
    AxisNodes out;
    const GaussRule& gr = gauss_rule(order);
    std::vector<std::pair<double, double>> segs;
    if (refine_toward_zero) {
        double top = hi;
        for (int s = 0; s < shells && top > lo; ++s) {
            const double bot = std::max(lo, (s + 1 == shells) ? lo : top * 0.5);
            segs.push_back({bot, top});
            top = bot;
        }
    } else {
        double bot = lo;
        for (int s = 0; s < shells && bot < hi; ++s) {
            const double top = std::min(hi, (s + 1 == shells) ? hi : bot * 2.0);
            segs.push_back({bot, top});
            bot = top;
        }
    }
    for (const auto& [a, b] : segs) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t i = 0; i < gr.x.size(); ++i) {
            const double x = mid + half * gr.x[i];
            const double w = half * gr.w[i];
            out.t.push_back(x);
            out.w.push_back(w);
            out.t.push_back(-x);
            out.w.push_back(w);
        }
    }
    return out;
}

double fit_slope(const std::vector<int>& r, const std::vector<double>& y) {
    const double n = static_cast<double>(r.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        sx += r[i];
        sy += y[i];
        sxx += static_cast<double>(r[i]) * r[i];
        sxy += r[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

DecayScan atom_decay_scan(const GridFunction& a, const AtomSpec& spec, int r_lo,
                          int r_hi, DecaySide side, DecayOp op) {
    const std::size_t d = a.dim();
    if (d > 2) throw std::invalid_argument("atom_decay_scan: d <= 2 only");
    if (r_hi - r_lo + 1 < 4)
        throw std::invalid_argument("atom_decay_scan: need at least 4 points to fit");
    if (d == 1 && side == DecaySide::exterior)
        throw std::invalid_argument("atom_decay_scan: exterior side needs the A axis");
    if (spec.moment_intervals.size() + spec.a_box.size() != d)
        throw std::invalid_argument("atom_decay_scan: spec does not match the atom");

    const int N = atom_moment_order(spec.p);
    const double p = spec.p;

    // K_i from the dyadic interval lengths (the A axis must be dyadic too
    // for the exterior estimate).
    std::vector<double> K(d);
    for (std::size_t i = 0; i < spec.moment_intervals.size(); ++i)
        K[i] = -std::log2(spec.moment_intervals[i].second - spec.moment_intervals[i].first);
    for (std::size_t i = 0; i < spec.a_box.size(); ++i)
        K[spec.moment_intervals.size() + i] =
            -std::log2(spec.a_box[i].second - spec.a_box[i].first);

    DecayScan scan;
    scan.predicted = -(N * p + 2.0 * p - 1.0);

    // Shells toward 0 stop at depth 24: deeper, the integrand is dominated by
    // rounding noise in the cancelling kernel sums, which |.|^p with p < 1
    // amplifies, while the neglected true mass is at worst 2^-24 relative.
    constexpr int kInnerShells = 24;
    for (int r = r_lo; r <= r_hi; ++r) {
        // Quadrature nodes per axis.
        std::vector<AxisNodes> nodes(d);
        for (std::size_t i = 0; i < spec.moment_intervals.size(); ++i) {
            const double delta = std::exp2(K[i] - r);
            nodes[i] = shell_nodes(delta * std::exp2(-kInnerShells), delta, true,
                                   kInnerShells, 12);
        }
        for (std::size_t i = 0; i < spec.a_box.size(); ++i) {
            const std::size_t ai = spec.moment_intervals.size() + i;
            const double edge = std::exp2(K[ai]);
            if (side == DecaySide::interior) {
                nodes[ai] = shell_nodes(edge, edge * std::exp2(45), false, 45, 12);
            } else {
                nodes[ai] = shell_nodes(edge * std::exp2(-kInnerShells), edge, true,
                                        kInnerShells, 12);
            }
        }

        // Per-axis kernel matrices, then the tensor contraction; for the
        // Cesaro-averaged transform (prod t_j) H(F a) the 1/t_j prefactors
        // cancel against the kernels' averaging.
        std::array<std::vector<cplx>, 2> Km;
        for (std::size_t i = 0; i < d; ++i) {
            const Axis& ax = a.axis(i);
            const std::size_t nc = ax.cell_count(), nt = nodes[i].t.size();
            Km[i].assign(nt * nc, 0.0);
            for (std::size_t s = 0; s < nt; ++s) {
                const double t = nodes[i].t[s];
                for (std::size_t c = 0; c < nc; ++c) {
                    Km[i][s * nc + c] =
                        op == DecayOp::fourier
                            ? oscillatory_cell_integral(t, ax.lo(c), ax.hi(c))
                            : hardy_fourier_cell_integral(t, ax.lo(c), ax.hi(c));
                }
            }
        }

        double J = 0.0;
        if (d == 1) {
            const std::size_t nc = a.axis(0).cell_count();
            for (std::size_t s = 0; s < nodes[0].t.size(); ++s) {
                cplx field = 0.0;
                for (std::size_t c = 0; c < nc; ++c)
                    field += Km[0][s * nc + c] * a.value(c);
                const double t = nodes[0].t[s];
                const double Ta =
                    op == DecayOp::fourier ? std::abs(t) * std::abs(field) : std::abs(field);
                J += nodes[0].w[s] * std::pow(Ta, p) * std::pow(std::abs(t), -2.0);
            }
        } else {
            const std::size_t n1 = a.axis(0).cell_count(), n2 = a.axis(1).cell_count();
            const std::size_t m1 = nodes[0].t.size(), m2 = nodes[1].t.size();
            // A1[s1][c2] = sum_c1 K1[s1][c1] a[c1][c2]
            std::vector<cplx> A1(m1 * n2, 0.0);
            for (std::size_t s1 = 0; s1 < m1; ++s1)
                for (std::size_t c1 = 0; c1 < n1; ++c1) {
                    const cplx k = Km[0][s1 * n1 + c1];
                    if (k == cplx(0.0)) continue;
                    for (std::size_t c2 = 0; c2 < n2; ++c2)
                        A1[s1 * n2 + c2] += k * a.value(c1 * n2 + c2);
                }
            for (std::size_t s1 = 0; s1 < m1; ++s1) {
                const double t1 = nodes[0].t[s1];
                for (std::size_t s2 = 0; s2 < m2; ++s2) {
                    cplx field = 0.0;
                    for (std::size_t c2 = 0; c2 < n2; ++c2)
                        field += Km[1][s2 * n2 + c2] * A1[s1 * n2 + c2];
                    const double t2 = nodes[1].t[s2];
                    const double Ta = op == DecayOp::fourier
                                          ? std::abs(t1 * t2) * std::abs(field)
                                          : std::abs(field);
                    J += nodes[0].w[s1] * nodes[1].w[s2] * std::pow(Ta, p) *
                         std::pow(std::abs(t1 * t2), -2.0);
                }
            }
        }

        scan.r.push_back(r);
        scan.j_value.push_back(J);
        if (!(J > 0.0) || !std::isfinite(J)) scan.flagged = true;
        scan.log2_j.push_back(J > 0.0 ? std::log2(J) : -INFINITY);
    }

    if (!scan.flagged) scan.slope = fit_slope(scan.r, scan.log2_j);
    return scan;
}

}  // namespace hardylab
