#include "hardylab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hardylab {

bool Axis::straddles_zero() const {
    for (std::size_t i = 0; i < cell_count(); ++i)
        if (lo(i) < 0.0 && hi(i) > 0.0) return true;
    return false;
}

void Axis::validate() const {
    if (breakpoints.size() < 2)
        throw std::invalid_argument("Axis: needs at least 2 breakpoints");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i] < breakpoints[i + 1]))
            throw std::invalid_argument("Axis: breakpoints must be strictly increasing");
        if (!std::isfinite(breakpoints[i]) || !std::isfinite(breakpoints[i + 1]))
            throw std::invalid_argument("Axis: breakpoints must be finite");
    }
}

std::size_t Axis::locate(double x) const {
    if (x <= breakpoints.front()) return 0;
    if (x >= breakpoints.back()) return cell_count() - 1;
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    return static_cast<std::size_t>(it - breakpoints.begin()) - 1;
}

Axis uniform_axis(double lo, double hi, std::size_t cells) {
    if (cells == 0 || !(lo < hi)) throw std::invalid_argument("uniform_axis: bad range");
    Axis ax;
    ax.breakpoints.resize(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i)
        ax.breakpoints[i] = lo + (hi - lo) * static_cast<double>(i) / cells;
    ax.breakpoints.front() = lo;
    ax.breakpoints.back() = hi;
    return ax;
}

Axis symmetric_axis(double extent, std::size_t half_cells) {
    if (!(extent > 0.0) || half_cells == 0)
        throw std::invalid_argument("symmetric_axis: bad parameters");
    Axis ax;
    ax.breakpoints.resize(2 * half_cells + 1);
    for (std::size_t i = 0; i <= half_cells; ++i) {
        const double x = extent * static_cast<double>(i) / half_cells;
        ax.breakpoints[half_cells + i] = x;
        ax.breakpoints[half_cells - i] = -x;
    }
    ax.breakpoints[half_cells] = 0.0;
    return ax;
}

GridFunction::GridFunction(std::vector<Axis> axes, std::vector<cplx> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
    if (axes_.empty() || axes_.size() > 3)
        throw std::invalid_argument("GridFunction: dimension must be 1..3");
    std::size_t n = 1;
    for (const Axis& a : axes_) {
        a.validate();
        if (a.straddles_zero())
            throw std::invalid_argument("GridFunction: cell straddles 0 (use make())");
        n *= a.cell_count();
    }
    if (values_.size() != n)
        throw std::invalid_argument("GridFunction: value array size mismatch");
    // row-major, last axis fastest
    const std::size_t d = axes_.size();
    strides_[d - 1] = 1;
    for (std::size_t i = d - 1; i-- > 0;)
        strides_[i] = strides_[i + 1] * axes_[i + 1].cell_count();
}

GridFunction GridFunction::make(std::vector<Axis> axes, std::vector<cplx> values) {
    if (axes.empty() || axes.size() > 3)
        throw std::invalid_argument("GridFunction: dimension must be 1..3");
    std::size_t n = 1;
    for (const Axis& a : axes) {
        a.validate();
        n *= a.cell_count();
    }
    if (values.size() != n)
        throw std::invalid_argument("GridFunction: value array size mismatch");

    // Split any cell with lo < 0 < hi at 0; old-cell index per new cell.
    const std::size_t d = axes.size();
    std::vector<Axis> out_axes(d);
    std::vector<std::vector<std::size_t>> remap(d);
    for (std::size_t i = 0; i < d; ++i) {
        const Axis& a = axes[i];
        Axis& o = out_axes[i];
        o.breakpoints.push_back(a.breakpoints.front());
        for (std::size_t c = 0; c < a.cell_count(); ++c) {
            if (a.lo(c) < 0.0 && a.hi(c) > 0.0) {
                o.breakpoints.push_back(0.0);
                remap[i].push_back(c);
            }
            o.breakpoints.push_back(a.hi(c));
            remap[i].push_back(c);
        }
    }

    std::size_t m = 1;
    for (std::size_t i = 0; i < d; ++i) m *= remap[i].size();
    std::vector<cplx> out_values(m);
    std::array<std::size_t, 3> idx{0, 0, 0};
    std::array<std::size_t, 3> old_stride{1, 1, 1};
    old_stride[d - 1] = 1;
    for (std::size_t i = d - 1; i-- > 0;)
        old_stride[i] = old_stride[i + 1] * axes[i + 1].cell_count();
    for (std::size_t flat = 0; flat < m; ++flat) {
        std::size_t of = 0;
        for (std::size_t i = 0; i < d; ++i) of += remap[i][idx[i]] * old_stride[i];
        out_values[flat] = values[of];
        for (std::size_t i = d; i-- > 0;) {
            if (++idx[i] < remap[i].size()) break;
            idx[i] = 0;
        }
    }
    return GridFunction(std::move(out_axes), std::move(out_values));
}

std::size_t GridFunction::flat_index(std::span<const std::size_t> idx) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < axes_.size(); ++i) f += idx[i] * strides_[i];
    return f;
}

void GridFunction::unflatten(std::size_t flat, std::span<std::size_t> idx) const {
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        idx[i] = flat / strides_[i];
        flat %= strides_[i];
    }
}

double GridFunction::cell_volume(std::size_t flat) const {
    std::array<std::size_t, 3> idx{};
    unflatten(flat, std::span<std::size_t>(idx.data(), axes_.size()));
    double v = 1.0;
    for (std::size_t i = 0; i < axes_.size(); ++i) v *= axes_[i].width(idx[i]);
    return v;
}

GridFunction GridFunction::with_values(std::vector<cplx> v) const {
    return GridFunction(axes_, std::move(v));
}

double power_cell_integral(double a, double b, double c) {
    if (!(a < b)) throw std::invalid_argument("power_cell_integral: needs a < b");
    if (a < 0.0) {
        if (b > 0.0)
            throw std::invalid_argument("power_cell_integral: interval straddles 0");
        return power_cell_integral(-b, -a, c);
    }
    if (a == 0.0) {
        if (c <= -1.0)
            throw std::domain_error("power_cell_integral: weight non-integrable at 0");
        return std::pow(b, c + 1.0) / (c + 1.0);
    }
    const double s = c + 1.0;
    if (s == 0.0) return std::log(b / a);
    // a^s ((b/a)^s - 1)/s, stable when b/a is close to 1
    return std::pow(a, s) * std::expm1(s * std::log(b / a)) / s;
}

double weighted_integral(const GridFunction& f, const WeightedNormSpec& w) {
    const std::size_t d = f.dim();
    if (w.exponent_per_axis.size() != d)
        throw std::invalid_argument("weighted_integral: exponent count mismatch");
    if (!(w.outer_power > 0.0))
        throw std::invalid_argument("weighted_integral: outer power must be > 0");
    const double p = w.outer_power;

    // Per-axis factors \int_cell |x|^{e p} dx, computed lazily so zero cells
    // never probe a non-integrable weight.
    std::array<std::vector<double>, 3> fac;
    std::array<std::vector<char>, 3> have;
    for (std::size_t i = 0; i < d; ++i) {
        fac[i].assign(f.axis(i).cell_count(), 0.0);
        have[i].assign(f.axis(i).cell_count(), 0);
    }

    long double acc = 0.0L;
    std::array<std::size_t, 3> idx{};
    for (std::size_t flat = 0; flat < f.cell_count(); ++flat) {
        const double av = std::abs(f.value(flat));
        if (av != 0.0) {
            f.unflatten(flat, std::span<std::size_t>(idx.data(), d));
            double cellw = 1.0;
            for (std::size_t i = 0; i < d; ++i) {
                if (!have[i][idx[i]]) {
                    fac[i][idx[i]] = power_cell_integral(
                        f.axis(i).lo(idx[i]), f.axis(i).hi(idx[i]),
                        w.exponent_per_axis[i] * p);
                    have[i][idx[i]] = 1;
                }
                cellw *= fac[i][idx[i]];
            }
            acc += static_cast<long double>(std::pow(av, p)) * cellw;
        }
    }
    return std::pow(static_cast<double>(acc), 1.0 / p);
}

double lp_norm(const GridFunction& f, double p) {
    WeightedNormSpec w;
    w.exponent_per_axis.assign(f.dim(), 0.0);
    w.outer_power = p;
    return weighted_integral(f, w);
}

double sup_norm(const GridFunction& f) {
    double m = 0.0;
    for (const cplx& v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

cplx integral(const GridFunction& f) {
    cplx s = 0.0;
    for (std::size_t flat = 0; flat < f.cell_count(); ++flat)
        s += f.value(flat) * f.cell_volume(flat);
    return s;
}

GridFunction scale(const GridFunction& f, cplx c) {
    std::vector<cplx> v = f.values();
    for (cplx& x : v) x *= c;
    return f.with_values(std::move(v));
}

GridFunction add(const GridFunction& f, const GridFunction& g) {
    if (!f.same_grid(g)) throw std::invalid_argument("add: grids differ");
    std::vector<cplx> v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += g.value(i);
    return f.with_values(std::move(v));
}

GridFunction subtract(const GridFunction& f, const GridFunction& g) {
    if (!f.same_grid(g)) throw std::invalid_argument("subtract: grids differ");
    std::vector<cplx> v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= g.value(i);
    return f.with_values(std::move(v));
}

bool is_real(const GridFunction& f) {
    for (const cplx& v : f.values())
        if (v.imag() != 0.0) return false;
    return true;
}

bool is_nonnegative(const GridFunction& f) {
    for (const cplx& v : f.values())
        if (v.imag() != 0.0 || v.real() < 0.0) return false;
    return true;
}

SupportBox support_box(const GridFunction& f) {
    SupportBox sb;
    const std::size_t d = f.dim();
    std::array<std::size_t, 3> idx{};
    for (std::size_t flat = 0; flat < f.cell_count(); ++flat) {
        if (std::abs(f.value(flat)) == 0.0) continue;
        f.unflatten(flat, std::span<std::size_t>(idx.data(), d));
        if (sb.empty) {
            sb.empty = false;
            for (std::size_t i = 0; i < d; ++i) {
                sb.lo[i] = f.axis(i).lo(idx[i]);
                sb.hi[i] = f.axis(i).hi(idx[i]);
            }
        } else {
            for (std::size_t i = 0; i < d; ++i) {
                sb.lo[i] = std::min(sb.lo[i], f.axis(i).lo(idx[i]));
                sb.hi[i] = std::max(sb.hi[i], f.axis(i).hi(idx[i]));
            }
        }
    }
    return sb;
}

double axis_extent(const GridFunction& f, std::size_t i) {
    return std::max(std::abs(f.axis(i).front()), std::abs(f.axis(i).back()));
}

PrefixTable::PrefixTable(const GridFunction& f) : axes_(&f.axes()) {
    const std::size_t d = f.dim();
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        ncount_[i] = f.axis(i).cell_count() + 1;
        total *= ncount_[i];
    }
    nstride_[d - 1] = 1;
    for (std::size_t i = d - 1; i-- > 0;) nstride_[i] = nstride_[i + 1] * ncount_[i + 1];

    nodes_.assign(total, 0.0);
    // Seed node (j+1,...) with the mass of cell (j,...), then prefix-sum along
    // each axis in turn.
    std::array<std::size_t, 3> idx{};
    for (std::size_t flat = 0; flat < f.cell_count(); ++flat) {
        f.unflatten(flat, std::span<std::size_t>(idx.data(), d));
        double vol = 1.0;
        std::size_t node = 0;
        for (std::size_t i = 0; i < d; ++i) {
            vol *= f.axis(i).width(idx[i]);
            node += (idx[i] + 1) * nstride_[i];
        }
        nodes_[node] = f.value(flat) * vol;
    }
    for (std::size_t axisi = 0; axisi < d; ++axisi) {
        for (std::size_t n = 0; n < total; ++n) {
            const std::size_t pos = (n / nstride_[axisi]) % ncount_[axisi];
            if (pos > 0) continue;
            for (std::size_t k = 1; k < ncount_[axisi]; ++k)
                nodes_[n + k * nstride_[axisi]] += nodes_[n + (k - 1) * nstride_[axisi]];
        }
    }
}

cplx PrefixTable::corner(std::span<const double> x) const {
    const std::size_t d = axes_->size();
    std::array<std::size_t, 3> j{};
    std::array<double, 3> th{};
    for (std::size_t i = 0; i < d; ++i) {
        const Axis& a = (*axes_)[i];
        double xi = std::clamp(x[i], a.front(), a.back());
        const std::size_t c = a.locate(xi);
        j[i] = c;
        th[i] = (xi - a.lo(c)) / a.width(c);
    }
    cplx s = 0.0;
    const std::size_t corners = std::size_t{1} << d;
    for (std::size_t mask = 0; mask < corners; ++mask) {
        double wgt = 1.0;
        std::size_t node = 0;
        for (std::size_t i = 0; i < d; ++i) {
            if (mask & (std::size_t{1} << i)) {
                wgt *= th[i];
                node += (j[i] + 1) * nstride_[i];
            } else {
                wgt *= 1.0 - th[i];
                node += j[i] * nstride_[i];
            }
        }
        if (wgt != 0.0) s += wgt * nodes_[node];
    }
    return s;
}

cplx PrefixTable::box(std::span<const double> lo, std::span<const double> hi) const {
    const std::size_t d = axes_->size();
    std::array<double, 3> pt{};
    cplx s = 0.0;
    const std::size_t corners = std::size_t{1} << d;
    for (std::size_t mask = 0; mask < corners; ++mask) {
        int sign = 1;
        for (std::size_t i = 0; i < d; ++i) {
            if (mask & (std::size_t{1} << i)) {
                pt[i] = hi[i];
            } else {
                pt[i] = lo[i];
                sign = -sign;
            }
        }
        s += static_cast<double>(sign) * corner(std::span<const double>(pt.data(), d));
    }
    return s;
}

cplx box_integral(const GridFunction& f, std::span<const double> lo,
                  std::span<const double> hi) {
    return PrefixTable(f).box(lo, hi);
}

}  // namespace hardylab
