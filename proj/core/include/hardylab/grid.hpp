#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hardylab {

using cplx = std::complex<double>;

// One coordinate direction of a rectilinear grid: strictly increasing
// breakpoints, at least two. Cell i spans (breakpoints[i], breakpoints[i+1]).
struct Axis {
    std::vector<double> breakpoints;

    std::size_t cell_count() const { return breakpoints.size() - 1; }
    double lo(std::size_t i) const { return breakpoints[i]; }
    double hi(std::size_t i) const { return breakpoints[i + 1]; }
    double width(std::size_t i) const { return hi(i) - lo(i); }
    double mid(std::size_t i) const { return 0.5 * (lo(i) + hi(i)); }
    double front() const { return breakpoints.front(); }
    double back() const { return breakpoints.back(); }

    bool straddles_zero() const;
    void validate() const;  // throws std::invalid_argument
    // Index of the cell containing x; clamps to the boundary cells.
    std::size_t locate(double x) const;

    bool operator==(const Axis&) const = default;
};

Axis uniform_axis(double lo, double hi, std::size_t cells);
// Symmetric axis on [-extent, extent] with 2*half_cells cells and a
// breakpoint at 0.
Axis symmetric_axis(double extent, std::size_t half_cells);

// Piecewise-constant function on a rectilinear grid over R^d (1 <= d <= 3)
// with complex cell values; implicitly 0 outside the grid. No cell straddles
// 0 on any axis. Immutable after construction.
class GridFunction {
public:
    GridFunction() = default;
    // Requires legal axes (validated, no zero-straddling cells).
    GridFunction(std::vector<Axis> axes, std::vector<cplx> values);

    // Splits cells straddling 0 (duplicating values) before constructing.
    static GridFunction make(std::vector<Axis> axes, std::vector<cplx> values);

    std::size_t dim() const { return axes_.size(); }
    const Axis& axis(std::size_t i) const { return axes_[i]; }
    const std::vector<Axis>& axes() const { return axes_; }
    std::size_t cell_count() const { return values_.size(); }
    const std::vector<cplx>& values() const { return values_; }
    cplx value(std::size_t flat) const { return values_[flat]; }

    std::size_t flat_index(std::span<const std::size_t> idx) const;
    void unflatten(std::size_t flat, std::span<std::size_t> idx) const;
    double cell_volume(std::size_t flat) const;

    GridFunction with_values(std::vector<cplx> v) const;

    bool same_grid(const GridFunction& other) const { return axes_ == other.axes_; }

private:
    std::vector<Axis> axes_;
    std::vector<cplx> values_;
    std::array<std::size_t, 3> strides_{1, 1, 1};
};

// Power weight per axis with an outer integral exponent:
// (\int (\prod_i |x_i|^{e_i} |f(x)|)^p dx)^{1/p}.
struct WeightedNormSpec {
    std::vector<double> exponent_per_axis;
    double outer_power = 2.0;  // p > 0
};

// \int_a^b |x|^c dx for a sign-pure interval; exact closed form. Throws
// std::domain_error when the weight is non-integrable on the interval.
double power_cell_integral(double a, double b, double c);

double weighted_integral(const GridFunction& f, const WeightedNormSpec& w);
double lp_norm(const GridFunction& f, double p);
double sup_norm(const GridFunction& f);
cplx integral(const GridFunction& f);

GridFunction scale(const GridFunction& f, cplx c);
GridFunction add(const GridFunction& f, const GridFunction& g);       // same grid
GridFunction subtract(const GridFunction& f, const GridFunction& g);  // same grid
bool is_real(const GridFunction& f);
bool is_nonnegative(const GridFunction& f);
// Half-open bounding box of the nonzero cells per axis; empty when f == 0.
struct SupportBox {
    bool empty = true;
    std::array<double, 3> lo{}, hi{};
};
SupportBox support_box(const GridFunction& f);
// Largest |coordinate| reached by the grid on axis i.
double axis_extent(const GridFunction& f, std::size_t i);

// Inclusion-exclusion prefix table over grid nodes. box() integrates f over
// an arbitrary axis-parallel box exactly (the prefix is multi-affine per
// cell, so multilinear interpolation at the corners is exact).
class PrefixTable {
public:
    explicit PrefixTable(const GridFunction& f);
    cplx corner(std::span<const double> x) const;
    cplx box(std::span<const double> lo, std::span<const double> hi) const;
    std::size_t dim() const { return axes_->size(); }

private:
    const std::vector<Axis>* axes_;
    std::vector<cplx> nodes_;  // node-indexed prefix integrals
    std::array<std::size_t, 3> nstride_{1, 1, 1};
    std::array<std::size_t, 3> ncount_{1, 1, 1};
};

cplx box_integral(const GridFunction& f, std::span<const double> lo,
                  std::span<const double> hi);

}  // namespace hardylab
