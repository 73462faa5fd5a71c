#include "hardylab/counterexamples.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "hardylab/rng.hpp"
#include "hardylab/special.hpp"

namespace hardylab {

ReverseHardyResult reverse_hardy_pair(double p, int n, double b_base, double d_base) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("reverse_hardy_pair: p must lie in (0,1]");
    if (n < 1) throw std::invalid_argument("reverse_hardy_pair: n >= 1");
    if (!(b_base > d_base && d_base > 1.0))
        throw std::invalid_argument("reverse_hardy_pair: needs b_base > d_base > 1");

    // rho = d_n / b_n; all quantities below are scale-free in rho.
    const double log2_rho = n * (std::log2(d_base) - std::log2(b_base));
    const double rho = std::exp2(log2_rho);

    // phi1 = b^{1-p} \int_b^{b+d} t^{p-2} dt = ((1+rho)^{p-1} - 1)/(p-1).
    const double phi1 = p == 1.0 ? std::log1p(rho)
                                 : std::expm1((p - 1.0) * std::log1p(rho)) / (p - 1.0);

    // W = \int_0^rho u^p (1+u)^{-2} du, shelled toward the u^p endpoint.
    const double W = shell_integrate_toward_lower(
        [p](double u) { return std::pow(u, p) / ((1.0 + u) * (1.0 + u)); }, 0.0, rho,
        1e-15, 80, 16);

    ReverseHardyResult res;
    res.n = n;
    res.i1 = phi1 / phi1;  // the normalization forces 1 exactly
    res.i2 = (W + std::pow(rho, p) / (1.0 + rho)) / phi1;
    res.log2_i2 = std::log2(res.i2);
    return res;
}

SignedHardyResult signed_hardy_pair(double p, int n_limit) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("signed_hardy_pair: p must lie in (0,1)");
    if (n_limit < 2) throw std::invalid_argument("signed_hardy_pair: N >= 2");

    SignedHardyResult res;
    res.n_limit = n_limit;

    // I1 = sum_n a_n^p \int_{2n-1}^{2n+1} t^{p-2} dt, exactly.
    for (int n = 1; n < n_limit; ++n) {
        const double anp = std::pow(n, 1.0 - p);
        const double lo = 2.0 * n - 1.0, hi = 2.0 * n + 1.0;
        res.i1 += anp * (std::pow(hi, p - 1.0) - std::pow(lo, p - 1.0)) / (p - 1.0);
    }

    // I2 = \int_1^{2N} t^{-2} G(t)^p dt with G the sawtooth prefix integral;
    // per unit interval G is linear so a shelled rule toward the zero end
    // resolves the G^p cusp.
    for (int n = 1; n < n_limit; ++n) {
        const double an = std::pow(n, (1.0 - p) / p);
        const double rise_lo = 2.0 * n - 1.0;
        res.i2 += shell_integrate_toward_lower(
            [an, rise_lo, p](double t) {
                const double g = an * (t - rise_lo);
                return std::pow(g, p) / (t * t);
            },
            rise_lo, rise_lo + 1.0, 1e-13, 40, 12);
        const double fall_hi = 2.0 * n + 1.0;
        // mirror the shelled rule toward the right endpoint where G -> 0
        res.i2 += shell_integrate_toward_lower(
            [an, fall_hi, p](double u) {
                const double t = fall_hi - u;
                const double g = an * u;
                return std::pow(g, p) / (t * t);
            },
            0.0, 1.0, 1e-13, 40, 12);
    }
    return res;
}

int rudin_shapiro(std::uint64_t n) {
    // eps_0 = 1, eps_{2n} = eps_n, eps_{2n+1} = (-1)^n eps_n
    int sign = 1;
    while (n > 0) {
        if (n & 1u) {
            if ((n >> 1) & 1u) sign = -sign;  // (-1)^n with n the next state
            n >>= 1;
        } else {
            n >>= 1;
        }
    }
    return sign;
}

int rudin_shapiro_substring(std::uint64_t n) {
    return std::popcount(n & (n >> 1)) % 2 == 0 ? 1 : -1;
}

cplx RudinShapiroSum::advance_to(int k) {
    while (k_ < k) {
        ++k_;
        const double sgn = rudin_shapiro(static_cast<std::uint64_t>(k_));
        sum_ += sgn * std::polar(1.0, -static_cast<double>(k_) * t_);
    }
    return sum_;
}

double carleman_coeff(int n) {
    const double l = std::log(n + 2.0);
    return 1.0 / (std::sqrt(n + 1.0) * l * l);
}

GridFunction carleman_g(int n_max) {
    if (n_max < 0) throw std::invalid_argument("carleman_g: n_max >= 0");
    Axis ax;
    ax.breakpoints.push_back(-0.5);
    for (int n = 0; n <= n_max; ++n) ax.breakpoints.push_back(n + 0.5);
    std::vector<cplx> vals(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        vals[static_cast<std::size_t>(n)] = rudin_shapiro(n) * carleman_coeff(n);
    return GridFunction::make({std::move(ax)}, std::move(vals));
}

CarlemanField carleman_partial_f(int n, std::span<const double> t) {
    if (n < 0) throw std::invalid_argument("carleman_partial_f: n >= 0");
    CarlemanField out;
    out.t.assign(t.begin(), t.end());
    out.direct.reserve(t.size());
    out.abel.reserve(t.size());
    for (double tt : t) {
        cplx direct = 0.0;
        for (int k = 0; k <= n; ++k)
            direct += static_cast<double>(rudin_shapiro(k)) * carleman_coeff(k) *
                      std::polar(1.0, -static_cast<double>(k) * tt);

        // f_n = sum_{k<n} (c_k - c_{k+1}) P_k + c_n P_n
        RudinShapiroSum ps(tt);
        cplx abel = 0.0;
        for (int k = 0; k < n; ++k)
            abel += (carleman_coeff(k) - carleman_coeff(k + 1)) * ps.advance_to(k);
        abel += carleman_coeff(n) * ps.advance_to(n);

        out.direct.push_back(direct);
        out.abel.push_back(abel);
        out.max_diff = std::max(out.max_diff, std::abs(direct - abel));
    }
    return out;
}

CarlemanCauchy carleman_cauchy_gap(int n, int t_samples, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("carleman_cauchy_gap: n >= 1");
    CarlemanCauchy out;

    Rng rng(seed);
    std::vector<double> ts(static_cast<std::size_t>(t_samples));
    for (double& tt : ts) tt = rng.uniform(-20.0, 20.0);

    for (double tt : ts) {
        RudinShapiroSum ps(tt);
        // f_{2n} - f_n = sum_{k=n+1}^{2n} c_k eps_k e^{-ikt}, Abel-transformed.
        cplx gap = 0.0;
        const cplx pn = ps.advance_to(n);
        for (int k = n + 1; k < 2 * n; ++k)
            gap += (carleman_coeff(k) - carleman_coeff(k + 1)) * ps.advance_to(k);
        gap += carleman_coeff(2 * n) * ps.advance_to(2 * n);
        gap -= carleman_coeff(n + 1) * pn;
        out.sup_gap = std::max(out.sup_gap, std::abs(gap));
    }

    // |P_k| <= 5 sqrt(k+1) and a_k <= C/((k+1) sqrt(k+1) log^2(k+2)) give the
    // analytic bound on the same Abel form.
    const double C = carleman_abel_constant;
    double bound = 0.0;
    for (int k = n + 1; k < 2 * n; ++k) {
        const double l = std::log(k + 2.0);
        bound += 5.0 * std::sqrt(k + 1.0) * C / ((k + 1.0) * std::sqrt(k + 1.0) * l * l);
    }
    bound += 5.0 * std::sqrt(2.0 * n + 1.0) * carleman_coeff(2 * n);
    bound += 5.0 * std::sqrt(n + 1.0) * carleman_coeff(n + 1);
    out.tail_bound = bound;
    out.ok = out.sup_gap <= bound;
    return out;
}

PartialSumScan carleman_partial_sums(CarlemanSumKind kind, double p, int m_max) {
    if (m_max < 16) throw std::invalid_argument("carleman_partial_sums: m_max >= 16");
    PartialSumScan scan;
    double s = 0.0;
    int next_checkpoint = 16;
    for (int n = 0; n < m_max; ++n) {
        const double c = carleman_coeff(n);
        switch (kind) {
            case CarlemanSumKind::l2:
                s += c * c;
                break;
            case CarlemanSumKind::lp:
                s += std::pow(c, p);
                break;
            case CarlemanSumKind::weighted:
                // \int_cell |x|^{p-2} dx; the n = 0 cell spans both signs
                s += std::pow(c, p) *
                     (n == 0 ? 2.0 * power_cell_integral(0.0, 0.5, p - 2.0)
                             : power_cell_integral(n - 0.5, n + 0.5, p - 2.0));
                break;
        }
        if (n + 1 == next_checkpoint) {
            scan.m.push_back(n + 1.0);
            scan.value.push_back(s);
            next_checkpoint *= 2;
        }
    }
    // least squares of log S on log m over the dyadic checkpoints
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double cnt = static_cast<double>(scan.m.size());
    for (std::size_t i = 0; i < scan.m.size(); ++i) {
        const double x = std::log(scan.m[i]), y = std::log(scan.value[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    scan.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return scan;
}

}  // namespace hardylab
