#include "hardylab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hardylab/parallel.hpp"
#include "hardylab/special.hpp"

namespace hardylab {

void validate_frequency_axes(const std::vector<Axis>& axes) {
    for (const Axis& a : axes) {
        a.validate();
        if (a.straddles_zero())
            throw std::invalid_argument("frequency axis: cell straddles 0");
        const std::size_t n = a.breakpoints.size();
        const double scale = std::max(std::abs(a.front()), std::abs(a.back()));
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(a.breakpoints[i] + a.breakpoints[n - 1 - i]) > 1e-12 * scale)
                throw std::invalid_argument("frequency axis: not symmetric about 0");
        }
    }
}

GridFunction truncated_fourier(const GridFunction& f, double N,
                               const std::vector<Axis>& freq_axes) {
    if (!(N > 0.0)) throw std::invalid_argument("truncated_fourier: N must be > 0");
    const std::size_t d = f.dim();
    if (freq_axes.size() != d)
        throw std::invalid_argument("truncated_fourier: frequency dimension mismatch");
    validate_frequency_axes(freq_axes);
    const double half = 0.5 * N;

    // Per-axis kernel matrices K[s][c] = \int_{cell_c \cap [-N/2, N/2]}
    // e^{-i xi_s x} dx at the frequency midpoints, then a tensor contraction.
    std::array<std::vector<cplx>, 3> K;
    for (std::size_t i = 0; i < d; ++i) {
        const Axis& xax = f.axis(i);
        const Axis& sax = freq_axes[i];
        const std::size_t nc = xax.cell_count(), ns = sax.cell_count();
        K[i].assign(ns * nc, 0.0);
        parallel_for(ns, [&, i](std::size_t s) {
            const double xi = sax.mid(s);
            for (std::size_t c = 0; c < nc; ++c) {
                const double a = std::max(xax.lo(c), -half);
                const double b = std::min(xax.hi(c), half);
                if (b > a) K[i][s * nc + c] = oscillatory_cell_integral(xi, a, b);
            }
        });
    }

    std::vector<cplx> cur = f.values();
    std::size_t lead = 1;
    std::size_t trail = f.cell_count();
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t nc = f.axis(i).cell_count();
        const std::size_t ns = freq_axes[i].cell_count();
        trail /= nc;
        std::vector<cplx> next(lead * ns * trail, 0.0);
        for (std::size_t L = 0; L < lead; ++L) {
            for (std::size_t s = 0; s < ns; ++s) {
                cplx* out = next.data() + (L * ns + s) * trail;
                for (std::size_t c = 0; c < nc; ++c) {
                    const cplx k = K[i][s * nc + c];
                    if (k == cplx(0.0)) continue;
                    const cplx* in = cur.data() + (L * nc + c) * trail;
                    for (std::size_t j = 0; j < trail; ++j) out[j] += k * in[j];
                }
            }
        }
        cur = std::move(next);
        lead *= ns;
    }
    return GridFunction(freq_axes, std::move(cur));
}

std::vector<double> fourier_tail_constants(const GridFunction& f) {
    const std::size_t d = f.dim();
    std::vector<double> out(std::size_t{1} << d, 0.0);
    for (std::size_t mask = 0; mask < out.size(); ++mask) {
        // Difference every S axis at its nodes first, take absolute values,
        // then contract the remaining axes with cell widths. The order
        // matters: |F f| <= sum_nodes |int_rest (mixed jump fiber)| per node,
        // so the absolute value may not be postponed past the jumps.
        std::vector<cplx> cur = f.values();
        std::size_t lead = 1, trail = f.cell_count();
        std::vector<std::size_t> counts(d);
        for (std::size_t i = 0; i < d; ++i) {
            const std::size_t nc = f.axis(i).cell_count();
            trail /= nc;
            if (!((mask >> i) & 1u)) {
                counts[i] = nc;
                lead *= nc;
                continue;
            }
            const std::size_t nout = nc + 1;
            std::vector<cplx> next(lead * nout * trail, 0.0);
            for (std::size_t L = 0; L < lead; ++L) {
                for (std::size_t j = 0; j <= nc; ++j) {
                    cplx* outp = next.data() + (L * nout + j) * trail;
                    if (j < nc) {
                        const cplx* in = cur.data() + (L * nc + j) * trail;
                        for (std::size_t t = 0; t < trail; ++t) outp[t] += in[t];
                    }
                    if (j > 0) {
                        const cplx* in = cur.data() + (L * nc + (j - 1)) * trail;
                        for (std::size_t t = 0; t < trail; ++t) outp[t] -= in[t];
                    }
                }
            }
            cur = std::move(next);
            counts[i] = nout;
            lead *= nout;
        }

        std::vector<double> mag(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i) mag[i] = std::abs(cur[i]);

        lead = 1;
        trail = mag.size();
        for (std::size_t i = 0; i < d; ++i) {
            const std::size_t nc = counts[i];
            trail /= nc;
            if ((mask >> i) & 1u) {
                lead *= nc;
                continue;
            }
            std::vector<double> next(lead * trail, 0.0);
            for (std::size_t L = 0; L < lead; ++L) {
                double* outp = next.data() + L * trail;
                for (std::size_t c = 0; c < nc; ++c) {
                    const double w = f.axis(i).width(c);
                    const double* in = mag.data() + (L * nc + c) * trail;
                    for (std::size_t t = 0; t < trail; ++t) outp[t] += w * in[t];
                }
            }
            mag = std::move(next);
        }
        double s = 0.0;
        for (double v : mag) s += v;
        out[mask] = s;
    }
    return out;
}

double fourier_exterior_tail(const GridFunction& f,
                             const std::vector<Axis>& freq_axes,
                             std::span<const double> beta, double q) {
    const std::size_t d = f.dim();
    if (beta.size() != d) throw std::invalid_argument("fourier_exterior_tail: beta size");
    const std::vector<double> C = fourier_tail_constants(f);

    // Partition the exterior of the frequency box into product regions by
    // which axes run outside; on each region bound |F f| by the constant of
    // the outside-axes subset.
    double total = 0.0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
        double piece = std::pow(C[mask], q);
        for (std::size_t i = 0; i < d; ++i) {
            const double X = std::max(std::abs(freq_axes[i].front()),
                                      std::abs(freq_axes[i].back()));
            double expo, integral_i;
            if ((mask >> i) & 1u) {
                expo = (beta[i] - 1.0) * q;  // out: weight * 1/|xi|
                if (expo >= -1.0) return INFINITY;
                integral_i = 2.0 * std::pow(X, expo + 1.0) / (-(expo + 1.0));
            } else {
                expo = beta[i] * q;  // in: |xi|^{beta q} over (-X, X)
                if (expo <= -1.0) return INFINITY;
                integral_i = 2.0 * std::pow(X, expo + 1.0) / (expo + 1.0);
            }
            piece *= integral_i;
        }
        total += piece;
    }
    return std::pow(total, 1.0 / q);
}

double fourier_cauchy_gap(const GridFunction& f, double n1, double n2,
                          const std::vector<Axis>& freq_axes,
                          const NormRequest& norm) {
    if (!(0.0 < n1 && n1 < n2))
        throw std::invalid_argument("fourier_cauchy_gap: requires 0 < N1 < N2");
    const GridFunction g1 = truncated_fourier(f, n1, freq_axes);
    const GridFunction g2 = truncated_fourier(f, n2, freq_axes);
    const GridFunction diff = subtract(g2, g1);
    if (norm.kind == NormRequest::Kind::weighted) return weighted_integral(diff, norm.weighted);
    return net_norm(net_profile(diff, norm.net_lattice), norm.net_p, norm.net_q).value;
}

}  // namespace hardylab
