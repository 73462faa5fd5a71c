#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hardylab {

using cplx = std::complex<double>;

// Gauss-Legendre rule on [-1,1]. Nodes are found once per order by Newton
// iteration on the Legendre recurrence and cached.
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_rule(int order);

double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    int order = 16);
cplx gl_integrate_c(const std::function<cplx(double)>& f, double a, double b,
                    int order = 16);

// Integrates f over (a,b) with geometric shells accumulating toward `a`
// (integrand assumed regular away from `a`). Stops once a shell contributes
// less than rel_tol of the running total.
double shell_integrate_toward_lower(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol = 1e-14,
                                    int max_shells = 64, int order = 16);

// Sine and cosine integrals. Power series below x=4, continued fraction for
// E1(ix) above. cin_integral is Cin(x) = gamma + log(x) - Ci(x), entire and
// stable near 0.
double sine_integral(double x);
double cosine_integral(double x);  // requires x > 0
double cin_integral(double x);     // requires x >= 0

// \int_a^b e^{-i y x} dx, cancellation-free for all |y (b-a)|.
cplx oscillatory_cell_integral(double y, double a, double b);

// \int_a^b e^{-i y x} / x dx for a sign-pure interval (0 < a < b or
// a < b < 0); either end may be infinite on the side away from 0.
cplx oscillatory_over_x_integral(double a, double b, double y);

// E2(i x) = e^{-i x} - i x E1(i x); gives \int_X^inf e^{-i u b} / u^2 du
// as E2(i b X) / X.
cplx expint_e2_ix(double x);

// \int_a^b (1 - e^{-i t x}) / (i x) dx for a sign-pure cell; an endpoint may
// be exactly 0 (the integrand is bounded there).
cplx hardy_fourier_cell_integral(double t, double a, double b);

inline constexpr double euler_gamma = 0.57721566490153286060651209008;

}  // namespace hardylab
