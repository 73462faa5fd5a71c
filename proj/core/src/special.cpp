#include "hardylab/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace hardylab {

namespace {

GaussRule build_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

// E1(i x) for x > 0 via modified Lentz on the standard continued fraction.
cplx e1_imag_axis(double x) {
    const cplx z(0.0, x);
    const double tiny = 1e-300;
    cplx b = z + 1.0;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cplx del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-z);
}

double si_series(double x) {
    double sum = 0.0;
    double u = x;  // x^{2k+1} / (2k+1)! with alternating sign
    for (int k = 0; k < 60; ++k) {
        const double term = u / (2.0 * k + 1.0);
        sum += term;
        u *= -x * x / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        if (std::abs(u) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

double cin_series(double x) {
    double sum = 0.0;
    double v = x * x / 2.0;  // (-1)^{k+1} x^{2k} / (2k)! starting k=1
    for (int k = 1; k < 60; ++k) {
        const double term = v / (2.0 * k);
        sum += term;
        v *= -x * x / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
        if (std::abs(v) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

constexpr double half_pi = 1.57079632679489661923132169164;

}  // namespace

const GaussRule& gauss_rule(int order) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
    return it->second;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    int order) {
    const GaussRule& r = gauss_rule(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
    return s * half;
}

cplx gl_integrate_c(const std::function<cplx(double)>& f, double a, double b,
                    int order) {
    const GaussRule& r = gauss_rule(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
    return s * half;
}

double shell_integrate_toward_lower(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol,
                                    int max_shells, int order) {
    if (!(b > a)) return 0.0;
    double total = 0.0;
    double hi = b;
    const double span = b - a;
    for (int s = 0; s < max_shells; ++s) {
        const double lo = (s + 1 == max_shells) ? a : a + span * std::pow(0.5, s + 1);
        const double piece = gl_integrate(f, lo, hi, order);
        total += piece;
        if (std::abs(piece) < rel_tol * (std::abs(total) + 1e-300) && s > 2) break;
        hi = lo;
        if (!(hi > a)) break;
    }
    return total;
}

double sine_integral(double x) {
    if (x < 0.0) return -sine_integral(-x);
    if (x <= 4.0) return si_series(x);
    return half_pi + e1_imag_axis(x).imag();
}

double cosine_integral(double x) {
    if (!(x > 0.0)) throw std::domain_error("cosine_integral: requires x > 0");
    if (x <= 4.0) return euler_gamma + std::log(x) - cin_series(x);
    return -e1_imag_axis(x).real();
}

double cin_integral(double x) {
    x = std::abs(x);
    if (x == 0.0) return 0.0;
    if (x <= 4.0) return cin_series(x);
    return euler_gamma + std::log(x) - cosine_integral(x);
}

cplx oscillatory_cell_integral(double y, double a, double b) {
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    const double z = y * h;
    double sinc;
    if (std::abs(z) < 5e-7) {
        sinc = 1.0 - z * z / 6.0 + z * z * z * z / 120.0;
    } else {
        sinc = std::sin(z) / z;
    }
    return std::polar(b - a, -y * m) * sinc;
}

cplx expint_e2_ix(double x) {
    if (x == 0.0) return 1.0;
    const double ax = std::abs(x);
    cplx e1;
    if (ax <= 4.0) {
        e1 = cplx(-cosine_integral(ax), sine_integral(ax) - half_pi);
    } else {
        e1 = e1_imag_axis(ax);
    }
    if (x < 0.0) e1 = std::conj(e1);
    return std::polar(1.0, -x) - cplx(0.0, x) * e1;
}

cplx oscillatory_over_x_integral(double a, double b, double y) {
    if (a < 0.0 || b < 0.0) {
        if (!(a < b && b <= 0.0))
            throw std::domain_error("oscillatory_over_x_integral: interval straddles 0");
        return -std::conj(oscillatory_over_x_integral(-b, -a, y));
    }
    if (!(0.0 < a && a < b))
        throw std::domain_error("oscillatory_over_x_integral: requires 0 < a < b");
    if (y == 0.0) return std::isinf(b) ? cplx(INFINITY, 0.0) : cplx(std::log(b / a), 0.0);
    const double ay = std::abs(y);
    const double sy = y > 0.0 ? 1.0 : -1.0;
    double ci_b, si_b;
    if (std::isinf(b)) {
        ci_b = 0.0;
        si_b = half_pi;
    } else {
        ci_b = cosine_integral(ay * b);
        si_b = sine_integral(ay * b);
    }
    const double ci_a = cosine_integral(ay * a);
    const double si_a = sine_integral(ay * a);
    return cplx(ci_b - ci_a, -sy * (si_b - si_a));
}

cplx hardy_fourier_cell_integral(double t, double a, double b) {
    if (a < 0.0 || b < 0.0) {
        if (!(a < b && b <= 0.0))
            throw std::domain_error("hardy_fourier_cell_integral: interval straddles 0");
        return std::conj(hardy_fourier_cell_integral(t, -b, -a));
    }
    if (!(0.0 <= a && a < b))
        throw std::domain_error("hardy_fourier_cell_integral: bad interval");
    if (t == 0.0) return 0.0;
    const double at = std::abs(t);
    const double st = t > 0.0 ? 1.0 : -1.0;
    const double si = sine_integral(at * b) - sine_integral(at * a);
    const double cn = cin_integral(at * b) - cin_integral(at * a);
    return cplx(st * si, -cn);
}

}  // namespace hardylab
