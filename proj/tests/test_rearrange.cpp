#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hardylab/rearrange.hpp"
#include "hardylab/rng.hpp"
#include "support.hpp"

using namespace hardylab;
using testsup::step_1d;

TEST_CASE("one-dimensional rearrangement sorts cell masses") {
    const GridFunction f = step_1d({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 2.0});
    const GridFunction r = rearrange_axis(f, 0);
    REQUIRE(r.axis(0).breakpoints == std::vector<double>{0.0, 1.0, 2.0, 3.0});
    CHECK(r.value(0) == cplx(3.0));
    CHECK(r.value(1) == cplx(2.0));
    CHECK(r.value(2) == cplx(1.0));
}

TEST_CASE("nonnegative non-increasing profiles are fixed points") {
    const GridFunction f = step_1d({0.0, 0.5, 2.0, 3.0}, {5.0, 2.0, 1.0});
    const GridFunction r = rearrange_axis(f, 0);
    REQUIRE(r.cell_count() == f.cell_count());
    for (std::size_t c = 0; c < f.cell_count(); ++c) CHECK(r.value(c) == f.value(c));

    const GridFunction sq = GridFunction({Axis{{0.0, 1.0}}, Axis{{0.0, 1.0}}}, {1.0});
    const GridFunction rsq = iterative_rearrange(sq);
    CHECK(rsq.cell_count() == 1);
    CHECK(rsq.value(0) == cplx(1.0));
}

TEST_CASE("hand-checked 2x2 iterated rearrangement") {
    // values ((1,4),(2,3)) on unit cells; rearranging per axis in order gives
    // the doubly non-increasing table ((4,2),(3,1))
    const GridFunction f =
        GridFunction({Axis{{0.0, 1.0, 2.0}}, Axis{{0.0, 1.0, 2.0}}},
                     {1.0, 4.0, 2.0, 3.0});
    const GridFunction r = iterative_rearrange(f);
    REQUIRE(r.cell_count() == 4);
    CHECK(r.value(0).real() == doctest::Approx(4.0));
    CHECK(r.value(1).real() == doctest::Approx(2.0));
    CHECK(r.value(2).real() == doctest::Approx(3.0));
    CHECK(r.value(3).real() == doctest::Approx(1.0));
}

TEST_CASE("equimeasurability: rearrangement preserves L_p norms") {
    Rng rng(201);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 1 + rng.uniform_int(0, 2);
        const GridFunction f = testsup::random_uniform_grid(rng, d, 6, false);
        GridFunction r = f;
        for (std::size_t i = 0; i < d; ++i) {
            r = rearrange_axis(r, i);
            for (double p : {0.5, 1.0, 2.0, 4.0}) {
                CHECK(lp_norm(r, p) ==
                      doctest::Approx(testsup::lp_norm_by_masses(f, p)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("iterated rearrangement is non-increasing along every axis") {
    Rng rng(202);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t d = 1 + rng.uniform_int(0, 1);
        const GridFunction r =
            iterative_rearrange(testsup::random_jittered_grid(rng, d, 5, false));
        std::array<std::size_t, 3> idx{};
        for (std::size_t flat = 0; flat < r.cell_count(); ++flat) {
            r.unflatten(flat, std::span<std::size_t>(idx.data(), d));
            CHECK(r.value(flat).imag() == 0.0);
            CHECK(r.value(flat).real() >= 0.0);
            for (std::size_t i = 0; i < d; ++i) {
                if (idx[i] + 1 < r.axis(i).cell_count()) {
                    std::array<std::size_t, 3> nxt = idx;
                    ++nxt[i];
                    const double here = r.value(flat).real();
                    const double there =
                        r.value(r.flat_index(std::span<const std::size_t>(nxt.data(), d)))
                            .real();
                    CHECK(here >= there - 1e-13);
                }
            }
        }
    }
}

TEST_CASE("lorentz norm closed forms") {
    const GridFunction ind = testsup::indicator_1d(0.0, 1.0);
    CHECK(lorentz_norm(ind, {{2.0}, {2.0}}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lorentz_norm(ind, {{1.0}, {INFINITY}}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lorentz_norm(scale(ind, 0.0), {{2.0}, {2.0}}) == 0.0);
}

TEST_CASE("lorentz norm with p = q collapses to L_p") {
    Rng rng(203);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t d = 1 + rng.uniform_int(0, 1);
        const GridFunction f = testsup::random_uniform_grid(rng, d, 6, false);
        const double p = rng.uniform(0.6, 3.5);
        LorentzParams lp;
        lp.p.assign(d, p);
        lp.q.assign(d, p);
        CHECK(lorentz_norm(f, lp) == doctest::Approx(lp_norm(f, p)).epsilon(1e-10));
    }
}

TEST_CASE("vector-index lorentz norm against a dense nested-integral oracle") {
    Rng rng(205);
    for (int trial = 0; trial < 5; ++trial) {
        const GridFunction f = testsup::random_uniform_grid(rng, 2, 4, false);
        const GridFunction r = iterative_rearrange(f);
        const LorentzParams lp{{1.7, 2.4}, {1.2, 3.0}};
        const double got = lorentz_norm(f, lp);

        // dense quadrature of the iterated integral over r's grid; cells
        // touching 0 get geometric shells since t^{q/p-1} is singular there
        auto cell_points = [](double lo, double hi) {
            std::vector<std::pair<double, double>> pts;  // (t, weight)
            if (lo > 0.0) {
                const int sub = 60;
                for (int j = 0; j < sub; ++j)
                    pts.push_back({lo + (hi - lo) * (j + 0.5) / sub, (hi - lo) / sub});
            } else {
                double top = hi;
                for (int s = 0; s < 60; ++s) {
                    const double bot = top * 0.5;
                    for (int j = 0; j < 8; ++j)
                        pts.push_back({bot + (top - bot) * (j + 0.5) / 8.0,
                                       (top - bot) / 8.0});
                    top = bot;
                }
            }
            return pts;
        };
        const Axis& a1 = r.axis(0);
        const Axis& a2 = r.axis(1);
        double outer = 0.0;
        for (std::size_t c2 = 0; c2 < a2.cell_count(); ++c2) {
            for (const auto& [t2, w2] : cell_points(a2.lo(c2), a2.hi(c2))) {
                double inner = 0.0;
                for (std::size_t c1 = 0; c1 < a1.cell_count(); ++c1) {
                    const double v = r.value(c1 * a2.cell_count() + c2).real();
                    if (v == 0.0) continue;
                    for (const auto& [t1, w1] : cell_points(a1.lo(c1), a1.hi(c1)))
                        inner +=
                            std::pow(std::pow(t1, 1.0 / lp.p[0]) * v, lp.q[0]) / t1 * w1;
                }
                outer += std::pow(std::pow(t2, 1.0 / lp.p[1]) *
                                      std::pow(inner, 1.0 / lp.q[0]),
                                  lp.q[1]) /
                         t2 * w2;
            }
        }
        const double want = std::pow(outer, 1.0 / lp.q[1]);
        CHECK(got == doctest::Approx(want).epsilon(2e-3));
    }
}

TEST_CASE("pairing inequality closed cases") {
    const GridFunction g = testsup::indicator_1d(0.0, 1.0);
    const GridFunction phi = testsup::indicator_1d(0.0, 1.0);
    const PairingResult pr = hlp_pairing(g, phi);
    CHECK(pr.lhs == doctest::Approx(1.0));
    CHECK(pr.rhs == doctest::Approx(1.0));

    const PairingResult zr = hlp_pairing(scale(g, 0.0), phi);
    CHECK(zr.lhs == 0.0);
    CHECK(zr.rhs == 0.0);
}

TEST_CASE("pairing inequality on random monotone weights") {
    Rng rng(204);
    for (int trial = 0; trial < 250; ++trial) {
        // phi monotone strictly positive on (0,4)
        const std::size_t n = 3 + rng.uniform_int(0, 5);
        Axis pax;
        for (std::size_t c = 0; c <= n; ++c)
            pax.breakpoints.push_back(4.0 * static_cast<double>(c) / n);
        std::vector<cplx> pv(n);
        for (auto& v : pv) v = 0.1 + rng.uniform();
        std::vector<double> sorted(n);
        for (std::size_t c = 0; c < n; ++c) sorted[c] = pv[c].real();
        std::sort(sorted.begin(), sorted.end());
        if (rng.uniform() < 0.5) std::reverse(sorted.begin(), sorted.end());
        for (std::size_t c = 0; c < n; ++c) pv[c] = sorted[c];
        const GridFunction phi({pax}, pv);

        const GridFunction g = [&] {
            const std::size_t m = 2 + rng.uniform_int(0, 6);
            Axis gax;
            for (std::size_t c = 0; c <= m; ++c)
                gax.breakpoints.push_back(4.0 * static_cast<double>(c) / m);
            std::vector<cplx> gv(m);
            for (auto& v : gv) v = rng.uniform();
            return GridFunction({gax}, gv);
        }();

        const PairingResult pr = hlp_pairing(g, phi);
        CHECK(pr.lhs <= pr.rhs + 1e-12 * (1.0 + pr.rhs));
    }
}

TEST_CASE("pairing rejects bad weights") {
    const GridFunction g = testsup::indicator_1d(0.0, 1.0);
    const GridFunction wiggly =
        step_1d({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 2.0});
    CHECK_THROWS_AS(hlp_pairing(g, wiggly), std::invalid_argument);

    const GridFunction outside = testsup::indicator_1d(2.0, 3.0);
    const GridFunction phi = testsup::indicator_1d(0.0, 1.0);
    CHECK_THROWS_AS(hlp_pairing(outside, phi), std::invalid_argument);
}
