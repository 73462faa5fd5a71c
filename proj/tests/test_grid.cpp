#include <doctest.h>

#include <cmath>

#include "hardylab/grid.hpp"
#include "hardylab/rng.hpp"
#include "support.hpp"

using namespace hardylab;
using testsup::step_1d;

TEST_CASE("construction basics and the zero-straddle rule") {
    const GridFunction ind = GridFunction::make({Axis{{0.0, 1.0}}}, {1.0});
    CHECK(ind.cell_count() == 1);

    const GridFunction sgn = GridFunction::make({Axis{{-1.0, 0.0, 1.0}}}, {-1.0, 1.0});
    CHECK(sgn.cell_count() == 2);
    CHECK(sgn.value(0) == cplx(-1.0));

    // a cell over (-1,1) splits at 0, duplicating the value
    const GridFunction split = GridFunction::make({Axis{{-1.0, 1.0}}}, {1.0});
    REQUIRE(split.cell_count() == 2);
    CHECK(split.axis(0).breakpoints == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(split.value(0) == cplx(1.0));
    CHECK(split.value(1) == cplx(1.0));

    // 2-d split happens per axis
    const GridFunction s2 = GridFunction::make(
        {Axis{{-1.0, 1.0}}, Axis{{0.0, 2.0}}}, {cplx(3.0)});
    CHECK(s2.cell_count() == 2);

    CHECK_THROWS_AS(GridFunction::make({Axis{{1.0, 0.0}}}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction::make({Axis{{0.0, 1.0}}}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction({Axis{{-1.0, 1.0}}}, {1.0}), std::invalid_argument);
}

TEST_CASE("weighted integral closed forms") {
    // int_1^2 t dt = 1.5
    const GridFunction f = step_1d({1.0, 2.0}, {1.0});
    CHECK(weighted_integral(f, {{1.0}, 1.0}) == doctest::Approx(1.5).epsilon(1e-15));

    // zero function
    const GridFunction z = step_1d({0.0, 2.0}, {0.0});
    CHECK(weighted_integral(z, {{1.0}, 1.0}) == 0.0);

    // unit square mass at alpha = 0, p = 2 in d = 2
    const GridFunction sq = GridFunction(
        {Axis{{1.0, 2.0}}, Axis{{1.0, 2.0}}}, {1.0});
    CHECK(weighted_integral(sq, {{0.0, 0.0}, 2.0}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("weighted integral properties") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 1 + rng.uniform_int(0, 2);
        GridFunction f = testsup::random_jittered_grid(rng, d, 5, false);
        const double p = rng.uniform(0.5, 4.0);
        WeightedNormSpec w;
        w.outer_power = p;
        for (std::size_t i = 0; i < d; ++i)
            w.exponent_per_axis.push_back(rng.uniform(0.0, 1.0));

        // absolute homogeneity
        const double c = rng.normal();
        CHECK(weighted_integral(scale(f, c), w) ==
              doctest::Approx(std::abs(c) * weighted_integral(f, w)).epsilon(1e-12));

        // alpha = 0 equals the direct cell L_p sum
        CHECK(lp_norm(f, p) == doctest::Approx(testsup::lp_norm_by_masses(f, p)).epsilon(1e-12));
    }
}

TEST_CASE("refinement invariance: splitting a cell keeps integrals") {
    Rng rng(102);
    for (int trial = 0; trial < 10; ++trial) {
        GridFunction f = testsup::random_jittered_grid(rng, 1, 6, false);
        const Axis& ax = f.axis(0);
        const std::size_t c = static_cast<std::size_t>(rng.uniform_int(0, ax.cell_count() - 1));
        const double cut = ax.lo(c) + ax.width(c) * rng.uniform(0.2, 0.8);
        Axis split = ax;
        split.breakpoints.insert(
            split.breakpoints.begin() + static_cast<std::ptrdiff_t>(c) + 1, cut);
        std::vector<cplx> vals;
        for (std::size_t i = 0; i < f.cell_count(); ++i) {
            vals.push_back(f.value(i));
            if (i == c) vals.push_back(f.value(i));
        }
        const GridFunction g({split}, vals);
        const WeightedNormSpec w{{0.7}, 1.5};
        CHECK(weighted_integral(g, w) ==
              doctest::Approx(weighted_integral(f, w)).epsilon(1e-13));
    }
}

TEST_CASE("non-integrable weight at the origin is rejected") {
    const GridFunction f = step_1d({0.0, 1.0}, {1.0});
    CHECK_THROWS_AS(weighted_integral(f, {{-1.0}, 1.0}), std::domain_error);
    CHECK_THROWS_AS(weighted_integral(f, {{-0.6}, 2.0}), std::domain_error);
    // but a zero-valued cell at the origin is fine
    const GridFunction g = step_1d({0.0, 1.0, 2.0}, {0.0, 1.0});
    CHECK(weighted_integral(g, {{-1.0}, 1.0}) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("prefix table box integrals match brute summation") {
    Rng rng(103);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t d = 1 + rng.uniform_int(0, 2);
        GridFunction f = testsup::random_jittered_grid(rng, d, 4, false);
        const PrefixTable pt(f);
        std::vector<double> lo(d), hi(d);
        for (std::size_t i = 0; i < d; ++i) {
            const double a = rng.uniform(f.axis(i).front() - 0.5, f.axis(i).back() + 0.5);
            const double b = rng.uniform(f.axis(i).front() - 0.5, f.axis(i).back() + 0.5);
            lo[i] = std::min(a, b);
            hi[i] = std::max(a, b) + 1e-3;
        }
        const double want = testsup::rect_mean_brute(f, lo, hi);
        double vol = 1.0;
        for (std::size_t i = 0; i < d; ++i) vol *= hi[i] - lo[i];
        CHECK(std::abs(pt.box(lo, hi)) / vol == doctest::Approx(want).epsilon(1e-11));
    }
}

TEST_CASE("support box and extents") {
    const GridFunction f = step_1d({-2.0, -1.0, 0.0, 1.0}, {0.0, 3.0, 0.0});
    const SupportBox sb = support_box(f);
    REQUIRE(!sb.empty);
    CHECK(sb.lo[0] == -1.0);
    CHECK(sb.hi[0] == 0.0);
    CHECK(axis_extent(f, 0) == 2.0);
    CHECK(support_box(scale(f, 0.0)).empty);
}
