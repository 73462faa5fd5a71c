#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "hardylab/inequalities.hpp"
#include "hardylab/rng.hpp"
#include "support.hpp"

using namespace hardylab;

namespace {

HarnessSettings fast_settings() {
    HarnessSettings s;
    s.freq_extent = 24.0;
    s.freq_half_cells = 360;
    s.schedule = {1.0, 2.0, 4.0, 8.0};
    return s;
}

}  // namespace

TEST_CASE("parameter validation spot checks") {
    // the diagonal regime with alpha = 0, beta = 1 - 2/r at r = q = 4
    PittParams a{1, 4.0, 4.0, 0.0, 0.5, PittVariant::alpha_nonneg};
    CHECK(validate_params(a).empty());

    // the dual diagonal with beta = 0, alpha = 1 - 2/r at r = q = 4
    PittParams b{1, 4.0, 4.0, 0.5, 0.0, PittVariant::beta_nonpos};
    CHECK(validate_params(b).empty());

    // alpha < 0 violates the classical constraints (and r > q on top)
    PittParams c{1, 4.0, 2.0, -1.0, 1.25, PittVariant::pitt};
    CHECK(!validate_params(c).empty());
}

TEST_CASE("validation clauses trigger individually") {
    PittParams p{1, 2.0, 2.0, 0.25, 0.25, PittVariant::pitt};
    // balance: 1/r' - 1/q - beta = 0.5 - 0.5 - 0.25 = -0.25 != alpha
    auto v = validate_params(p);
    CHECK(!v.empty());

    p.alpha = -0.25;
    p.variant = PittVariant::beta_nonpos;  // lower bound is 1/r'-1/q = 0 > alpha
    v = validate_params(p);
    CHECK(!v.empty());

    p.variant = PittVariant::alpha_nonneg;  // alpha >= 0 fails too
    CHECK(!validate_params(p).empty());

    // r > q rejected
    PittParams rq{1, 3.0, 2.0, 0.0, 0.0, PittVariant::pitt};
    rq.beta = 1.0 - 1.0 / 3.0 - 0.5;
    rq.alpha = 0.0;
    CHECK(!validate_params(rq).empty());
}

TEST_CASE("reverse hardy at p = 1 is an identity for one-sided data") {
    // Fubini makes both sides equal for g >= 0 supported in (0, inf); the
    // averaged side needs a long tail since its integrand decays like 1/t^2
    HarnessSettings s;
    s.p = 1.0;
    s.hardy.tail_factor = 8192.0;
    const GridFunction f = testsup::indicator_1d(1.0, 2.0);
    const InequalityReport rep = inequality_ratio(InequalityKind::reverse_hardy, f, s);
    CHECK(rep.lhs == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(rep.ratio == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(rep.lhs <= rep.rhs * (1.0 + 2e-3));
}

TEST_CASE("reverse hardy rejects signed data and p > 1") {
    HarnessSettings s;
    s.p = 1.0;
    const GridFunction f = testsup::step_1d({1.0, 2.0, 3.0}, {1.0, -1.0});
    CHECK_THROWS_AS(inequality_ratio(InequalityKind::reverse_hardy, f, s),
                    std::invalid_argument);
    s.p = 1.5;
    const GridFunction g = testsup::indicator_1d(1.0, 2.0);
    CHECK_THROWS_AS(inequality_ratio(InequalityKind::reverse_hardy, g, s),
                    std::invalid_argument);
}

TEST_CASE("hardy_lp ratio: worked indicator value") {
    // H(chi_(0,1)) = min(1, 1/t) on t > 0, so ||H chi||_2^2 = 1 + 1 = 2
    HarnessSettings s;
    s.p = 2.0;
    s.hardy.rel_tol = 2e-3;
    s.hardy.tail_factor = 4096.0;
    const GridFunction f = testsup::indicator_1d(0.0, 1.0);
    const InequalityReport rep = inequality_ratio(InequalityKind::hardy_lp, f, s);
    CHECK(rep.rhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.ratio == doctest::Approx(std::sqrt(2.0)).epsilon(5e-3));
}

TEST_CASE("ratio homogeneity and the zero flag") {
    HarnessSettings s = fast_settings();
    s.p = 2.0;
    Rng rng(601);
    const GridFunction f = testsup::random_jittered_grid(rng, 1, 5, false);
    const InequalityReport r1 = inequality_ratio(InequalityKind::hardy_lp, f, s);
    const InequalityReport r2 =
        inequality_ratio(InequalityKind::hardy_lp, scale(f, 10.0), s);
    CHECK(r2.ratio == doctest::Approx(r1.ratio).epsilon(1e-10));

    s.pitt.r = 3.0;
    const InequalityReport z =
        inequality_ratio(InequalityKind::teps_alpha_diag, scale(f, 0.0), s);
    CHECK(z.flagged("nan"));
    CHECK(std::isnan(z.ratio));
}

TEST_CASE("two-dimensional operator ratio stays finite and stable") {
    HarnessSettings s;
    s.p = 2.0;
    s.hardy.rel_tol = 0.05;
    s.hardy.tail_factor = 32.0;
    s.hardy.max_cells_per_axis = 400;
    FamilySpec fam;
    fam.d = 2;
    fam.name = "gaussian";
    fam.extent = 3.0;
    fam.base_half_cells = 8;
    double prev = -1.0;
    for (int level : {0, 1}) {
        const InequalityReport rep =
            inequality_ratio(InequalityKind::hardy_lp, make_family_function(fam, level), s);
        CHECK(std::isfinite(rep.ratio));
        if (prev > 0.0) CHECK(std::abs(rep.ratio - prev) < 0.25 * prev);
        prev = rep.ratio;
    }
}

TEST_CASE("hausdorff-young and pitt diagonals stay bounded") {
    HarnessSettings s = fast_settings();
    const GridFunction f = testsup::gaussian_1d(2.0, 64);
    s.pitt.r = 1.5;
    const InequalityReport hy = inequality_ratio(InequalityKind::hausdorff_young, f, s);
    CHECK(std::isfinite(hy.ratio));
    CHECK(hy.ratio > 0.0);
    const InequalityReport pd = inequality_ratio(InequalityKind::pitt_diag, f, s);
    CHECK(std::isfinite(pd.ratio));
    CHECK(!pd.flagged("unreliable_tail"));
}

TEST_CASE("diagonal T_eps ratio at r = 2 degenerates toward plancherel") {
    HarnessSettings s = fast_settings();
    s.pitt.r = 2.0;
    const GridFunction f = testsup::gaussian_1d(2.0, 96);
    const InequalityReport rep = inequality_ratio(InequalityKind::teps_alpha_diag, f, s);
    const double root_2pi = std::sqrt(2.0 * std::numbers::pi);
    CHECK(rep.ratio > 0.5 * root_2pi);
    CHECK(rep.ratio < 2.0 * root_2pi);
}

TEST_CASE("hlp_net_ratio: indicator across truncation levels") {
    HarnessSettings s;
    s.freq_extent = 64.0;
    s.freq_half_cells = 512;
    const GridFunction f = testsup::indicator_1d(0.0, 1.0);
    double lo = INFINITY, hi = 0.0;
    for (double N : {2.0, 4.0, 8.0}) {
        const InequalityReport rep = hlp_net_ratio(f, 2.0, 2.0, N, s);
        lo = std::min(lo, rep.ratio);
        hi = std::max(hi, rep.ratio);
        CHECK(std::isfinite(rep.ratio));
    }
    CHECK((hi - lo) / lo < 0.05);

    // homogeneity to rounding
    const InequalityReport a = hlp_net_ratio(f, 2.0, 2.0, 4.0, s);
    const InequalityReport b = hlp_net_ratio(scale(f, 10.0), 2.0, 2.0, 4.0, s);
    CHECK(b.lhs == doctest::Approx(10.0 * a.lhs).epsilon(1e-10));
    CHECK(b.ratio == doctest::Approx(a.ratio).epsilon(1e-10));

    const InequalityReport z = hlp_net_ratio(scale(f, 0.0), 2.0, 2.0, 4.0, s);
    CHECK(z.flagged("nan"));
}

TEST_CASE("families are deterministic and refine in place") {
    FamilySpec spec;
    spec.name = "random_signed";
    spec.seed = 42;
    spec.base_half_cells = 4;
    const GridFunction a = make_family_function(spec, 0);
    const GridFunction b = make_family_function(spec, 0);
    REQUIRE(a.cell_count() == b.cell_count());
    for (std::size_t i = 0; i < a.cell_count(); ++i) CHECK(a.value(i) == b.value(i));

    // level 1 resamples the same underlying step function
    const GridFunction fine = make_family_function(spec, 1);
    CHECK(lp_norm(fine, 2.0) == doctest::Approx(lp_norm(a, 2.0)).epsilon(1e-12));

    FamilySpec bad = spec;
    bad.name = "nope";
    CHECK_THROWS_AS(make_family_function(bad, 0), std::invalid_argument);
}

TEST_CASE("refinement sweep stabilizes for hardy_lp on the gaussian family") {
    HarnessSettings s;
    s.p = 2.0;
    FamilySpec fam;
    fam.name = "gaussian";
    fam.extent = 4.0;
    fam.base_half_cells = 16;
    const SweepResult sw = refinement_sweep(InequalityKind::hardy_lp, fam, 3, s);
    REQUIRE(sw.reports.size() == 3);
    CHECK(!sw.growth_flagged);
    for (const auto& rep : sw.reports) CHECK(std::isfinite(rep.ratio));
}

TEST_CASE("every transform-side kind runs with admissible parameters") {
    HarnessSettings s = fast_settings();
    const GridFunction f = testsup::gaussian_1d(2.0, 64);

    s.pitt = PittParams{1, 2.0, 4.0, 0.35, -0.1, PittVariant::pitt};
    const InequalityReport pr = inequality_ratio(InequalityKind::pitt, f, s);
    CHECK(std::isfinite(pr.ratio));
    CHECK(pr.ratio > 0.0);

    s.pitt = PittParams{1, 2.0, 2.0, 0.2, -0.2, PittVariant::alpha_nonneg};
    const InequalityReport ta = inequality_ratio(InequalityKind::teps_alpha, f, s);
    CHECK(std::isfinite(ta.ratio));
    CHECK(!ta.flagged("nonconverged"));

    s.pitt = PittParams{1, 2.0, 4.0, 0.3, -0.05, PittVariant::beta_nonpos};
    const InequalityReport tb = inequality_ratio(InequalityKind::teps_beta, f, s);
    CHECK(std::isfinite(tb.ratio));

    // inadmissible tuples are rejected up front
    s.pitt = PittParams{1, 2.0, 2.0, 0.1, 0.0, PittVariant::pitt};
    CHECK_THROWS_AS(inequality_ratio(InequalityKind::pitt, f, s), std::invalid_argument);
}

TEST_CASE("endpoint operator kinds and the averaged pair") {
    HarnessSettings s;
    const GridFunction f = testsup::gaussian_1d(3.0, 96);

    s.eps = EpsilonMask::zeros(1);
    s.p = INFINITY;
    const InequalityReport hsup = inequality_ratio(InequalityKind::hardy_hb, f, s);
    CHECK(hsup.ratio <= 1.0 + 1e-12);  // averaging cannot exceed the sup

    s.eps = EpsilonMask::ones(1);
    s.p = 1.0;
    const InequalityReport b1 = inequality_ratio(InequalityKind::hardy_hb, f, s);
    CHECK(std::isfinite(b1.ratio));
    CHECK(b1.ratio > 0.0);

    s.eps = EpsilonMask::zeros(1);
    s.p = 0.5;
    CHECK_THROWS_AS(inequality_ratio(InequalityKind::hardy_hb, f, s),
                    std::invalid_argument);

    // averaged pair against the plain weighted norm, one-sided input
    HarnessSettings av;
    av.pitt.q = 2.0;
    av.pitt.beta = 0.1;
    const GridFunction g = testsup::indicator_1d(0.5, 2.5);
    const InequalityReport rep = inequality_ratio(InequalityKind::hardy_averages, g, av);
    CHECK(std::isfinite(rep.ratio));
    const InequalityReport rep2 =
        inequality_ratio(InequalityKind::hardy_averages, scale(g, 3.0), av);
    CHECK(rep2.ratio == doctest::Approx(rep.ratio).epsilon(1e-10));

    av.pitt.beta = 0.9;  // outside (-1/q, 1 - 1/q)
    CHECK_THROWS_AS(inequality_ratio(InequalityKind::hardy_averages, g, av),
                    std::invalid_argument);
}

TEST_CASE("the zero family flags every level of a sweep") {
    HarnessSettings s = fast_settings();
    s.pitt.r = 3.0;
    FamilySpec fam;
    fam.name = "zero";
    const SweepResult sw = refinement_sweep(InequalityKind::teps_alpha_diag, fam, 2, s);
    for (const auto& rep : sw.reports) CHECK(rep.flagged("nan"));
}

TEST_CASE("signed family is rejected by reverse_hardy inside a sweep") {
    HarnessSettings s;
    s.p = 0.5;
    FamilySpec fam;
    fam.name = "random_signed";
    fam.seed = 9;
    CHECK_THROWS_AS(refinement_sweep(InequalityKind::reverse_hardy, fam, 2, s),
                    std::invalid_argument);
}

TEST_CASE("config parsing") {
    std::istringstream is(
        "# sweep configuration\n"
        "family = gaussian\n"
        "d = 1\n"
        "half_cells = 8\n"
        "extent = 3\n"
        "levels = 2\n"
        "p = 2\n"
        "r = 3\n"
        "epsilon = 0\n"
        "schedule = 1,2,4\n");
    const VerifyConfig cfg = parse_verify_config(is);
    CHECK(cfg.family.name == "gaussian");
    CHECK(cfg.family.extent == 3.0);
    CHECK(cfg.levels == 2);
    CHECK(cfg.settings.pitt.r == 3.0);
    CHECK(cfg.settings.schedule.size() == 3);

    std::istringstream bad("mystery = 1\n");
    CHECK_THROWS_AS(parse_verify_config(bad), std::runtime_error);
}
