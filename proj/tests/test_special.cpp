#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracbous/special.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace fracbous;

TEST_CASE("E_1(z) is exp(z)") {
    for (double z = -5.0; z <= 0.0; z += 0.25) {
        CHECK(std::abs(mittag_leffler(FractionalOrder(1.0), z) - std::exp(z)) <=
              1e-12);
    }
    // The series branch itself (not the exp shortcut) agrees too.
    SeriesControl ctl;
    const BranchResult s = detail::ml_series(1.0, -1.0, ctl);
    CHECK(s.met);
    CHECK(std::abs(s.value - std::exp(-1.0)) <= 1e-13);
}

TEST_CASE("E_{1/2}(-x) equals exp(x^2) erfc(x)") {
    // Classical identity, with erfc supplied by the C library as an
    // independent reference.
    for (double x = 0.0; x <= 3.0; x += 0.125) {
        const double ref = std::exp(x * x) * std::erfc(x);
        CHECK(std::abs(mittag_leffler(FractionalOrder(0.5), -x) - ref) <=
              1e-10);
    }
}

TEST_CASE("Mittag-Leffler frozen reference values") {
    struct Case {
        double gamma, z, expected, tol;
    };
    // References computed with 40-digit arithmetic from the defining series.
    // The gamma = 0.3 point keeps a looser tolerance: the alternating series
    // loses ~3 digits to cancellation there, by design of the estimate.
    const Case cases[] = {
        {0.5, -2.0, 0.25539567631050574, 1e-12},
        {0.3, -2.0, 0.29023222616787535, 1e-10},
        {0.7, -3.0, 0.13789710966502707, 1e-12},
        {0.9, -5.0, 0.034431324804098424, 1e-12},
        {0.6, -1.5, 0.30321483619882040, 1e-12},
        {0.4, -12.0, 0.054359589229611454, 1e-12},
    };
    for (const Case& c : cases) {
        CAPTURE(c.gamma);
        CAPTURE(c.z);
        CHECK(std::abs(mittag_leffler(FractionalOrder(c.gamma), c.z) -
                       c.expected) <= c.tol);
    }
}

TEST_CASE("E_gamma(-x) stays in (0, 1] and decreases") {
    for (double gamma : {0.3, 0.5, 0.7, 0.9, 1.0}) {
        const FractionalOrder g(gamma);
        CHECK(mittag_leffler(g, 0.0) == 1.0);
        double prev = 1.0;
        for (double x = 0.5; x <= 8.0; x += 0.5) {
            const double v = mittag_leffler(g, -x);
            CHECK(v > 0.0);
            CHECK(v <= 1.0);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("series and asymptotic branches agree near their crossover") {
    // Crossover points chosen per gamma so both branches are usable; the
    // admissible disagreement is 10x the branch error estimate recorded
    // when the points were frozen.
    struct Point {
        double gamma, switch_at, abs_tol;
        bool series_met; // small gamma: series terms peak near 1e8, so the
                         // rounding floor eps*max|term| exceeds the strict
                         // 1e-8 limit and the branch reports not-met
    };
    const Point pts[] = {
        {0.3, 2.5, 2e-6, false},
        {0.5, 4.0, 1e-8, true},
        {0.7, 8.0, 1e-7, true},
        {0.9, 12.0, 1e-7, true},
    };
    SeriesControl ctl;
    for (const Point& p : pts) {
        CAPTURE(p.gamma);
        const BranchResult a = detail::ml_series(p.gamma, -p.switch_at, ctl);
        const BranchResult b =
            detail::ml_asymptotic(p.gamma, -p.switch_at, ctl);
        CHECK(a.met == p.series_met);
        CHECK(b.met); // the fallback branch is always usable here
        CHECK(std::abs(a.value - b.value) <= 10.0 * p.abs_tol);
    }
}

TEST_CASE("mittag_leffler rejects positive arguments") {
    CHECK_THROWS_AS(mittag_leffler(FractionalOrder(0.5), 0.1),
                    std::domain_error);
}

TEST_CASE("Kilbas-Saigo frozen reference values") {
    struct Case {
        double a, b, lambda, t, expected;
    };
    const Case cases[] = {
        {0.4, 0.3, 1.0, 1.0, 0.47017806527829027},
        {0.7, 0.15, 2.0, 0.5, 0.39803527381199357},
        {0.5, -0.2, 1.0, 2.0, 0.34734193452889390},
        {0.9, 0.05, 0.5, 1.25, 0.55227808961049948},
    };
    for (const Case& c : cases) {
        CAPTURE(c.a);
        CAPTURE(c.b);
        CHECK(std::abs(kilbas_saigo(FractionalOrder(c.a), c.b, c.lambda, c.t) -
                       c.expected) <= 1e-12);
    }
}

TEST_CASE("Kilbas-Saigo basics: t = 0, degeneration, bounds") {
    CHECK(kilbas_saigo(FractionalOrder(0.5), 0.2, 3.0, 0.0) == 1.0);
    CHECK(kilbas_saigo(FractionalOrder(0.5), 0.2, 0.0, 2.0) == 1.0);

    // b = 0 collapses the product of Gamma ratios and the function becomes
    // the one-parameter Mittag-Leffler of -lambda t^a.
    CHECK(std::abs(kilbas_saigo(FractionalOrder(1.0), 0.0, 1.0, 2.0) -
                   std::exp(-2.0)) <= 1e-12);
    for (double t : {0.3, 0.9, 1.7}) {
        const double ks = kilbas_saigo(FractionalOrder(0.6), 0.0, 1.2, t);
        const double ml =
            mittag_leffler(FractionalOrder(0.6), -1.2 * std::pow(t, 0.6));
        CHECK(std::abs(ks - ml) <= 1e-12);
    }

    // Monotone decay in t inside the usable window.
    double prev = 1.0;
    for (double t = 0.2; t <= 2.0; t += 0.2) {
        const double v = kilbas_saigo(FractionalOrder(0.5), 0.25, 1.0, t);
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("Kilbas-Saigo domain and convergence guards") {
    // b must lie in (-a, 1-a]
    CHECK_THROWS_AS(kilbas_saigo(FractionalOrder(0.5), 0.6, 1.0, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(kilbas_saigo(FractionalOrder(0.5), -0.5, 1.0, 1.0),
                    std::domain_error);
    CHECK_NOTHROW(kilbas_saigo(FractionalOrder(0.5), 0.5, 1.0, 1.0));
    CHECK_THROWS_AS(kilbas_saigo(FractionalOrder(0.5), 0.2, -1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(kilbas_saigo(FractionalOrder(0.5), 0.2, 1.0, -1.0),
                    std::invalid_argument);

    // lambda t^(a+b) ~ 30 is far past where the alternating series can be
    // summed in double precision.
    CHECK_THROWS_AS(kilbas_saigo(FractionalOrder(0.5), 0.2, 1.0, 130.0),
                    convergence_error);
}

TEST_CASE("caputo_residual_time is exactly zero for constants") {
    std::vector<double> y(101, 1.0);
    const double r = caputo_residual_time(y, 1.0, FractionalOrder(0.5),
                                          [](double) { return 0.0; });
    CHECK(r == 0.0);
}

TEST_CASE("caputo_residual_time shrinks under refinement for an exact pair") {
    // y(t) = E_gamma(-t^gamma) solves  d^gamma y/dt^gamma = -y, so the
    // discrete residual against rhs(t) = -y(t) must converge to zero.
    const double gamma = 0.5, t_end = 1.0;
    const FractionalOrder g(gamma);
    auto resid = [&](int m) {
        std::vector<double> y(m + 1);
        for (int i = 0; i <= m; ++i) {
            const double t = t_end * i / m;
            y[i] = mittag_leffler(g, -std::pow(t, gamma));
        }
        return caputo_residual_time(y, t_end, g, [&](double t) {
            return -mittag_leffler(g, -std::pow(t, gamma));
        });
    };
    const double r1 = resid(100);
    const double r2 = resid(200);
    CHECK(r2 < r1);
    CHECK(std::log2(r1 / r2) >= 0.8);
}

TEST_CASE("caputo_residual_time input validation") {
    std::vector<double> y(11, 0.0);
    CHECK_THROWS_AS(caputo_residual_time(y, 1.0, FractionalOrder(1.0),
                                         [](double) { return 0.0; }),
                    std::invalid_argument);
    std::vector<double> tiny(3, 0.0);
    CHECK_THROWS_AS(caputo_residual_time(tiny, 1.0, FractionalOrder(0.5),
                                         [](double) { return 0.0; }),
                    std::invalid_argument);
}

TEST_CASE("SeriesControl validation") {
    SeriesControl ctl;
    CHECK_NOTHROW(ctl.validate());
    ctl.max_terms = 5;
    CHECK_THROWS_AS(ctl.validate(), std::invalid_argument);
    ctl.max_terms = 400;
    ctl.abs_tol = 0.0;
    CHECK_THROWS_AS(ctl.validate(), std::invalid_argument);
    ctl.abs_tol = 1e-14;
    ctl.large_arg_switch = 1.0;
    CHECK_THROWS_AS(ctl.validate(), std::invalid_argument);
}
