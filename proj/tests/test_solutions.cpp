#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracbous/fractional.hpp"
#include "fracbous/gammafn.hpp"
#include "fracbous/solutions.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

using namespace fracbous;

namespace {

AquiferParams params_with(double k, double phi, double lambda = 0.0,
                          double beta = 0.0) {
    AquiferParams p;
    p.k = k;
    p.phi = phi;
    p.lambda = lambda;
    p.beta_exp = beta;
    return p;
}

// Max deviation between the discrete operator applied to a sampled profile
// and the analytic time derivative, away from both boundaries.
double operator_residual(const ClosedFormSolution& sol, double t,
                         std::size_t n) {
    Grid1D g(1.0, n);
    Field h = Field::sample(g, [&](double x) { return evaluate(sol, x, t); });
    const auto rhs = boussinesq_rhs(h, sol.nu, sol.params);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.point_count(); ++i) {
        const double x = g.node(i);
        if (x < 0.1 || x > 0.9) continue;
        worst = std::max(worst, std::abs(rhs[i] - evaluate_dt(sol, x, t)));
    }
    return worst;
}

} // namespace

TEST_CASE("steady power-law matching") {
    SUBCASE("fractional order") {
        const SteadyMatch m =
            steady_powerlaw_match(FractionalOrder(0.5), params_with(1.0, 1.0));
        CHECK(m.beta == doctest::Approx(1.5).epsilon(1e-15));
        CHECK_FALSE(m.trivial);
        // c = phi / (k Gamma(nu+3)) = 1/Gamma(3.5)
        CHECK(m.c == doctest::Approx(1.0 / gamma_fn(3.5)).epsilon(1e-15));
        CHECK(m.c == doctest::Approx(0.30090111122547002).epsilon(1e-14));
    }
    SUBCASE("classical order") {
        const SteadyMatch m =
            steady_powerlaw_match(FractionalOrder(1.0), params_with(1.0, 3.0));
        CHECK(m.beta == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(m.c == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("no recharge means only the trivial profile") {
        const SteadyMatch m =
            steady_powerlaw_match(FractionalOrder(0.5), params_with(2.0, 0.0));
        CHECK(m.trivial);
        CHECK(m.c == 0.0);
    }
}

TEST_CASE("make_solution fills sigma and the blow-up time") {
    const FractionalOrder nu(0.5), one(1.0);

    const auto steady = make_solution(Family::SteadyFractional, nu, one,
                                      params_with(1.0, 1.0));
    CHECK(steady.sigma == doctest::Approx(1.5).epsilon(1e-15));
    CHECK_FALSE(steady.t_blowup.has_value());

    const auto unsteady = make_solution(Family::UnsteadyFractional, nu, one,
                                        params_with(1.0, 0.0));
    CHECK(unsteady.sigma == doctest::Approx(1.5).epsilon(1e-15));
    REQUIRE(unsteady.t_blowup.has_value());
    CHECK(*unsteady.t_blowup ==
          doctest::Approx(1.0 / gamma_fn(3.5)).epsilon(1e-14));

    const auto local = make_solution(Family::UnsteadyLocal, nu, one,
                                     params_with(2.0, 0.0));
    CHECK(local.sigma == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(*local.t_blowup == doctest::Approx(1.0 / 12.0).epsilon(1e-14));

    const auto half = make_solution(Family::ExpPowerHalf, nu, one,
                                    params_with(1.0, 0.7));
    CHECK(half.sigma == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_FALSE(half.t_blowup.has_value());
}

TEST_CASE("unsteady admissibility window") {
    const FractionalOrder nu(0.5), one(1.0);
    const double G = gamma_fn(3.5);

    // phi exactly at the threshold: stationary coefficient, admissible.
    const auto at = make_solution(Family::UnsteadyFractional, nu, one,
                                  params_with(1.0, G));
    for (double t : {0.0, 0.5, 3.0}) {
        CHECK(evaluate(at, 0.7, t) ==
              doctest::Approx(std::pow(0.7, 1.5)).epsilon(1e-12));
    }

    // phi above the threshold: admissible and decaying.
    CHECK_NOTHROW(
        make_solution(Family::UnsteadyFractional, nu, one,
                      params_with(1.0, 2.0 * G)));

    // phi strictly inside (0, k Gamma(nu+3)): rejected, message names the
    // inequality and the pole of the would-be profile.
    try {
        make_solution(Family::UnsteadyFractional, nu, one,
                      params_with(1.0, 0.5 * G));
        FAIL("expected admissibility_error");
    } catch (const admissibility_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("phi >= k*Gamma(nu+3)") != std::string::npos);
        const double singular = std::log(G / (G - 0.5 * G)) / (0.5 * G);
        CHECK(msg.find("lose positivity") != std::string::npos);
        // The reported pole time appears with its leading digits.
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", singular);
        CHECK(msg.find(std::string(buf).substr(0, 5)) != std::string::npos);
    }
}

TEST_CASE("Kilbas-Saigo exponent window is enforced at construction") {
    const FractionalOrder nu(0.5), g(0.6);
    CHECK_NOTHROW(make_solution(Family::TimeFractionalKS, nu, g,
                                params_with(1.0, 0.0, 1.0, 0.4)));
    CHECK_THROWS_AS(make_solution(Family::TimeFractionalKS, nu, g,
                                  params_with(1.0, 0.0, 1.0, 0.5)),
                    admissibility_error);
    CHECK_THROWS_AS(make_solution(Family::TimeFractionalKS, nu, g,
                                  params_with(1.0, 0.0, 1.0, -0.6)),
                    admissibility_error);
}

TEST_CASE("evaluate reproduces the closed forms") {
    const FractionalOrder nu(0.5), one(1.0);
    const double G = gamma_fn(3.5);

    SUBCASE("steady") {
        const auto s = make_solution(Family::SteadyFractional, nu, one,
                                     params_with(2.0, 3.0));
        CHECK(evaluate(s, 1.0, 0.0) ==
              doctest::Approx(3.0 / (2.0 * G)).epsilon(1e-14));
        CHECK(evaluate(s, 0.25, 5.0) ==
              doctest::Approx(3.0 * std::pow(0.25, 1.5) / (2.0 * G))
                  .epsilon(1e-14));
        CHECK(evaluate(s, 0.0, 1.0) == 0.0);
    }

    SUBCASE("unsteady blow-up branch") {
        const auto u = make_solution(Family::UnsteadyFractional, nu, one,
                                     params_with(1.0, 0.0));
        const double tb = *u.t_blowup;
        CHECK(evaluate(u, 0.5, 0.0) ==
              doctest::Approx(std::pow(0.5, 1.5)).epsilon(1e-14));
        const double t = 0.5 * tb;
        CHECK(evaluate(u, 0.5, t) ==
              doctest::Approx(std::pow(0.5, 1.5) / (1.0 - G * t))
                  .epsilon(1e-13));
    }

    SUBCASE("unsteady decaying branch") {
        const double phi = 2.0 * G;
        const auto u = make_solution(Family::UnsteadyFractional, nu, one,
                                     params_with(1.0, phi));
        const double t = 0.4;
        const double f =
            phi / (std::exp(phi * t) * (phi - G) + G);
        CHECK(evaluate(u, 0.8, t) ==
              doctest::Approx(std::pow(0.8, 1.5) * f).epsilon(1e-13));
        // strictly decreasing in t
        CHECK(evaluate(u, 0.8, 0.5) < evaluate(u, 0.8, 0.2));
    }

    SUBCASE("exponential half-power") {
        const auto s = make_solution(Family::ExpPowerHalf, nu, one,
                                     params_with(1.0, 0.9));
        CHECK(evaluate(s, 0.64, 1.5) ==
              doctest::Approx(std::pow(0.64, 0.25) * std::exp(-1.35))
                  .epsilon(1e-13));
    }

    SUBCASE("Mittag-Leffler time factor") {
        const auto s = make_solution(Family::TimeFractionalML, nu,
                                     FractionalOrder(0.6),
                                     params_with(1.0, 1.0));
        const double t = 0.8;
        const double ref =
            std::pow(0.5, 0.25) *
            mittag_leffler(FractionalOrder(0.6), -std::pow(t, 0.6));
        CHECK(evaluate(s, 0.5, t) == doctest::Approx(ref).epsilon(1e-13));
    }

    SUBCASE("Kilbas-Saigo time factor") {
        const auto s = make_solution(Family::TimeFractionalKS, nu,
                                     FractionalOrder(0.6),
                                     params_with(1.0, 0.0, 1.3, 0.2));
        const double ref =
            std::pow(0.9, 0.25) *
            kilbas_saigo(FractionalOrder(0.6), 0.2, 1.3, 0.7);
        CHECK(evaluate(s, 0.9, 0.7) == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("initial data is x^sigma for every family") {
    const FractionalOrder nu(0.7), g(0.5);
    const Family fams[] = {Family::SteadyFractional, Family::UnsteadyFractional,
                           Family::ExpPowerHalf, Family::TimeFractionalML,
                           Family::TimeFractionalKS};
    for (Family f : fams) {
        AquiferParams p = params_with(1.0, 0.0, 1.0, 0.3);
        if (f == Family::SteadyFractional) p.phi = 1.0;
        const auto sol = make_solution(f, nu, g, p);
        for (double x : {0.0, 0.3, 1.0}) {
            double expect = std::pow(x, sol.sigma);
            if (f == Family::SteadyFractional)
                expect = p.phi * std::pow(x, sol.sigma) /
                         (p.k * gamma_fn(nu.value() + 3.0));
            CHECK(evaluate(sol, x, 0.0) ==
                  doctest::Approx(expect).epsilon(1e-13).scale(1.0));
        }
    }
}

TEST_CASE("blow-up guard band") {
    const auto u = make_solution(Family::UnsteadyFractional,
                                 FractionalOrder(0.5), FractionalOrder(1.0),
                                 params_with(1.0, 0.0));
    const double tb = *u.t_blowup;
    CHECK_NOTHROW(evaluate(u, 0.5, 0.9 * tb));
    CHECK_THROWS_AS(evaluate(u, 0.5, tb * (1.0 - 1e-7)), std::domain_error);
    CHECK_THROWS_AS(evaluate(u, 0.5, 1.1 * tb), std::domain_error);
    CHECK_THROWS_AS(evaluate(u, -0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(u, 0.5, -0.1), std::invalid_argument);
}

TEST_CASE("Mittag-Leffler family degenerates to the exponential at gamma=1") {
    const FractionalOrder nu(0.5), one(1.0);
    const auto ml = make_solution(Family::TimeFractionalML, nu, one,
                                  params_with(1.0, 0.8));
    const auto ex = make_solution(Family::ExpPowerHalf, nu, one,
                                  params_with(1.0, 0.8));
    for (double t : {0.0, 0.4, 1.1, 2.7}) {
        for (double x : {0.2, 0.6, 1.0}) {
            CHECK(std::abs(evaluate(ml, x, t) - evaluate(ex, x, t)) <= 1e-12);
        }
    }
}

TEST_CASE("fractional families approach the local ones as nu -> 1") {
    const FractionalOrder near_one(1.0 - 1e-6), one(1.0);

    const auto sf = make_solution(Family::SteadyFractional, near_one, one,
                                  params_with(1.0, 1.0));
    const auto sl = make_solution(Family::SteadyLocal, one, one,
                                  params_with(1.0, 1.0));
    for (double x : {0.3, 0.7, 1.0}) {
        CHECK(evaluate(sf, x, 0.0) ==
              doctest::Approx(evaluate(sl, x, 0.0)).epsilon(1e-4));
    }

    const auto uf = make_solution(Family::UnsteadyFractional, near_one, one,
                                  params_with(1.0, 0.0));
    const auto ul = make_solution(Family::UnsteadyLocal, one, one,
                                  params_with(1.0, 0.0));
    const double t = 0.05; // inside both validity windows (~1/6)
    for (double x : {0.3, 0.7, 1.0}) {
        CHECK(evaluate(uf, x, t) ==
              doctest::Approx(evaluate(ul, x, t)).epsilon(1e-4));
    }
}

TEST_CASE("discrete operator matches the analytic time derivative") {
    const FractionalOrder nu(0.5), one(1.0);

    SUBCASE("blow-up branch") {
        const auto u = make_solution(Family::UnsteadyFractional, nu, one,
                                     params_with(1.0, 0.0));
        const double t = 0.3 * (*u.t_blowup);
        const double r1 = operator_residual(u, t, 128);
        const double r2 = operator_residual(u, t, 256);
        CHECK(r2 < r1);
        CHECK(r2 <= 0.05);
    }
    SUBCASE("half-power profile") {
        const auto s = make_solution(Family::ExpPowerHalf, nu, one,
                                     params_with(1.0, 1.0));
        const double r1 = operator_residual(s, 0.5, 128);
        const double r2 = operator_residual(s, 0.5, 256);
        CHECK(r2 < r1);
    }
    SUBCASE("steady profile is stationary") {
        const auto s = make_solution(Family::SteadyFractional, nu, one,
                                     params_with(1.0, 1.0));
        const double r = operator_residual(s, 0.0, 512);
        CHECK(r <= 1e-3);
    }
}

TEST_CASE("family names round-trip") {
    for (Family f : {Family::SteadyFractional, Family::SteadyLocal,
                     Family::UnsteadyFractional, Family::UnsteadyLocal,
                     Family::ExpPowerHalf, Family::TimeFractionalML,
                     Family::TimeFractionalKS}) {
        CHECK(family_from_name(family_name(f)) == f);
    }
    CHECK_THROWS_AS(family_from_name("nope"), std::invalid_argument);
}

TEST_CASE("serialize / parse round-trip") {
    const auto ks = make_solution(Family::TimeFractionalKS,
                                  FractionalOrder(0.5), FractionalOrder(0.6),
                                  params_with(2.0, 0.0, 1.5, 0.25));
    const auto back = parse_solution(serialize(ks));
    CHECK(back.family == ks.family);
    CHECK(back.nu.value() == ks.nu.value());
    CHECK(back.gamma.value() == ks.gamma.value());
    CHECK(back.params.k == ks.params.k);
    CHECK(back.params.lambda == ks.params.lambda);
    CHECK(back.params.beta_exp == ks.params.beta_exp);
    CHECK(back.sigma == ks.sigma);

    const auto u = make_solution(Family::UnsteadyFractional,
                                 FractionalOrder(0.25), FractionalOrder(1.0),
                                 params_with(3.0, 0.0));
    const auto u2 = parse_solution(serialize(u));
    REQUIRE(u2.t_blowup.has_value());
    CHECK(*u2.t_blowup == doctest::Approx(*u.t_blowup).epsilon(1e-15));

    CHECK_THROWS_AS(parse_solution("nu=0.5\n"), std::invalid_argument);
}

TEST_CASE("admissibility report flags the inadmissible configurations") {
    const double G = gamma_fn(3.5);
    AquiferParams p = params_with(1.0, 0.5 * G, 1.0, 0.9);
    const auto rows = admissibility_report(FractionalOrder(0.5),
                                           FractionalOrder(0.6), p);
    REQUIRE(rows.size() == 7);

    bool saw_unsteady = false, saw_ks = false;
    for (const auto& r : rows) {
        if (r.family == Family::UnsteadyFractional) {
            saw_unsteady = true;
            CHECK_FALSE(r.constructible);
            REQUIRE(r.singular_time.has_value());
            CHECK(*r.singular_time ==
                  doctest::Approx(std::log(2.0) / (0.5 * G)).epsilon(1e-12));
            CHECK(r.constraint.find("phi >= k*Gamma(nu+3)") !=
                  std::string::npos);
        }
        if (r.family == Family::TimeFractionalKS) {
            saw_ks = true;
            CHECK_FALSE(r.constructible); // beta = 0.9 > 1 - gamma
            CHECK(r.constraint.find("beta in (-gamma, 1-gamma]") !=
                  std::string::npos);
        }
        if (r.family == Family::SteadyFractional) CHECK(r.constructible);
    }
    CHECK(saw_unsteady);
    CHECK(saw_ks);

    // phi = 0: the unsteady rows carry the blow-up time instead.
    const auto rows0 = admissibility_report(FractionalOrder(0.5),
                                            FractionalOrder(0.6),
                                            params_with(1.0, 0.0, 1.0, 0.2));
    for (const auto& r : rows0) {
        if (r.family == Family::UnsteadyFractional) {
            CHECK(r.constructible);
            REQUIRE(r.t_blowup.has_value());
            CHECK(*r.t_blowup == doctest::Approx(1.0 / G).epsilon(1e-13));
        }
        if (r.family == Family::TimeFractionalKS) CHECK(r.constructible);
    }
}
