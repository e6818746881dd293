#pragma once

#include "fracbous/special.hpp"
#include "fracbous/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fracbous {

/// The closed-form solution families of the fractional Boussinesq model.
enum class Family {
    SteadyFractional,  // h(x) = phi x^(nu+1) / (k Gamma(nu+3))
    SteadyLocal,       // h(x) = phi x^2 / (6k)              (nu = 1)
    UnsteadyFractional,// separable x^(nu+1) profile, two phi branches
    UnsteadyLocal,     // same with Gamma(nu+3) -> 6, exponent 2  (nu = 1)
    ExpPowerHalf,      // h = x^(nu/2) e^(-phi t)
    TimeFractionalML,  // h = x^(nu/2) E_gamma(-phi t^gamma)
    TimeFractionalKS   // h = x^(nu/2) KS(gamma, beta, lambda, t)
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// A validated catalog entry. Construct through make_solution, which
/// enforces the per-family admissibility constraints and fills sigma (the
/// initial-data exponent h(x,0) = x^sigma) and the blow-up time when the
/// family has one.
struct ClosedFormSolution {
    Family family;
    FractionalOrder nu;
    FractionalOrder gamma;
    AquiferParams params;
    double sigma;
    std::optional<double> t_blowup;
};

/// Validates parameters for the family and builds the catalog record.
/// Throws admissibility_error when UnsteadyFractional is requested with
/// 0 < phi < k*Gamma(nu+3) (or the local analogue with 6), and when the
/// Kilbas-Saigo exponent lies outside (-gamma, 1-gamma].
ClosedFormSolution make_solution(Family family, FractionalOrder nu,
                                 FractionalOrder gamma,
                                 const AquiferParams& params);

/// Result of matching a steady power-law ansatz c x^beta against the
/// steady equation: beta = nu+1 and c = phi / (k Gamma(nu+3)). For phi = 0
/// the only steady power-law solution is trivial (c = 0), flagged here.
struct SteadyMatch {
    double beta;
    double c;
    bool trivial; // phi == 0: only c = 0 satisfies the matching condition
};

SteadyMatch steady_powerlaw_match(FractionalOrder nu,
                                  const AquiferParams& params);

/// Pointwise evaluation h(x, t). Throws std::domain_error when t falls
/// within the guard band of a blow-up time (eps_blow = 1e-6 * t_blowup)
/// or beyond it; throws std::invalid_argument for x < 0 or t < 0.
double evaluate(const ClosedFormSolution& sol, double x, double t,
                const SeriesControl& ctl = {});

/// Time derivative dh/dt(x, t) of the closed form, analytic per family.
/// Used as the oracle for operator-residual checks (gamma = 1 families).
double evaluate_dt(const ClosedFormSolution& sol, double x, double t);

/// One row of the admissibility survey for a parameter set.
struct FamilyReport {
    Family family;
    bool constructible;
    std::string constraint;            // which condition binds / fails
    std::optional<double> t_blowup;    // finite-time blow-up (phi = 0 cases)
    std::optional<double> singular_time; // pole of the inadmissible branch
};

/// Surveys every family for the given orders and parameters: which are
/// constructible, their validity windows, and the binding constraints.
std::vector<FamilyReport> admissibility_report(FractionalOrder nu,
                                               FractionalOrder gamma,
                                               const AquiferParams& params);

/// Flat key=value serialization (one pair per line) used by run manifests.
std::string serialize(const ClosedFormSolution& sol);

/// Parses the serialize() format (and the same keys from config files).
ClosedFormSolution parse_solution(const std::string& text);

} // namespace fracbous
