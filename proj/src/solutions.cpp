#include "fracbous/solutions.hpp"
#include "fracbous/gammafn.hpp"
#include "fracbous/io.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace fracbous {

namespace {

constexpr double kGuardFraction = 1e-6; // eps_blow = 1e-6 * t_blowup

// Gamma(nu+3) for the fractional families, 6 for the local (nu = 1) ones.
double growth_gamma(Family f, FractionalOrder nu) {
    if (f == Family::SteadyLocal || f == Family::UnsteadyLocal) return 6.0;
    return gamma_fn(nu.value() + 3.0);
}

bool is_local(Family f) {
    return f == Family::SteadyLocal || f == Family::UnsteadyLocal;
}

bool is_half_power(Family f) {
    return f == Family::ExpPowerHalf || f == Family::TimeFractionalML ||
           f == Family::TimeFractionalKS;
}

} // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::SteadyFractional: return "steady-frac";
        case Family::SteadyLocal: return "steady-local";
        case Family::UnsteadyFractional: return "unsteady-frac";
        case Family::UnsteadyLocal: return "unsteady-local";
        case Family::ExpPowerHalf: return "exp-power-half";
        case Family::TimeFractionalML: return "time-frac-ml";
        case Family::TimeFractionalKS: return "time-frac-ks";
    }
    throw std::logic_error("family_name: bad enum");
}

Family family_from_name(const std::string& name) {
    static const std::map<std::string, Family> table = {
        {"steady-frac", Family::SteadyFractional},
        {"steady-local", Family::SteadyLocal},
        {"unsteady-frac", Family::UnsteadyFractional},
        {"unsteady-local", Family::UnsteadyLocal},
        {"exp-power-half", Family::ExpPowerHalf},
        {"time-frac-ml", Family::TimeFractionalML},
        {"time-frac-ks", Family::TimeFractionalKS},
    };
    auto it = table.find(name);
    if (it == table.end())
        throw std::invalid_argument("unknown family '" + name + "'");
    return it->second;
}

ClosedFormSolution make_solution(Family family, FractionalOrder nu,
                                 FractionalOrder gamma,
                                 const AquiferParams& params) {
    params.validate();
    if (is_local(family)) nu = FractionalOrder(1.0); // local = nu->1 limit

    ClosedFormSolution sol{family, nu, gamma, params,
                           /*sigma=*/nu.value() + 1.0, std::nullopt};
    if (is_half_power(family)) sol.sigma = nu.value() / 2.0;

    const double G = growth_gamma(family, nu);
    switch (family) {
        case Family::SteadyFractional:
        case Family::SteadyLocal:
            break; // sigma kept as the profile exponent; no time window
        case Family::UnsteadyFractional:
        case Family::UnsteadyLocal: {
            if (params.phi == 0.0) {
                sol.t_blowup = 1.0 / (params.k * G);
            } else if (params.phi < params.k * G) {
                std::ostringstream os;
                os << "admissibility requires phi >= k*Gamma(nu+3) for the "
                      "unsteady family (here k*"
                   << (is_local(family) ? std::string("6") :
                       "Gamma(" + format_real(nu.value() + 3.0) + ")")
                   << " = " << format_real(params.k * G) << ", phi = "
                   << format_real(params.phi)
                   << "); the separable profile would lose positivity at t = "
                   << format_real(std::log(params.k * G /
                                           (params.k * G - params.phi)) /
                                  params.phi);
                throw admissibility_error(os.str());
            }
            break;
        }
        case Family::ExpPowerHalf:
        case Family::TimeFractionalML:
            break;
        case Family::TimeFractionalKS: {
            const double g = gamma.value();
            if (!(params.beta_exp > -g) || !(params.beta_exp <= 1.0 - g))
                throw admissibility_error(
                    "Kilbas-Saigo exponent beta must lie in (-gamma, 1-gamma]"
                    ", got beta = " + format_real(params.beta_exp) +
                    " with gamma = " + format_real(g));
            break;
        }
    }
    return sol;
}

SteadyMatch steady_powerlaw_match(FractionalOrder nu,
                                  const AquiferParams& params) {
    params.validate();
    // matching x-exponents: 2 beta - nu - 1 = beta  =>  beta = nu + 1;
    // matching coefficients: k c (2beta - nu) Gamma(beta+1)/Gamma(beta+1-nu)
    //                        = phi  =>  c = phi / (k Gamma(nu+3))
    const double beta = nu.value() + 1.0;
    const double G = gamma_fn(nu.value() + 3.0);
    if (params.phi == 0.0) return {beta, 0.0, true};
    return {beta, params.phi / (params.k * G), false};
}

namespace {

// Shared coefficient f(t) of the separable unsteady families:
// phi = 0:  1 / (1 - k G t), blow-up at 1/(k G);
// phi >= k G:  phi / (e^{phi t}(phi - k G) + k G).
double unsteady_coefficient(double t, double k, double phi, double G) {
    if (phi == 0.0) return 1.0 / (1.0 - k * G * t);
    return phi / (std::exp(phi * t) * (phi - k * G) + k * G);
}

double unsteady_coefficient_dt(double t, double k, double phi, double G) {
    if (phi == 0.0) {
        double d = 1.0 - k * G * t;
        return k * G / (d * d);
    }
    double e = std::exp(phi * t) * (phi - k * G);
    double den = e + k * G;
    return -phi * phi * e / (den * den);
}

void check_window(const ClosedFormSolution& sol, double t) {
    if (sol.t_blowup) {
        double guard = *sol.t_blowup * (1.0 - kGuardFraction);
        if (t >= guard)
            throw std::domain_error(
                "evaluate: t = " + format_real(t) +
                " is inside the blow-up guard band (t_blowup = " +
                format_real(*sol.t_blowup) + ", guard starts at " +
                format_real(guard) + ")");
    }
}

} // namespace

double evaluate(const ClosedFormSolution& sol, double x, double t,
                const SeriesControl& ctl) {
    if (!(x >= 0.0))
        throw std::invalid_argument("evaluate: x must be >= 0");
    if (!(t >= 0.0))
        throw std::invalid_argument("evaluate: t must be >= 0");
    check_window(sol, t);

    const double nu = sol.nu.value();
    const double k = sol.params.k, phi = sol.params.phi;
    const double G = growth_gamma(sol.family, sol.nu);
    const double exponent = is_local(sol.family) ? 2.0 : nu + 1.0;

    switch (sol.family) {
        case Family::SteadyFractional:
        case Family::SteadyLocal:
            return phi * std::pow(x, exponent) / (k * G);
        case Family::UnsteadyFractional:
        case Family::UnsteadyLocal:
            return std::pow(x, exponent) *
                   unsteady_coefficient(t, k, phi, G);
        case Family::ExpPowerHalf:
            return std::pow(x, nu / 2.0) * std::exp(-phi * t);
        case Family::TimeFractionalML:
            return std::pow(x, nu / 2.0) *
                   mittag_leffler(sol.gamma,
                                  -phi * std::pow(t, sol.gamma.value()), ctl);
        case Family::TimeFractionalKS:
            return std::pow(x, nu / 2.0) *
                   kilbas_saigo(sol.gamma, sol.params.beta_exp,
                                sol.params.lambda, t, ctl);
    }
    throw std::logic_error("evaluate: bad enum");
}

double evaluate_dt(const ClosedFormSolution& sol, double x, double t) {
    if (!(x >= 0.0) || !(t >= 0.0))
        throw std::invalid_argument("evaluate_dt: x, t must be >= 0");
    check_window(sol, t);
    const double nu = sol.nu.value();
    const double k = sol.params.k, phi = sol.params.phi;
    const double G = growth_gamma(sol.family, sol.nu);
    const double exponent = is_local(sol.family) ? 2.0 : nu + 1.0;
    switch (sol.family) {
        case Family::SteadyFractional:
        case Family::SteadyLocal:
            return 0.0;
        case Family::UnsteadyFractional:
        case Family::UnsteadyLocal:
            return std::pow(x, exponent) *
                   unsteady_coefficient_dt(t, k, phi, G);
        case Family::ExpPowerHalf:
            return -phi * std::pow(x, nu / 2.0) * std::exp(-phi * t);
        default:
            throw std::invalid_argument(
                "evaluate_dt: analytic time derivative provided only for "
                "the classical-time (gamma = 1) families");
    }
}

std::vector<FamilyReport> admissibility_report(FractionalOrder nu,
                                               FractionalOrder gamma,
                                               const AquiferParams& params) {
    params.validate();
    std::vector<FamilyReport> out;
    const double Gf = gamma_fn(nu.value() + 3.0);

    auto steady = [&](Family f) {
        FamilyReport r{f, true, "", std::nullopt, std::nullopt};
        r.constraint = params.phi > 0.0
                           ? "steady profile scales with phi/(k*Gamma(nu+3))"
                           : "phi = 0: only the trivial steady solution";
        out.push_back(r);
    };
    steady(Family::SteadyFractional);
    steady(Family::SteadyLocal);

    auto unsteady = [&](Family f, double G) {
        FamilyReport r{f, true, "", std::nullopt, std::nullopt};
        if (params.phi == 0.0) {
            r.t_blowup = 1.0 / (params.k * G);
            r.constraint = "phi = 0: finite-time blow-up, valid for "
                           "0 <= t < t_blowup";
        } else if (params.phi < params.k * G) {
            r.constructible = false;
            r.constraint = "requires phi >= k*Gamma(nu+3) = " +
                           format_real(params.k * G) +
                           " (non-increasing in time); profile has a pole";
            r.singular_time = std::log(params.k * G /
                                       (params.k * G - params.phi)) /
                              params.phi;
        } else {
            r.constraint = "phi >= k*Gamma(nu+3): decaying for all t >= 0";
        }
        out.push_back(r);
    };
    unsteady(Family::UnsteadyFractional, Gf);
    unsteady(Family::UnsteadyLocal, 6.0);

    out.push_back({Family::ExpPowerHalf, true,
                   "valid for all t >= 0; decay rate phi", std::nullopt,
                   std::nullopt});
    out.push_back({Family::TimeFractionalML, true,
                   "valid for all t >= 0; Mittag-Leffler decay", std::nullopt,
                   std::nullopt});

    FamilyReport ks{Family::TimeFractionalKS, true, "", std::nullopt,
                    std::nullopt};
    const double g = gamma.value();
    if (!(params.beta_exp > -g) || !(params.beta_exp <= 1.0 - g)) {
        ks.constructible = false;
        ks.constraint = "requires beta in (-gamma, 1-gamma]";
    } else {
        ks.constraint = "valid while lambda*t^(gamma+beta) stays within the "
                        "series' usable domain";
    }
    out.push_back(ks);
    return out;
}

std::string serialize(const ClosedFormSolution& sol) {
    std::ostringstream os;
    os << "family=" << family_name(sol.family) << "\n"
       << "nu=" << format_real(sol.nu.value()) << "\n"
       << "gamma=" << format_real(sol.gamma.value()) << "\n"
       << "k=" << format_real(sol.params.k) << "\n"
       << "phi=" << format_real(sol.params.phi) << "\n"
       << "n=" << format_real(sol.params.n) << "\n"
       << "lambda=" << format_real(sol.params.lambda) << "\n"
       << "beta=" << format_real(sol.params.beta_exp) << "\n"
       << "sigma=" << format_real(sol.sigma) << "\n";
    if (sol.t_blowup) os << "t_blowup=" << format_real(*sol.t_blowup) << "\n";
    return os.str();
}

ClosedFormSolution parse_solution(const std::string& text) {
    auto kv = parse_key_values(text);
    auto need = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument("missing key '" + key + "'");
        return it->second;
    };
    auto get = [&](const std::string& key, double dflt) {
        auto it = kv.find(key);
        return it == kv.end() ? dflt : parse_real(it->second);
    };
    Family fam = family_from_name(need("family"));
    FractionalOrder nu(get("nu", 1.0));
    FractionalOrder gamma(get("gamma", 1.0));
    AquiferParams p;
    p.k = get("k", 1.0);
    p.phi = get("phi", 0.0);
    p.n = get("n", 0.4);
    p.lambda = get("lambda", 0.0);
    p.beta_exp = get("beta", 0.0);
    return make_solution(fam, nu, gamma, p);
}

} // namespace fracbous
