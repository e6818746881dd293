#pragma once

#include "fracbous/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace fracbous {

/// Candidate subspace spanned by power functions w(x) = x^e, where e = 0
/// means the constant function. Exponents must be non-negative, distinct,
/// and sorted ascending; dimension 1 or 2.
struct PowerBasis {
    std::vector<double> exponents;

    explicit PowerBasis(std::vector<double> exps);
    int dimension() const { return int(exponents.size()); }
};

/// Outcome of an invariance certification run.
struct CertifyResult {
    bool certified = false;
    double max_projection_residual = 0.0;
    int samples = 0;
};

/// Draws `samples` (>= 20) coefficient vectors uniformly from [-1,1]^n,
/// expands F[sum_i f_i x^{e_i}] exactly through the Caputo power rule --
/// the test is algebraic, not discrete -- and least-squares-projects the
/// image onto the basis at the grid nodes with x >= L/10. Certified iff
/// every sample's relative projection residual is < 1e-8. A false result
/// is an answer, not an error; the residual is relative to |F|, so the
/// verdict does not change when the coefficients are rescaled.
CertifyResult certify_invariance(const PowerBasis& basis, FractionalOrder nu,
                                 const AquiferParams& params,
                                 const Grid1D& grid, int samples = 20,
                                 unsigned seed = 42);

/// Reduced ODE system f_i'(t) = Phi_i(f_1,...,f_n) on an invariant basis;
/// coefficient i multiplies x^{exponents[i]}. provenance lists the Gamma
/// ratios behind each coefficient of the map.
struct OdeReduction {
    PowerBasis basis;
    std::function<std::vector<double>(const std::vector<double>&)> rhs_map;
    std::vector<std::string> provenance;
};

/// Builds the reduction for the certified power bases:
///   {nu+1}    -> f' = k Gamma(nu+3) f^2 - phi f
///   {0, nu+1} -> f0' = k Gamma(nu+2) f1 f0 - phi f0   (f0: constant part)
///                f1' = k Gamma(nu+3) f1^2  - phi f1   (f1: power part)
///   {nu/2}    -> f' = -phi f   (the nonlinear flux is constant in x)
///   {0}       -> f' = -phi f   (Caputo derivative of a constant is 0)
/// Any other exponent pattern throws std::invalid_argument.
OdeReduction reduce(const PowerBasis& basis, FractionalOrder nu,
                    const AquiferParams& params);

/// Fixed-step trajectory of a reduced system.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    bool blew_up = false;
};

/// Classical 4th-order Runge-Kutta with fixed step dt (the last step is
/// shortened to land exactly on t_end). Aborts and returns the partial
/// trajectory with blew_up = true as soon as any |f_i| exceeds 1e12 or a
/// state stops being finite.
Trajectory integrate(const OdeReduction& red, std::vector<double> init,
                     double t_end, double dt);

} // namespace fracbous
