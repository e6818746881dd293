#pragma once

#include "fracbous/types.hpp"

namespace fracbous {

/// Exact Caputo derivative of x^beta (left-sided, started at 0):
///   d^nu/dx^nu x^beta = Gamma(beta+1)/Gamma(beta+1-nu) * x^(beta-nu).
/// nu == 1 returns the classical beta * x^(beta-1). For 0 < beta < 1 the
/// rule is applied in the principal-value sense (the kernel integral is
/// finite even though f' blows up at 0).
double caputo_power_rule(double beta, FractionalOrder nu, double x);

/// Discrete Caputo derivative by the L1 scheme, returned at every node
/// (node 0 is 0 by definition). Uniform grids use the classical weights
///   b_j = (j+1)^(1-nu) - j^(1-nu);
/// graded grids use the piecewise-linear (generalized L1) quadrature,
/// which reduces to the same weights when the spacing is constant.
/// Exact for piecewise-linear data; accuracy order 2-nu for smooth data.
/// Rejects nu == 1 (use first_derivative instead).
Field caputo_l1(const Field& f, FractionalOrder nu);

/// Second-order first derivative on a (possibly non-uniform) grid:
/// 3-point centered stencil inside, 3-point one-sided at both endpoints.
Field first_derivative(const Field& f);

/// The spatial Boussinesq operator
///   F[h] = k * d/dx ( h * D^nu h ) - phi * h
/// with D^nu the discrete Caputo derivative above and the outer d/dx the
/// second-order stencil above. nu == 1 uses first_derivative for D^nu.
Field boussinesq_rhs(const Field& h, FractionalOrder nu,
                     const AquiferParams& params);

/// Composite trapezoid rule over the field's grid.
double trapezoid(const Field& f);

} // namespace fracbous
