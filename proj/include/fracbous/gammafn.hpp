#pragma once

namespace fracbous {

/// Gamma function for real arguments away from the non-positive integers.
/// All formulas in this library route through this one function so that
/// catalog values, reductions, and discrete operators agree bit-for-bit.
/// Relative error <= 1e-12 on [0.5, 30].
double gamma_fn(double x);

/// log|Gamma(x)| for x > 0. Used for overflow-safe term ratios.
double lgamma_fn(double x);

/// sin(pi*x) with exact zeros at integer x (argument reduction done in
/// exact integer arithmetic, so no catastrophic error for large |x|).
double sinpi(double x);

/// 1/Gamma(x) for any real x; exactly 0 at the poles x = 0, -1, -2, ...
double recip_gamma(double x);

} // namespace fracbous
