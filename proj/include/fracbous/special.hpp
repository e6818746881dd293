#pragma once

#include "fracbous/types.hpp"

#include <functional>

namespace fracbous {

/// Truncation controls shared by the special-function series.
struct SeriesControl {
    int max_terms = 400;
    double abs_tol = 1e-14;
    double large_arg_switch = 10.0; // |z| threshold for the asymptotic branch

    void validate() const {
        if (max_terms < 10)
            throw std::invalid_argument("SeriesControl: max_terms >= 10");
        if (!(abs_tol > 0.0))
            throw std::invalid_argument("SeriesControl: abs_tol > 0");
        if (!(large_arg_switch > 1.0))
            throw std::invalid_argument("SeriesControl: large_arg_switch > 1");
    }
};

/// Outcome of one evaluation branch: the partial sum, an error estimate
/// (truncation + roundoff for the Taylor branch; smallest-envelope-term for
/// the asymptotic branch), and whether the branch considers itself usable.
struct BranchResult {
    double value = 0.0;
    double err_est = 0.0;
    bool met = false;
    int terms = 0;
};

namespace detail {

/// Compensated Taylor sum of E_gamma(z) = sum z^i / Gamma(gamma i + 1),
/// truncated when |term| < ctl.abs_tol. `met` additionally requires the
/// cancellation floor eps*max|term| to stay below 1e-8, since for strongly
/// negative z the terms grow enormous before decaying and the rounded sum
/// carries no information even though the truncation criterion fires.
BranchResult ml_series(double gamma, double z, const SeriesControl& ctl);

/// Divergent large-argument tail  -sum_{k>=1} z^{-k} / Gamma(1 - gamma k),
/// truncated at the minimum of the smooth magnitude envelope
/// Gamma(gamma k) |z|^{-k} / pi  (>= |term_k|), the standard smallest-term
/// rule; err_est is the envelope at the stopping index.
BranchResult ml_asymptotic(double gamma, double z, const SeriesControl& ctl);

} // namespace detail

/// One-parameter Mittag-Leffler function E_gamma(z) on the negative real
/// axis (z <= 0), gamma in (0, 1]. gamma == 1 evaluates exp(z) directly.
/// Dispatch: Taylor branch for |z| <= ctl.large_arg_switch, asymptotic
/// branch beyond; if the preferred branch cannot deliver (divergence or
/// roundoff destruction), the other branch is tried before raising
/// convergence_error. Result lies in (0, 1].
double mittag_leffler(FractionalOrder gamma, double z,
                      const SeriesControl& ctl = {});

/// Kilbas-Saigo function
///   y(t) = 1 + sum_{i>=1} (-lambda)^i t^{i(a+b)} c_i,
///   c_i = prod_{j=0}^{i-1} Gamma(j(a+b)+b+1) / Gamma(j(a+b)+b+a+1),
/// the solution of the fractional Cauchy problem
///   d^a y / dt^a = -lambda t^b y,   y(0) = 1,
/// valid for -a < b <= 1-a, lambda >= 0, t >= 0.
/// Terms are accumulated in log space so the Gamma-ratio product cannot
/// overflow before cancellation. Raises convergence_error when the series
/// cannot reach abs_tol within max_terms or the cancellation floor exceeds
/// 1e-8 (practically: lambda t^(a+b) beyond ~30 always fails; accuracy
/// degrades gradually past ~5).
double kilbas_saigo(FractionalOrder a, double b, double lambda, double t,
                    const SeriesControl& ctl = {});

/// Discrete residual of a fractional Cauchy problem: given samples y_m on
/// the uniform time grid t_m = m * t_end / M, returns
///   max_m | (L1 Caputo derivative of y)(t_m) - rhs(t_m) |
/// over interior nodes with t_m >= t_end / 10. The first tenth of the
/// window is excluded because power-law initial layers make the L1 error
/// there O(1) regardless of resolution (same policy as the spatial
/// convergence metrics).
double caputo_residual_time(const std::vector<double>& y, double t_end,
                            FractionalOrder gamma,
                            const std::function<double(double)>& rhs);

} // namespace fracbous
