#pragma once

#include "fracbous/solutions.hpp"
#include "fracbous/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fracbous {

/// Right-boundary treatment. ExactDirichlet takes h(L, t) from the
/// referenced catalog solution (the solutions grow in x, so a free right
/// boundary would be meaningless); ZeroFlux zeroes the nonlinear flux
/// h * D^nu h at the last node and exists for conservation bookkeeping.
enum class RightBC { ExactDirichlet, ZeroFlux };

/// Simulation setup. dt = 0 lets the driver pick the step from the
/// stability bound; with auto_dt the step is clamped to that bound on
/// every step (h_max is re-estimated adaptively), so the invariant
/// dt <= cfl_safety * dx_min^(1+nu) / (k * h_max) is maintained by
/// construction. auto_dt = false runs the requested dt unclamped (and an
/// instability error ends the run if that was too brave).
struct SimConfig {
    Grid1D grid;
    FractionalOrder nu;
    FractionalOrder gamma;
    AquiferParams params;
    double dt = 0.0;     // 0 = automatic from the stability bound
    double t_end = 0.0;
    RightBC right_bc = RightBC::ExactDirichlet;
    double cfl_safety = 0.5;
    std::optional<ClosedFormSolution> reference;
    bool auto_dt = true;
    int snapshot_stride = 0; // 0 = keep only the initial and final fields

    void validate() const;
};

/// Simulation outcome. times/fields hold the stored snapshots (always
/// including the initial and the last accepted state). When a step blows
/// up, stability_flag is false and the trajectory is truncated at
/// last_stable_time; all stored fields are finite either way.
/// max_residual_trace records max|F[h]| per accepted step (the
/// steady-state residual); max_h_trace records max h per accepted step
/// (for the maximum-principle check).
struct SimResult {
    std::vector<double> times;
    std::vector<Field> fields;
    bool stability_flag = true;
    std::vector<double> max_residual_trace;
    std::vector<double> max_h_trace;
    double last_stable_time = 0.0;
    SimConfig config;
};

/// Explicit stability bound on dt for the current solution magnitude:
/// cfl_safety * dx_min^(1+nu) / (k * h_max) for gamma = 1, and its
/// fractional-time analogue (... / Gamma(2-gamma) * 2 pi^nu)^(1/gamma)
/// for gamma < 1.
double cfl_dt_bound(const SimConfig& cfg, double h_max);

/// Nonlinear flux g = h * D^nu h with the right-boundary rule applied.
Field flux_field(const Field& h, FractionalOrder nu, RightBC right_bc);

/// BC-aware spatial operator k * d/dx(flux) - phi * h.
Field sim_rhs(const Field& h, const SimConfig& cfg);

/// One forward-Euler step of size cfg.dt from time t_now. The left
/// boundary is pinned to h = 0; the right boundary follows cfg.right_bc
/// (ExactDirichlet evaluates the reference at t_now + dt). Throws
/// instability_error (carrying t_now) if any value exceeds 1e8 in
/// magnitude or stops being finite.
Field step_explicit(const Field& h, const SimConfig& cfg, double t_now = 0.0);

/// One step of the L1 scheme for the Caputo time derivative (gamma < 1)
/// with the spatial operator treated explicitly:
///   h^(m+1) = h^m + Gamma(2-gamma) dt^gamma F[h^m]
///             - sum_{j>=1} b_j (h^(m+1-j) - h^(m-j)),
///   b_j = (j+1)^(1-gamma) - j^(1-gamma).
/// `history` must hold every field from t = 0 at uniform spacing cfg.dt
/// (the Caputo memory); the step lands at t = history.size() * dt.
Field step_l1_time(const std::vector<Field>& history, const SimConfig& cfg);

/// Runs the simulation from the given initial data: adaptive forward
/// Euler for gamma = 1, fixed-step L1 time stepping for gamma < 1 (dt is
/// rounded so an integer number of steps lands on t_end). On instability
/// the partial result is returned with stability_flag = false.
SimResult simulate(const SimConfig& cfg, const Field& initial);

/// Same, with the initial data sampled from cfg.reference at t = 0.
SimResult simulate(const SimConfig& cfg);

/// Relative error norms at the final stored time against a closed form.
struct ErrorReport {
    double l2_rel = 0.0;
    double linf_rel = 0.0;
    std::optional<double> order_estimate;
};

/// Errors over the window x in [L/10, 9L/10] at the final stored time.
/// Throws std::invalid_argument when the simulation's parameter record
/// (orders, k, phi, lambda, beta exponent) differs from the solution's.
ErrorReport error_report(const SimResult& sim, const ClosedFormSolution& sol);

/// log2(err_coarse / err_fine) for a grid-doubling pair.
double observed_order(double err_coarse, double err_fine);

/// Second-order boundary extrapolation of g(L) - g(0); on a uniform grid
/// trapezoid(first_derivative(g)) telescopes to exactly this value, so it
/// is the discrete boundary-flux term of the mass budget.
double boundary_flux_functional(const Field& g);

/// CSV rendering of the stored snapshots: header `t,x,h,exact,abs_err`,
/// one row per (snapshot, node), LF line endings, 17-significant-digit
/// values. Without a solution the exact/abs_err fields are left empty.
std::string sim_to_csv(const SimResult& sim,
                       const std::optional<ClosedFormSolution>& sol);

} // namespace fracbous
