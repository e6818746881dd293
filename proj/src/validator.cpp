#include "fracbous/validator.hpp"

#include "fracbous/fractional.hpp"
#include "fracbous/gammafn.hpp"
#include "fracbous/io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fracbous {

namespace {

constexpr double kBlowupLimit = 1e8;
constexpr double kPi = 3.14159265358979323846;

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void check_stable(const std::vector<double>& v, double t_now) {
    for (double x : v)
        if (!std::isfinite(x) || std::abs(x) > kBlowupLimit)
            throw instability_error(
                "time step produced values beyond 1e8 (last stable time " +
                    format_real(t_now) + ")",
                t_now);
}

double dirichlet_value(const SimConfig& cfg, double t) {
    if (!cfg.reference)
        throw std::invalid_argument(
            "ExactDirichlet right boundary needs a reference solution");
    return evaluate(*cfg.reference, cfg.grid.length(), t);
}

Field step_explicit_impl(const Field& h, const SimConfig& cfg, double t_now,
                         double* rhs_max_out) {
    if (!(cfg.dt > 0.0))
        throw std::invalid_argument("step_explicit: dt must be > 0");
    Field r = sim_rhs(h, cfg);
    if (rhs_max_out) *rhs_max_out = max_abs(r.values);

    std::vector<double> vn(h.size());
    for (int i = 0; i < h.size(); ++i) vn[i] = h[i] + cfg.dt * r[i];
    vn[0] = 0.0;
    if (cfg.right_bc == RightBC::ExactDirichlet)
        vn[h.size() - 1] = dirichlet_value(cfg, t_now + cfg.dt);
    check_stable(vn, t_now);
    return Field(h.grid, std::move(vn));
}

Field step_l1_impl(const std::vector<Field>& history, const SimConfig& cfg,
                   double* rhs_max_out) {
    if (history.empty())
        throw std::invalid_argument("step_l1_time: history must start at t=0");
    if (!(cfg.dt > 0.0))
        throw std::invalid_argument("step_l1_time: dt must be > 0");
    const double g = cfg.gamma.value();
    if (!(g < 1.0))
        throw std::invalid_argument("step_l1_time: needs gamma < 1");

    const int m = int(history.size()) - 1;
    const Field& hm = history[m];
    const double t_now = m * cfg.dt;

    Field r = sim_rhs(hm, cfg);
    if (rhs_max_out) *rhs_max_out = max_abs(r.values);

    const double scale = gamma_fn(2.0 - g) * std::pow(cfg.dt, g);
    std::vector<double> vn(hm.size());
    for (int i = 0; i < hm.size(); ++i) vn[i] = hm[i] + scale * r[i];
    for (int j = 1; j <= m; ++j) {
        const double bj = std::pow(j + 1.0, 1.0 - g) - std::pow(double(j), 1.0 - g);
        const Field& newer = history[m + 1 - j];
        const Field& older = history[m - j];
        for (int i = 0; i < hm.size(); ++i) vn[i] -= bj * (newer[i] - older[i]);
    }
    vn[0] = 0.0;
    if (cfg.right_bc == RightBC::ExactDirichlet)
        vn[hm.size() - 1] = dirichlet_value(cfg, t_now + cfg.dt);
    check_stable(vn, t_now);
    return Field(hm.grid, std::move(vn));
}

} // namespace

void SimConfig::validate() const {
    params.validate();
    if (!(t_end > 0.0))
        throw std::invalid_argument("SimConfig: t_end must be > 0");
    if (!(dt >= 0.0))
        throw std::invalid_argument("SimConfig: dt must be >= 0");
    if (!(cfl_safety > 0.0) || !(cfl_safety <= 1.0))
        throw std::invalid_argument("SimConfig: cfl_safety must be in (0,1]");
    if (snapshot_stride < 0)
        throw std::invalid_argument("SimConfig: snapshot_stride must be >= 0");
    if (right_bc == RightBC::ExactDirichlet && !reference)
        throw std::invalid_argument(
            "SimConfig: ExactDirichlet needs a reference solution");
}

double cfl_dt_bound(const SimConfig& cfg, double h_max) {
    const double hm = std::max(h_max, 1e-12);
    const double dxm = cfg.grid.min_spacing();
    const double base =
        cfg.cfl_safety * std::pow(dxm, 1.0 + cfg.nu.value()) / (cfg.params.k * hm);
    const double g = cfg.gamma.value();
    if (g == 1.0) return base;
    return std::pow(
        base / (gamma_fn(2.0 - g) * 2.0 * std::pow(kPi, cfg.nu.value())),
        1.0 / g);
}

Field flux_field(const Field& h, FractionalOrder nu, RightBC right_bc) {
    Field d = nu.is_classical() ? first_derivative(h) : caputo_l1(h, nu);
    std::vector<double> g(h.size());
    for (int i = 0; i < h.size(); ++i) g[i] = h[i] * d[i];
    if (right_bc == RightBC::ZeroFlux) g[h.size() - 1] = 0.0;
    return Field(h.grid, std::move(g));
}

Field sim_rhs(const Field& h, const SimConfig& cfg) {
    Field g = flux_field(h, cfg.nu, cfg.right_bc);
    Field out = first_derivative(g);
    for (int i = 0; i < h.size(); ++i)
        out[i] = cfg.params.k * out[i] - cfg.params.phi * h[i];
    return out;
}

Field step_explicit(const Field& h, const SimConfig& cfg, double t_now) {
    return step_explicit_impl(h, cfg, t_now, nullptr);
}

Field step_l1_time(const std::vector<Field>& history, const SimConfig& cfg) {
    return step_l1_impl(history, cfg, nullptr);
}

SimResult simulate(const SimConfig& cfg, const Field& initial) {
    cfg.validate();
    if (!(initial.grid == cfg.grid))
        throw std::invalid_argument("simulate: initial data on a different grid");

    SimResult res{{}, {}, true, {}, {}, 0.0, cfg};
    res.times.push_back(0.0);
    res.fields.push_back(initial);

    SimConfig local = cfg;
    const int stride = cfg.snapshot_stride;
    auto record = [&](double t, const Field& f, int step, bool final_step) {
        if (final_step || (stride > 0 && step % stride == 0)) {
            if (!res.times.empty() && res.times.back() == t) return;
            res.times.push_back(t);
            res.fields.push_back(f);
        }
    };

    if (cfg.gamma.is_classical()) {
        Field h = initial;
        double t = 0.0;
        int step = 0;
        while (t < cfg.t_end * (1.0 - 1e-12)) {
            double dt = cfg.dt > 0.0 ? cfg.dt : cfl_dt_bound(cfg, max_abs(h.values));
            if (cfg.auto_dt) dt = std::min(dt, cfl_dt_bound(cfg, max_abs(h.values)));
            dt = std::min(dt, cfg.t_end - t);
            local.dt = dt;
            double rmax = 0.0;
            Field next = Field::zeros(cfg.grid);
            try {
                next = step_explicit_impl(h, local, t, &rmax);
            } catch (const instability_error&) {
                res.stability_flag = false;
                res.last_stable_time = t;
                record(t, h, step, true);
                return res;
            }
            h = next;
            t += dt;
            ++step;
            res.max_residual_trace.push_back(rmax);
            res.max_h_trace.push_back(*std::max_element(h.values.begin(), h.values.end()));
            record(t, h, step, t >= cfg.t_end * (1.0 - 1e-12));
        }
        res.last_stable_time = t;
        return res;
    }

    // gamma < 1: fixed-step L1 scheme over the full Caputo history.
    double dt = cfg.dt > 0.0 ? cfg.dt : cfl_dt_bound(cfg, max_abs(initial.values));
    dt = std::min(dt, cfg.t_end);
    const int steps = std::max(1, int(std::ceil(cfg.t_end / dt - 1e-12)));
    dt = cfg.t_end / steps;
    local.dt = dt;

    std::vector<Field> history;
    history.reserve(steps + 1);
    history.push_back(initial);
    for (int m = 0; m < steps; ++m) {
        double rmax = 0.0;
        try {
            history.push_back(step_l1_impl(history, local, &rmax));
        } catch (const instability_error&) {
            res.stability_flag = false;
            res.last_stable_time = m * dt;
            record(m * dt, history.back(), m, true);
            return res;
        }
        const Field& h = history.back();
        res.max_residual_trace.push_back(rmax);
        res.max_h_trace.push_back(*std::max_element(h.values.begin(), h.values.end()));
        record((m + 1) * dt, h, m + 1, m + 1 == steps);
    }
    res.last_stable_time = cfg.t_end;
    return res;
}

SimResult simulate(const SimConfig& cfg) {
    if (!cfg.reference)
        throw std::invalid_argument(
            "simulate: no initial data and no reference solution to sample");
    Field init = Field::sample(
        cfg.grid, [&](double x) { return evaluate(*cfg.reference, x, 0.0); });
    return simulate(cfg, init);
}

ErrorReport error_report(const SimResult& sim, const ClosedFormSolution& sol) {
    const SimConfig& cfg = sim.config;
    const bool mismatch = cfg.nu.value() != sol.nu.value() ||
                          cfg.gamma.value() != sol.gamma.value() ||
                          cfg.params.k != sol.params.k ||
                          cfg.params.phi != sol.params.phi ||
                          cfg.params.lambda != sol.params.lambda ||
                          cfg.params.beta_exp != sol.params.beta_exp;
    if (mismatch)
        throw std::invalid_argument(
            "error_report: simulation and solution parameter records differ");
    if (sim.fields.empty())
        throw std::invalid_argument("error_report: empty simulation");

    const Field& h = sim.fields.back();
    const double t = sim.times.back();
    const double L = cfg.grid.length();

    double num2 = 0.0, den2 = 0.0, numi = 0.0, deni = 0.0;
    for (int i = 0; i < h.size(); ++i) {
        const double x = cfg.grid.node(i);
        if (x < L / 10.0 - 1e-12 * L || x > 9.0 * L / 10.0 + 1e-12 * L) continue;
        const double ex = evaluate(sol, x, t);
        const double err = h[i] - ex;
        num2 += err * err;
        den2 += ex * ex;
        numi = std::max(numi, std::abs(err));
        deni = std::max(deni, std::abs(ex));
    }
    ErrorReport rep;
    rep.l2_rel = den2 > 0.0 ? std::sqrt(num2 / den2)
                            : (num2 > 0.0 ? INFINITY : 0.0);
    rep.linf_rel = deni > 0.0 ? numi / deni : (numi > 0.0 ? INFINITY : 0.0);
    return rep;
}

double observed_order(double err_coarse, double err_fine) {
    if (!(err_coarse > 0.0) || !(err_fine > 0.0))
        throw std::invalid_argument("observed_order: errors must be > 0");
    return std::log2(err_coarse / err_fine);
}

double boundary_flux_functional(const Field& g) {
    const int n = g.size() - 1;
    const double right = 1.25 * g[n] - 0.5 * g[n - 1] + 0.25 * g[n - 2];
    const double left = 1.25 * g[0] - 0.5 * g[1] + 0.25 * g[2];
    return right - left;
}

std::string sim_to_csv(const SimResult& sim,
                       const std::optional<ClosedFormSolution>& sol) {
    std::ostringstream out;
    out << "t,x,h,exact,abs_err\n";
    for (std::size_t s = 0; s < sim.fields.size(); ++s) {
        const double t = sim.times[s];
        const Field& f = sim.fields[s];
        for (int i = 0; i < f.size(); ++i) {
            const double x = sim.config.grid.node(i);
            out << format_real(t) << ',' << format_real(x) << ','
                << format_real(f[i]) << ',';
            if (sol) {
                const double ex = evaluate(*sol, x, t);
                out << format_real(ex) << ',' << format_real(std::abs(f[i] - ex));
            } else {
                out << ',';
            }
            out << '\n';
        }
    }
    return out.str();
}

} // namespace fracbous
