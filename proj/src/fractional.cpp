#include "fracbous/fractional.hpp"
#include "fracbous/gammafn.hpp"

#include <cmath>

namespace fracbous {

double caputo_power_rule(double beta, FractionalOrder nu, double x) {
    if (!(beta > 0.0))
        throw std::invalid_argument("caputo_power_rule: beta must be > 0");
    if (!(x >= 0.0))
        throw std::invalid_argument("caputo_power_rule: x must be >= 0");
    double v = nu.value();
    if (v == 1.0)
        return beta * std::pow(x, beta - 1.0);
    double a = beta + 1.0 - v;
    if (a <= 0.0 && a == std::floor(a)) // unreachable for beta>0, nu<=1
        throw std::domain_error("caputo_power_rule: Gamma pole at beta+1-nu");
    double c = gamma_fn(beta + 1.0) / gamma_fn(a);
    return c * std::pow(x, beta - v);
}

Field caputo_l1(const Field& f, FractionalOrder nu) {
    double v = nu.value();
    if (v == 1.0)
        throw std::invalid_argument(
            "caputo_l1: order 1 not supported, use first_derivative");
    const Grid1D& g = f.grid;
    const int N = g.intervals();
    Field out = Field::zeros(g);
    const double ginv = 1.0 / gamma_fn(2.0 - v);

    if (g.uniform()) {
        const double dx = g.length() / N;
        const double scale = ginv * std::pow(dx, -v);
        // b_j = (j+1)^(1-nu) - j^(1-nu)
        std::vector<double> b(N);
        for (int j = 0; j < N; ++j)
            b[j] = std::pow(j + 1.0, 1.0 - v) - std::pow(double(j), 1.0 - v);
        for (int n = 1; n <= N; ++n) {
            double s = 0.0;
            for (int j = 0; j < n; ++j)
                s += b[j] * (f[n - j] - f[n - j - 1]);
            out[n] = scale * s;
        }
        return out;
    }

    // generalized (non-uniform) piecewise-linear quadrature
    std::vector<double> x = g.nodes();
    for (int n = 1; n <= N; ++n) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            double slope = (f[j + 1] - f[j]) / (x[j + 1] - x[j]);
            double w = std::pow(x[n] - x[j], 1.0 - v) -
                       std::pow(x[n] - x[j + 1], 1.0 - v);
            s += slope * w;
        }
        out[n] = ginv * s;
    }
    return out;
}

namespace {
// derivative weights of the quadratic through (x0,x1,x2) evaluated at xe
void lagrange3_deriv(double x0, double x1, double x2, double xe, double w[3]) {
    w[0] = (2.0 * xe - x1 - x2) / ((x0 - x1) * (x0 - x2));
    w[1] = (2.0 * xe - x0 - x2) / ((x1 - x0) * (x1 - x2));
    w[2] = (2.0 * xe - x0 - x1) / ((x2 - x0) * (x2 - x1));
}
} // namespace

Field first_derivative(const Field& f) {
    const Grid1D& g = f.grid;
    const int N = g.intervals();
    std::vector<double> x = g.nodes();
    Field out = Field::zeros(g);
    double w[3];
    lagrange3_deriv(x[0], x[1], x[2], x[0], w);
    out[0] = w[0] * f[0] + w[1] * f[1] + w[2] * f[2];
    for (int i = 1; i < N; ++i) {
        lagrange3_deriv(x[i - 1], x[i], x[i + 1], x[i], w);
        out[i] = w[0] * f[i - 1] + w[1] * f[i] + w[2] * f[i + 1];
    }
    lagrange3_deriv(x[N - 2], x[N - 1], x[N], x[N], w);
    out[N] = w[0] * f[N - 2] + w[1] * f[N - 1] + w[2] * f[N];
    return out;
}

Field boussinesq_rhs(const Field& h, FractionalOrder nu,
                     const AquiferParams& params) {
    params.validate();
    Field d = nu.is_classical() ? first_derivative(h) : caputo_l1(h, nu);
    Field g = h;
    for (int i = 0; i < h.size(); ++i) g[i] = h[i] * d[i];
    Field out = first_derivative(g);
    for (int i = 0; i < h.size(); ++i)
        out[i] = params.k * out[i] - params.phi * h[i];
    return out;
}

double trapezoid(const Field& f) {
    const Grid1D& g = f.grid;
    double s = 0.0;
    for (int i = 0; i < g.intervals(); ++i)
        s += 0.5 * (f[i] + f[i + 1]) * (g.node(i + 1) - g.node(i));
    return s;
}

} // namespace fracbous
