#include "fracbous/subspace.hpp"

#include "fracbous/gammafn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fracbous {

namespace {

// -------- exact power-sum algebra --------------------------------------
//
// The certification works on finite sums  sum_i c_i x^{e_i}  kept in
// symbolic form, so applying F uses the Caputo power rule exactly and the
// only floating-point error is in the Gamma-ratio coefficients themselves.

struct Term {
    double coef;
    double exp;
};

using PowerSum = std::vector<Term>;

constexpr double kExpMergeTol = 1e-9;

PowerSum normalized(PowerSum s) {
    std::sort(s.begin(), s.end(),
              [](const Term& a, const Term& b) { return a.exp < b.exp; });
    PowerSum out;
    for (const Term& t : s) {
        if (t.coef == 0.0) continue;
        if (!out.empty() && std::abs(out.back().exp - t.exp) <= kExpMergeTol)
            out.back().coef += t.coef;
        else
            out.push_back(t);
    }
    return out;
}

PowerSum caputo_exact(const PowerSum& s, double nu) {
    PowerSum out;
    for (const Term& t : s) {
        if (t.exp <= kExpMergeTol) continue; // constants are annihilated
        double c = t.coef * gamma_fn(t.exp + 1.0) * recip_gamma(t.exp + 1.0 - nu);
        out.push_back({c, t.exp - nu});
    }
    return normalized(out);
}

PowerSum multiply(const PowerSum& a, const PowerSum& b) {
    PowerSum out;
    for (const Term& ta : a)
        for (const Term& tb : b)
            out.push_back({ta.coef * tb.coef, ta.exp + tb.exp});
    return normalized(out);
}

PowerSum ddx(const PowerSum& s) {
    PowerSum out;
    for (const Term& t : s) {
        if (std::abs(t.exp) <= kExpMergeTol) continue;
        out.push_back({t.coef * t.exp, t.exp - 1.0});
    }
    return normalized(out);
}

PowerSum combine(double alpha, const PowerSum& a, double beta,
                 const PowerSum& b) {
    PowerSum out;
    for (const Term& t : a) out.push_back({alpha * t.coef, t.exp});
    for (const Term& t : b) out.push_back({beta * t.coef, t.exp});
    return normalized(out);
}

double eval(const PowerSum& s, double x) {
    double v = 0.0;
    for (const Term& t : s) v += t.coef * std::pow(x, t.exp);
    return v;
}

// F[h] = k d/dx(h * D^nu h) - phi h, applied symbolically.
PowerSum apply_operator(const PowerSum& h, double nu,
                        const AquiferParams& params) {
    PowerSum flux = multiply(h, caputo_exact(h, nu));
    return combine(params.k, ddx(flux), -params.phi, h);
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9; }

} // namespace

PowerBasis::PowerBasis(std::vector<double> exps) : exponents(std::move(exps)) {
    if (exponents.empty() || exponents.size() > 2)
        throw std::invalid_argument("PowerBasis: dimension must be 1 or 2");
    for (double e : exponents)
        if (!(e >= 0.0) || !std::isfinite(e))
            throw std::invalid_argument("PowerBasis: exponents must be >= 0");
    for (std::size_t i = 1; i < exponents.size(); ++i)
        if (!(exponents[i] > exponents[i - 1] + kExpMergeTol))
            throw std::invalid_argument(
                "PowerBasis: exponents must be distinct and ascending");
}

CertifyResult certify_invariance(const PowerBasis& basis, FractionalOrder nu,
                                 const AquiferParams& params,
                                 const Grid1D& grid, int samples,
                                 unsigned seed) {
    params.validate();
    if (samples < 20)
        throw std::invalid_argument(
            "certify_invariance: need at least 20 samples");

    const int n = basis.dimension();
    std::vector<double> xs;
    for (double x : grid.nodes())
        if (x >= grid.length() / 10.0) xs.push_back(x);
    if (int(xs.size()) < n + 1)
        throw std::invalid_argument(
            "certify_invariance: too few nodes with x >= L/10");

    // Basis columns on the projection nodes.
    const int m = int(xs.size());
    std::vector<std::vector<double>> A(n, std::vector<double>(m));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
            A[j][i] = std::pow(xs[i], basis.exponents[j]);

    auto dot = [m](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += a[i] * b[i];
        return s;
    };

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    CertifyResult result;
    result.samples = samples;
    for (int s = 0; s < samples; ++s) {
        PowerSum h;
        for (int j = 0; j < n; ++j)
            h.push_back({unit(rng), basis.exponents[j]});
        PowerSum image = apply_operator(normalized(h), nu.value(), params);

        std::vector<double> b(m);
        for (int i = 0; i < m; ++i) b[i] = eval(image, xs[i]);

        // Least-squares coefficients via the (tiny) normal equations.
        std::vector<double> d(n, 0.0);
        if (n == 1) {
            double g = dot(A[0], A[0]);
            d[0] = dot(A[0], b) / g;
        } else {
            double g00 = dot(A[0], A[0]), g01 = dot(A[0], A[1]),
                   g11 = dot(A[1], A[1]);
            double r0 = dot(A[0], b), r1 = dot(A[1], b);
            double det = g00 * g11 - g01 * g01;
            d[0] = (g11 * r0 - g01 * r1) / det;
            d[1] = (g00 * r1 - g01 * r0) / det;
        }

        double res2 = 0.0, norm2 = 0.0;
        for (int i = 0; i < m; ++i) {
            double fit = 0.0;
            for (int j = 0; j < n; ++j) fit += d[j] * A[j][i];
            res2 += (b[i] - fit) * (b[i] - fit);
            norm2 += b[i] * b[i];
        }
        double rel = norm2 > 0.0 ? std::sqrt(res2 / norm2) : 0.0;
        result.max_projection_residual =
            std::max(result.max_projection_residual, rel);
    }
    result.certified = result.max_projection_residual < 1e-8;
    return result;
}

OdeReduction reduce(const PowerBasis& basis, FractionalOrder nu,
                    const AquiferParams& params) {
    params.validate();
    const double v = nu.value();
    const double k = params.k;
    const double phi = params.phi;

    OdeReduction red{basis, nullptr, {}};

    if (basis.dimension() == 1) {
        double e = basis.exponents[0];
        if (near(e, v + 1.0)) {
            const double g3 = gamma_fn(v + 3.0);
            red.rhs_map = [k, phi, g3](const std::vector<double>& f) {
                return std::vector<double>{k * g3 * f[0] * f[0] - phi * f[0]};
            };
            red.provenance = {
                "Gamma(nu+2)/Gamma(2): Caputo power rule on x^(nu+1)",
                "(nu+2)*Gamma(nu+2) = Gamma(nu+3): outer d/dx of x^(nu+2)"};
            return red;
        }
        if (near(e, v / 2.0)) {
            red.rhs_map = [phi](const std::vector<double>& f) {
                return std::vector<double>{-phi * f[0]};
            };
            red.provenance = {
                "Gamma(nu/2+1)/Gamma(1-nu/2) drops out: h * D^nu h is "
                "constant in x, so the flux derivative vanishes"};
            return red;
        }
        if (near(e, 0.0)) {
            red.rhs_map = [phi](const std::vector<double>& f) {
                return std::vector<double>{-phi * f[0]};
            };
            red.provenance = {"D^nu of a constant is 0"};
            return red;
        }
    } else if (near(basis.exponents[0], 0.0) &&
               near(basis.exponents[1], v + 1.0)) {
        const double g2 = gamma_fn(v + 2.0);
        const double g3 = gamma_fn(v + 3.0);
        red.rhs_map = [k, phi, g2, g3](const std::vector<double>& f) {
            return std::vector<double>{k * g2 * f[1] * f[0] - phi * f[0],
                                       k * g3 * f[1] * f[1] - phi * f[1]};
        };
        red.provenance = {
            "Gamma(nu+2)/Gamma(2) multiplies f_power*f_const (flux cross "
            "term, constant after d/dx)",
            "(nu+2)*Gamma(nu+2) = Gamma(nu+3) multiplies f_power^2"};
        return red;
    }

    throw std::invalid_argument(
        "reduce: unsupported basis (no certified reduction template matches "
        "these exponents)");
}

Trajectory integrate(const OdeReduction& red, std::vector<double> init,
                     double t_end, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("integrate: dt must be > 0");
    if (!(t_end >= 0.0))
        throw std::invalid_argument("integrate: t_end must be >= 0");
    if (int(init.size()) != red.basis.dimension())
        throw std::invalid_argument(
            "integrate: initial state dimension != basis dimension");
    if (!red.rhs_map)
        throw std::invalid_argument("integrate: reduction has no rhs_map");

    const int n = int(init.size());
    auto exploded = [n](const std::vector<double>& f) {
        for (int i = 0; i < n; ++i)
            if (!std::isfinite(f[i]) || std::abs(f[i]) > 1e12) return true;
        return false;
    };

    Trajectory tr;
    tr.times.push_back(0.0);
    tr.states.push_back(init);
    if (exploded(init)) {
        tr.blew_up = true;
        return tr;
    }

    std::vector<double> f = init;
    double t = 0.0;
    std::vector<double> stage(n), incr(n);
    while (t < t_end * (1.0 - 1e-15) && t_end > 0.0) {
        const double h = std::min(dt, t_end - t);

        std::vector<double> k1 = red.rhs_map(f);
        for (int i = 0; i < n; ++i) stage[i] = f[i] + 0.5 * h * k1[i];
        std::vector<double> k2 = red.rhs_map(stage);
        for (int i = 0; i < n; ++i) stage[i] = f[i] + 0.5 * h * k2[i];
        std::vector<double> k3 = red.rhs_map(stage);
        for (int i = 0; i < n; ++i) stage[i] = f[i] + h * k3[i];
        std::vector<double> k4 = red.rhs_map(stage);
        for (int i = 0; i < n; ++i)
            f[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t += h;

        if (exploded(f)) {
            tr.blew_up = true;
            return tr;
        }
        tr.times.push_back(t);
        tr.states.push_back(f);
    }
    return tr;
}

} // namespace fracbous
