#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracbous {

/// Raised when a series/iteration fails to reach its tolerance.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an explicit time step produces non-finite or exploding values.
struct instability_error : std::runtime_error {
    double last_stable_time;
    instability_error(const std::string& msg, double t)
        : std::runtime_error(msg), last_stable_time(t) {}
};

/// Raised when requested parameters violate a solution-family constraint.
struct admissibility_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A fractional differentiation order in (0, 1]. value == 1 is allowed and
/// routes callers to the classical first-derivative formulas.
class FractionalOrder {
  public:
    explicit FractionalOrder(double v) : v_(v) {
        if (!(v > 0.0) || !(v <= 1.0))
            throw std::invalid_argument(
                "FractionalOrder: value must lie in (0, 1], got " +
                std::to_string(v));
    }
    double value() const { return v_; }
    bool is_classical() const { return v_ == 1.0; }

  private:
    double v_;
};

/// Discretization of [0, L]: N intervals (N+1 nodes), optional grading
/// x_i = L * (i/N)^r concentrating nodes at the left endpoint.
class Grid1D {
  public:
    Grid1D(double L, int n_intervals, double grading = 1.0)
        : L_(L), n_(n_intervals), r_(grading) {
        if (!(L > 0.0))
            throw std::invalid_argument("Grid1D: L must be > 0");
        if (n_intervals < 3)
            throw std::invalid_argument("Grid1D: need at least 3 intervals");
        if (!(grading >= 1.0))
            throw std::invalid_argument("Grid1D: grading must be >= 1");
    }

    double length() const { return L_; }
    int intervals() const { return n_; }
    int point_count() const { return n_ + 1; }
    double grading() const { return r_; }
    bool uniform() const { return r_ == 1.0; }

    double node(int i) const {
        if (i == 0) return 0.0;
        if (i == n_) return L_;
        if (r_ == 1.0) return L_ * i / n_;
        return L_ * std::pow(double(i) / n_, r_);
    }

    std::vector<double> nodes() const {
        std::vector<double> x(n_ + 1);
        for (int i = 0; i <= n_; ++i) x[i] = node(i);
        return x;
    }

    double min_spacing() const { return node(1) - node(0); }

    bool operator==(const Grid1D& o) const {
        return L_ == o.L_ && n_ == o.n_ && r_ == o.r_;
    }

  private:
    double L_;
    int n_;
    double r_;
};

/// Sampled scalar function on a Grid1D, one value per node.
struct Field {
    Grid1D grid;
    std::vector<double> values;

    Field(Grid1D g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (int(values.size()) != grid.point_count())
            throw std::invalid_argument("Field: value count != node count");
        for (double x : values)
            if (!std::isfinite(x))
                throw std::invalid_argument("Field: non-finite value");
    }

    static Field zeros(const Grid1D& g) {
        return Field(g, std::vector<double>(g.point_count(), 0.0));
    }

    template <typename F>
    static Field sample(const Grid1D& g, F&& f) {
        std::vector<double> v(g.point_count());
        for (int i = 0; i < g.point_count(); ++i) v[i] = f(g.node(i));
        return Field(g, std::move(v));
    }

    int size() const { return int(values.size()); }
    double operator[](int i) const { return values[i]; }
    double& operator[](int i) { return values[i]; }
};

/// Physical parameters of the aquifer model: hydraulic factor k, seepage
/// transfer coefficient phi, porosity n, and the power-law coefficient
/// phi(t) = lambda * t^beta_exp used by the Kilbas-Saigo family.
struct AquiferParams {
    double k = 1.0;
    double phi = 0.0;
    double n = 0.4;
    double lambda = 0.0;
    double beta_exp = 0.0;

    void validate() const {
        if (!(k > 0.0))
            throw std::invalid_argument("AquiferParams: k must be > 0");
        if (!(phi >= 0.0))
            throw std::invalid_argument("AquiferParams: phi must be >= 0");
        if (!(n > 0.0) || !(n < 1.0))
            throw std::invalid_argument("AquiferParams: n must be in (0,1)");
        if (!(lambda >= 0.0))
            throw std::invalid_argument("AquiferParams: lambda must be >= 0");
        if (!std::isfinite(beta_exp))
            throw std::invalid_argument("AquiferParams: beta_exp not finite");
    }
};

} // namespace fracbous
