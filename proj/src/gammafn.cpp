#include "fracbous/gammafn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracbous {

double gamma_fn(double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("gamma_fn: non-finite argument");
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("gamma_fn: pole at non-positive integer " +
                                std::to_string(x));
    return std::tgamma(x);
}

double lgamma_fn(double x) {
    if (!(x > 0.0))
        throw std::domain_error("lgamma_fn: requires x > 0");
    return std::lgamma(x);
}

double sinpi(double x) {
    double n = std::round(x);
    double r = x - n;
    if (r == 0.0)
        return 0.0;
    double v = std::sin(M_PI * r);
    // sin(pi(n+r)) = (-1)^n sin(pi r)
    return (std::fmod(std::fabs(n), 2.0) == 1.0) ? -v : v;
}

double recip_gamma(double x) {
    if (x > 0.5)
        return 1.0 / std::tgamma(x);
    double s = sinpi(x);
    if (s == 0.0)
        return 0.0; // pole of Gamma
    // reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
    double lg = std::lgamma(1.0 - x);
    if (lg > 700.0) // Gamma(1-x) overflows; 1/Gamma(x) does too
        return s > 0.0 ? HUGE_VAL : -HUGE_VAL;
    return s * std::exp(lg) / M_PI;
}

} // namespace fracbous
