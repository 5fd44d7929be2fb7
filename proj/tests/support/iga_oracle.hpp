#pragma once
// Beta-integral form of the IGa normalizing constant, by quadrature.

#include "support/oracles.hpp"

#include <cmath>

namespace oracle {

//! Gamma(g - c) / (p Gamma(g)) * integral_{1/eta}^{1} (1-u)^{g-1} u^{-1-c} du, c = beta/p,
//! integrated in s = -ln u over [0, ln eta] so both endpoints are smooth.
inline double iga_k_quadrature(double beta, int gamma, double p, double log_eta) {
    const double c = beta / p;
    auto integrand = [&](double s) {
        const double one_minus_u = -std::expm1(-s);
        return std::pow(one_minus_u, gamma - 1) * std::exp(c * s);
    };
    // split for long ranges where exp(c s) varies by many orders of magnitude
    double total = 0.0;
    const int pieces = std::max(1, static_cast<int>(std::ceil(log_eta / 2.0)));
    for (int i = 0; i < pieces; ++i) {
        total += integrate(integrand, log_eta * i / pieces, log_eta * (i + 1) / pieces, 1e-14);
    }
    return std::exp(std::lgamma(gamma - c) - std::lgamma(static_cast<double>(gamma))) / p * total;
}

} // namespace oracle
