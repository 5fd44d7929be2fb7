#pragma once

namespace tsou::special {

struct GammaCdfParams {
    double gamma; // shape, > 0
    double zeta;  // rate, > 0
};

//! ln Gamma(x) for x > 0.
double log_gamma(double x);

//! Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

//! Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

//! Unnormalized lower incomplete gamma: integral of s^{a-1} e^{-s} over [0, x].
double lower_gamma(double a, double x);

//! Cdf of Ga(gamma, zeta) at u.
double gamma_cdf(const GammaCdfParams& params, double u);

//! Same as gamma_cdf but for integer shape, via the finite-sum identity.
//! Throws DomainError when gamma is not a positive integer.
double gamma_cdf_integer(double gamma, double zeta, double u);

//! e^{-a} - e^{-b} sum_{n<k} (b-a)^n / n!, evaluated without cancellation.
//! Requires 0 <= a <= b and k >= 1.
double exp_tail_difference(double a, double b, int k);

//! exp_tail_difference(a, a + gap, k), for callers that already hold the gap.
//! Passing the gap directly avoids the rounding of forming b - a.
double exp_tail_gap(double a, double gap, int k);

//! k! P(k, x) / x^k, which lies in (0, 1] and tends to 1 as x -> 0.
double scaled_gamma_p(int k, double x);

} // namespace tsou::special
