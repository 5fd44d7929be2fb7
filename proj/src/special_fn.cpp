#include "tsou/special_fn.hpp"

#include "tsou/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace tsou::special {
namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

// sum_{n>=0} x^n k! / (k+n)!  (the confluent series of P(k, x) e^{x} k! / x^k)
double confluent_series(double k, double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (k + n);
        sum += term;
        if (term < sum * kEps) return sum;
    }
    throw NumericalFailure("incomplete gamma series did not converge");
}

// Continued fraction for Q(a, x) * Gamma(a) * e^{x} x^{-a}; valid for x >= a + 1.
double upper_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) return h;
    }
    throw NumericalFailure("incomplete gamma continued fraction did not converge");
}

// e^{-x} sum_{n<k} x^n / n!
double poisson_head(int k, double x) {
    double term = std::exp(-x);
    double sum = term;
    for (int n = 1; n < k; ++n) {
        term *= x / n;
        sum += term;
    }
    return sum;
}

void require_shape(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("incomplete gamma: shape must be positive");
}

void require_argument(double x) {
    if (!(x >= 0.0)) throw DomainError("incomplete gamma: argument must be nonnegative");
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
    return std::lgamma(x);
}

double gamma_p(double a, double x) {
    require_shape(a);
    require_argument(x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double log_prefactor = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) return std::exp(log_prefactor) * confluent_series(a, x) / a;
    return 1.0 - std::exp(log_prefactor) * upper_fraction(a, x);
}

double gamma_q(double a, double x) {
    require_shape(a);
    require_argument(x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    const double log_prefactor = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) return 1.0 - std::exp(log_prefactor) * confluent_series(a, x) / a;
    return std::exp(log_prefactor) * upper_fraction(a, x);
}

double lower_gamma(double a, double x) {
    require_shape(a);
    require_argument(x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return std::tgamma(a);
    if (x < a + 1.0) return std::exp(a * std::log(x) - x) * confluent_series(a, x) / a;
    return std::exp(std::lgamma(a)) - std::exp(a * std::log(x) - x) * upper_fraction(a, x);
}

double gamma_cdf(const GammaCdfParams& params, double u) {
    if (!(params.gamma > 0.0) || !(params.zeta > 0.0))
        throw DomainError("gamma_cdf: shape and rate must be positive");
    require_argument(u);
    return gamma_p(params.gamma, params.zeta * u);
}

double gamma_cdf_integer(double gamma, double zeta, double u) {
    if (!(gamma >= 1.0) || std::floor(gamma) != gamma || gamma > 1e6)
        throw DomainError("gamma_cdf_integer: shape must be a positive integer");
    if (!(zeta > 0.0)) throw DomainError("gamma_cdf_integer: rate must be positive");
    require_argument(u);
    return exp_tail_gap(0.0, zeta * u, static_cast<int>(gamma));
}

double exp_tail_difference(double a, double b, int k) {
    if (!(a >= 0.0)) throw DomainError("exp_tail_difference: a must be nonnegative");
    if (!(b >= a)) throw DomainError("exp_tail_difference: requires b >= a");
    return exp_tail_gap(a, b - a, k);
}

double exp_tail_gap(double a, double gap, int k) {
    if (k < 1) throw DomainError("exp_tail_gap: k must be a positive integer");
    if (!(gap >= 0.0) || !(a >= 0.0)) throw DomainError("exp_tail_gap: a and gap must be nonnegative");
    if (gap == 0.0) return 0.0;
    if (std::isinf(gap)) return std::exp(-a);
    if (gap < k + 1.0) {
        const double log_lead = -a - gap + k * std::log(gap) - std::lgamma(k + 1.0);
        return std::exp(log_lead) * confluent_series(k, gap);
    }
    return std::exp(-a) * (1.0 - poisson_head(k, gap));
}

double scaled_gamma_p(int k, double x) {
    if (k < 1) throw DomainError("scaled_gamma_p: k must be a positive integer");
    require_argument(x);
    if (x == 0.0) return 1.0;
    if (x < k + 1.0) return std::exp(-x) * confluent_series(k, x);
    return std::exp(std::lgamma(k + 1.0) - k * std::log(x)) * (1.0 - poisson_head(k, x));
}

} // namespace tsou::special
