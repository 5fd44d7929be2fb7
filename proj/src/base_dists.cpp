#include "tsou/base_dists.hpp"

#include "tsou/errors.hpp"
#include "tsou/special_fn.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace tsou {
namespace {

struct Estimate {
    double value;
    double condition; // sum of |terms| / |sum|
};

// Closed form: sum_n C(m,n) (-1)^n (1 - eta^{-(np-beta)/p}) / (np - beta).
Estimate k_alternating_sum(double beta, int gamma, double p, double log_eta) {
    double sum = 0.0;
    double abs_sum = 0.0;
    double binom = 1.0;
    const int m = gamma - 1;
    for (int n = 0; n <= m; ++n) {
        const double exponent = n * p - beta;
        const double term = std::fabs(exponent) < 1e-9
                                ? log_eta / p
                                : -std::expm1(-exponent * log_eta / p) / exponent;
        const double signed_term = (n % 2 == 0 ? 1.0 : -1.0) * binom * term;
        sum += signed_term;
        abs_sum += std::fabs(signed_term);
        binom = binom * (m - n) / (n + 1);
    }
    return {sum, abs_sum / std::fabs(sum)};
}

// Power series in w = 1 - 1/eta of integral_0^w s^m (1-s)^{-1-c} ds, times 1/p.
Estimate k_power_series(double beta, int gamma, double p, double log_eta) {
    const double c = beta / p;
    const double w = -std::expm1(-log_eta);
    const int m = gamma - 1;
    double coeff = 1.0;                 // (1+c)_j / j!
    double wpow = std::pow(w, m + 1);   // w^{m+j+1}
    double sum = 0.0;
    double abs_sum = 0.0;
    for (int j = 0; j < 20000; ++j) {
        const double term = coeff * wpow / (m + j + 1);
        sum += term;
        abs_sum += std::fabs(term);
        if (std::fabs(term) < 1e-18 * abs_sum && j > -c) break;
        coeff *= (1.0 + c + j) / (j + 1.0);
        wpow *= w;
    }
    return {sum / p, abs_sum / std::fabs(sum)};
}

void require_iga_domain(double beta, int gamma, double p, double log_eta) {
    if (gamma < 1) throw DomainError("IGa: gamma must be a positive integer");
    if (!(p > 0.0)) throw DomainError("IGa: p must be positive");
    if (!(p * gamma > beta)) throw DomainError("IGa: requires p*gamma > beta");
    if (!(log_eta > 0.0) || !std::isfinite(log_eta)) throw DomainError("IGa: requires finite eta > 1");
}

} // namespace

double sample_gamma(double shape, double rate, RandomSource& rng) {
    if (!(shape > 0.0) || !(rate > 0.0)) throw DomainError("sample_gamma: shape and rate must be positive");
    std::gamma_distribution<double> dist(shape, 1.0 / rate);
    return dist(rng);
}

double sample_gen_gamma(double gamma, double p, double zeta, RandomSource& rng) {
    if (!(p > 0.0)) throw DomainError("sample_gen_gamma: p must be positive");
    return std::pow(sample_gamma(gamma / p, zeta, rng), 1.0 / p);
}

double gen_gamma_pdf(double gamma, double p, double zeta, double u) {
    if (!(u > 0.0)) return 0.0;
    const double log_pdf = std::log(p) + (gamma / p) * std::log(zeta) + (gamma - 1.0) * std::log(u) -
                           std::pow(u, p) * zeta - std::lgamma(gamma / p);
    return std::exp(log_pdf);
}

std::int64_t sample_poisson(double mean, RandomSource& rng) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("sample_poisson: mean must be finite and >= 0");
    if (mean == 0.0) return 0;
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(rng);
}

double iga_norm_constant(double beta, int gamma, double p, double eta) {
    if (!(eta > 1.0)) throw DomainError("IGa: requires eta > 1");
    return iga_norm_constant_log(beta, gamma, p, std::log(eta));
}

double iga_norm_constant_log(double beta, int gamma, double p, double log_eta) {
    require_iga_domain(beta, gamma, p, log_eta);
    const double prefactor = std::exp(std::lgamma(gamma - beta / p) - std::lgamma(static_cast<double>(gamma)));
    Estimate best = k_alternating_sum(beta, gamma, p, log_eta);
    if (gamma > 1 && best.condition > 4.0 && -std::expm1(-log_eta) <= 0.9) {
        const Estimate series = k_power_series(beta, gamma, p, log_eta);
        if (series.condition < best.condition) best = series;
    }
    const double k = prefactor * best.value;
    if (!(k > 0.0) || !std::isfinite(k)) throw NumericalFailure("IGa normalizing constant is not positive and finite");
    return k;
}

IgaParams::IgaParams(double beta, int gamma, double p, double log_eta)
    : beta_(beta), gamma_(gamma), p_(p), log_eta_(log_eta), eta_minus_one_(std::expm1(log_eta)),
      k_const_(iga_norm_constant_log(beta, gamma, p, log_eta)) {
    const double log_v1 = gamma * std::log(eta_minus_one_) + std::lgamma(gamma - beta / p) - std::log(p) -
                          std::log(k_const_) - std::lgamma(gamma + 1.0);
    v1_ = std::exp(log_v1);
}

IgaParams IgaParams::from_eta(double beta, int gamma, double p, double eta) {
    if (!(eta > 1.0)) throw DomainError("IGa: requires eta > 1");
    return IgaParams(beta, gamma, p, std::log(eta));
}

IgaParams IgaParams::from_log_eta(double beta, int gamma, double p, double log_eta) {
    require_iga_domain(beta, gamma, p, log_eta);
    return IgaParams(beta, gamma, p, log_eta);
}

double iga_pdf(const IgaParams& params, double u) {
    if (!(u > 0.0)) return 0.0;
    const double v = std::pow(u, params.p());
    if (std::isinf(v)) return 0.0;
    const double tail = special::exp_tail_gap(v, params.eta_minus_one() * v, params.gamma());
    if (tail == 0.0) return 0.0;
    return std::exp(std::log(tail) - (1.0 + params.beta()) * std::log(u) - std::log(params.k_const()));
}

double iga_moment(const IgaParams& params, double kappa) {
    if (!(kappa > params.beta() - params.p() * params.gamma()))
        throw DomainError("iga_moment: requires kappa > beta - p*gamma");
    return iga_norm_constant_log(params.beta() - kappa, params.gamma(), params.p(), params.log_eta()) /
           params.k_const();
}

double iga_accept_ratio(const IgaParams& params, double y) {
    return special::scaled_gamma_p(params.gamma(), params.eta_minus_one() * y);
}

CountedDraw sample_iga_counted(const IgaParams& params, RandomSource& rng) {
    const double shape = params.gamma() - params.beta() / params.p();
    std::gamma_distribution<double> proposal(shape, 1.0);
    for (std::uint64_t n = 1; n <= kMaxConsecutiveRejections; ++n) {
        const double y = proposal(rng);
        if (rng.uniform() <= iga_accept_ratio(params, y)) return {std::pow(y, 1.0 / params.p()), n};
    }
    throw NumericalFailure("sample_iga: rejection loop exceeded the iteration guard");
}

double sample_iga(const IgaParams& params, RandomSource& rng) { return sample_iga_counted(params, rng).value; }

void validate(const LlParams& params) {
    if (!(params.alpha > 0.0) || !(params.p > params.alpha) || !std::isfinite(params.p))
        throw DomainError("LL: requires 0 < alpha < p");
}

double ll_pdf(const LlParams& params, double u) {
    if (!(u > 0.0)) return 0.0;
    const double a = params.alpha;
    const double scale = a * (1.0 - a / params.p);
    return u <= 1.0 ? scale * std::pow(u, params.p - a - 1.0) : scale * std::pow(u, -1.0 - a);
}

double ll_cdf(const LlParams& params, double u) {
    if (!(u > 0.0)) return 0.0;
    const double ratio = params.alpha / params.p;
    return u <= 1.0 ? ratio * std::pow(u, params.p - params.alpha)
                    : 1.0 - (1.0 - ratio) * std::pow(u, -params.alpha);
}

double sample_ll(const LlParams& params, RandomSource& rng) {
    const double ratio = params.alpha / params.p;
    const double u = rng.uniform();
    if (u <= ratio) return std::pow(u / ratio, 1.0 / (params.p - params.alpha));
    return std::pow((1.0 - u) / (1.0 - ratio), -1.0 / params.alpha);
}

double sample_ll_two_uniform(const LlParams& params, RandomSource& rng) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    return std::pow(u1, 1.0 / (params.p - params.alpha)) * std::pow(u2, -1.0 / params.alpha);
}

} // namespace tsou
