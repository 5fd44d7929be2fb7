#pragma once

#include "tsou/random.hpp"

#include <cstdint>

namespace tsou {

//! Consecutive rejections after which a rejection sampler gives up.
inline constexpr std::uint64_t kMaxConsecutiveRejections = 1'000'000;

//! A draw together with the number of proposals the rejection loop consumed.
struct CountedDraw {
    double value;
    std::uint64_t proposals;
};

double sample_gamma(double shape, double rate, RandomSource& rng);

//! GGa(gamma, p, zeta): X^{1/p} with X ~ Ga(gamma/p, zeta).
double sample_gen_gamma(double gamma, double p, double zeta, RandomSource& rng);
double gen_gamma_pdf(double gamma, double p, double zeta, double u);

//! Poisson variate; mean 0 returns 0, negative mean throws DomainError.
std::int64_t sample_poisson(double mean, RandomSource& rng);

//! Normalizing constant K of the incomplete gamma law, for integer gamma.
//! Requires p*gamma > beta and eta > 1.
double iga_norm_constant(double beta, int gamma, double p, double eta);

//! Same constant parametrized by ln(eta); accurate when eta is close to 1.
double iga_norm_constant_log(double beta, int gamma, double p, double log_eta);

//! IGa(beta, gamma, p, eta): density proportional to
//! P(gamma, (eta-1) u^p) e^{-u^p} u^{-1-beta} on (0, inf).
class IgaParams {
public:
    static IgaParams from_eta(double beta, int gamma, double p, double eta);
    static IgaParams from_log_eta(double beta, int gamma, double p, double log_eta);

    double beta() const { return beta_; }
    int gamma() const { return gamma_; }
    double p() const { return p_; }
    double eta() const { return 1.0 + eta_minus_one_; }
    double log_eta() const { return log_eta_; }
    double eta_minus_one() const { return eta_minus_one_; }
    double k_const() const { return k_const_; }
    //! Envelope constant of the generalized-gamma proposal; acceptance = 1/v1.
    double v1() const { return v1_; }

private:
    IgaParams(double beta, int gamma, double p, double log_eta);

    double beta_;
    int gamma_;
    double p_;
    double log_eta_;
    double eta_minus_one_;
    double k_const_;
    double v1_;
};

double iga_pdf(const IgaParams& params, double u);

//! E[X^kappa] for X ~ IGa; requires kappa > beta - p*gamma.
double iga_moment(const IgaParams& params, double kappa);

//! Acceptance probability of a Ga(gamma - beta/p, 1) proposal y; lies in [0, 1].
double iga_accept_ratio(const IgaParams& params, double y);

double sample_iga(const IgaParams& params, RandomSource& rng);
CountedDraw sample_iga_counted(const IgaParams& params, RandomSource& rng);

//! Log-Laplace type law LL(alpha, p), 0 < alpha < p.
struct LlParams {
    double alpha;
    double p;
};

void validate(const LlParams& params);
double ll_pdf(const LlParams& params, double u);
double ll_cdf(const LlParams& params, double u);

//! Single-uniform inversion sampler.
double sample_ll(const LlParams& params, RandomSource& rng);

//! Product construction U1^{1/(p-alpha)} U2^{-1/alpha}; same law as sample_ll.
double sample_ll_two_uniform(const LlParams& params, RandomSource& rng);

} // namespace tsou
