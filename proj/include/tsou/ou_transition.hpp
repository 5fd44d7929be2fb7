#pragma once
// Exact one-step transitions of an OU process whose limiting law is p-tempered alpha-stable.

#include "tsou/base_dists.hpp"
#include "tsou/measure.hpp"
#include "tsou/random.hpp"
#include "tsou/ts_law.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tsou {

//! 1 + floor(alpha / p): the number of Taylor terms split off the tempering factor.
int gamma_index(double alpha, double p);

struct TsouParams {
    double p = 1.0;
    double alpha = 1.0;
    double lambda = 1.0;          // mean-reversion rate
    std::vector<double> b;        // shift of the limiting law; empty means zero
    RosinskiMeasure measure;
    std::optional<SpectralModel> spectral; // kept when the model was given spectrally

    std::size_t dim() const { return measure.dim(); }
    std::vector<double> shift() const { return b.empty() ? std::vector<double>(dim(), 0.0) : b; }
    //! Throws DomainError on invalid parameters or an invalid measure.
    void validate() const;
};

enum class ProductStrategy { Direct, Alg2, Alg3 };
std::string to_string(ProductStrategy s);
//! "direct", "alg2" or "alg3"; throws DomainError otherwise.
ProductStrategy parse_product_strategy(const std::string& name);

//! Constants of one transition step of length t.
struct TransitionSpec {
    double t;
    int gamma;
    double decay;                     // e^{-lambda t}
    double r0_scale;                  // 1 - e^{-alpha lambda t}
    std::vector<double> rn_scales;    // (1 - e^{-p lambda t})^n / n!, n = 1..gamma-1
    double poisson_mean;              // expected number of jumps
    std::vector<std::vector<double>> shifts; // b_0 .. b_{gamma-1}
    std::vector<double> affine_shift; // (1 - decay) b - sum of shifts
    IgaParams iga;                    // IGa(alpha, gamma, p, e^{p lambda t})
    ProductStrategy strategy;
};

//! Default when no strategy is given: direct if R^1 can be sampled, otherwise
//! alg3 above the ratio threshold for every spectral atom, else alg2.
TransitionSpec build_transition_spec(const TsouParams& params, double t,
                                     std::optional<ProductStrategy> strategy = std::nullopt);

//! Spectral atom data for drawing V W as xi * X_xi with X_xi ~ F_xi.
struct SpectralProductAtom {
    std::vector<double> xi;
    std::vector<double> s, w; // discrete radial law Q_xi
    double kappa;             // normalizer of f_xi
    double c_gamma;           // (e^{p lambda t} - 1)^gamma / gamma! * sum w s^gamma
    double v2_prime;
    double v2;                // expected proposals per draw, log-Laplace envelope
    double zeta;              // smallest support point of Q_xi
    double v3;                // expected proposals per draw, generalized gamma envelope
};

//! (alpha / (gamma p) Gamma(gamma - alpha/p + 1))^{1 / (gamma - alpha/p)}: above this
//! smallest support point the generalized gamma envelope is the tighter one.
double alg3_threshold(double alpha, int gamma, double p);

class SpectralProductSampler {
public:
    SpectralProductSampler(const SpectralModel& model, double alpha, double p, double lambda, double t);

    int gamma() const { return gamma_; }
    double alpha() const { return alpha_; }
    double p() const { return p_; }
    double eta_minus_one() const { return eta_minus_one_; }
    const std::vector<SpectralProductAtom>& atoms() const { return atoms_; }
    //! Direction probabilities; sums to 1.
    const std::vector<double>& sigma1_weights() const { return sigma1_; }

    //! (e^{p lambda t} - 1)^n / n! * sum_k w_k e^{-u^p s_k} s_k^n
    double ell_n(std::size_t atom, int n, double u) const;
    //! Density of F_xi.
    double f_xi(std::size_t atom, double u) const;
    //! Acceptance probabilities of the two envelopes; both lie in [0, 1].
    double phi2(std::size_t atom, double u) const;
    double phi3(std::size_t atom, double y) const;

    CountedDraw sample_radial_alg2(std::size_t atom, RandomSource& rng) const;
    CountedDraw sample_radial_alg3(std::size_t atom, RandomSource& rng) const;
    std::size_t sample_direction(RandomSource& rng) const;
    //! xi * X_xi with xi ~ sigma_1; strategy must be Alg2 or Alg3.
    void sample(ProductStrategy strategy, RandomSource& rng, std::span<double> out) const;

private:
    double alpha_, p_;
    int gamma_;
    double eta_minus_one_;
    double gamma_factorial_;
    std::vector<SpectralProductAtom> atoms_;
    std::vector<double> sigma1_;
    std::vector<double> sigma1_cumulative_;
};

//! Draws X_n ~ TS^p_{alpha - n p}(R_n, 0) into out; used for d > 1.
using ComponentSampler = std::function<void(int n, RandomSource& rng, std::span<double> out)>;

//! Immutable after construction; sample() is reentrant given distinct random sources.
class TransitionSampler {
public:
    TransitionSampler(TsouParams params, double t, std::optional<ProductStrategy> strategy = std::nullopt,
                      InversionOptions inversion = {}, ComponentSampler components = {});

    const TsouParams& params() const { return params_; }
    const TransitionSpec& spec() const { return spec_; }
    //! Law of X_n for d = 1, or nullptr when the component vanishes.
    const TsLaw1d* component_law(int n) const;
    const SpectralProductSampler* product_sampler() const { return product_.get(); }

    void sample(std::span<const double> y, RandomSource& rng, std::span<double> out) const;
    double sample(double y, RandomSource& rng) const;

private:
    void sample_product(RandomSource& rng, std::span<double> out) const;

    TsouParams params_;
    TransitionSpec spec_;
    std::vector<std::shared_ptr<const TsLaw1d>> laws_;
    std::shared_ptr<const SpectralProductSampler> product_;
    ComponentSampler components_;
};

//! The limiting law TS^p_alpha(R, b), d = 1.
TsLaw1d stationary_law(const TsouParams& params, InversionOptions inversion = {});

//! Y_0 = y0, then steps transitions; returns (steps + 1) * d values, row-major.
std::vector<double> simulate_path(const TransitionSampler& sampler, std::span<const double> y0, std::size_t steps,
                                  RandomSource& rng);
//! As above with Y_0 drawn from the limiting law.
std::vector<double> simulate_path(const TransitionSampler& sampler, const TsLaw1d& stationary, std::size_t steps,
                                  RandomSource& rng);

} // namespace tsou
