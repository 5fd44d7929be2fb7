#include "tsou/ou_transition.hpp"

#include "tsou/errors.hpp"
#include "tsou/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsou {
namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

bool is_boundary_index(double alpha, double p, int n) { return alpha == n * p; }

SpectralModel spectral_of(const TsouParams& params) {
    if (params.spectral) return *params.spectral;
    return rosinski_to_spectral(params.measure, params.alpha, params.p);
}

} // namespace

int gamma_index(double alpha, double p) { return 1 + static_cast<int>(std::floor(alpha / p)); }

void TsouParams::validate() const {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("TSOU: p must be positive");
    if (!(alpha >= 0.0 && alpha < 2.0)) throw DomainError("TSOU: alpha must lie in [0, 2)");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("TSOU: lambda must be positive");
    if (!b.empty() && b.size() != dim()) throw DomainError("TSOU: shift dimension does not match the measure");
    const double mass = measure.total_mass();
    if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("TSOU: Rosinski measure must have finite positive mass");
    const auto report = validate_rosinski(measure, alpha, p);
    if (!report.ok) throw DomainError("TSOU: invalid Rosinski measure: " + report.summary());
}

std::string to_string(ProductStrategy s) {
    switch (s) {
    case ProductStrategy::Direct: return "direct";
    case ProductStrategy::Alg2: return "alg2";
    case ProductStrategy::Alg3: return "alg3";
    }
    return "direct";
}

ProductStrategy parse_product_strategy(const std::string& name) {
    if (name == "direct") return ProductStrategy::Direct;
    if (name == "alg2") return ProductStrategy::Alg2;
    if (name == "alg3") return ProductStrategy::Alg3;
    throw DomainError("unknown product strategy '" + name + "' (expected direct, alg2 or alg3)");
}

double alg3_threshold(double alpha, int gamma, double p) {
    const double e = gamma - alpha / p;
    return std::pow(alpha / (gamma * p) * std::tgamma(e + 1.0), 1.0 / e);
}

TransitionSpec build_transition_spec(const TsouParams& params, double t, std::optional<ProductStrategy> strategy) {
    params.validate();
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("transition: t must be positive");
    const double alpha = params.alpha, p = params.p;
    const double lt = params.lambda * t;
    const int gamma = gamma_index(alpha, p);
    const std::size_t d = params.dim();

    for (int n = 1; n < gamma; ++n) {
        if (!is_boundary_index(alpha, p, n)) continue;
        const auto report = validate_rosinski(params.measure, 0.0, p);
        if (!report.ok)
            throw DomainError("transition: component of index alpha - n p = 0 needs the log-moment condition on R: " +
                              report.summary());
    }

    TransitionSpec spec{t, gamma, std::exp(-lt), -std::expm1(-alpha * lt), {}, 0.0, {}, {},
                        IgaParams::from_log_eta(alpha, gamma, p, p * lt), ProductStrategy::Direct};
    const double q = -std::expm1(-p * lt);
    for (int n = 1; n < gamma; ++n) spec.rn_scales.push_back(std::pow(q, n) / factorial(n));
    spec.poisson_mean = std::exp(-alpha * lt) * params.measure.total_mass() * spec.iga.k_const();

    spec.shifts.assign(gamma, std::vector<double>(d, 0.0));
    if (alpha >= 1.0) {
        const auto mean = params.measure.mean_vector();
        const double k0 = std::exp(-alpha * lt) * iga_norm_constant_log(alpha - 1.0, gamma, p, p * lt);
        for (std::size_t i = 0; i < d; ++i) spec.shifts[0][i] = k0 * mean[i];
        for (int n = 1; n < gamma; ++n) {
            if (!(alpha < 1.0 + n * p)) continue;
            const double kn = spec.decay * spec.rn_scales[n - 1] * std::tgamma((1.0 - alpha + n * p) / p) / p;
            for (std::size_t i = 0; i < d; ++i) spec.shifts[n][i] = kn * mean[i];
        }
    }
    const auto b = params.shift();
    spec.affine_shift.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        double s = -std::expm1(-lt) * b[i];
        for (const auto& bn : spec.shifts) s -= bn[i];
        spec.affine_shift[i] = s;
    }

    if (strategy) {
        spec.strategy = *strategy;
    } else if (params.measure.has_r1_sampler()) {
        spec.strategy = ProductStrategy::Direct;
    } else {
        const auto model = spectral_of(params);
        const double threshold = alg3_threshold(alpha, gamma, p);
        bool above = alpha > 0.0;
        for (const auto& atom : model.atoms) above = above && *std::min_element(atom.s.begin(), atom.s.end()) > threshold;
        spec.strategy = above || alpha == 0.0 ? ProductStrategy::Alg3 : ProductStrategy::Alg2;
    }
    if (spec.strategy == ProductStrategy::Alg2 && alpha == 0.0)
        throw UnsupportedOperation("alg2 needs alpha > 0: the log-Laplace proposal degenerates at alpha = 0");
    if (spec.strategy == ProductStrategy::Direct && !params.measure.has_r1_sampler())
        throw UnsupportedOperation("direct strategy needs a sampler for R / R(R^d)");
    return spec;
}

SpectralProductSampler::SpectralProductSampler(const SpectralModel& model, double alpha, double p, double lambda,
                                               double t)
    : alpha_(alpha), p_(p), gamma_(gamma_index(alpha, p)), eta_minus_one_(std::expm1(p * lambda * t)),
      gamma_factorial_(factorial(gamma_)) {
    model.validate();
    if (!(t > 0.0) || !(lambda > 0.0)) throw DomainError("product sampler: lambda and t must be positive");
    const double k_const = iga_norm_constant_log(alpha, gamma_, p, p * lambda * t);
    const double g = gamma_;
    const double lead = std::pow(eta_minus_one_, g) / gamma_factorial_;
    const double bump = std::min(1.0, std::exp(-g) * std::pow(g, g) * lead);
    double total = 0.0;
    for (const auto& a : model.atoms) {
        SpectralProductAtom out;
        out.xi = a.xi;
        for (std::size_t k = 0; k < a.s.size(); ++k) {
            if (a.w[k] == 0.0) continue;
            out.s.push_back(a.s[k]);
            out.w.push_back(a.w[k]);
        }
        double moment = 0.0, gamma_moment = 0.0;
        for (std::size_t k = 0; k < out.s.size(); ++k) {
            moment += out.w[k] * std::pow(out.s[k], alpha / p);
            gamma_moment += out.w[k] * std::pow(out.s[k], g);
        }
        out.kappa = 1.0 / (k_const * moment);
        out.c_gamma = lead * gamma_moment;
        out.v2_prime = std::max(bump, out.c_gamma);
        out.v2 = alpha > 0.0 ? out.kappa * g * p / (alpha * (g * p - alpha)) * out.v2_prime
                             : std::numeric_limits<double>::infinity();
        out.zeta = *std::min_element(out.s.begin(), out.s.end());
        out.v3 = out.kappa * std::pow(out.zeta, alpha / p - g) * std::tgamma(g - alpha / p) / p * out.c_gamma;
        atoms_.push_back(std::move(out));
        // sigma_1 = sigma / (kappa K) = sigma * moment
        sigma1_.push_back(a.sigma_weight * moment);
        total += sigma1_.back();
    }
    double acc = 0.0;
    for (auto& w : sigma1_) {
        w /= total;
        acc += w;
        sigma1_cumulative_.push_back(acc);
    }
}

double SpectralProductSampler::ell_n(std::size_t atom, int n, double u) const {
    const auto& a = atoms_.at(atom);
    const double v = std::pow(u, p_);
    double sum = 0.0;
    for (std::size_t k = 0; k < a.s.size(); ++k) sum += a.w[k] * std::exp(-v * a.s[k]) * std::pow(a.s[k], n);
    return std::pow(eta_minus_one_, n) / factorial(n) * sum;
}

// sum_k w_k e^{-v s_k} P(gamma, v s_k (eta - 1)) / v^gamma, via the scaled incomplete gamma
// so that small v loses no precision; times e^{v shift} to let callers factor out e^{-v zeta}
namespace {
double scaled_numerator(const SpectralProductAtom& a, int gamma, double em1, double gamma_factorial, double v,
                        double shift) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.s.size(); ++k) {
        const double rate = a.s[k] * em1;
        sum += a.w[k] * std::exp(-v * (a.s[k] - shift)) * std::pow(rate, gamma) *
               special::scaled_gamma_p(gamma, v * rate);
    }
    return sum / gamma_factorial;
}
} // namespace

double SpectralProductSampler::f_xi(std::size_t atom, double u) const {
    const auto& a = atoms_.at(atom);
    const double v = std::pow(u, p_);
    return a.kappa * scaled_numerator(a, gamma_, eta_minus_one_, gamma_factorial_, v, 0.0) *
           std::pow(u, gamma_ * p_ - 1.0 - alpha_);
}

double SpectralProductSampler::phi2(std::size_t atom, double u) const {
    const auto& a = atoms_.at(atom);
    const double v = std::pow(u, p_);
    double value = scaled_numerator(a, gamma_, eta_minus_one_, gamma_factorial_, v, 0.0);
    if (u > 1.0) value *= std::pow(v, gamma_);
    return std::min(value / a.v2_prime, 1.0);
}

double SpectralProductSampler::phi3(std::size_t atom, double y) const {
    const auto& a = atoms_.at(atom);
    return std::min(scaled_numerator(a, gamma_, eta_minus_one_, gamma_factorial_, y, a.zeta) / a.c_gamma, 1.0);
}

CountedDraw SpectralProductSampler::sample_radial_alg2(std::size_t atom, RandomSource& rng) const {
    if (!(alpha_ > 0.0)) throw UnsupportedOperation("alg2 needs alpha > 0");
    const LlParams proposal{alpha_, gamma_ * p_};
    for (std::uint64_t k = 1; k <= kMaxConsecutiveRejections; ++k) {
        const double y = sample_ll(proposal, rng);
        if (rng.uniform() <= phi2(atom, y)) return {y, k};
    }
    throw NumericalFailure("alg2: too many consecutive rejections");
}

CountedDraw SpectralProductSampler::sample_radial_alg3(std::size_t atom, RandomSource& rng) const {
    const auto& a = atoms_.at(atom);
    const double shape = gamma_ - alpha_ / p_;
    for (std::uint64_t k = 1; k <= kMaxConsecutiveRejections; ++k) {
        const double y = sample_gamma(shape, a.zeta, rng);
        if (rng.uniform() <= phi3(atom, y)) return {std::pow(y, 1.0 / p_), k};
    }
    throw NumericalFailure("alg3: too many consecutive rejections");
}

std::size_t SpectralProductSampler::sample_direction(RandomSource& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(sigma1_cumulative_.begin(), sigma1_cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - sigma1_cumulative_.begin()), atoms_.size() - 1);
}

void SpectralProductSampler::sample(ProductStrategy strategy, RandomSource& rng, std::span<double> out) const {
    const std::size_t k = sample_direction(rng);
    double r = 0.0;
    if (strategy == ProductStrategy::Alg2) {
        r = sample_radial_alg2(k, rng).value;
    } else if (strategy == ProductStrategy::Alg3) {
        r = sample_radial_alg3(k, rng).value;
    } else {
        throw DomainError("spectral product sampler: strategy must be alg2 or alg3");
    }
    const auto& xi = atoms_[k].xi;
    if (out.size() != xi.size()) throw DomainError("spectral product sampler: output dimension mismatch");
    for (std::size_t i = 0; i < xi.size(); ++i) out[i] = xi[i] * r;
}

TransitionSampler::TransitionSampler(TsouParams params, double t, std::optional<ProductStrategy> strategy,
                                     InversionOptions inversion, ComponentSampler components)
    : params_(std::move(params)), spec_(build_transition_spec(params_, t, strategy)),
      components_(std::move(components)) {
    const int gamma = spec_.gamma;
    laws_.assign(gamma, nullptr);
    const bool need_x0 = spec_.r0_scale > 0.0;
    if (params_.dim() == 1) {
        if (need_x0)
            laws_[0] = std::make_shared<const TsLaw1d>(params_.measure.scaled(spec_.r0_scale), params_.alpha,
                                                       params_.p, 0.0, inversion);
        for (int n = 1; n < gamma; ++n)
            laws_[n] = std::make_shared<const TsLaw1d>(params_.measure.scaled(spec_.rn_scales[n - 1]),
                                                       params_.alpha - n * params_.p, params_.p, 0.0, inversion);
    } else if ((need_x0 || gamma > 1) && !components_) {
        throw UnsupportedOperation("transition: d > 1 needs a component sampler callback");
    }
    if (spec_.strategy != ProductStrategy::Direct)
        product_ = std::make_shared<const SpectralProductSampler>(spectral_of(params_), params_.alpha, params_.p,
                                                                  params_.lambda, t);
}

const TsLaw1d* TransitionSampler::component_law(int n) const {
    if (n < 0 || n >= static_cast<int>(laws_.size())) return nullptr;
    return laws_[n].get();
}

void TransitionSampler::sample_product(RandomSource& rng, std::span<double> out) const {
    if (product_) {
        product_->sample(spec_.strategy, rng, out);
        return;
    }
    params_.measure.sample_r1(rng, out);
    const double w = sample_iga(spec_.iga, rng);
    for (auto& x : out) x *= w;
}

void TransitionSampler::sample(std::span<const double> y, RandomSource& rng, std::span<double> out) const {
    const std::size_t d = params_.dim();
    if (y.size() != d || out.size() != d) throw DomainError("transition: state dimension mismatch");
    std::vector<double> tmp(d);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = spec_.decay * y[i] + spec_.affine_shift[i];
    std::vector<double> draw(d);
    for (int n = 0; n < spec_.gamma; ++n) {
        const double factor = n == 0 ? 1.0 : spec_.decay;
        if (d == 1) {
            if (!laws_[n]) continue;
            draw[0] = laws_[n]->sample(rng);
        } else {
            if (n == 0 && !(spec_.r0_scale > 0.0)) continue;
            components_(n, rng, draw);
        }
        for (std::size_t i = 0; i < d; ++i) tmp[i] += factor * draw[i];
    }
    const std::int64_t jumps = sample_poisson(spec_.poisson_mean, rng);
    for (std::int64_t j = 0; j < jumps; ++j) {
        sample_product(rng, draw);
        for (std::size_t i = 0; i < d; ++i) tmp[i] += draw[i];
    }
    std::copy(tmp.begin(), tmp.end(), out.begin());
}

double TransitionSampler::sample(double y, RandomSource& rng) const {
    double out = 0.0;
    sample(std::span<const double>(&y, 1), rng, std::span<double>(&out, 1));
    return out;
}

TsLaw1d stationary_law(const TsouParams& params, InversionOptions inversion) {
    if (params.dim() != 1) throw UnsupportedOperation("stationary law: d = 1 only");
    return TsLaw1d(params.measure, params.alpha, params.p, params.shift()[0], inversion);
}

std::vector<double> simulate_path(const TransitionSampler& sampler, std::span<const double> y0, std::size_t steps,
                                  RandomSource& rng) {
    const std::size_t d = sampler.params().dim();
    if (y0.size() != d) throw DomainError("simulate_path: initial state dimension mismatch");
    std::vector<double> path((steps + 1) * d);
    std::copy(y0.begin(), y0.end(), path.begin());
    for (std::size_t k = 0; k < steps; ++k) {
        sampler.sample(std::span<const double>(path.data() + k * d, d), rng,
                       std::span<double>(path.data() + (k + 1) * d, d));
    }
    return path;
}

std::vector<double> simulate_path(const TransitionSampler& sampler, const TsLaw1d& stationary, std::size_t steps,
                                  RandomSource& rng) {
    const double y0 = stationary.sample(rng);
    return simulate_path(sampler, std::span<const double>(&y0, 1), steps, rng);
}

} // namespace tsou
