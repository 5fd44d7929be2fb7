#include "tsou/power_model.hpp"

#include "tsou/base_dists.hpp"
#include "tsou/errors.hpp"

#include <cmath>

namespace tsou {

void PtParams::validate() const {
    if (!(alpha >= 0.0 && alpha < 2.0)) throw DomainError("PT: alpha must lie in [0, 2)");
    if (!(ell > 0.0) || !std::isfinite(ell)) throw DomainError("PT: ell must be positive");
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("PT: c must be positive");
}

double pt_rosinski_density(const PtParams& params, double x) {
    const double s = params.alpha + params.ell;
    return 0.5 * params.c * s * (s + 1.0) * std::pow(1.0 + std::fabs(x), -2.0 - s);
}

double pt_r1_transform(const PtParams& params, double u1) {
    if (u1 == 0.0) return INFINITY; // the map has a pole at 0
    const double mag = std::expm1(-std::log(std::fabs(u1)) / params.tail_index());
    return std::copysign(mag, u1);
}

double pt_r1_cdf(const PtParams& params, double x) {
    const double tail = 0.5 * std::pow(1.0 + std::fabs(x), -params.tail_index());
    return x < 0.0 ? tail : 1.0 - tail;
}

double pt_sample_r1(const PtParams& params, RandomSource& rng) {
    // uniform() never returns 0 or 1, so u1 stays inside (-1, 1) and off 0
    return pt_r1_transform(params, 2.0 * rng.uniform() - 1.0);
}

RosinskiMeasure pt_measure(const PtParams& params) {
    params.validate();
    RosinskiDensity d;
    d.density = [params](double x) { return pt_rosinski_density(params, x); };
    d.total_mass = params.total_mass();
    d.symmetric = true;
    d.sample_normalized = [params](RandomSource& rng) { return pt_sample_r1(params, rng); };
    d.name = "PT";
    return RosinskiMeasure::from_density(std::move(d));
}

double pt_poisson_mean_generic(const PtParams& params, double lambda, double t) {
    params.validate();
    const int gamma = 1 + static_cast<int>(std::floor(params.alpha));
    const double lt = lambda * t;
    return std::exp(-params.alpha * lt) * params.total_mass() * iga_norm_constant_log(params.alpha, gamma, 1.0, lt);
}

double pt_poisson_mean(const PtParams& params, double lambda, double t) {
    params.validate();
    if (!(lambda > 0.0) || !(t > 0.0)) throw DomainError("PT Poisson mean: lambda and t must be positive");
    const double a = params.alpha, lt = lambda * t;
    if (a < 1.0) return pt_poisson_mean_generic(params, lambda, t);
    if (a == 1.0) {
        // e^{-x}(e^x - 1 - x), written to keep precision for small x
        const double bracket = std::expm1(lt) - lt;
        return (1.0 + params.ell) * params.c * std::exp(-lt) * bracket;
    }
    // e^{-a x} - 1 + a(1 - e^{-x}) without cancellation for small x
    const double bracket = std::expm1(-a * lt) - a * std::expm1(-lt);
    return (a + params.ell) * params.c * std::tgamma(2.0 - a) / (a * (a - 1.0)) * bracket;
}

PtTransitionComponents pt_transition_components(const PtParams& params, double lambda, double t) {
    params.validate();
    const double lt = lambda * t;
    PtTransitionComponents out{params, std::nullopt, pt_poisson_mean(params, lambda, t)};
    out.x0.c = -std::expm1(-params.alpha * lt) * params.c;
    if (params.alpha >= 1.0) out.x1 = PtParams{params.alpha - 1.0, params.ell + 1.0, -std::expm1(-lt) * params.c};
    return out;
}

TsouParams pt_tsou_params(const PtParams& params, double lambda) {
    TsouParams out;
    out.p = 1.0;
    out.alpha = params.alpha;
    out.lambda = lambda;
    out.b = {0.0};
    out.measure = pt_measure(params);
    return out;
}

} // namespace tsou
