#include "tsou/transition_cf.hpp"

#include "tsou/errors.hpp"

#include <cmath>

namespace tsou {

namespace {
// IGa mass below this is left out; it moves E e^{iwW} - 1 by at most |w| times it.
constexpr double kIgaLower = 1e-14;
constexpr double kIgaPanelRatio = 1.05;
} // namespace

TransitionCfOracle::TransitionCfOracle(TsouParams params, double t)
    : params_(std::move(params)), spec_(build_transition_spec(params_, t)) {
    if (params_.dim() != 1) throw UnsupportedOperation("transition characteristic function: d = 1 only");
    // density ~ e^{-u^p}; e^{-45} is far below the Filon error
    const double hi = std::pow(45.0, 1.0 / params_.p);
    const IgaParams iga = spec_.iga;
    iga_panels_ = std::make_shared<fourier::GeometricPanels>(kIgaLower, hi, kIgaPanelRatio,
                                                             [iga](double u) { return iga_pdf(iga, u); });
    // quadrature kernels: an independent route from the closed forms the sampler inverts
    const auto method = StableRadialKernel::Method::Quadrature;
    if (spec_.r0_scale > 0.0)
        residual_.emplace(params_.measure.scaled(spec_.r0_scale), params_.alpha, params_.p, std::vector<double>{0.0},
                          method);
    for (int n = 1; n < spec_.gamma; ++n) {
        const double scale = spec_.rn_scales[n - 1];
        if (scale > 0.0)
            corrections_.emplace_back(params_.measure.scaled(scale), params_.alpha - n * params_.p, params_.p,
                                      std::vector<double>{0.0}, method);
    }
}

std::complex<double> TransitionCfOracle::iga_cf_minus_one(double w) const {
    return iga_panels_->oscillatory(w, 0) - iga_panels_->plain(0);
}

TransitionCfOracle::Terms TransitionCfOracle::terms(double y, double z) const {
    Terms out;
    if (z == 0.0) return out;
    if (z < 0.0) {
        // the law is real, so C(-z) = conj(C(z)); this makes the symmetry exact
        const Terms pos = terms(y, -z);
        return {std::conj(pos.jumps), std::conj(pos.residual), std::conj(pos.corrections), std::conj(pos.affine)};
    }
    const double mass = params_.measure.total_mass();
    if (spec_.poisson_mean > 0.0) {
        const auto jump = integrate_kernel(params_.measure, z, [this](double w) { return iga_cf_minus_one(w); });
        out.jumps = spec_.poisson_mean / mass * jump;
    }
    if (residual_) out.residual = (*residual_)(z);
    for (const auto& c : corrections_) out.corrections += c(spec_.decay * z);
    out.affine = std::complex<double>(0.0, z * (spec_.decay * y + spec_.affine_shift[0]));
    return out;
}

} // namespace tsou
