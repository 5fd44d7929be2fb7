#include "tsou/exponent.hpp"

#include "tsou/errors.hpp"

#include <cmath>
#include <limits>

namespace tsou {

CharacteristicExponent::CharacteristicExponent(RosinskiMeasure measure, double alpha, double p,
                                               std::vector<double> shift, StableRadialKernel::Method method)
    : measure_(std::move(measure)), alpha_(alpha), p_(p), shift_(std::move(shift)), kernel_(alpha, p, method),
      log_step_(kernel_.method() == StableRadialKernel::Method::ClosedForm ? 0.2 : 0.1) {
    if (shift_.empty()) shift_.assign(measure_.dim(), 0.0);
    if (shift_.size() != measure_.dim()) throw DomainError("characteristic exponent: shift dimension mismatch");
}

std::complex<double> CharacteristicExponent::operator()(std::span<const double> z) const {
    if (z.size() != measure_.dim()) throw DomainError("characteristic exponent: argument dimension mismatch");
    if (measure_.dim() == 1) return (*this)(z[0]);
    double drift = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) drift += shift_[k] * z[k];
    std::complex<double> acc(0.0, drift);
    for (const auto& atom : measure_.atoms()) {
        double dot = 0.0;
        for (std::size_t k = 0; k < z.size(); ++k) dot += z[k] * atom.location[k];
        acc += atom.weight * kernel_(dot);
    }
    return acc;
}

std::complex<double> CharacteristicExponent::operator()(double z) const {
    if (measure_.dim() != 1) throw DomainError("characteristic exponent: scalar argument needs d = 1");
    const auto& k = kernel_;
    return std::complex<double>(0.0, shift_[0] * z) +
           integrate_kernel(measure_, z, [&k](double w) { return k(w); }, log_step_);
}

double CharacteristicExponent::mean() const {
    if (measure_.dim() != 1) throw DomainError("mean: d = 1 only");
    if (alpha_ >= 1.0) return shift_[0];
    double first = 0.0;
    try {
        first = measure_.mean_vector()[0];
    } catch (const NumericalFailure&) {
        return std::numeric_limits<double>::infinity();
    }
    return shift_[0] + std::tgamma((1.0 - alpha_) / p_) / p_ * first;
}

} // namespace tsou
