#pragma once
// Characteristic exponent of the one-step transition law, assembled term by term
// from the measure rather than from the sampler, so it can check the sampler.

#include "tsou/exponent.hpp"
#include "tsou/fourier.hpp"
#include "tsou/ou_transition.hpp"

#include <complex>
#include <memory>
#include <optional>
#include <vector>

namespace tsou {

class TransitionCfOracle {
public:
    //! d = 1 only.
    TransitionCfOracle(TsouParams params, double t);

    struct Terms {
        std::complex<double> jumps;       // compound Poisson part, Poisson mean times (E e^{i z V W} - 1)
        std::complex<double> residual;    // X_0 with Rosinski measure r0_scale R
        std::complex<double> corrections; // X_n at frequency e^{-lambda t} z, n = 1..gamma-1
        std::complex<double> affine;      // i z (e^{-lambda t} y + affine shift)
        std::complex<double> total() const { return jumps + residual + corrections + affine; }
    };

    Terms terms(double y, double z) const;
    //! log E[exp(i z Y_t) | Y_0 = y].
    std::complex<double> exponent(double y, double z) const { return terms(y, z).total(); }

    //! E exp(i w W) - 1 for W ~ IGa(alpha, gamma, p, e^{p lambda t}).
    std::complex<double> iga_cf_minus_one(double w) const;

    const TransitionSpec& spec() const { return spec_; }

private:
    TsouParams params_;
    TransitionSpec spec_;
    std::shared_ptr<const fourier::GeometricPanels> iga_panels_;
    std::optional<CharacteristicExponent> residual_;
    std::vector<CharacteristicExponent> corrections_;
};

} // namespace tsou
