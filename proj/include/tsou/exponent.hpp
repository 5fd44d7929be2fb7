#pragma once

#include "tsou/measure.hpp"
#include "tsou/radial_kernel.hpp"

#include <complex>
#include <span>
#include <vector>

namespace tsou {

//! Characteristic exponent of TS^p_alpha(R, b):
//!   C(z) = i<b, z> + integral Psi(<z, x>) R(dx),
//! with Psi the tempered radial kernel (compensated when alpha >= 1).
class CharacteristicExponent {
public:
    CharacteristicExponent(RosinskiMeasure measure, double alpha, double p, std::vector<double> shift = {},
                           StableRadialKernel::Method method = StableRadialKernel::Method::Auto);

    std::complex<double> operator()(std::span<const double> z) const;
    std::complex<double> operator()(double z) const;

    const RosinskiMeasure& measure() const { return measure_; }
    double alpha() const { return alpha_; }
    double p() const { return p_; }
    const std::vector<double>& shift() const { return shift_; }
    const StableRadialKernel& kernel() const { return kernel_; }

    //! Mean of the law in dimension 1; +inf when integral |x| R(dx) diverges for alpha < 1.
    double mean() const;

private:
    RosinskiMeasure measure_;
    double alpha_;
    double p_;
    std::vector<double> shift_;
    StableRadialKernel kernel_;
    double log_step_;
};

} // namespace tsou
