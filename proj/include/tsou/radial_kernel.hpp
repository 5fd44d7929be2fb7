#pragma once

#include <complex>
#include <memory>

namespace tsou {

//! Tempered radial integral
//!   Psi(w) = integral_0^inf (e^{iwu} - 1 - iwu [alpha >= 1]) u^{-1-alpha} e^{-u^p} du,
//! the building block of every characteristic exponent in the library:
//!   C(z) = integral Psi(<z, x>) R(dx).
//! Psi(-w) = conj(Psi(w)) and Psi(0) = 0.
class StableRadialKernel {
public:
    enum class Method {
        Auto,       // closed form when p == 1 (away from alpha near 0 or 1), table otherwise
        ClosedForm, // p == 1 only
        Quadrature, // series near zero plus geometric Filon panels; slow but the reference route
        Table,      // quadrature values tabulated on a log grid, 6-point interpolation
    };

    StableRadialKernel(double alpha, double p, Method method = Method::Auto);

    std::complex<double> operator()(double w) const;

    double alpha() const { return alpha_; }
    double p() const { return p_; }
    Method method() const { return method_; }

    struct Quadrature;
    struct Table;

private:
    double alpha_;
    double p_;
    Method method_;
    std::shared_ptr<const Quadrature> quadrature_;
    std::shared_ptr<const Table> table_;
};

//! Closed forms for p = 1, exposed for tests.
std::complex<double> radial_kernel_closed_form(double alpha, double w);

} // namespace tsou
