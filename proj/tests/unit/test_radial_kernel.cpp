#include <doctest.h>

#include "support/oracles.hpp"
#include "tsou/fourier.hpp"
#include "tsou/radial_kernel.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace tsou;
using cplx = std::complex<double>;
using Method = StableRadialKernel::Method;

TEST_CASE("filon weights reduce to Boole's rule and integrate quartics exactly") {
    const auto w0 = fourier::filon_weights(0.0);
    for (int j = 0; j < 5; ++j) CHECK(std::abs(w0[j] - fourier::kBooleWeights[j]) < 1e-15);
    for (double theta : {0.3, 1.99, 2.01, 7.0, 150.0}) {
        const auto w = fourier::filon_weights(theta);
        // s^4 e^{i theta s}
        cplx filon = 0.0;
        for (int j = 0; j < 5; ++j) {
            const double s = -1.0 + 0.5 * j;
            filon += w[j] * std::pow(s, 4);
        }
        const double re = oracle::integrate([&](double s) { return std::pow(s, 4) * std::cos(theta * s); }, -1, 1, 1e-14);
        CHECK(std::fabs(filon.real() - re) < 1e-13);
        CHECK(std::fabs(filon.imag()) < 1e-13);
    }
}

// Reference by Boost quadrature on the real and imaginary parts, substituting u = v^{1/p}
// and splitting at u = 1 to handle the singular-but-compensated origin.
static double cos_minus_one_over_sq(double x) {
    return std::fabs(x) < 1e-3 ? -0.5 + x * x / 24 - x * x * x * x / 720 : (std::cos(x) - 1.0) / (x * x);
}
static double sin_minus_x_over_cube(double x) {
    return std::fabs(x) < 1e-3 ? -1.0 / 6 + x * x / 120 - x * x * x * x / 5040 : (std::sin(x) - x) / (x * x * x);
}

// Reference by Boost quadrature on real and imaginary parts. The compensated
// integrands are written as bounded factors times powers of u so tanh-sinh can
// approach the integrable singularity at the origin.
static cplx brute_force_kernel(double alpha, double p, double w) {
    auto re_part = [&](double u) {
        return w * w * cos_minus_one_over_sq(w * u) * std::pow(u, 1.0 - alpha) * std::exp(-std::pow(u, p));
    };
    auto im_part = [&](double u) {
        const double x = w * u;
        const double tempering = std::exp(-std::pow(u, p));
        if (alpha >= 1.0) return w * w * w * sin_minus_x_over_cube(x) * std::pow(u, 2.0 - alpha) * tempering;
        const double sinc = std::fabs(x) < 1e-8 ? 1.0 : std::sin(x) / x;
        return w * sinc * std::pow(u, -alpha) * tempering;
    };
    const double hi = std::pow(45.0, 1.0 / p);
    double re = 0, im = 0;
    double lo = 0.0;
    for (double edge : {1e-3, 0.1, 1.0}) {
        re += oracle::integrate_singular(re_part, lo, edge, 1e-13);
        im += oracle::integrate_singular(im_part, lo, edge, 1e-13);
        lo = edge;
    }
    // short smooth pieces across the oscillatory range
    for (; lo < hi; lo += 0.5) {
        re += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(re_part, lo, lo + 0.5, 0, 0);
        im += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(im_part, lo, lo + 0.5, 0, 0);
    }
    return {re, im};
}

TEST_CASE("closed form at p = 1 agrees with the quadrature route") {
    for (double alpha : {0.0, 0.3, 0.5, 0.999, 1.0, 1.2, 1.5, 1.9}) {
        const StableRadialKernel quad(alpha, 1.0, Method::Quadrature);
        for (double w : {1e-9, 1e-4, 0.05, 0.1, 0.7, 3.0, 25.0, 1e3, 1e6, 1e10, -2.5}) {
            const cplx cf = radial_kernel_closed_form(alpha, w);
            const cplx q = quad(w);
            CHECK(std::abs(cf - q) <= 1e-9 * std::abs(cf) + 1e-300);
        }
    }
}

TEST_CASE("quadrature route matches brute force for general p") {
    for (double alpha : {0.0, 0.4, 1.0, 1.6}) {
        for (double p : {0.5, 2.0, 3.0}) {
            const StableRadialKernel quad(alpha, p, Method::Quadrature);
            for (double w : {0.01, 0.8, 4.0, -6.0}) {
                const cplx ref = brute_force_kernel(alpha, p, w);
                INFO("alpha=" << alpha << " p=" << p << " w=" << w << " quad=" << quad(w) << " ref=" << ref);
                CHECK(std::abs(quad(w) - ref) <= 1e-9 * std::abs(ref));
            }
        }
    }
}

TEST_CASE("table interpolation matches the quadrature route") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> lw(std::log(1e-8), std::log(1e14));
    for (double alpha : {0.2, 1.0, 1.7}) {
        const StableRadialKernel quad(alpha, 1.7, Method::Quadrature);
        const StableRadialKernel table(alpha, 1.7, Method::Table);
        for (int i = 0; i < 200; ++i) {
            const double w = std::exp(lw(gen)) * (i % 2 ? 1 : -1);
            CHECK(std::abs(table(w) - quad(w)) <= 1e-10 * std::abs(quad(w)));
        }
    }
}

TEST_CASE("kernel symmetry and zero") {
    const StableRadialKernel k(1.3, 2.0);
    CHECK(k(0.0) == cplx(0.0));
    const cplx a = k(2.7), b = k(-2.7);
    CHECK(std::abs(a - std::conj(b)) < 1e-15);
    CHECK(a.real() < 0.0);
}
