#pragma once

#include "tsou/exponent.hpp"
#include "tsou/random.hpp"

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace tsou {

struct InversionOptions {
    double phi_floor = 1e-14;      // truncate the z-integral once |phi| stays below this
    double max_exponent_step = 0.1; // bound on |C(z_{j+1}) - C(z_j)| between Filon nodes * 4
    double max_panel_ratio = 0.25;  // panel width <= ratio * z beyond the characteristic scale
    std::size_t max_panels = 20000;
    std::size_t table_points = 2048;
    double table_tail = 1e-9;       // probability mass left outside the quantile table per side
    bool build_quantile_table = true;
};

//! A one-dimensional TS law, evaluated by Fourier inversion of exp(C(z)):
//! pdf by the inversion integral, cdf by the Gil-Pelaez integral (relative to a
//! normal reference so the integrand stays bounded at z = 0), and sampling by
//! inverse transform through a cached monotone cubic quantile table.
//! All caches are built in the constructor; the object is immutable afterwards.
class TsLaw1d {
public:
    explicit TsLaw1d(CharacteristicExponent exponent, InversionOptions options = {});
    TsLaw1d(RosinskiMeasure measure, double alpha, double p, double shift = 0.0, InversionOptions options = {});

    double pdf(double x) const;
    double cdf(double x) const;
    //! Both at once; pdf is clamped at 0.
    void evaluate(std::span<const double> xs, std::span<double> pdf, std::span<double> cdf) const;

    //! Quantile from the cached table, with exact root-finding outside it.
    double quantile(double u) const;
    //! Bracketing + bisection + Newton on the inversion cdf, to 1e-12 in probability.
    double quantile_exact(double u) const;
    double sample(RandomSource& rng) const { return quantile(rng.uniform()); }

    std::complex<double> characteristic_function(double z) const;
    const CharacteristicExponent& exponent() const { return exponent_; }
    std::size_t panel_count() const { return panels_.size(); }
    double center() const { return center_; }
    double scale() const { return quantile_scale_; }

private:
    struct Panel {
        double a, b;
        std::array<std::complex<double>, 5> phi;  // characteristic function times e^{-i center z}
        std::array<std::complex<double>, 5> diff; // (phi - reference) / z
    };

    void build_panels();
    void build_table();
    std::pair<double, double> pdf_cdf(double x) const;
    double table_quantile(double u) const;

    CharacteristicExponent exponent_;
    InversionOptions options_;
    double center_ = 0.0;
    double reference_sd_ = 1.0;
    double char_scale_ = 1.0; // z where |phi| first reaches e^{-1}
    std::vector<Panel> panels_;

    double quantile_center_ = 0.0;
    double quantile_scale_ = 1.0;
    std::vector<double> table_v_;
    std::vector<double> table_f_;
    std::vector<double> table_slope_;
};

} // namespace tsou
