#include "tsou/ts_law.hpp"

#include "tsou/errors.hpp"
#include "tsou/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tsou {
namespace {

using cplx = std::complex<double>;

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

} // namespace

TsLaw1d::TsLaw1d(CharacteristicExponent exponent, InversionOptions options)
    : exponent_(std::move(exponent)), options_(options) {
    if (exponent_.measure().dim() != 1) throw UnsupportedOperation("TS law inversion is implemented for d = 1");
    const double mass = exponent_.measure().total_mass();
    if (!(mass > 0.0)) throw DomainError("degenerate TS law: Rosinski measure has zero mass");
    if (!std::isfinite(mass)) throw DomainError("TS law: Rosinski measure has infinite mass");
    const double mean = exponent_.mean();
    center_ = std::isfinite(mean) ? mean : exponent_.shift()[0];
    build_panels();
    quantile_center_ = center_;
    quantile_scale_ = 1.0 / char_scale_;
    if (options_.build_quantile_table) build_table();
}

TsLaw1d::TsLaw1d(RosinskiMeasure measure, double alpha, double p, double shift, InversionOptions options)
    : TsLaw1d(CharacteristicExponent(std::move(measure), alpha, p, {shift}), options) {}

std::complex<double> TsLaw1d::characteristic_function(double z) const { return std::exp(exponent_(z)); }

void TsLaw1d::build_panels() {
    auto decay = [&](double z) { return -exponent_(z).real(); };

    // characteristic scale: -Re C(z) = 1
    double lo = 1.0, hi = 1.0;
    if (decay(1.0) < 1.0) {
        while (decay(hi) < 1.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e300) throw NumericalFailure("TS law: characteristic function does not decay");
        }
    } else {
        while (decay(lo) >= 1.0) {
            hi = lo;
            lo *= 0.5;
            if (lo < 1e-300) throw NumericalFailure("TS law: characteristic scale underflow");
        }
    }
    for (int i = 0; i < 50; ++i) {
        const double mid = std::sqrt(lo * hi);
        (decay(mid) < 1.0 ? lo : hi) = mid;
    }
    char_scale_ = std::sqrt(lo * hi);
    reference_sd_ = std::numbers::sqrt2 / char_scale_;

    const double sd2 = reference_sd_ * reference_sd_;
    const double mean = exponent_.mean();
    const bool smooth_origin = std::isfinite(mean);
    auto centered_exponent = [&](double z) { return exponent_(z) - cplx(0.0, center_ * z); };
    auto reference_exponent = [&](double z) { return -0.5 * sd2 * z * z; };
    auto difference = [&](double z, cplx c) {
        if (z == 0.0) {
            if (smooth_origin) return cplx(0.0, mean - center_);
            const double dz = 1e-10 * char_scale_;
            return (std::exp(centered_exponent(dz)) - std::exp(reference_exponent(dz))) / dz;
        }
        return (std::exp(c) - std::exp(reference_exponent(z))) / z;
    };

    double a = 0.0;
    cplx c_a = 0.0;
    // Panels grow geometrically from a tiny first one: C(z) is typically not
    // smooth at 0 (|z|^k log|z| terms from polynomial Rosinski tails).
    const double smallest = 1e-6 * char_scale_;
    double h = smallest;
    // beyond this the reference normal's characteristic function is below 1e-18
    const double reference_cutoff = 6.5 * char_scale_;
    panels_.clear();
    while (true) {
        std::array<double, 5> z{};
        std::array<cplx, 5> c{};
        // Interpolation error scales like |integrand| * step^5, so the allowed
        // exponent change grows as the integrand decays.
        const double level = std::max(std::abs(std::exp(c_a)), std::exp(reference_exponent(a)));
        const double allowed = options_.max_exponent_step * std::clamp(std::pow(level, -0.2), 1.0, 10.0);
        double step_size = 0.0;
        for (int attempt = 0;; ++attempt) {
            z[0] = a;
            c[0] = c_a;
            step_size = 0.0;
            for (int j = 1; j < 5; ++j) {
                z[j] = a + 0.25 * j * h;
                c[j] = centered_exponent(z[j]);
                step_size += std::abs(c[j] - c[j - 1]);
                if (z[j] < reference_cutoff) step_size += std::fabs(reference_exponent(z[j]) - reference_exponent(z[j - 1]));
            }
            if (step_size <= allowed || attempt > 60) break;
            h *= 0.5;
        }
        Panel panel{a, a + h, {}, {}};
        double largest = 0.0;
        for (int j = 0; j < 5; ++j) {
            panel.phi[j] = std::exp(c[j]);
            panel.diff[j] = difference(z[j], c[j]);
            largest = std::max(largest, std::abs(panel.phi[j]));
        }
        panels_.push_back(panel);
        a += h;
        c_a = c[4];
        if (largest < options_.phi_floor && a > reference_cutoff) break;
        if (panels_.size() >= options_.max_panels) {
            if (largest > 1e-8)
                throw NumericalFailure("TS law: characteristic function decays too slowly for inversion");
            break;
        }
        if (step_size < 0.5 * allowed) h *= 1.5;
        h = std::min(h, options_.max_panel_ratio * std::max(a, smallest));
    }
}

std::pair<double, double> TsLaw1d::pdf_cdf(double x) const {
    const double omega = -(x - center_);
    cplx density = 0.0, correction = 0.0;
    for (const auto& p : panels_) {
        const double half = 0.5 * (p.b - p.a);
        const auto w = fourier::filon_weights(omega * half);
        cplx s1 = 0.0, s2 = 0.0;
        for (int j = 0; j < 5; ++j) {
            s1 += w[j] * p.phi[j];
            s2 += w[j] * p.diff[j];
        }
        const cplx phase = half * std::polar(1.0, omega * 0.5 * (p.a + p.b));
        density += phase * s1;
        correction += phase * s2;
    }
    const double pdf = density.real() / std::numbers::pi;
    const double cdf = normal_cdf((x - center_) / reference_sd_) - correction.imag() / std::numbers::pi;
    return {std::max(pdf, 0.0), std::clamp(cdf, 0.0, 1.0)};
}

double TsLaw1d::pdf(double x) const { return pdf_cdf(x).first; }
double TsLaw1d::cdf(double x) const { return pdf_cdf(x).second; }

void TsLaw1d::evaluate(std::span<const double> xs, std::span<double> pdf, std::span<double> cdf) const {
    if (pdf.size() != xs.size() || cdf.size() != xs.size()) throw DomainError("evaluate: size mismatch");
    for (std::size_t i = 0; i < xs.size(); ++i) std::tie(pdf[i], cdf[i]) = pdf_cdf(xs[i]);
}

double TsLaw1d::quantile_exact(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: probability must lie in (0, 1)");
    double step = quantile_scale_;
    double lo = quantile_center_, hi = quantile_center_;
    double f_lo = cdf(lo), f_hi = f_lo;
    while (f_lo > u) {
        hi = lo;
        f_hi = f_lo;
        lo -= step;
        step *= 2.0;
        f_lo = cdf(lo);
        if (!std::isfinite(lo)) throw NumericalFailure("quantile: bracketing failed");
    }
    step = quantile_scale_;
    while (f_hi < u) {
        lo = std::max(lo, hi);
        f_lo = std::max(f_lo, f_hi);
        hi += step;
        step *= 2.0;
        f_hi = cdf(hi);
        if (!std::isfinite(hi)) throw NumericalFailure("quantile: bracketing failed");
    }
    double x = lo + (hi - lo) * (u - f_lo) / std::max(f_hi - f_lo, 1e-300);
    for (int iter = 0; iter < 200; ++iter) {
        const auto [f, F] = pdf_cdf(x);
        const double gap = F - u;
        if (std::fabs(gap) < 1e-12) return x;
        (gap < 0.0 ? lo : hi) = x;
        if (hi - lo <= 1e-14 * (1.0 + std::fabs(x))) return x;
        double next = f > 0.0 ? x - gap / f : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    return x;
}

void TsLaw1d::build_table() {
    quantile_center_ = quantile_exact(0.5);
    const double q1 = quantile_exact(0.25), q3 = quantile_exact(0.75);
    quantile_scale_ = std::max(0.5 * (q3 - q1), 1e-12 * (1.0 + std::fabs(quantile_center_)));
    auto x_of = [&](double v) { return quantile_center_ + quantile_scale_ * std::sinh(v); };

    double v_lo = -1.0, v_hi = 1.0;
    while (cdf(x_of(v_lo)) > options_.table_tail && v_lo > -40.0) v_lo -= 1.0;
    while (1.0 - cdf(x_of(v_hi)) > options_.table_tail && v_hi < 40.0) v_hi += 1.0;

    const std::size_t n = options_.table_points;
    const double h = (v_hi - v_lo) / double(n - 1);
    table_v_.resize(n);
    table_f_.resize(n);
    table_slope_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = v_lo + h * double(i);
        const auto [f, F] = pdf_cdf(x_of(v));
        table_v_[i] = v;
        table_f_[i] = i > 0 ? std::max(F, table_f_[i - 1]) : F;
        table_slope_[i] = f * quantile_scale_ * std::cosh(v);
    }
    // Fritsch-Carlson limiter keeps each cubic piece monotone
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double delta = (table_f_[i + 1] - table_f_[i]) / h;
        if (delta <= 0.0) {
            table_slope_[i] = table_slope_[i + 1] = 0.0;
            continue;
        }
        const double a = table_slope_[i] / delta, b = table_slope_[i + 1] / delta;
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double tau = 3.0 / std::sqrt(r);
            table_slope_[i] = tau * a * delta;
            table_slope_[i + 1] = tau * b * delta;
        }
    }
}

double TsLaw1d::table_quantile(double u) const {
    auto it = std::upper_bound(table_f_.begin(), table_f_.end(), u);
    std::size_t k = static_cast<std::size_t>(it - table_f_.begin());
    k = std::clamp<std::size_t>(k, 1, table_f_.size() - 1) - 1;
    const double h = table_v_[1] - table_v_[0];
    const double f0 = table_f_[k], f1 = table_f_[k + 1];
    const double m0 = table_slope_[k] * h, m1 = table_slope_[k + 1] * h;
    auto value = [&](double t) {
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * m1;
    };
    auto slope = [&](double t) {
        const double t2 = t * t;
        return (6 * t2 - 6 * t) * f0 + (3 * t2 - 4 * t + 1) * m0 + (-6 * t2 + 6 * t) * f1 + (3 * t2 - 2 * t) * m1;
    };
    double lo = 0.0, hi = 1.0;
    double t = f1 > f0 ? (u - f0) / (f1 - f0) : 0.5;
    for (int iter = 0; iter < 40; ++iter) {
        const double gap = value(t) - u;
        if (std::fabs(gap) < 1e-15) break;
        (gap < 0.0 ? lo : hi) = t;
        const double d = slope(t);
        double next = d > 0.0 ? t - gap / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - t) < 1e-16) break;
        t = next;
    }
    return quantile_center_ + quantile_scale_ * std::sinh(table_v_[k] + t * h);
}

double TsLaw1d::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: probability must lie in (0, 1)");
    if (!table_f_.empty() && u >= table_f_.front() && u <= table_f_.back()) return table_quantile(u);
    return quantile_exact(u);
}

} // namespace tsou
