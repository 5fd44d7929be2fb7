#include "tsou/radial_kernel.hpp"

#include "tsou/errors.hpp"
#include "tsou/fourier.hpp"
#include "tsou/special_fn.hpp"

#include <cmath>
#include <vector>

namespace tsou {
namespace {

using cplx = std::complex<double>;

constexpr double kPanelRatio = 1.02;
constexpr double kSmallestNode = 1e-30;
constexpr double kTableLo = 1e-6;
constexpr double kTableHi = 1e12;
constexpr double kTableStep = 0.02; // in ln w

bool near_integer_index(double alpha) {
    return (alpha > 0.0 && alpha < 1e-3) || (alpha != 1.0 && std::fabs(alpha - 1.0) < 1e-3);
}

cplx log_one_minus_iw(double w) { return {0.5 * std::log1p(w * w), -std::atan(w)}; }

cplx expm1_complex(cplx z) {
    const double er = std::expm1(z.real());
    const double half_sin = std::sin(0.5 * z.imag());
    return {er * std::cos(z.imag()) - 2.0 * half_sin * half_sin, (er + 1.0) * std::sin(z.imag())};
}

// sum_{k >= k0} (iw)^k / k! * Gamma(k - alpha); converges for |w| < 1.
cplx small_argument_series(double alpha, double w) {
    const int k0 = alpha < 1.0 ? 1 : 2;
    cplx factor = 1.0;
    for (int k = 1; k < k0; ++k) factor *= cplx(0.0, w) / double(k);
    cplx sum = 0.0;
    for (int k = k0; k < 200; ++k) {
        factor *= cplx(0.0, w) / double(k);
        const cplx term = factor * std::tgamma(k - alpha);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

} // namespace

cplx radial_kernel_closed_form(double alpha, double w) {
    if (w == 0.0) return 0.0;
    if (std::fabs(w) < 0.1) return small_argument_series(alpha, w);
    const cplx log_term = log_one_minus_iw(w);
    if (alpha == 0.0) return -log_term;
    if (alpha == 1.0) return std::exp(log_term) * log_term + cplx(0.0, w);
    const double g = std::tgamma(-alpha);
    if (alpha < 1.0) return g * expm1_complex(alpha * log_term);
    return g * (expm1_complex(alpha * log_term) + cplx(0.0, alpha * w));
}

struct StableRadialKernel::Quadrature {
    double alpha;
    double p;
    int first_power;
    fourier::GeometricPanels panels;

    Quadrature(double a, double pp)
        : alpha(a), p(pp), first_power(a < 1.0 ? 1 : 2),
          panels(kSmallestNode, std::pow(40.0, 1.0 / pp), kPanelRatio,
                 [a, pp](double u) { return std::exp(-(1.0 + a) * std::log(u) - std::pow(u, pp)); }) {}

    cplx evaluate(double w) const {
        if (w == 0.0) return 0.0;
        if (w < 0.0) return std::conj(evaluate(-w));
        const std::size_t first = panels.edge_at_or_below(0.5 / w);
        const double split = panels.edge(first);
        if (w * split > 0.5 + 1e-12) throw NumericalFailure("radial kernel: argument beyond supported range");
        // series over [0, split]: sum_k (iw)^k/k! * (1/p) lower_gamma((k - alpha)/p, split^p)
        const double x = std::pow(split, p);
        cplx factor = 1.0;
        for (int k = 1; k < first_power; ++k) factor *= cplx(0.0, w) / double(k);
        cplx series = 0.0;
        for (int k = first_power; k < 200; ++k) {
            factor *= cplx(0.0, w) / double(k);
            const cplx term = factor * special::lower_gamma((k - alpha) / p, x) / p;
            series += term;
            if (std::abs(term) <= 1e-17 * std::abs(series)) break;
        }
        if (first == panels.panel_count()) return series;
        cplx rest = panels.oscillatory(w, first) - panels.plain(first);
        if (alpha >= 1.0) rest -= cplx(0.0, w * panels.first_moment(first));
        return series + rest;
    }
};

struct StableRadialKernel::Table {
    double log_lo;
    std::vector<cplx> values;

    explicit Table(const Quadrature& q) : log_lo(std::log(kTableLo)) {
        const auto count = static_cast<std::size_t>(std::ceil((std::log(kTableHi) - log_lo) / kTableStep)) + 1;
        values.resize(count);
        for (std::size_t i = 0; i < count; ++i) values[i] = q.evaluate(std::exp(log_lo + kTableStep * double(i)));
    }

    // Returns false outside the interpolation range.
    bool lookup(double w, cplx& out) const {
        const double s = (std::log(w) - log_lo) / kTableStep;
        const auto base = static_cast<long>(std::floor(s)) - 2;
        if (base < 0 || base + 5 >= static_cast<long>(values.size())) return false;
        const double t = s - double(base); // in [2, 3)
        cplx acc = 0.0;
        for (int j = 0; j < 6; ++j) {
            double weight = 1.0;
            for (int m = 0; m < 6; ++m) {
                if (m != j) weight *= (t - m) / double(j - m);
            }
            acc += weight * values[base + j];
        }
        out = acc;
        return true;
    }
};

StableRadialKernel::StableRadialKernel(double alpha, double p, Method method) : alpha_(alpha), p_(p), method_(method) {
    if (!(alpha >= 0.0 && alpha < 2.0)) throw DomainError("radial kernel: alpha must lie in [0, 2)");
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("radial kernel: p must be positive");
    if (method_ == Method::Auto) method_ = (p == 1.0 && !near_integer_index(alpha)) ? Method::ClosedForm : Method::Table;
    if (method_ == Method::ClosedForm && p != 1.0) throw DomainError("radial kernel: closed form requires p = 1");
    if (method_ != Method::ClosedForm) quadrature_ = std::make_shared<const Quadrature>(alpha, p);
    if (method_ == Method::Table) table_ = std::make_shared<const Table>(*quadrature_);
}

std::complex<double> StableRadialKernel::operator()(double w) const {
    switch (method_) {
    case Method::ClosedForm:
        return radial_kernel_closed_form(alpha_, w);
    case Method::Table: {
        if (w == 0.0) return 0.0;
        cplx out;
        if (table_->lookup(std::fabs(w), out)) return w > 0.0 ? out : std::conj(out);
        return quadrature_->evaluate(w);
    }
    default:
        return quadrature_->evaluate(w);
    }
}

} // namespace tsou
