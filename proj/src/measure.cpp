#include "tsou/measure.hpp"

#include "tsou/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace tsou {
namespace {

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// integral_0^inf g(x) dx for nonnegative-ish g; +inf when the quadrature does not settle.
double half_line_integral(const std::function<double(double)>& g) {
    try {
        boost::math::quadrature::tanh_sinh<double> near;
        double err_near = 0.0;
        const double a = near.integrate(g, 0.0, 1.0, 1e-12, &err_near);
        // x = e^s turns polynomial and logarithmic tails into slowly decaying ones;
        // dyadic windows in s keep jumps of the density local to one window
        auto in_log = [&](double s) {
            const double x = std::exp(s);
            return g(x) * x;
        };
        double b = 0.0;
        // the adaptive Gauss-Kronrod error estimate is not scaled to the subinterval
        // width, so it is not used; finiteness of the tail is judged elsewhere
        for (double lo = 0.0, hi = 1.0; lo < 700.0; lo = hi, hi = std::min(2.0 * hi, 700.0))
            b += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(in_log, lo, hi, 15, 1e-12);
        const double total = a + b;
        if (!std::isfinite(total) || err_near > 1e-6 * std::fabs(total) + 1e-300)
            return std::numeric_limits<double>::infinity();
        return total;
    } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
    }
}

// Whether integral_{x > 2} g(x) dx is finite for g >= 0, judged from dyadic windows in
// s = ln x: the contributions must shrink geometrically over the last windows.
bool tail_integral_finite(const std::function<double(double)>& g) {
    auto in_s = [&](double s) {
        const double x = std::exp(s);
        const double v = g(x) * x;
        return std::isfinite(v) ? v : 0.0;
    };
    std::vector<double> windows;
    double lo = std::log(2.0);
    for (double hi = 1.0; hi <= 512.0; hi *= 2.0) {
        if (hi <= lo) continue;
        windows.push_back(boost::math::quadrature::gauss_kronrod<double, 31>::integrate(in_s, lo, hi, 12, 1e-10));
        lo = hi;
    }
    const double total = std::accumulate(windows.begin(), windows.end(), 0.0);
    if (!std::isfinite(total)) return false;
    const std::size_t n = windows.size();
    const double last = windows[n - 1];
    if (last <= 1e-12 * total) return true;
    for (std::size_t k = n - 3; k < n; ++k) {
        if (!(windows[k] <= 0.6 * windows[k - 1])) return false;
    }
    return true;
}

} // namespace

RosinskiMeasure::RosinskiMeasure(std::vector<RosinskiAtom> atoms, std::optional<RosinskiDensity> density,
                                 std::size_t dim)
    : atoms_(std::move(atoms)), density_(std::move(density)), dim_(dim) {
    if (dim_ == 0) throw DomainError("Rosinski measure: dimension must be positive");
    if (density_ && dim_ != 1) throw DomainError("Rosinski measure: densities are supported for d = 1 only");
    if (density_ && !density_->density) throw DomainError("Rosinski measure: empty density function");
    for (const auto& a : atoms_) {
        if (a.location.size() != dim_) throw DomainError("Rosinski measure: atom dimension mismatch");
    }
    atom_cumulative_.resize(atoms_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        acc += atoms_[i].weight;
        atom_cumulative_[i] = acc;
    }
}

RosinskiMeasure RosinskiMeasure::from_atoms(std::vector<RosinskiAtom> atoms) {
    if (atoms.empty()) throw DomainError("Rosinski measure: no atoms given");
    const std::size_t d = atoms.front().location.size();
    return RosinskiMeasure(std::move(atoms), std::nullopt, d);
}

RosinskiMeasure RosinskiMeasure::from_density(RosinskiDensity density) {
    return RosinskiMeasure({}, std::move(density), 1);
}

const RosinskiDensity& RosinskiMeasure::density() const {
    if (!density_) throw DomainError("Rosinski measure has no density part");
    return *density_;
}

double RosinskiMeasure::total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.weight;
    if (density_) m += density_scale_ * density_->total_mass;
    return m;
}

std::vector<double> RosinskiMeasure::mean_vector() const {
    std::vector<double> mean(dim_, 0.0);
    for (const auto& a : atoms_) {
        for (std::size_t k = 0; k < dim_; ++k) mean[k] += a.weight * a.location[k];
    }
    if (density_ && !density_->symmetric) {
        const auto& f = density_->density;
        const double pos = half_line_integral([&](double x) { return x * f(x); });
        const double neg = half_line_integral([&](double x) { return x * f(-x); });
        if (!std::isfinite(pos) || !std::isfinite(neg)) throw NumericalFailure("Rosinski density has no finite mean");
        mean[0] += density_scale_ * (pos - neg);
    }
    return mean;
}

double RosinskiMeasure::abs_moment(double a) const {
    double m = 0.0;
    for (const auto& atom : atoms_) m += atom.weight * std::pow(norm(atom.location), a);
    if (density_) {
        const auto& f = density_->density;
        m += density_scale_ * half_line_integral([&](double x) {
                 return x == 0.0 ? (a == 0.0 ? f(0.0) * 2.0 : 0.0) : std::pow(x, a) * (f(x) + f(-x));
             });
    }
    return m;
}

bool RosinskiMeasure::is_symmetric() const {
    if (density_ && !density_->symmetric) return false;
    // atoms must pair up with their reflections
    std::vector<bool> used(atoms_.size(), false);
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (used[i]) continue;
        bool found = false;
        for (std::size_t j = i + 1; j < atoms_.size() && !found; ++j) {
            if (used[j] || atoms_[j].weight != atoms_[i].weight) continue;
            bool mirror = true;
            for (std::size_t k = 0; k < dim_; ++k) mirror = mirror && atoms_[j].location[k] == -atoms_[i].location[k];
            if (mirror) used[i] = used[j] = found = true;
        }
        if (!found) return false;
    }
    return true;
}

RosinskiMeasure RosinskiMeasure::scaled(double factor) const {
    if (!(factor >= 0.0) || !std::isfinite(factor)) throw DomainError("Rosinski measure: invalid scale factor");
    RosinskiMeasure out = *this;
    double acc = 0.0;
    for (std::size_t i = 0; i < out.atoms_.size(); ++i) {
        out.atoms_[i].weight *= factor;
        acc += out.atoms_[i].weight;
        out.atom_cumulative_[i] = acc;
    }
    out.density_scale_ *= factor;
    return out;
}

bool RosinskiMeasure::has_r1_sampler() const {
    return !density_ || static_cast<bool>(density_->sample_normalized);
}

void RosinskiMeasure::sample_r1(RandomSource& rng, std::span<double> out) const {
    if (!has_r1_sampler()) throw UnsupportedOperation("Rosinski measure: density has no normalized sampler");
    if (out.size() != dim_) throw DomainError("sample_r1: output size does not match dimension");
    const double atom_mass = atom_cumulative_.empty() ? 0.0 : atom_cumulative_.back();
    const double density_mass = density_ ? density_scale_ * density_->total_mass : 0.0;
    const double u = rng.uniform() * (atom_mass + density_mass);
    if (u >= atom_mass && density_) {
        out[0] = density_->sample_normalized(rng);
        return;
    }
    auto it = std::upper_bound(atom_cumulative_.begin(), atom_cumulative_.end(), u);
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - atom_cumulative_.begin()), atoms_.size() - 1);
    std::copy(atoms_[idx].location.begin(), atoms_[idx].location.end(), out.begin());
}

std::string ValidationReport::summary() const {
    if (ok) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) os << (i ? "; " : "") << violations[i];
    return os.str();
}

ValidationReport validate_rosinski(const RosinskiMeasure& measure, double alpha, double p) {
    ValidationReport report;
    if (!(alpha >= 0.0 && alpha < 2.0)) report.fail("alpha must lie in [0, 2)");
    if (!(p > 0.0) || !std::isfinite(p)) report.fail("p must be positive");
    for (const auto& atom : measure.atoms()) {
        if (!(atom.weight > 0.0) || !std::isfinite(atom.weight)) report.fail("atom weights must be positive and finite");
        const double r = norm(atom.location);
        if (!std::isfinite(r)) report.fail("atom location must be finite");
        if (r == 0.0) report.fail("R({0})=0 violated: atom at the origin");
    }
    if (measure.has_density()) {
        const auto& f = measure.density().density;
        const double declared = measure.density().total_mass;
        const double numeric = half_line_integral([&](double x) { return f(x) + f(-x); });
        if (!std::isfinite(numeric)) {
            report.fail("density mass is not finite");
        } else if (std::fabs(numeric - declared) > 1e-6 * std::max(declared, 1e-300)) {
            report.fail("declared density mass disagrees with quadrature");
        }
        auto both = [&](double x) { return f(x) + f(-x); };
        if (alpha > 0.0 && alpha < 2.0 && alpha != 1.0 &&
            !tail_integral_finite([&](double x) { return std::pow(x, alpha) * both(x); }))
            report.fail("integral of |x|^alpha R(dx) is not finite");
        if (alpha == 0.0 && !tail_integral_finite([&](double x) { return std::log(x) * both(x); }))
            report.fail("alpha = 0 requires finite integral of log|x| R(dx) over |x| > 2");
        if (alpha == 1.0 && !tail_integral_finite([&](double x) { return x * std::log(x) * both(x); }))
            report.fail("alpha = 1 requires finite integral of |x| log|x| R(dx) over |x| > 2");
    }
    const double mass = measure.total_mass();
    if (!(mass > 0.0) || !std::isfinite(mass)) report.fail("total mass must be finite and positive");
    return report;
}

std::complex<double> integrate_kernel(const RosinskiMeasure& measure, double z,
                                      const std::function<std::complex<double>(double)>& kernel, double log_step) {
    if (measure.dim() != 1) throw UnsupportedOperation("integrate_kernel: one-dimensional measures only");
    std::complex<double> sum = 0.0;
    for (const auto& atom : measure.atoms()) sum += atom.weight * kernel(z * atom.location[0]);
    if (!measure.has_density() || measure.density_scale() == 0.0) return sum;
    if (z == 0.0) return sum + measure.total_mass() * kernel(0.0);

    // trapezoid rule in s = ln|x|, anchored where |z x| = 1; both half-lines at once
    const auto& f = measure.density().density;
    const double anchor = -std::log(std::fabs(z));
    auto term = [&](double s) {
        const double x = std::exp(s);
        const double fp = f(x), fm = f(-x);
        if (fp == 0.0 && fm == 0.0) return std::complex<double>(0.0);
        const std::complex<double> k = kernel(z * x);
        return x * (fp * k + fm * std::conj(k));
    };
    std::complex<double> acc = term(anchor);
    for (int direction : {1, -1}) {
        int small_run = 0;
        for (int j = 1; j < 100000; ++j) {
            const double s = anchor + direction * j * log_step;
            if (s > 700.0 || s < -700.0) break;
            const std::complex<double> t = term(s);
            acc += t;
            small_run = std::abs(t) < 1e-17 * std::abs(acc) ? small_run + 1 : 0;
            if (small_run >= 4 && j * log_step > 5.0) break;
        }
    }
    return sum + measure.density_scale() * log_step * acc;
}

double bdlp_levy_tail(double weight, double alpha, double p, double a) {
    if (!(a > 0.0)) throw DomainError("bdlp_levy_tail: radius must be positive");
    return weight * std::exp(-alpha * std::log(a) - std::pow(a, p));
}

double bdlp_levy_tail(const RosinskiMeasure& measure, double alpha, double p, double a, std::size_t atom_index) {
    if (atom_index >= measure.atoms().size()) throw DomainError("bdlp_levy_tail: atom index out of range");
    return bdlp_levy_tail(measure.atoms()[atom_index].weight, alpha, p, a);
}

void SpectralModel::validate() const {
    if (atoms.empty()) throw DomainError("spectral model: no atoms");
    const std::size_t d = dim();
    if (d == 0) throw DomainError("spectral model: empty direction vector");
    for (const auto& a : atoms) {
        if (a.xi.size() != d) throw DomainError("spectral model: direction dimension mismatch");
        if (std::fabs(norm(a.xi) - 1.0) > 1e-12) throw DomainError("spectral model: directions must be unit vectors");
        if (!(a.sigma_weight > 0.0) || !std::isfinite(a.sigma_weight))
            throw DomainError("spectral model: sigma weights must be positive");
        if (a.s.empty() || a.s.size() != a.w.size()) throw DomainError("spectral model: malformed radial law");
        double total = 0.0;
        for (std::size_t k = 0; k < a.s.size(); ++k) {
            if (!(a.s[k] > 0.0) || !std::isfinite(a.s[k])) throw DomainError("spectral model: radial support must be positive");
            if (!(a.w[k] >= 0.0)) throw DomainError("spectral model: radial weights must be nonnegative");
            total += a.w[k];
        }
        if (std::fabs(total - 1.0) > 1e-12) throw DomainError("spectral model: radial weights must sum to 1");
    }
}

RosinskiMeasure spectral_to_rosinski(const SpectralModel& model, double alpha, double p) {
    model.validate();
    std::vector<RosinskiAtom> atoms;
    for (const auto& a : model.atoms) {
        for (std::size_t k = 0; k < a.s.size(); ++k) {
            if (a.w[k] == 0.0) continue;
            const double radius = std::pow(a.s[k], -1.0 / p);
            std::vector<double> loc(a.xi.size());
            for (std::size_t j = 0; j < loc.size(); ++j) loc[j] = a.xi[j] * radius;
            atoms.push_back({std::move(loc), a.sigma_weight * a.w[k] * std::pow(a.s[k], alpha / p)});
        }
    }
    return RosinskiMeasure::from_atoms(std::move(atoms));
}

SpectralModel rosinski_to_spectral(const RosinskiMeasure& measure, double alpha, double p) {
    if (measure.has_density()) throw UnsupportedOperation("rosinski_to_spectral: atom-only measures");
    SpectralModel model;
    std::vector<std::vector<double>> masses;
    for (const auto& atom : measure.atoms()) {
        const double r = norm(atom.location);
        if (r == 0.0) throw DomainError("rosinski_to_spectral: atom at the origin");
        std::vector<double> xi(atom.location.size());
        for (std::size_t j = 0; j < xi.size(); ++j) xi[j] = atom.location[j] / r;
        std::size_t group = model.atoms.size();
        for (std::size_t g = 0; g < model.atoms.size(); ++g) {
            double diff = 0.0;
            for (std::size_t j = 0; j < xi.size(); ++j) diff = std::max(diff, std::fabs(model.atoms[g].xi[j] - xi[j]));
            if (diff <= 1e-12) {
                group = g;
                break;
            }
        }
        if (group == model.atoms.size()) {
            model.atoms.push_back({xi, 0.0, {}, {}});
            masses.emplace_back();
        }
        model.atoms[group].s.push_back(std::pow(r, -p));
        masses[group].push_back(atom.weight * std::pow(r, alpha));
    }
    for (std::size_t g = 0; g < model.atoms.size(); ++g) {
        const double total = std::accumulate(masses[g].begin(), masses[g].end(), 0.0);
        model.atoms[g].sigma_weight = total;
        for (double m : masses[g]) model.atoms[g].w.push_back(m / total);
    }
    return model;
}

} // namespace tsou
