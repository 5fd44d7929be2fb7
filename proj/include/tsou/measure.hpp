#pragma once

#include "tsou/random.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tsou {

struct RosinskiAtom {
    std::vector<double> location;
    double weight;
};

//! Absolutely continuous part of a one-dimensional Rosinski measure.
struct RosinskiDensity {
    std::function<double(double)> density;
    double total_mass = 0.0;   // integral of density, known analytically
    bool symmetric = false;    // density(x) == density(-x)
    //! Draws from density / total_mass; may be empty when no sampler is known.
    std::function<double(RandomSource&)> sample_normalized;
    std::string name;
};

//! The measure R determining a p-tempered alpha-stable law: finitely many atoms in
//! R^d plus, for d = 1, an optional density. Immutable; scaling returns a copy.
class RosinskiMeasure {
public:
    RosinskiMeasure() = default;
    RosinskiMeasure(std::vector<RosinskiAtom> atoms, std::optional<RosinskiDensity> density, std::size_t dim);

    static RosinskiMeasure from_atoms(std::vector<RosinskiAtom> atoms);
    static RosinskiMeasure from_density(RosinskiDensity density);

    std::size_t dim() const { return dim_; }
    const std::vector<RosinskiAtom>& atoms() const { return atoms_; }
    bool has_density() const { return density_.has_value(); }
    const RosinskiDensity& density() const;
    //! Multiplier applied to the stored density (atoms are scaled in place).
    double density_scale() const { return density_scale_; }
    double density_at(double x) const { return density_scale_ * density_->density(x); }

    double total_mass() const;
    //! integral of x R(dx).
    std::vector<double> mean_vector() const;
    //! integral of |x|^a R(dx); may be +inf.
    double abs_moment(double a) const;
    bool is_symmetric() const;

    RosinskiMeasure scaled(double factor) const;

    bool has_r1_sampler() const;
    //! Draw from R / R(R^d) into out (size dim()).
    void sample_r1(RandomSource& rng, std::span<double> out) const;

private:
    std::vector<RosinskiAtom> atoms_;
    std::optional<RosinskiDensity> density_;
    double density_scale_ = 1.0;
    std::size_t dim_ = 1;
    std::vector<double> atom_cumulative_; // for R^1 sampling over atoms
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(std::string what) {
        ok = false;
        violations.push_back(std::move(what));
    }
    std::string summary() const;
};

//! Checks that R is a proper Rosinski measure for (alpha, p) with finite positive mass,
//! including the log-moment condition at alpha = 0 and the finite-mean condition at alpha = 1.
//! Density conditions are checked numerically.
ValidationReport validate_rosinski(const RosinskiMeasure& measure, double alpha, double p);

//! integral of kernel(z * x) R(dx) for d = 1, atoms plus density.
std::complex<double> integrate_kernel(const RosinskiMeasure& measure, double z,
                                      const std::function<std::complex<double>(double)>& kernel,
                                      double log_step = 0.1);

//! Tail mass beyond radius a along the ray of an atom with the given weight:
//! weight * a^{-alpha} e^{-a^p}.
double bdlp_levy_tail(double weight, double alpha, double p, double a);
double bdlp_levy_tail(const RosinskiMeasure& measure, double alpha, double p, double a, std::size_t atom_index);

//! Spectral representation: directions xi with weights and discrete radial mixing laws.
struct SpectralAtom {
    std::vector<double> xi; // unit vector
    double sigma_weight;
    std::vector<double> s;  // support of Q_xi, positive
    std::vector<double> w;  // probabilities, summing to 1
};

struct SpectralModel {
    std::vector<SpectralAtom> atoms;
    std::size_t dim() const { return atoms.empty() ? 0 : atoms.front().xi.size(); }
    void validate() const;
};

RosinskiMeasure spectral_to_rosinski(const SpectralModel& model, double alpha, double p);
//! Inverse map for atom-only measures; atoms sharing a direction are grouped.
SpectralModel rosinski_to_spectral(const RosinskiMeasure& measure, double alpha, double p);

} // namespace tsou
