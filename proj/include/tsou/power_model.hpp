#pragma once
// Power-tempered family PT_alpha(ell, c): symmetric Rosinski density with Pareto-type tails.

#include "tsou/measure.hpp"
#include "tsou/ou_transition.hpp"
#include "tsou/random.hpp"

#include <optional>

namespace tsou {

struct PtParams {
    double alpha = 1.0; // in [0, 2)
    double ell = 1.0;   // > 0
    double c = 1.0;     // > 0
    void validate() const;
    //! Tail exponent of the normalized density: P(|V| > v) = (1 + v)^{-tail_index()}.
    double tail_index() const { return 1.0 + alpha + ell; }
    double total_mass() const { return c * (alpha + ell); }
};

//! .5 c (alpha+ell)(alpha+ell+1) (1+|x|)^{-2-alpha-ell}
double pt_rosinski_density(const PtParams& params, double x);
RosinskiMeasure pt_measure(const PtParams& params);

//! Maps u1 in [-1, 1] to sign(u1) (|u1|^{-1/(1+alpha+ell)} - 1); uniform u1 gives a draw of R / R(R).
double pt_r1_transform(const PtParams& params, double u1);
double pt_r1_cdf(const PtParams& params, double x);
double pt_sample_r1(const PtParams& params, RandomSource& rng);

//! Expected number of compound-Poisson jumps in one transition step of length t.
//! Closed forms for alpha in [1, 2); the generic normalizing-constant form below 1.
double pt_poisson_mean(const PtParams& params, double lambda, double t);
//! exp(-alpha lambda t) R(R) K_{alpha, gamma, 1, e^{lambda t}}, valid for every alpha.
double pt_poisson_mean_generic(const PtParams& params, double lambda, double t);

//! Component laws of one transition step for PT limiting laws with p = 1:
//! X_0 ~ PT_alpha(ell, (1 - e^{-alpha lambda t}) c) and, for alpha >= 1,
//! X_1 ~ PT_{alpha-1}(ell + 1, (1 - e^{-lambda t}) c). All shifts vanish by symmetry.
struct PtTransitionComponents {
    PtParams x0;
    std::optional<PtParams> x1;
    double poisson_mean;
};
PtTransitionComponents pt_transition_components(const PtParams& params, double lambda, double t);

//! TSOU parameters (p = 1, zero shift) whose limiting law is PT_alpha(ell, c).
TsouParams pt_tsou_params(const PtParams& params, double lambda);

} // namespace tsou
