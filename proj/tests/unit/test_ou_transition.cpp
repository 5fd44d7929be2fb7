#include <doctest.h>

#include "support/iga_oracle.hpp"
#include "support/oracles.hpp"
#include "support/radial_oracle.hpp"
#include "tsou/errors.hpp"
#include "tsou/ou_transition.hpp"
#include "tsou/power_model.hpp"
#include "tsou/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

using namespace tsou;

namespace {

SpectralModel cts_model(double a, double zeta) { return SpectralModel{{SpectralAtom{{1.0}, a, {zeta}, {1.0}}}}; }

SpectralModel three_atom_model() {
    return SpectralModel{{SpectralAtom{{1.0}, 0.8, {0.5, 2.0}, {0.3, 0.7}},
                          SpectralAtom{{-1.0}, 1.5, {1.0}, {1.0}},
                          SpectralAtom{{1.0}, 0.4, {3.0, 4.0}, {0.5, 0.5}}}};
}

TsouParams spectral_params(const SpectralModel& model, double alpha, double p, double lambda) {
    TsouParams params;
    params.alpha = alpha;
    params.p = p;
    params.lambda = lambda;
    params.measure = spectral_to_rosinski(model, alpha, p);
    params.spectral = model;
    return params;
}


} // namespace

TEST_CASE("gamma index") {
    CHECK(gamma_index(1.5, 1.0) == 2);
    CHECK(gamma_index(0.5, 1.0) == 1);
    CHECK(gamma_index(1.9, 0.5) == 4);
    CHECK(gamma_index(1.0, 1.0) == 2);
    CHECK(gamma_index(0.0, 0.3) == 1);
    for (double p : {0.3, 0.7, 1.0, 1.6}) {
        for (int k = 0; k * p < 2.0; ++k) {
            const double lo = k * p;
            for (double eps : {0.0, 1e-9, 0.5 * p, 0.999 * p})
                if (lo + eps < 2.0) CHECK(gamma_index(lo + eps, p) == k + 1);
        }
    }
}

TEST_CASE("transition constants") {
    const auto pt = pt_tsou_params({1.0, 1.0, 10.0}, 1.0);
    const auto spec = build_transition_spec(pt, 0.1);
    CHECK(spec.poisson_mean == doctest::Approx(0.09357680320888939039).epsilon(1e-12));
    CHECK(spec.gamma == 2);
    CHECK(spec.shifts[0][0] == 0.0);
    CHECK(spec.shifts[1][0] == 0.0);
    CHECK(spec.strategy == ProductStrategy::Direct);

    const auto tiny = build_transition_spec(pt, 1e-8);
    CHECK(tiny.poisson_mean < 1e-14);
    CHECK(tiny.r0_scale < 1e-7);
    CHECK(tiny.rn_scales[0] < 1e-7);
    CHECK_THROWS_AS(build_transition_spec(pt, 0.0), DomainError);
    CHECK_THROWS_AS(build_transition_spec(pt, -1.0), DomainError);

    // gamma = 4 gives three decreasing Taylor scales when p lambda t < ln 2
    TsouParams fine = spectral_params(three_atom_model(), 1.9, 0.5, 2.0);
    const auto s4 = build_transition_spec(fine, 0.3);
    REQUIRE(s4.rn_scales.size() == 3);
    CHECK(s4.rn_scales[0] > s4.rn_scales[1]);
    CHECK(s4.rn_scales[1] > s4.rn_scales[2]);

    // asymmetric atoms: shifts from the first moment of R
    const auto model = three_atom_model();
    for (double alpha : {1.2, 1.7}) {
        for (double p : {0.6, 1.0, 2.5}) {
            const TsouParams params = spectral_params(model, alpha, p, 1.3);
            const double t = 0.2, lt = 1.3 * t;
            const auto s = build_transition_spec(params, t);
            const double mean = params.measure.mean_vector()[0];
            const double mass = params.measure.total_mass();
            const double k = oracle::iga_k_quadrature(alpha, s.gamma, p, p * lt);
            CHECK(std::fabs(s.poisson_mean - std::exp(-alpha * lt) * mass * k) <= 1e-10 * s.poisson_mean);
            const double k1 = oracle::iga_k_quadrature(alpha - 1.0, s.gamma, p, p * lt);
            CHECK(std::fabs(s.shifts[0][0] - std::exp(-alpha * lt) * mean * k1) <= 1e-10 * std::fabs(s.shifts[0][0]));
            for (int n = 1; n < s.gamma; ++n) {
                const double expected = alpha < 1.0 + n * p ? std::exp(-lt) * mean * s.rn_scales[n - 1] *
                                                                  std::tgamma((1.0 - alpha + n * p) / p) / p
                                                            : 0.0;
                CHECK(s.shifts[n][0] == doctest::Approx(expected).epsilon(1e-13));
            }
        }
    }
    const TsouParams below = spectral_params(model, 0.7, 1.0, 1.0);
    CHECK(build_transition_spec(below, 0.5).shifts[0][0] == 0.0);
}

TEST_CASE("strategy names and unsupported combinations") {
    CHECK(parse_product_strategy("alg3") == ProductStrategy::Alg3);
    CHECK(to_string(ProductStrategy::Alg2) == "alg2");
    CHECK_THROWS_AS(parse_product_strategy("fast"), DomainError);
    const TsouParams zero = spectral_params(cts_model(1.0, 2.0), 0.0, 1.0, 1.0);
    CHECK_THROWS_AS(build_transition_spec(zero, 0.1, ProductStrategy::Alg2), UnsupportedOperation);
    CHECK_NOTHROW(build_transition_spec(zero, 0.1, ProductStrategy::Alg3));

    TsouParams planar;
    planar.alpha = 0.5;
    planar.measure = RosinskiMeasure::from_atoms({{{0.6, 0.8}, 1.0}});
    CHECK_THROWS_AS(TransitionSampler(planar, 0.1), UnsupportedOperation);
}

TEST_CASE("spectral product sampler constants") {
    const double lambda = 1.0, t = 0.1;
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int implied = 0, equivalent_cases = 0;
    for (int trial = 0; trial < 40; ++trial) {
        SpectralModel model;
        const int atoms = 1 + trial % 3;
        for (int a = 0; a < atoms; ++a) {
            SpectralAtom atom{{U(gen) < 0.5 ? -1.0 : 1.0}, 0.2 + 2.0 * U(gen), {}, {}};
            const int support = 1 + static_cast<int>(3 * U(gen));
            double total = 0.0;
            for (int k = 0; k < support; ++k) {
                atom.s.push_back(0.05 + 6.0 * U(gen));
                atom.w.push_back(0.1 + U(gen));
                total += atom.w.back();
            }
            for (auto& w : atom.w) w /= total;
            model.atoms.push_back(atom);
        }
        const double alpha = 0.05 + 1.9 * U(gen), p = 0.4 + 1.6 * U(gen);
        const SpectralProductSampler sampler(model, alpha, p, lambda, t);
        double sum = 0.0;
        for (double w : sampler.sigma1_weights()) sum += w;
        CHECK(std::fabs(sum - 1.0) < 1e-15);

        for (std::size_t k = 0; k < model.atoms.size(); ++k) {
            const auto& atom = sampler.atoms()[k];
            const oracle::RadialOracle oracle_f(model.atoms[k], alpha, p, lambda, t);
            // kappa normalizes f_xi
            CHECK(std::fabs(atom.kappa / oracle_f.norm - 1.0) < 1e-9);
            const double mass = oracle::integrate_radial([&](double u) { return sampler.f_xi(k, u); }, sampler.gamma() * p - alpha,
                                                 atom.kappa * oracle_f.lead);
            CHECK(std::fabs(mass - 1.0) < 1e-8);

            // V2 / V3 = gamma p / (alpha Gamma(gamma - alpha/p + 1)) zeta^{gamma - alpha/p} V2' / C
            const int g = sampler.gamma();
            const double e = g - alpha / p;
            const double ratio = g * p / (alpha * std::tgamma(e + 1.0)) * std::pow(atom.zeta, e) * atom.v2_prime / atom.c_gamma;
            CHECK(atom.v2 / atom.v3 == doctest::Approx(ratio).epsilon(1e-12));
            const bool above = atom.zeta > alg3_threshold(alpha, g, p);
            if (above) {
                CHECK(atom.v2 > atom.v3);
                ++implied;
            }
            if (atom.v2_prime == atom.c_gamma) {
                CHECK((atom.v2 > atom.v3) == above);
                ++equivalent_cases;
            }
        }
    }
    CHECK(implied > 0);
    CHECK(equivalent_cases > 0);
}

TEST_CASE("envelope ratios") {
    const double lambda = 1.0, t = 0.1;
    const auto model = three_atom_model();
    for (double alpha : {0.4, 1.5}) {
        for (double p : {0.5, 1.0, 2.0}) {
            const SpectralProductSampler sampler(model, alpha, p, lambda, t);
            const double em1 = sampler.eta_minus_one();
            const int g = sampler.gamma();
            std::mt19937_64 gen(17);
            std::uniform_real_distribution<double> L(-8.0, 4.0);
            for (int i = 0; i < 10'000; ++i) {
                const std::size_t k = static_cast<std::size_t>(i % 3);
                const double u = std::exp(L(gen));
                const double f2 = sampler.phi2(k, u), f3 = sampler.phi3(k, u);
                CHECK((f2 >= 0.0 && f2 <= 1.0));
                CHECK((f3 >= 0.0 && f3 <= 1.0));
                if (i % 50 != 0) continue;
                // same ratio through the exponential-tail difference
                const auto& atom = sampler.atoms()[k];
                const double v = std::pow(u, p);
                double num = 0.0;
                for (std::size_t j = 0; j < atom.s.size(); ++j) {
                    const double a = v * atom.s[j];
                    const double term = special::exp_tail_difference(a, a * (1.0 + em1), g);
                    const double bound = std::pow(a * em1, g) / std::tgamma(g + 1.0);
                    CHECK(term <= std::exp(-a) * bound * (1 + 1e-12));
                    CHECK(term >= std::exp(-a * (1.0 + em1)) * bound * (1 - 1e-12));
                    num += atom.w[j] * term;
                }
                const double expected = num / ((u <= 1.0 ? std::pow(u, g * p) : 1.0) * atom.v2_prime);
                if (expected > 1e-280) CHECK(f2 == doctest::Approx(expected).epsilon(1e-10));
            }
            CHECK(sampler.phi2(0, 1e6) < 1e-100);
        }
    }

    // one tempering rate, p = 1, gamma = 2
    const double zeta = 1.7;
    const SpectralProductSampler cts(cts_model(2.0, zeta), 1.5, 1.0, lambda, t);
    const double e = std::exp(lambda * t);
    for (double u : {0.01, 0.3, 1.0, 4.0, 20.0}) {
        const double expected = 2.0 / ((e - 1) * (e - 1) * zeta * zeta) *
                                (std::exp(-u * zeta) - std::exp(-u * e * zeta) - std::exp(-u * e * zeta) * zeta * u * (e - 1)) /
                                (u * u * std::exp(-u * zeta));
        CHECK(cts.phi3(0, u) == doctest::Approx(expected).epsilon(u < 0.1 ? 1e-6 : 1e-11));
    }
    for (double u : {0.2, 1.0, 3.0}) {
        CHECK(cts.ell_n(0, 0, u) == doctest::Approx(std::exp(-u * zeta)).epsilon(1e-15));
        CHECK(cts.ell_n(0, 1, u) == doctest::Approx((e - 1) * zeta * std::exp(-u * zeta)).epsilon(1e-14));
    }
    CHECK(cts.ell_n(0, 0, 1e4) == 0.0);
}

TEST_CASE("radial samplers: acceptance rates and distribution") {
    const double lambda = 1.0, t = 0.1;
    struct Case {
        SpectralModel model;
        double alpha, p;
    };
    const std::vector<Case> cases{{cts_model(1.0, 2.0), 1.5, 1.0}, {cts_model(1.0, 0.3), 0.7, 1.0},
                                  {three_atom_model(), 1.2, 1.0}, {three_atom_model(), 0.6, 2.0}};
    RandomSource rng(8);
    for (const auto& c : cases) {
        CAPTURE(c.alpha);
        CAPTURE(c.p);
        const SpectralProductSampler sampler(c.model, c.alpha, c.p, lambda, t);
        for (std::size_t k = 0; k < c.model.atoms.size(); ++k) {
            const oracle::RadialOracle oracle_f(c.model.atoms[k], c.alpha, c.p, lambda, t);
            const auto& atom = sampler.atoms()[k];
            for (int alg : {2, 3}) {
                CAPTURE(alg);
                const std::size_t n = 100'000;
                std::vector<double> xs(n);
                std::uint64_t proposals = 0;
                for (auto& x : xs) {
                    const auto d = alg == 2 ? sampler.sample_radial_alg2(k, rng) : sampler.sample_radial_alg3(k, rng);
                    x = d.value;
                    proposals += d.proposals;
                }
                const double rate = double(n) / double(proposals);
                const double expected = 1.0 / (alg == 2 ? atom.v2 : atom.v3);
                const double se = std::sqrt(expected * (1.0 - expected) / double(proposals));
                CHECK(std::fabs(rate - expected) < 3.0 * se + 1e-12);
                std::sort(xs.begin(), xs.end());
                const auto cdf = oracle::cdf_at_sorted([&](double u) { return oracle_f.pdf(u); }, xs, 0.0);
                CHECK(oracle::ks_from_cdf_values(cdf) < oracle::ks_critical_1pct(n));
            }
        }
    }
}

TEST_CASE("acceptance stays bounded away from zero as t shrinks") {
    const auto model = three_atom_model();
    const double alpha = 1.2, p = 1.0;
    const int g = gamma_index(alpha, p);
    for (std::size_t k = 0; k < model.atoms.size(); ++k) {
        const auto& a = model.atoms[k];
        double m_gamma = 0.0, m_alpha = 0.0;
        for (std::size_t j = 0; j < a.s.size(); ++j) {
            m_gamma += a.w[j] * std::pow(a.s[j], g);
            m_alpha += a.w[j] * std::pow(a.s[j], alpha / p);
        }
        const double bound = std::max(std::exp(-g) * std::pow(g, g), m_gamma) /
                             (std::tgamma(g - alpha / p) * m_alpha) * g * p * p / (alpha * (g * p - alpha));
        const SpectralProductSampler small(model, alpha, p, 1.0, 1e-5);
        CHECK(small.atoms()[k].v2 <= bound * 1.001);
        const SpectralProductSampler at(model, alpha, p, 1.0, 0.01);
        CHECK(1.0 / at.atoms()[k].v2 > 0.9 / bound);
    }
}

TEST_CASE("product strategies agree") {
    const auto model = three_atom_model();
    for (double alpha : {0.6, 1.5}) {
        CAPTURE(alpha);
        const TsouParams params = spectral_params(model, alpha, 1.0, 1.0);
        const double t = 0.1;
        const SpectralProductSampler sampler(model, alpha, 1.0, 1.0, t);
        const auto spec = build_transition_spec(params, t);
        const std::size_t n = 100'000;
        RandomSource rng(1234);
        std::vector<double> direct(n), alg2(n), alg3(n);
        for (auto& x : direct) {
            double v = 0.0;
            params.measure.sample_r1(rng, std::span<double>(&v, 1));
            x = v * sample_iga(spec.iga, rng);
        }
        for (auto& x : alg2) sampler.sample(ProductStrategy::Alg2, rng, std::span<double>(&x, 1));
        for (auto& x : alg3) sampler.sample(ProductStrategy::Alg3, rng, std::span<double>(&x, 1));
        const double crit = oracle::ks_critical_1pct(n, n);
        CHECK(oracle::ks_two_sample(direct, alg2) < crit);
        CHECK(oracle::ks_two_sample(direct, alg3) < crit);
        CHECK(oracle::ks_two_sample(alg2, alg3) < crit);

        // full transitions under each strategy
        const std::size_t m = 20'000;
        std::vector<std::vector<double>> outs;
        for (auto s : {ProductStrategy::Direct, ProductStrategy::Alg2, ProductStrategy::Alg3}) {
            const TransitionSampler ts(params, 1.0, s);
            RandomSource r(77 + static_cast<int>(s));
            std::vector<double> ys(m);
            for (auto& y : ys) y = ts.sample(0.5, r);
            outs.push_back(ys);
        }
        const double crit_m = oracle::ks_critical_1pct(m, m);
        CHECK(oracle::ks_two_sample(outs[0], outs[1]) < crit_m);
        CHECK(oracle::ks_two_sample(outs[0], outs[2]) < crit_m);
        CHECK(oracle::ks_two_sample(outs[1], outs[2]) < crit_m);
    }
}

TEST_CASE("one-step transitions") {
    const PtParams pt{1.5, 1.0, 10.0};
    const TsouParams params = pt_tsou_params(pt, 1.0);

    SUBCASE("vanishing step") {
        const TransitionSampler sampler(params, 1e-6);
        RandomSource rng(1);
        int far = 0;
        for (int i = 0; i < 1000; ++i) far += std::fabs(sampler.sample(2.0, rng) - 2.0) > 0.05;
        CHECK(far <= 10);
    }
    SUBCASE("limiting law is invariant") {
        const TransitionSampler sampler(params, 0.1);
        const TsLaw1d stationary = stationary_law(params);
        RandomSource rng(2);
        const std::size_t n = 10'000;
        std::vector<double> y0(n), y1(n);
        for (std::size_t i = 0; i < n; ++i) {
            y0[i] = stationary.sample(rng);
            y1[i] = sampler.sample(y0[i], rng);
        }
        // independent initial draws keep the two samples unpaired
        std::vector<double> fresh(n);
        for (auto& x : fresh) x = stationary.sample(rng);
        CHECK(oracle::ks_two_sample(fresh, y1) < oracle::ks_critical_1pct(n, n));
        CHECK(oracle::ks_one_sample(y1, [&](double x) { return stationary.cdf(x); }) < oracle::ks_critical_1pct(n));
    }
    SUBCASE("paths") {
        const TransitionSampler sampler(params, 0.1);
        RandomSource rng(3);
        const double y0 = 1.25;
        const auto none = simulate_path(sampler, std::span<const double>(&y0, 1), 0, rng);
        CHECK(none == std::vector<double>{1.25});

        const TsLaw1d stationary = stationary_law(params);
        const auto path = simulate_path(sampler, stationary, 1000, rng);
        CHECK(path.size() == 1001);
        const auto m = oracle::mean_se(path);
        const double rho = std::exp(-0.1);
        CHECK(std::fabs(m.mean) < 3.0 * m.se * std::sqrt((1.0 + rho) / (1.0 - rho)));

        RandomSource a(4), b(4);
        CHECK(simulate_path(sampler, stationary, 50, a) == simulate_path(sampler, stationary, 50, b));
    }
    SUBCASE("long steps decorrelate") {
        // the IGa envelope grows with eta; alpha = 0.9 keeps it near 7 at lambda t = 20
        const TsouParams light = pt_tsou_params({0.9, 1.0, 1.0}, 1.0);
        const TransitionSampler sampler(light, 20.0);
        RandomSource rng(5);
        const TsLaw1d stationary = stationary_law(light);
        const auto path = simulate_path(sampler, stationary, 20'000, rng);
        const auto m = oracle::mean_se(path);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) num += (path[i] - m.mean) * (path[i + 1] - m.mean);
        for (double x : path) den += (x - m.mean) * (x - m.mean);
        const double lag1 = num / den;
        CHECK(std::fabs(lag1 - std::exp(-20.0)) < 3.0 / std::sqrt(double(path.size())));
    }
}

TEST_CASE("transition mean with an asymmetric measure") {
    // E[Y_t | y] = e^{-lambda t} y + (1 - e^{-lambda t}) b for alpha >= 1
    TsouParams params;
    params.alpha = 1.4;
    params.p = 1.0;
    params.lambda = 0.8;
    params.b = {0.3};
    params.measure = RosinskiMeasure::from_atoms({{{0.7}, 2.0}});
    const double t = 0.25, y = -1.0;
    const TransitionSampler sampler(params, t);
    RandomSource rng(6);
    std::vector<double> xs(1'000'000);
    for (auto& x : xs) x = sampler.sample(y, rng);
    const auto m = oracle::mean_se(xs);
    const double decay = std::exp(-params.lambda * t);
    CHECK(std::fabs(m.mean - (decay * y + (1.0 - decay) * 0.3)) < 3.0 * m.se);
}

TEST_CASE("custom component sampler in two dimensions") {
    TsouParams params;
    params.alpha = 0.5;
    params.p = 1.0;
    params.lambda = 1.0;
    params.measure = RosinskiMeasure::from_atoms({{{0.6, 0.8}, 1.0}, {{-1.0, 0.0}, 0.5}});
    int calls = 0;
    const TransitionSampler sampler(params, 0.1, std::nullopt, {}, [&](int n, RandomSource&, std::span<double> out) {
        CHECK(n == 0);
        ++calls;
        out[0] = out[1] = 0.0;
    });
    RandomSource rng(8);
    const std::vector<double> y{1.0, -2.0};
    std::vector<double> out(2);
    sampler.sample(y, rng, out);
    CHECK(calls == 1);
    const auto path = simulate_path(sampler, y, 5, rng);
    CHECK(path.size() == 12);
}
