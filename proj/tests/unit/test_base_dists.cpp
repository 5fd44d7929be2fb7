#include <doctest.h>

#include "support/iga_oracle.hpp"
#include "support/oracles.hpp"
#include "tsou/base_dists.hpp"
#include "tsou/errors.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace tsou;

TEST_CASE("gamma sampler moments and exponential special case") {
    RandomSource rng(101);
    std::vector<double> xs(1'000'000);
    for (auto& x : xs) x = sample_gamma(2.0, 3.0, rng);
    const auto m = oracle::mean_se(xs);
    CHECK(std::fabs(m.mean - 2.0 / 3.0) < 3 * m.se);
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - 2.0 / 3.0) * (xs[i] - 2.0 / 3.0);
    const auto v = oracle::mean_se(sq);
    CHECK(std::fabs(v.mean - 2.0 / 9.0) < 3 * v.se);

    std::vector<double> ex(100'000);
    for (auto& x : ex) x = sample_gamma(1.0, 1.7, rng);
    CHECK(oracle::ks_one_sample(ex, [](double x) { return -std::expm1(-1.7 * x); }) < oracle::ks_critical_1pct(ex.size()));
}

TEST_CASE("generalized gamma sampler") {
    RandomSource rng(102);
    const std::size_t n = 100'000;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = sample_gen_gamma(2.5, 1.0, 1.5, rng);
        b[i] = sample_gamma(2.5, 1.5, rng);
    }
    CHECK(oracle::ks_two_sample(a, b) < oracle::ks_critical_1pct(n, n));

    std::vector<double> sq(n);
    for (auto& x : sq) {
        const double y = sample_gen_gamma(2.0, 2.0, 1.0, rng);
        x = y * y;
    }
    const auto m = oracle::mean_se(sq);
    CHECK(std::fabs(m.mean - 1.0) < 3 * m.se);

    std::vector<double> g(n);
    for (auto& x : g) x = sample_gen_gamma(1.7, 2.5, 0.8, rng);
    const double ks = oracle::ks_one_sample_pdf(g, [](double u) { return gen_gamma_pdf(1.7, 2.5, 0.8, u); }, 0.0);
    CHECK(ks < oracle::ks_critical_1pct(n));
}

TEST_CASE("poisson sampler") {
    RandomSource rng(103);
    CHECK(sample_poisson(0.0, rng) == 0);
    CHECK_THROWS_AS(sample_poisson(-1.0, rng), DomainError);
    const int n = 1'000'000;
    int zeros = 0;
    for (int i = 0; i < n; ++i) zeros += sample_poisson(0.0936, rng) == 0;
    const double p0 = std::exp(-0.0936);
    CHECK(std::fabs(zeros / double(n) - p0) < 3 * std::sqrt(p0 * (1 - p0) / n));
    std::vector<double> xs(n);
    for (auto& x : xs) x = static_cast<double>(sample_poisson(4.0, rng));
    const auto m = oracle::mean_se(xs);
    CHECK(std::fabs(m.mean - 4.0) < 3 * m.se);
}

TEST_CASE("iga_norm_constant reference values") {
    CHECK(iga_norm_constant(0.5, 1, 1.0, std::exp(0.1)) == doctest::Approx(0.18175130442366331272).epsilon(1e-13));
    CHECK(iga_norm_constant(0.0, 1, 1.0, std::exp(0.1)) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(iga_norm_constant_log(0.0, 1, 2.0, 0.37) == doctest::Approx(0.37 / 2.0).epsilon(1e-15));
    CHECK(iga_norm_constant(1.5, 2, 1.0, std::exp(0.1)) == doctest::Approx(0.0094778467310856373652).epsilon(1e-12));
    CHECK(iga_norm_constant(1.0, 2, 1.0, std::exp(0.1)) == doctest::Approx(0.0051709180756476248117).epsilon(1e-12));
    CHECK_THROWS_AS(iga_norm_constant(2.0, 1, 2.0, 2.0), DomainError);
    CHECK_THROWS_AS(iga_norm_constant(0.5, 1, 1.0, 1.0), DomainError);
}

TEST_CASE("iga_norm_constant matches the beta-integral quadrature") {
    std::mt19937_64 gen(104);
    std::uniform_int_distribution<int> ug(1, 4);
    std::uniform_real_distribution<double> up(0.3, 3.0), ul(std::log(1e-4), std::log(6.0)), uf(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const int g = ug(gen);
        const double p = up(gen);
        const double beta = -2.0 + uf(gen) * (p * g - 0.05 + 2.0);
        const double log_eta = std::exp(ul(gen));
        const double k = iga_norm_constant_log(beta, g, p, log_eta);
        const double ref = oracle::iga_k_quadrature(beta, g, p, log_eta);
        CHECK(std::fabs(k / ref - 1.0) < 1e-10);
    }
}

TEST_CASE("iga_norm_constant at integer exponents np = beta") {
    for (int g = 1; g <= 4; ++g) {
        for (int n = 0; n < g; ++n) {
            const double p = 0.8, beta = n * p;
            for (double log_eta : {1e-3, 0.4, 3.0}) {
                CHECK(iga_norm_constant_log(beta, g, p, log_eta) ==
                      doctest::Approx(oracle::iga_k_quadrature(beta, g, p, log_eta)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("iga pdf normalization, small-u asymptote and envelope") {
    const auto params = IgaParams::from_eta(0.5, 2, 1.5, std::exp(0.3));
    auto pdf = [&](double u) { return iga_pdf(params, u); };
    const double total = oracle::integrate_singular(pdf, 0.0, 1.0) + oracle::integrate_to_inf(pdf, 1.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));

    const auto g1 = IgaParams::from_eta(0.7, 1, 2.0, 1.5);
    const double u = 1e-4;
    const double asym = 0.5 * std::pow(u, 2.0) * std::pow(u, -1.7) / g1.k_const();
    CHECK(iga_pdf(g1, u) / asym == doctest::Approx(1.0).epsilon(1e-6));

    std::mt19937_64 gen(105);
    std::uniform_real_distribution<double> lu(std::log(1e-4), std::log(20.0));
    for (int i = 0; i < 10'000; ++i) {
        const double x = std::exp(lu(gen));
        const double envelope = params.v1() * gen_gamma_pdf(params.p() * params.gamma() - params.beta(), params.p(), 1.0, x);
        CHECK(iga_pdf(params, x) <= envelope * (1 + 1e-12));
        const double ratio = iga_accept_ratio(params, x);
        CHECK(ratio >= 0.0);
        CHECK(ratio <= 1.0);
    }
    CHECK(params.v1() >= 1.0);
}

TEST_CASE("iga_moment") {
    const auto params = IgaParams::from_eta(1.0, 2, 1.0, std::exp(0.1));
    CHECK(iga_moment(params, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(iga_moment(params, 1.0) == doctest::Approx(0.93550467541563538018).epsilon(1e-11));
    CHECK_THROWS_AS(iga_moment(params, -1.0), DomainError);

    RandomSource rng(106);
    std::vector<double> xs(1'000'000);
    for (auto& x : xs) x = sample_iga(params, rng);
    const auto m = oracle::mean_se(xs);
    CHECK(std::fabs(m.mean - iga_moment(params, 1.0)) < 3 * m.se);
}

TEST_CASE("IGa sampler: KS, acceptance rate, determinism") {
    const auto params = IgaParams::from_eta(-0.5, 2, 2.0, std::exp(0.5));
    RandomSource rng(107);
    const std::size_t n = 100'000;
    std::vector<double> xs(n);
    std::uint64_t proposals = 0;
    for (auto& x : xs) {
        const auto d = sample_iga_counted(params, rng);
        x = d.value;
        proposals += d.proposals;
    }
    CHECK(oracle::ks_one_sample_pdf(xs, [&](double u) { return iga_pdf(params, u); }, 0.0) < oracle::ks_critical_1pct(n));
    const double acc = double(n) / double(proposals);
    const double se = acc * std::sqrt((1 - acc) / n);
    CHECK(std::fabs(acc - 1.0 / params.v1()) < 3 * se);

    RandomSource r1(5), r2(5);
    for (int i = 0; i < 100; ++i) CHECK(sample_iga(params, r1) == sample_iga(params, r2));

    const auto near_one = IgaParams::from_eta(1.0, 2, 1.0, 1.01);
    CHECK(1.0 / near_one.v1() > 0.99);
}

TEST_CASE("K asymptotics") {
    const double tiny = 1e-4;
    for (double beta : {-0.5, 0.0, 0.5, 1.5}) {
        for (int g : {1, 2}) {
            const double p = 1.0;
            if (p * g <= beta) continue;
            const double c = beta / p;
            const double k = iga_norm_constant_log(beta, g, p, std::log1p(tiny));
            const double asym = std::tgamma(g - c) * std::pow(tiny, g) / (p * std::tgamma(g + 1.0));
            CHECK(k / asym == doctest::Approx(1.0).epsilon(0.01));
        }
    }
    const double eta = 1e8;
    {
        const double beta = 0.5, p = 1.0;
        const int g = 2;
        const double asym = std::tgamma(g - beta / p) / (beta * std::tgamma(double(g))) * std::pow(eta, beta / p);
        CHECK(iga_norm_constant(beta, g, p, eta) / asym == doctest::Approx(1.0).epsilon(0.01));
    }
    {
        const double p = 1.0;
        CHECK(iga_norm_constant(0.0, 1, p, eta) / (std::log(eta) / p) == doctest::Approx(1.0).epsilon(0.01));
    }
    {
        const double beta = -0.5, p = 1.0;
        const double asym = std::tgamma(-beta / p) / p;
        CHECK(iga_norm_constant(beta, 2, p, eta) / asym == doctest::Approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("log-Laplace law") {
    const LlParams ll{1.5, 3.0};
    CHECK(ll_pdf(ll, 1.0) == doctest::Approx(1.5 * 0.5));
    CHECK(ll_pdf(ll, 2.0) == doctest::Approx(0.13258252147247766083).epsilon(1e-14));
    const double total = oracle::integrate_singular([&](double u) { return ll_pdf(ll, u); }, 0.0, 1.0) +
                         oracle::integrate_to_inf([&](double u) { return ll_pdf(ll, u); }, 1.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(validate(LlParams{2.0, 1.0}), DomainError);

    RandomSource rng(108);
    const std::size_t n = 100'000;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = sample_ll(ll, rng);
        b[i] = sample_ll_two_uniform(ll, rng);
    }
    CHECK(oracle::ks_two_sample(a, b) < oracle::ks_critical_1pct(n, n));
    CHECK(oracle::ks_one_sample(a, [&](double u) { return ll_cdf(ll, u); }) < oracle::ks_critical_1pct(n));
}
