#include "tsou/errors.hpp"
#include "tsou/harness.hpp"
#include "tsou/simd_kernels.hpp"
#include "tsou/svg.hpp"
#include "tsou/transition_cf.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <thread>

namespace tsou::harness {

using nlohmann::json;

namespace {

constexpr std::size_t kTransitionBlock = 4096;

// exp() of a value that may carry a non-finite real part (e.g. -inf for impossible events)
std::complex<double> safe_exp(std::complex<double> c) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw NumericalFailure("transition exponent is not finite");
    return std::exp(c);
}

} // namespace

std::string simulate_csv(const TsouParams& params, const SimulateOptions& options) {
    if (options.steps < 1) throw DomainError("simulate: steps must be at least 1");
    const TransitionSampler sampler(params, options.t, options.strategy);
    RandomSource rng(options.seed);
    const std::size_t d = params.dim();
    std::vector<double> path;
    if (options.y0) {
        if (options.y0->size() != d) throw DomainError("simulate: y0 has the wrong dimension");
        path = simulate_path(sampler, *options.y0, options.steps, rng);
    } else {
        if (d != 1) throw DomainError("simulate: a starting point is required when d > 1");
        path = simulate_path(sampler, stationary_law(params), options.steps, rng);
    }
    std::string out = "step,time,value";
    for (std::size_t k = 2; k <= d; ++k) out += ",value_" + std::to_string(k);
    out += '\n';
    for (std::size_t i = 0; i <= options.steps; ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_double(static_cast<double>(i) * options.t);
        for (std::size_t k = 0; k < d; ++k) {
            out += ',';
            out += format_double(path[i * d + k]);
        }
        out += '\n';
    }
    return out;
}

StationaryResult run_stationary(const TsouParams& params, const StationaryOptions& options) {
    if (params.dim() != 1) throw UnsupportedOperation("stationary: d = 1 only");
    if (options.steps < 1) throw DomainError("stationary: steps must be at least 1");
    const TransitionSampler sampler(params, options.t, options.strategy);
    const TsLaw1d law = stationary_law(params);
    RandomSource rng(options.seed);
    StationaryResult r;
    r.path = simulate_path(sampler, law, options.steps, rng);
    r.kde = stats::kde(r.path, options.kde, options.threads);
    r.true_pdf.resize(r.kde.x.size());
    r.sup_gap = 0.0;
    for (std::size_t i = 0; i < r.kde.x.size(); ++i) {
        r.true_pdf[i] = law.pdf(r.kde.x[i]);
        r.sup_gap = std::max(r.sup_gap, std::fabs(r.kde.density[i] - r.true_pdf[i]));
    }
    r.kde_mass = stats::trapezoid(r.kde.density, options.kde.grid.step);
    const auto thinned = stats::thin(r.path, options.thin_every);
    r.thinned_size = thinned.size();
    r.ks_thinned = stats::ks_statistic(thinned, [&](double x) { return law.cdf(x); });
    r.ks_critical = stats::ks_critical(thinned.size());
    r.skewness = stats::skewness(thinned);
    return r;
}

std::string stationary_csv(const StationaryResult& result) {
    std::string out = "x,kde,true_pdf\n";
    for (std::size_t i = 0; i < result.kde.x.size(); ++i) {
        out += format_double(result.kde.x[i]) + ',' + format_double(result.kde.density[i]) + ',' +
               format_double(result.true_pdf[i]) + '\n';
    }
    return out;
}

std::string stationary_svg(const StationaryResult& result, const std::string& title) {
    return svg::line_plot(title, result.kde.x,
                          {{"KDE", "#1f77b4", result.kde.density}, {"limiting pdf", "#d62728", result.true_pdf}});
}

std::string stationary_summary_json(const StationaryResult& result) {
    json j;
    j["observations"] = result.path.size();
    j["bandwidth"] = result.kde.bandwidth;
    j["sup_gap"] = result.sup_gap;
    j["kde_mass"] = result.kde_mass;
    j["ks_thinned"] = result.ks_thinned;
    j["ks_critical_1pct"] = result.ks_critical;
    j["thinned_size"] = result.thinned_size;
    j["skewness"] = result.skewness.mean;
    j["skewness_se"] = result.skewness.se;
    return j.dump(2) + "\n";
}

BenchReport run_bench_accept(const std::string& target, const std::string& params_json, std::size_t n,
                             std::uint64_t seed) {
    if (n < 1) throw DomainError("bench-accept: n must be at least 1");
    json j;
    try {
        j = json::parse(params_json);
    } catch (const json::exception& e) {
        throw DomainError(std::string("bench-accept params: ") + e.what());
    }
    auto num = [&](const char* key) {
        if (!j.contains(key) || !j.at(key).is_number())
            throw DomainError(std::string("bench-accept params: missing number '") + key + "'");
        return j.at(key).get<double>();
    };
    BenchReport r;
    r.target = target;
    r.n = n;
    r.seed = seed;
    r.proposals = 0;
    RandomSource rng(seed);
    if (target == "iga") {
        const double beta = num("beta"), p = num("p");
        const double g = num("gamma");
        if (g < 1 || g != std::floor(g)) throw DomainError("bench-accept params: gamma must be a positive integer");
        const IgaParams iga = j.contains("log_eta") ? IgaParams::from_log_eta(beta, static_cast<int>(g), p, num("log_eta"))
                                                    : IgaParams::from_eta(beta, static_cast<int>(g), p, num("eta"));
        for (std::size_t i = 0; i < n; ++i) r.proposals += sample_iga_counted(iga, rng).proposals;
        r.theoretical = 1.0 / iga.v1();
    } else if (target == "alg2" || target == "alg3") {
        const TsouParams params = parse_model(params_json);
        if (!params.spectral) throw DomainError("bench-accept: alg2 and alg3 need a spectral model");
        const double t = num("t");
        if (!(t > 0.0)) throw DomainError("bench-accept: t must be positive");
        const double atom_value = j.contains("atom") ? num("atom") : 0.0;
        const SpectralProductSampler sampler(*params.spectral, params.alpha, params.p, params.lambda, t);
        if (atom_value < 0 || atom_value != std::floor(atom_value) || atom_value >= double(sampler.atoms().size()))
            throw DomainError("bench-accept: atom index out of range");
        const auto k = static_cast<std::size_t>(atom_value);
        const auto& atom = sampler.atoms()[k];
        if (target == "alg2") {
            for (std::size_t i = 0; i < n; ++i) r.proposals += sampler.sample_radial_alg2(k, rng).proposals;
        } else {
            for (std::size_t i = 0; i < n; ++i) r.proposals += sampler.sample_radial_alg3(k, rng).proposals;
        }
        r.alg2_theoretical = 1.0 / atom.v2;
        r.alg3_theoretical = 1.0 / atom.v3;
        r.theoretical = target == "alg2" ? *r.alg2_theoretical : *r.alg3_theoretical;
        r.zeta = atom.zeta;
        r.zeta_threshold = alg3_threshold(params.alpha, sampler.gamma(), params.p);
    } else {
        throw DomainError("bench-accept: unknown target '" + target + "' (expected iga, alg2 or alg3)");
    }
    r.measured = static_cast<double>(n) / static_cast<double>(r.proposals);
    // proposals until acceptance are geometric, so the binomial SE over all proposals applies
    r.standard_error = std::sqrt(r.theoretical * (1.0 - r.theoretical) / static_cast<double>(r.proposals));
    r.proposals_per_sample = static_cast<double>(r.proposals) / static_cast<double>(n);
    r.within_3se = std::fabs(r.measured - r.theoretical) <= 3.0 * r.standard_error;
    return r;
}

std::string to_json(const BenchReport& r) {
    json j;
    j["target"] = r.target;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["proposals"] = r.proposals;
    j["measured_acceptance"] = r.measured;
    j["theoretical_acceptance"] = r.theoretical;
    j["standard_error"] = r.standard_error;
    j["proposals_per_sample"] = r.proposals_per_sample;
    j["within_3se"] = r.within_3se;
    if (r.alg2_theoretical) j["alg2_theoretical_acceptance"] = *r.alg2_theoretical;
    if (r.alg3_theoretical) j["alg3_theoretical_acceptance"] = *r.alg3_theoretical;
    if (r.zeta) j["zeta"] = *r.zeta;
    if (r.zeta_threshold) j["zeta_threshold"] = *r.zeta_threshold;
    return j.dump(2) + "\n";
}

std::vector<double> sample_transitions(const TransitionSampler& sampler, double y, std::size_t n, std::uint64_t seed,
                                       unsigned threads) {
    std::vector<double> out(n);
    const std::size_t blocks = (n + kTransitionBlock - 1) / kTransitionBlock;
    auto work = [&](std::size_t first_block, std::size_t stride) {
        for (std::size_t b = first_block; b < blocks; b += stride) {
            RandomSource rng(seed, b + 1);
            const std::size_t end = std::min(n, (b + 1) * kTransitionBlock);
            for (std::size_t i = b * kTransitionBlock; i < end; ++i) out[i] = sampler.sample(y, rng);
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(blocks, 1))));
    if (threads == 1) {
        work(0, 1);
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work, k, threads);
    for (auto& th : pool) th.join();
    return out;
}

OracleCfReport run_oracle_cf(const TsouParams& params, const OracleCfOptions& options) {
    if (params.dim() != 1) throw UnsupportedOperation("oracle-cf: d = 1 only");
    if (options.n < 1) throw DomainError("oracle-cf: n must be at least 1");
    if (options.z.empty()) throw DomainError("oracle-cf: no z points");
    const TransitionSampler sampler(params, options.t, options.strategy);
    const TransitionCfOracle oracle(params, options.t);
    const auto draws = sample_transitions(sampler, options.y, options.n, options.seed, options.threads);
    OracleCfReport r;
    r.n = options.n;
    r.bound = 4.0 / std::sqrt(static_cast<double>(options.n));
    r.strategy = to_string(sampler.spec().strategy);
    r.max_gap = 0.0;
    for (double z : options.z) {
        OracleCfPoint pt;
        pt.z = z;
        pt.oracle = z == 0.0 ? std::complex<double>(1.0) : safe_exp(oracle.exponent(options.y, z));
        pt.empirical = stats::empirical_cf(draws, z);
        pt.gap = std::abs(pt.oracle - pt.empirical);
        r.max_gap = std::max(r.max_gap, pt.gap);
        r.points.push_back(pt);
    }
    return r;
}

std::string to_json(const OracleCfReport& r) {
    json j;
    j["n"] = r.n;
    j["strategy"] = r.strategy;
    j["bound"] = r.bound;
    j["max_gap"] = r.max_gap;
    j["within_bound"] = r.max_gap <= r.bound;
    json pts = json::array();
    for (const auto& p : r.points) {
        pts.push_back({{"z", p.z},
                       {"oracle_re", p.oracle.real()},
                       {"oracle_im", p.oracle.imag()},
                       {"empirical_re", p.empirical.real()},
                       {"empirical_im", p.empirical.imag()},
                       {"gap", p.gap}});
    }
    j["points"] = pts;
    return j.dump(2) + "\n";
}

} // namespace tsou::harness
