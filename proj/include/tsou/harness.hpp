#pragma once
// Library side of the command-line harness: model configs, the four commands, and
// their reports. Commands return text; the caller writes files only on success.

#include "tsou/ou_transition.hpp"
#include "tsou/stats.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tsou::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

//! Model config, JSON:
//!   {"alpha": 1.5, "p": 1, "lambda": 1, "b": [0],
//!    "measure": {"type": "pt", "ell": 1, "c": 10}}
//! measure types: "pt" (needs p = 1), "atoms" ({"atoms": [{"location": [..], "weight": w}]}),
//! "spectral" ({"atoms": [{"xi": [..], "sigma": w, "s": [..], "w": [..]}]}).
//! Throws DomainError on malformed or invalid models.
TsouParams parse_model(const std::string& json_text);
TsouParams load_model(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

//! Shortest round-trip decimal, independent of the locale.
std::string format_double(double v);

struct SimulateOptions {
    double t = 0.1;
    std::size_t steps = 1000;
    std::uint64_t seed = 1;
    std::optional<ProductStrategy> strategy;
    std::optional<std::vector<double>> y0; // limiting law when empty (d = 1)
};

//! Header "step,time,value[,value_2..]", one row per observation.
std::string simulate_csv(const TsouParams& params, const SimulateOptions& options);

struct StationaryOptions {
    double t = 0.1;
    std::size_t steps = 50000;
    std::uint64_t seed = 1;
    std::optional<ProductStrategy> strategy;
    stats::KdeSpec kde;
    std::size_t thin_every = 50;
    unsigned threads = 1;
};

struct StationaryResult {
    std::vector<double> path;
    stats::KdeResult kde;
    std::vector<double> true_pdf;
    double sup_gap;          // max over the grid of |kde - pdf|
    double kde_mass;         // trapezoid integral of the KDE over the grid
    double ks_thinned;       // KS of every thin_every-th observation against the limiting cdf
    double ks_critical;      // 1% critical value for the thinned sample
    std::size_t thinned_size;
    stats::MeanSe skewness; // of the thinned sample, whose draws are close to independent
};

StationaryResult run_stationary(const TsouParams& params, const StationaryOptions& options);
//! Header "x,kde,true_pdf".
std::string stationary_csv(const StationaryResult& result);
std::string stationary_svg(const StationaryResult& result, const std::string& title);
std::string stationary_summary_json(const StationaryResult& result);

struct BenchReport {
    std::string target;
    std::size_t n;
    std::uint64_t seed;
    std::uint64_t proposals;
    double measured;    // n / proposals
    double theoretical; // 1 / V
    double standard_error;
    double proposals_per_sample;
    bool within_3se;
    // spectral targets only
    std::optional<double> alg2_theoretical, alg3_theoretical, zeta, zeta_threshold;
};

//! target "iga": params {"beta", "gamma", "p", "eta" or "log_eta"}.
//! targets "alg2", "alg3": a spectral model config plus "t" and optionally "atom".
BenchReport run_bench_accept(const std::string& target, const std::string& params_json, std::size_t n,
                             std::uint64_t seed);
std::string to_json(const BenchReport& report);

struct OracleCfOptions {
    double t = 0.1;
    double y = 0.0;
    std::vector<double> z;
    std::size_t n = 100000;
    std::uint64_t seed = 1;
    std::optional<ProductStrategy> strategy;
    unsigned threads = 1;
};

struct OracleCfPoint {
    double z;
    std::complex<double> oracle;    // exp of the transition exponent
    std::complex<double> empirical; // mean of exp(i z Y_t) over the draws
    double gap;
};

struct OracleCfReport {
    std::vector<OracleCfPoint> points;
    double max_gap;
    double bound; // 4 / sqrt(n)
    std::size_t n;
    std::string strategy;
};

//! n one-step transitions from y, drawn in fixed blocks with one random stream per block,
//! so the draws do not depend on the thread count.
std::vector<double> sample_transitions(const TransitionSampler& sampler, double y, std::size_t n, std::uint64_t seed,
                                       unsigned threads);

OracleCfReport run_oracle_cf(const TsouParams& params, const OracleCfOptions& options);
std::string to_json(const OracleCfReport& report);

//! "1,2.5,-3" -> {1, 2.5, -3}.
std::vector<double> parse_list(const std::string& text);

} // namespace tsou::harness
