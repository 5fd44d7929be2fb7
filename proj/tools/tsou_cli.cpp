// Command-line front end. Exit codes: 0 success, 2 bad configuration, 3 numerical failure.

#include "tsou/errors.hpp"
#include "tsou/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

using namespace tsou;
using namespace tsou::harness;

namespace {

std::optional<ProductStrategy> strategy_from(const std::string& name) {
    if (name.empty()) return std::nullopt;
    return parse_product_strategy(name);
}

void check_positive(double t, std::size_t steps) {
    if (!(t > 0.0)) throw DomainError("--t must be positive");
    if (steps < 1) throw DomainError("--steps must be at least 1");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulation of tempered stable OU processes"};
    app.require_subcommand(1);

    std::string config, out, svg_out, strategy, grid = "-10:10:0.01", y0_text = "stationary", target, params_json, z_text;
    double t = 0.1, y = 0.0, bandwidth = 0.0;
    std::size_t steps = 1000, n = 100000, thin_every = 50;
    std::uint64_t seed = 1;

    auto* simulate = app.add_subcommand("simulate", "simulate one path and write step,time,value rows");
    simulate->add_option("--config", config, "model JSON")->required();
    simulate->add_option("--t", t, "time step")->required();
    simulate->add_option("--steps", steps, "number of transitions")->required();
    simulate->add_option("--seed", seed, "random seed")->required();
    simulate->add_option("--strategy", strategy, "direct, alg2 or alg3");
    simulate->add_option("--y0", y0_text, "starting point, comma separated, or 'stationary'");
    simulate->add_option("--out", out, "CSV path")->required();

    auto* stationary = app.add_subcommand("stationary", "KDE of a long path against the limiting pdf");
    stationary->add_option("--config", config, "model JSON")->required();
    stationary->add_option("--t", t, "time step")->required();
    stationary->add_option("--steps", steps, "number of transitions")->required();
    stationary->add_option("--seed", seed, "random seed")->required();
    stationary->add_option("--grid", grid, "LO:HI:STEP");
    stationary->add_option("--bandwidth", bandwidth, "KDE bandwidth (Silverman's rule when omitted)");
    stationary->add_option("--thin", thin_every, "thinning step for the KS check");
    stationary->add_option("--strategy", strategy, "direct, alg2 or alg3");
    stationary->add_option("--out", out, "CSV path")->required();
    stationary->add_option("--svg", svg_out, "SVG path");

    auto* bench = app.add_subcommand("bench-accept", "measured vs theoretical acceptance rates");
    bench->add_option("--target", target, "iga, alg2 or alg3")->required();
    bench->add_option("--params", params_json, "parameters as inline JSON")->required();
    bench->add_option("--n", n, "number of accepted draws")->required();
    bench->add_option("--seed", seed, "random seed")->required();

    auto* oracle = app.add_subcommand("oracle-cf", "empirical vs exact transition characteristic function");
    oracle->add_option("--config", config, "model JSON")->required();
    oracle->add_option("--t", t, "time step")->required();
    oracle->add_option("--y", y, "starting point")->required();
    oracle->add_option("--z", z_text, "comma separated frequencies")->required();
    oracle->add_option("--n", n, "number of transitions")->required();
    oracle->add_option("--seed", seed, "random seed")->required();
    oracle->add_option("--strategy", strategy, "direct, alg2 or alg3");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*simulate) {
            check_positive(t, steps);
            SimulateOptions o{t, steps, seed, strategy_from(strategy), std::nullopt};
            if (y0_text != "stationary") o.y0 = parse_list(y0_text);
            write_file(out, simulate_csv(load_model(config), o));
        } else if (*stationary) {
            check_positive(t, steps);
            StationaryOptions o;
            o.t = t;
            o.steps = steps;
            o.seed = seed;
            o.strategy = strategy_from(strategy);
            o.kde.grid = stats::parse_grid(grid);
            if (stationary->count("--bandwidth") > 0) {
                if (!(bandwidth > 0.0)) throw DomainError("--bandwidth must be positive");
                o.kde.bandwidth = bandwidth;
            }
            o.thin_every = thin_every;
            o.threads = stats::thread_count();
            const auto result = run_stationary(load_model(config), o);
            const std::string csv = stationary_csv(result);
            const std::string picture = svg_out.empty() ? std::string() : stationary_svg(result, "limiting law: KDE vs pdf");
            write_file(out, csv);
            if (!svg_out.empty()) write_file(svg_out, picture);
            std::cout << stationary_summary_json(result);
        } else if (*bench) {
            std::cout << to_json(run_bench_accept(target, params_json, n, seed));
        } else if (*oracle) {
            if (!(t > 0.0)) throw DomainError("--t must be positive");
            OracleCfOptions o;
            o.t = t;
            o.y = y;
            o.z = parse_list(z_text);
            o.n = n;
            o.seed = seed;
            o.strategy = strategy_from(strategy);
            o.threads = stats::thread_count();
            std::cout << to_json(run_oracle_cf(load_model(config), o));
        }
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const UnsupportedOperation& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
