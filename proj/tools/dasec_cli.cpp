#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dasec/harness.hpp"

using namespace dasec;

namespace {

enum Exit { kOk = 0, kValidationFailure = 1, kConfigError = 2, kSolverFailure = 3 };

struct Common {
    std::string config;
    long long seed = -1;
    std::string out_dir = "out";
    int samples = -1;
    std::string variant = "imperfect-prob";
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "scenario config file (key = value lines)");
    sub->add_option("--seed", c.seed, "override the config seed");
    sub->add_option("--out-dir", c.out_dir, "directory for CSV output");
    sub->add_option("--samples", c.samples, "Monte Carlo samples");
    sub->add_option("--variant", c.variant, "imperfect-prob, imperfect-det, unknown-prob or unknown-det");
}

ScenarioConfig load(const Common& c) {
    ScenarioConfig cfg = c.config.empty() ? ScenarioConfig{} : load_config(c.config);
    if (c.seed >= 0) cfg.seed = static_cast<std::uint64_t>(c.seed);
    validate(cfg);
    return cfg;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secure CI precoding with antenna selection for distributed antennas"};
    app.require_subcommand(1);

    Common run_c, sweep_c, heat_c, val_c, bf_c;
    auto* run = app.add_subcommand("run", "solve one instance, write solution, summary, trace and MC report");
    add_common(run, run_c);

    auto* sweep = app.add_subcommand("sweep", "parameter sweep over independent trials");
    add_common(sweep, sweep_c);
    std::string sweep_var = "gamma_d", sweep_values = "0,10,20,30", variants, layouts = "da_grid";
    int trials = 10;
    bool no_as = false;
    sweep->add_option("--var", sweep_var, "gamma_d, gamma_k, edge_fraction, num_eves or sigma_e");
    sweep->add_option("--values", sweep_values, "comma separated, ascending");
    sweep->add_option("--trials", trials, "channel draws per point");
    sweep->add_option("--variants", variants, "comma separated variants (default: --variant)");
    sweep->add_option("--layouts", layouts, "comma separated: da_grid, ca_center");
    sweep->add_flag("--no-as", no_as, "keep every antenna on");

    auto* heat = app.add_subcommand("heatmap", "per-antenna activation frequency over random placements");
    add_common(heat, heat_c);
    int heat_trials = 200;
    heat->add_option("--trials", heat_trials, "number of placements");

    auto* val = app.add_subcommand("validate", "invariant suite on the configured instance");
    add_common(val, val_c);

    auto* bf = app.add_subcommand("bruteforce", "enumerate every selection (N <= 12)");
    add_common(bf, bf_c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (*run) {
            const ScenarioConfig cfg = load(run_c);
            const auto r = harness::run_single(cfg, parse_variant(run_c.variant), run_c.samples < 0 ? 10000 : run_c.samples,
                                               run_c.out_dir);
            std::printf("%s %s total %.6g mW (tx %.6g, circuit %.6g), %d active, %d iterations\n",
                        to_string(parse_variant(run_c.variant)).c_str(), to_string(r.sol.status).c_str(),
                        r.sol.power.total_mw, r.sol.power.tx_mw, r.sol.power.circuit_mw,
                        r.sol.ok() ? r.sol.selection.active() : 0, r.sol.iterations);
            if (!r.sol.ok()) {
                std::fprintf(stderr, "solver failure: %s\n", r.sol.diagnostic.c_str());
                return kSolverFailure;
            }
            if (r.mc.n_samples > 0) std::printf("MC ir_ci_prob %.4f over %d samples\n", r.mc.ir_ci_prob, r.mc.n_samples);
            return kOk;
        }
        if (*sweep) {
            const ScenarioConfig cfg = load(sweep_c);
            harness::SweepSpec spec;
            spec.var = harness::parse_sweep_var(sweep_var);
            spec.values.clear();
            for (const auto& v : split(sweep_values)) {
                try {
                    spec.values.push_back(std::stod(v));
                } catch (const std::exception&) {
                    throw ConfigError("bad sweep value: " + v);
                }
            }
            spec.n_trials = trials;
            spec.variants.clear();
            for (const auto& v : split(variants.empty() ? sweep_c.variant : variants)) spec.variants.push_back(parse_variant(v));
            spec.layouts.clear();
            for (const auto& l : split(layouts)) {
                ScenarioConfig tmp;
                apply_key(tmp, "layout", l);
                spec.layouts.push_back(tmp.layout);
            }
            spec.no_as = no_as;
            spec.mc_samples = sweep_c.samples < 0 ? 1000 : sweep_c.samples;
            harness::run_sweep(cfg, spec, sweep_c.out_dir);
            std::printf("wrote %s/sweep.csv and sweep_summary.csv\n", sweep_c.out_dir.c_str());
            return kOk;
        }
        if (*heat) {
            const ScenarioConfig cfg = load(heat_c);
            const auto f = harness::activation_heatmap(cfg, parse_variant(heat_c.variant), heat_trials, heat_c.out_dir);
            for (std::size_t i = 0; i < f.size(); ++i) std::printf("DA%-3zu %.3f\n", i + 1, f[i]);
            return kOk;
        }
        if (*val) {
            const ScenarioConfig cfg = load(val_c);
            const auto rows = harness::validate(cfg, val_c.samples < 0 ? 10000 : val_c.samples);
            bool all = true;
            std::printf("%-40s %-28s %-18s %s\n", "check", "value", "bar", "result");
            for (const auto& r : rows) {
                std::printf("%-40s %-28s %-18s %s\n", r.name.c_str(), r.value.c_str(), r.bar.c_str(),
                            r.pass ? "PASS" : "FAIL");
                all = all && r.pass;
            }
            return all ? kOk : kValidationFailure;
        }
        if (*bf) {
            const ScenarioConfig cfg = load(bf_c);
            if (cfg.n_das > 12) throw ConfigError("bruteforce needs n_das <= 12");
            const auto r = harness::run_bruteforce(cfg, parse_variant(bf_c.variant), bf_c.out_dir);
            if (!r.found) {
                std::printf("no feasible selection\n");
                return kSolverFailure;
            }
            std::printf("best total %.6g mW\n", r.best_total_mw);
            return kOk;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const PreconditionError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kSolverFailure;
    }
    return kOk;
}
