// Acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance [name-substring]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dasec/oracle.hpp"
#include "dasec/robustify.hpp"

using namespace dasec;

namespace {

// tolerances
constexpr double kProbBar = 0.93;
constexpr int kMcSamples = 100000;
constexpr int kBallSamples = 10000;
constexpr double kEigTol = 1e-8;
constexpr double kScaGap = 0.05;
constexpr double kBruteSlack = 1e-6;
constexpr int kMaxIters = 10;
constexpr double kMonoTol = 1e-6;
constexpr double kBinaryTol = 1e-3;
constexpr double kAnTol = 1e-4;
constexpr double kReductionTol = 1e-4;

struct Outcome {
    bool pass = false;
    std::string detail;
};

ChannelSet instance(const ScenarioConfig& cfg) {
    const Deployment dep = make_deployment(cfg);
    Rng rng = channel_rng(cfg.seed);
    return draw_channels(dep, cfg, rng);
}

ScenarioConfig base(int n, int k, std::uint64_t seed) {
    ScenarioConfig c;
    c.n_das = n;
    c.n_eves = k;
    c.seed = seed;
    c.edge_fraction = 1.0;
    return c;
}

// binary-convergence gaps seen by any check
double g_binary_gap = 0.0;
int g_binary_count = 0;

PrecoderSolution solve_tracked(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg) {
    PrecoderSolution s = sca_solve(v, ch, cfg, reference_symbol(cfg));
    if (s.ok()) {
        g_binary_gap = std::max(g_binary_gap, s.selection.max_rounding_gap());
        ++g_binary_count;
    }
    return s;
}

std::string fmt(const char* f, double a) {
    char b[128];
    std::snprintf(b, sizeof b, f, a);
    return b;
}

Outcome chance_soundness() {
    Outcome o{true, ""};
    double worst_ir = 1.0, worst_eve = 1.0, worst_time = 0.0;
    for (std::uint64_t seed : {1, 2, 3}) {
        ScenarioConfig cfg = base(8, 3, seed);
        cfg.covariance_mode = CovarianceMode::DerivedExact;
        const ChannelSet ch = instance(cfg);
        const auto t0 = std::chrono::steady_clock::now();
        const PrecoderSolution s = solve_tracked(Variant::ImperfectProb, ch, cfg);
        if (!s.ok()) return {false, "seed " + std::to_string(seed) + " solve " + to_string(s.status)};
        Rng rng = oracle_rng(seed);
        const auto rep = oracle::mc_validate(s, ch, cfg, reference_symbol(cfg), kMcSamples, rng);
        worst_time = std::max(worst_time, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        worst_ir = std::min(worst_ir, rep.ir_ci_prob);
        for (double p : rep.eve_destr_prob) worst_eve = std::min(worst_eve, p);
    }
    o.pass = worst_ir >= kProbBar && worst_eve >= kProbBar && worst_time < 120.0;
    o.detail = "3 instances, min ir_ci_prob " + fmt("%.4f", worst_ir) + ", min eve_destr_prob " + fmt("%.4f", worst_eve) +
               " (bar 0.93), max time " + fmt("%.1f s", worst_time);
    return o;
}

Outcome worst_case_soundness() {
    int violations = 0;
    double worst = 0.0;
    for (std::uint64_t seed : {1, 2, 3}) {
        ScenarioConfig cfg = base(8, 3, seed);
        cfg.covariance_mode = CovarianceMode::DerivedExact;
        cfg.sproc_mode = SprocMode::NormRobust;
        const ChannelSet ch = instance(cfg);
        const PrecoderSolution s = solve_tracked(Variant::ImperfectDet, ch, cfg);
        if (!s.ok()) return {false, "seed " + std::to_string(seed) + " solve " + to_string(s.status)};
        Rng rng = oracle_rng(seed);
        const auto rep =
            oracle::mc_validate(s, ch, cfg, reference_symbol(cfg), kBallSamples, rng, oracle::McSampling::Ball);
        violations += rep.ir_violations;
        worst = std::max(worst, rep.worst_violation);
    }
    return {violations == 0, "3 instances x 1e4 in-ball samples, IR violations " + std::to_string(violations) +
                                 ", worst deficit " + fmt("%.2e", worst)};
}

Outcome soc_lmi_equivalence() {
    Rng rng(20240601);
    std::normal_distribution<double> g(0.0, 1.0);
    int disagree = 0, feasible = 0;
    const int n = 4;
    for (int trial = 0; trial < 1000; ++trial) {
        RVec a(2 * n), x(2 * n), cov(2 * n);
        for (int i = 0; i < 2 * n; ++i) {
            a[i] = g(rng);
            x[i] = g(rng);
            cov[i] = std::abs(g(rng)) * 0.3;
        }
        const double rhs = 3.0 * g(rng);
        const auto soc = robust::chance_to_soc(a, cov, 0.95, rhs, QuantileMode::Normal);
        const auto lmi = robust::soc_to_lmi(soc);
        const bool s_ok = soc.slack(x) >= 0.0;
        const bool l_ok = lmi.min_eig(x, {}) >= -kEigTol;
        feasible += s_ok;
        if (s_ok != l_ok) ++disagree;
    }
    return {disagree == 0, "1000 points (" + std::to_string(feasible) + " feasible), disagreements " +
                               std::to_string(disagree) + ", eig tol 1e-8"};
}

Outcome sca_gap() {
    int worse = 0, dominated = 0, fails = 0;
    double max_gap = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ScenarioConfig cfg = base(4, 2, seed);
        const ChannelSet ch = instance(cfg);
        const PrecoderSolution s = solve_tracked(Variant::ImperfectProb, ch, cfg);
        const auto bf = oracle::brute_force_selection(Variant::ImperfectProb, ch, cfg, reference_symbol(cfg));
        if (!s.ok() || !bf.found) {
            // both must agree on infeasibility
            if (s.ok() != bf.found) ++fails;
            continue;
        }
        const double gap = (s.power.total_mw - bf.best_total_mw) / bf.best_total_mw;
        max_gap = std::max(max_gap, gap);
        if (gap > kScaGap) ++worse;
        if (bf.best_total_mw > s.power.total_mw + kBruteSlack) ++dominated;
    }
    return {worse == 0 && dominated == 0 && fails == 0,
            "20 instances, max relative gap " + fmt("%.2e", max_gap) + " (bar 0.05), brute force worse " +
                std::to_string(dominated) + ", feasibility mismatches " + std::to_string(fails)};
}

Outcome convergence() {
    int too_long = 0, rising = 0, failed = 0, runs = 0, max_it = 0;
    double worst_rise = 0.0;
    const Variant all[] = {Variant::ImperfectProb, Variant::ImperfectDet, Variant::UnknownProb, Variant::UnknownDet};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ScenarioConfig cfg = base(8, 3, seed);
        const ChannelSet ch = instance(cfg);
        for (Variant v : all) {
            const PrecoderSolution s = solve_tracked(v, ch, cfg);
            ++runs;
            if (!s.ok()) {
                ++failed;
                continue;
            }
            max_it = std::max(max_it, s.iterations);
            if (s.iterations > kMaxIters) ++too_long;
            for (std::size_t i = 1; i < s.trace.size(); ++i) {
                const auto& a = s.trace[i - 1];
                const auto& b = s.trace[i];
                if (a.stage != b.stage) continue;
                const double rise = (b.objective - a.objective) / std::max(1.0, std::abs(a.objective));
                worst_rise = std::max(worst_rise, rise);
                if (rise > kMonoTol) ++rising;
            }
        }
    }
    return {too_long == 0 && rising == 0 && failed == 0,
            std::to_string(runs) + " runs (4 variants), max SCA iterations " + std::to_string(max_it) +
                " (bar 10), failures " + std::to_string(failed) + ", max relative rise " + fmt("%.1e", worst_rise)};
}

Outcome an_floor() {
    double worst = conic::kInf;
    int failed = 0;
    for (std::uint64_t seed : {1, 2, 3}) {
        ScenarioConfig cfg = base(8, 3, seed);
        const ChannelSet ch = instance(cfg);
        for (Variant v : {Variant::UnknownProb, Variant::UnknownDet}) {
            const PrecoderSolution s = solve_tracked(v, ch, cfg);
            if (!s.ok()) {
                ++failed;
                continue;
            }
            worst = std::min(worst, s.z.squaredNorm() - cfg.p_an_mw());
        }
    }
    return {failed == 0 && worst >= -kAnTol, "6 runs, min ||z||^2 - p_AN " + fmt("%.3e mW", worst) +
                                                 " (p_AN " + fmt("%.1f mW", base(8, 3, 1).p_an_mw()) + ")"};
}

Outcome zero_error_reduction() {
    double worst_total = 0.0, worst_tx = 0.0;
    int failed = 0;
    for (std::uint64_t seed : {1, 2, 3}) {
        ScenarioConfig cfg = base(8, 3, seed);
        cfg.sigma_e = 0.0;
        cfg.quantile = QuantileMode::ErfLiteral;
        cfg.eta_d = cfg.eta_k = 0.5;
        const ChannelSet ch = instance(cfg);
        const PrecoderSolution s = solve_tracked(Variant::ImperfectProb, ch, cfg);
        if (!s.ok()) {
            ++failed;
            continue;
        }
        const auto nom = oracle::nominal_ci_reference(ch, cfg, reference_symbol(cfg), s.selection.t_rounded);
        if (!nom.feasible) {
            ++failed;
            continue;
        }
        worst_total = std::max(worst_total, std::abs(s.power.total_mw - nom.total_mw) / nom.total_mw);
        worst_tx = std::max(worst_tx, std::abs(s.power.tx_mw - nom.tx_mw) / std::max(nom.tx_mw, 1e-12));
    }
    return {failed == 0 && worst_total <= kReductionTol,
            "3 instances, max relative objective difference " + fmt("%.2e", worst_total) +
                " (bar 1e-4), transmit part " + fmt("%.2e", worst_tx)};
}

Outcome trends() {
    const double gammas[] = {0.0, 10.0, 20.0, 30.0};
    std::vector<double> mean(4, 0.0);
    int used = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::vector<double> tot;
        for (double gdb : gammas) {
            ScenarioConfig cfg = base(8, 3, seed);
            cfg.gamma_d_db = gdb;
            const PrecoderSolution s = solve_tracked(Variant::ImperfectProb, instance(cfg), cfg);
            if (!s.ok()) break;
            tot.push_back(s.power.total_mw);
        }
        if (tot.size() != 4) continue;
        ++used;
        for (int i = 0; i < 4; ++i) mean[i] += tot[i];
    }
    bool mono = used > 0;
    for (int i = 0; i < 4; ++i) mean[i] /= std::max(used, 1);
    for (int i = 1; i < 4; ++i) mono = mono && mean[i] >= mean[i - 1] - kMonoTol * mean[i - 1];

    double da = 0.0, ca = 0.0;
    int pairs = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ScenarioConfig cfg = base(8, 3, seed);
        const PrecoderSolution a = solve_tracked(Variant::ImperfectProb, instance(cfg), cfg);
        cfg.layout = Layout::CaCenter;
        const PrecoderSolution b = solve_tracked(Variant::ImperfectProb, instance(cfg), cfg);
        if (!a.ok() || !b.ok()) continue;
        da += a.power.total_mw;
        ca += b.power.total_mw;
        ++pairs;
    }
    const bool layout_ok = pairs > 0 && da <= ca;
    return {mono && layout_ok, "gamma_d sweep means " + fmt("%.1f", mean[0]) + " " + fmt("%.1f", mean[1]) + " " +
                                   fmt("%.1f", mean[2]) + " " + fmt("%.1f", mean[3]) + " mW over " +
                                   std::to_string(used) + " trials; edge DA mean " + fmt("%.1f", da / std::max(pairs, 1)) +
                                   " vs CA mean " + fmt("%.1f", ca / std::max(pairs, 1)) + " over " +
                                   std::to_string(pairs) + " trials"};
}

Outcome heatmap() {
    std::vector<double> freq(16, 0.0);
    int used = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        ScenarioConfig cfg = base(16, 3, seed);
        const PrecoderSolution s = solve_tracked(Variant::ImperfectProb, instance(cfg), cfg);
        if (!s.ok()) continue;
        ++used;
        for (int i = 0; i < 16; ++i) freq[i] += s.selection.t_rounded[i];
    }
    // 4x4 grid, index = row * 4 + col; centre cells are rows/cols 1..2
    double centre = 0.0, outer = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const bool in = r >= 1 && r <= 2 && c >= 1 && c <= 2;
            (in ? centre : outer) += freq[r * 4 + c] / std::max(used, 1);
        }
    centre /= 4.0;
    outer /= 12.0;
    return {used > 0 && centre < outer, std::to_string(used) + " placements, central mean activation " +
                                            fmt("%.3f", centre) + " vs outer " + fmt("%.3f", outer)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string filter = argc > 1 ? argv[1] : "";
    struct Check {
        const char* name;
        std::function<Outcome()> fn;
    };
    const std::vector<Check> checks = {
        {"chance_constraint_soundness", chance_soundness},
        {"worst_case_soundness", worst_case_soundness},
        {"soc_lmi_equivalence", soc_lmi_equivalence},
        {"sca_optimality_gap", sca_gap},
        {"sca_convergence", convergence},
        {"an_floor", an_floor},
        {"zero_error_reduction", zero_error_reduction},
        {"power_trends", trends},
        {"activation_heatmap", heatmap},
    };
    int failures = 0;
    for (const auto& c : checks) {
        if (!filter.empty() && std::string(c.name).find(filter) == std::string::npos) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %-28s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), dt);
        std::fflush(stdout);
        failures += !o.pass;
    }
    const bool bin_ok = g_binary_count > 0 && g_binary_gap <= kBinaryTol;
    if (filter.empty() || std::string("binary_convergence").find(filter) != std::string::npos) {
        std::printf("%s %-28s %d solutions from the checks above, max |t - round(t)| %.2e (bar 1e-3)\n",
                    bin_ok ? "PASS" : "FAIL", "binary_convergence", g_binary_count, g_binary_gap);
        failures += !bin_ok;
    }
    return failures == 0 ? 0 : 1;
}
