#include "dasec/harness.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>

namespace dasec::harness {

namespace {

std::string num(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.12g", v);
    return b;
}

std::string join_path(const std::string& dir, const char* name) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

std::string bits(const Eigen::VectorXi& t) {
    std::string s;
    for (int i = 0; i < t.size(); ++i) s += t[i] ? '1' : '0';
    return s;
}

PrecoderSolution solve_point(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg, bool no_as) {
    const SymbolSpec sym = reference_symbol(cfg);
    if (!no_as) return sca_solve(v, ch, cfg, sym);
    return fixed_t_solve(v, ch, cfg, sym, Eigen::VectorXi::Ones(ch.n()));
}

double mean_of(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

double std_of(const std::vector<double>& x) {
    if (x.size() < 2) return 0.0;
    const double m = mean_of(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(x.size() - 1));
}

}  // namespace

SweepVar parse_sweep_var(const std::string& s) {
    if (s == "gamma_d" || s == "GammaD") return SweepVar::GammaD;
    if (s == "gamma_k" || s == "GammaK") return SweepVar::GammaK;
    if (s == "edge_fraction" || s == "EdgeFraction") return SweepVar::EdgeFraction;
    if (s == "num_eves" || s == "NumEves") return SweepVar::NumEves;
    if (s == "sigma_e" || s == "SigmaE") return SweepVar::SigmaE;
    throw ConfigError("unknown sweep variable: " + s);
}

std::string to_string(SweepVar v) {
    switch (v) {
        case SweepVar::GammaD: return "gamma_d";
        case SweepVar::GammaK: return "gamma_k";
        case SweepVar::EdgeFraction: return "edge_fraction";
        case SweepVar::NumEves: return "num_eves";
        case SweepVar::SigmaE: return "sigma_e";
    }
    return "?";
}

void SweepSpec::check() const {
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[i - 1]) throw ConfigError("sweep values must be sorted");
    if (n_trials < 1) throw ConfigError("sweep needs n_trials >= 1");
    if (variants.empty() || layouts.empty()) throw ConfigError("sweep needs a variant and a layout");
    if (mc_samples < 0) throw ConfigError("mc samples must be >= 0");
}

void apply_sweep_value(ScenarioConfig& cfg, SweepVar var, double value) {
    switch (var) {
        case SweepVar::GammaD: cfg.gamma_d_db = value; break;
        case SweepVar::GammaK: cfg.gamma_k_db = value; break;
        case SweepVar::EdgeFraction: cfg.edge_fraction = value; break;
        case SweepVar::NumEves:
            if (value < 0 || value != std::floor(value)) throw ConfigError("num_eves sweep values must be integers");
            cfg.n_eves = static_cast<int>(value);
            break;
        case SweepVar::SigmaE: cfg.sigma_e = value; break;
    }
    validate(cfg);
}

ChannelSet make_instance(const ScenarioConfig& cfg) {
    const Deployment dep = make_deployment(cfg);
    Rng rng = channel_rng(cfg.seed);
    return draw_channels(dep, cfg, rng);
}

std::string provenance(const ScenarioConfig& cfg) {
    char b[96];
    std::snprintf(b, sizeof b, "# dasec config_hash=%016" PRIx64 " seed=%" PRIu64, config_hash(cfg), cfg.seed);
    return b;
}

CsvWriter::CsvWriter(const std::string& path, const ScenarioConfig& cfg, const std::vector<std::string>& header)
    : out_(path), cols_(header.size()) {
    if (!out_) throw std::runtime_error("cannot write " + path);
    out_ << provenance(cfg) << '\n';
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

CsvWriter& CsvWriter::cell(const std::string& s) {
    if (in_row_ == cols_) throw std::logic_error("csv row longer than header");
    out_ << (in_row_++ ? "," : "") << s;
    return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(num(v)); }
CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

void CsvWriter::end_row() {
    if (in_row_ != cols_) throw std::logic_error("csv row shorter than header");
    out_ << '\n';
    in_row_ = 0;
}

RunResult run_single(const ScenarioConfig& cfg, Variant v, int mc_samples, const std::string& out_dir) {
    const ChannelSet ch = make_instance(cfg);
    RunResult r;
    r.sol = sca_solve(v, ch, cfg, reference_symbol(cfg));
    const auto& s = r.sol;

    {
        CsvWriter w(join_path(out_dir, "trace.csv"), cfg,
                    {"stage", "iteration", "objective", "surrogate", "binary_gap"});
        for (const auto& e : s.trace) w.cell(e.stage).cell(e.iter).cell(e.objective).cell(e.surrogate).cell(e.binary_gap).end_row();
    }
    {
        CsvWriter w(join_path(out_dir, "summary.csv"), cfg, {"key", "value"});
        auto kv = [&](const char* k, const std::string& val) { w.cell(k).cell(val).end_row(); };
        kv("variant", to_string(v));
        kv("status", to_string(s.status));
        kv("total_mw", num(s.power.total_mw));
        kv("tx_mw", num(s.power.tx_mw));
        kv("circuit_mw", num(s.power.circuit_mw));
        kv("penalty_term", num(s.power.penalty_term));
        kv("active_antennas", std::to_string(s.ok() ? s.selection.active() : 0));
        kv("iterations", std::to_string(s.iterations));
        kv("relaxed_iterations", std::to_string(s.relaxed_iterations));
        kv("fixed_solves", std::to_string(s.n_solves));
        kv("rank1_gap", num(s.rank1_gap));
        kv("rank1_gap_z", num(s.rank1_gap_z));
        kv("audit_violation", num(s.audit_violation));
        kv("an_power_mw", num(s.z.squaredNorm()));
    }
    if (!s.ok()) return r;
    {
        CsvWriter w(join_path(out_dir, "solution.csv"), cfg,
                    {"antenna", "t_relaxed", "t_final", "t_selected", "u_re", "u_im", "z_re", "z_im", "w_re", "w_im",
                     "power_mw"});
        const int n = ch.n();
        for (int i = 0; i < n; ++i) {
            const cplx z = s.z.size() == n ? s.z[i] : cplx(0.0, 0.0);
            const cplx wv = s.w.size() == n ? s.w[i] : s.u[i];
            w.cell(i + 1)
                .cell(s.relaxed_t.size() == n ? s.relaxed_t[i] : s.selection.t[i])
                .cell(s.selection.t[i])
                .cell(s.selection.t_rounded[i])
                .cell(s.u[i].real())
                .cell(s.u[i].imag())
                .cell(z.real())
                .cell(z.imag())
                .cell(wv.real())
                .cell(wv.imag())
                .cell(std::norm(s.u[i]))
                .end_row();
        }
    }
    if (mc_samples > 0) {
        Rng rng = oracle_rng(cfg.seed);
        r.mc = oracle::mc_validate(s, ch, cfg, reference_symbol(cfg), mc_samples, rng);
        CsvWriter w(join_path(out_dir, "mc_report.csv"), cfg,
                    {"receiver", "n_samples", "region_prob", "sinr_exceed_prob", "mean_margin", "worst_violation"});
        w.cell("ir").cell(r.mc.n_samples).cell(r.mc.ir_ci_prob).cell("").cell(r.mc.mean_margin).cell(r.mc.worst_violation).end_row();
        for (std::size_t k = 0; k < r.mc.eve_destr_prob.size(); ++k)
            w.cell("eve" + std::to_string(k + 1))
                .cell(r.mc.n_samples)
                .cell(r.mc.eve_destr_prob[k])
                .cell(r.mc.eve_sinr_exceed_prob[k])
                .cell("")
                .cell("")
                .end_row();
    }
    return r;
}

void run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec, const std::string& out_dir) {
    spec.check();
    CsvWriter rows(join_path(out_dir, "sweep.csv"), cfg,
                   {"variant", "layout", "sweep_var", "value", "trial", "seed", "status", "total_mw", "tx_mw",
                    "circuit_mw", "active_antennas", "iterations", "ir_ci_prob"});
    CsvWriter summary(join_path(out_dir, "sweep_summary.csv"), cfg,
                      {"variant", "layout", "sweep_var", "value", "n_ok", "n_trials", "mean_total_mw", "std_total_mw",
                       "mean_tx_mw", "std_tx_mw", "mean_active", "mean_ir_ci_prob"});
    for (Variant v : spec.variants)
        for (Layout layout : spec.layouts)
            for (double value : spec.values) {
                std::vector<double> total, tx, active, prob;
                for (int trial = 0; trial < spec.n_trials; ++trial) {
                    ScenarioConfig c = cfg;
                    c.layout = layout;
                    c.seed = cfg.seed + static_cast<std::uint64_t>(trial);
                    apply_sweep_value(c, spec.var, value);
                    const ChannelSet ch = make_instance(c);
                    const PrecoderSolution s = solve_point(v, ch, c, spec.no_as);
                    double p = -1.0;
                    if (s.ok() && spec.mc_samples > 0) {
                        Rng rng = oracle_rng(c.seed);
                        p = oracle::mc_validate(s, ch, c, reference_symbol(c), spec.mc_samples, rng).ir_ci_prob;
                    }
                    rows.cell(to_string(v)).cell(to_string(layout)).cell(to_string(spec.var)).cell(value);
                    rows.cell(trial).cell(static_cast<long long>(c.seed)).cell(to_string(s.status));
                    if (s.ok()) {
                        rows.cell(s.power.total_mw).cell(s.power.tx_mw).cell(s.power.circuit_mw);
                        rows.cell(s.selection.active()).cell(s.iterations);
                        rows.cell(p >= 0.0 ? num(p) : std::string());
                        total.push_back(s.power.total_mw);
                        tx.push_back(s.power.tx_mw);
                        active.push_back(s.selection.active());
                        if (p >= 0.0) prob.push_back(p);
                    } else {
                        rows.cell("").cell("").cell("").cell("").cell(s.iterations).cell("");
                    }
                    rows.end_row();
                }
                summary.cell(to_string(v)).cell(to_string(layout)).cell(to_string(spec.var)).cell(value);
                summary.cell(static_cast<long long>(total.size())).cell(spec.n_trials);
                summary.cell(mean_of(total)).cell(std_of(total)).cell(mean_of(tx)).cell(std_of(tx));
                summary.cell(mean_of(active)).cell(prob.empty() ? std::string() : num(mean_of(prob)));
                summary.end_row();
            }
}

std::vector<double> activation_heatmap(const ScenarioConfig& cfg, Variant v, int n_trials, const std::string& out_dir) {
    if (n_trials < 1) throw ConfigError("heatmap needs n_trials >= 1");
    const int n = cfg.n_das;
    std::vector<double> freq(static_cast<std::size_t>(n), 0.0);
    int ok = 0;
    for (int trial = 0; trial < n_trials; ++trial) {
        ScenarioConfig c = cfg;
        c.seed = cfg.seed + static_cast<std::uint64_t>(trial);
        const PrecoderSolution s = sca_solve(v, make_instance(c), c, reference_symbol(c));
        if (!s.ok()) continue;
        ++ok;
        for (int i = 0; i < n; ++i) freq[i] += s.selection.t_rounded[i];
    }
    for (double& f : freq) f = ok ? f / ok : 0.0;
    const Deployment dep = make_deployment(cfg);
    CsvWriter w(join_path(out_dir, "heatmap.csv"), cfg, {"antenna", "x_m", "y_m", "activation_freq", "n_ok", "n_trials"});
    for (int i = 0; i < n; ++i)
        w.cell(i + 1)
            .cell(dep.da_positions[i].x)
            .cell(dep.da_positions[i].y)
            .cell(freq[i])
            .cell(ok)
            .cell(n_trials)
            .end_row();
    return freq;
}

oracle::BruteForceResult run_bruteforce(const ScenarioConfig& cfg, Variant v, const std::string& out_dir) {
    const ChannelSet ch = make_instance(cfg);
    auto res = oracle::brute_force_selection(v, ch, cfg, reference_symbol(cfg));
    CsvWriter w(join_path(out_dir, "bruteforce.csv"), cfg, {"selection", "active", "feasible", "total_mw", "best"});
    for (const auto& e : res.table) {
        w.cell(bits(e.t)).cell(e.t.sum()).cell(e.feasible ? 1 : 0);
        w.cell(e.feasible ? num(e.total_mw) : std::string());
        w.cell(res.found && e.t == res.best_t ? 1 : 0);
        w.end_row();
    }
    return res;
}

std::vector<CheckRow> validate(const ScenarioConfig& cfg, int mc_samples) {
    std::vector<CheckRow> out;
    auto row = [&](std::string name, std::string value, std::string bar, bool pass) {
        out.push_back({std::move(name), std::move(value), std::move(bar), pass});
    };
    const ChannelSet ch = make_instance(cfg);
    const SymbolSpec sym = reference_symbol(cfg);

    for (Variant v : {Variant::ImperfectProb, Variant::ImperfectDet, Variant::UnknownProb, Variant::UnknownDet}) {
        const std::string tag = to_string(v);
        const PrecoderSolution s = sca_solve(v, ch, cfg, sym);
        row(tag + " solve", to_string(s.status), "feasible", s.ok());
        if (!s.ok()) continue;
        row(tag + " audit", num(s.audit_violation), "<= 1e-6", s.audit_violation <= conic::kAuditTol);
        double over = 0.0;
        for (int i = 0; i < ch.n(); ++i)
            over = std::max(over, std::norm(s.u[i]) - s.selection.t_rounded[i] * cfg.p_da_mw);
        row(tag + " per-antenna power", num(over), "<= 1e-6", over <= 1e-6);
        row(tag + " rank-1 gap", num(s.rank1_gap), ">= -1e-6", s.rank1_gap >= -1e-6);
        row(tag + " binary gap", num(s.selection.max_rounding_gap()), "<= 1e-3", s.selection.max_rounding_gap() <= 1e-3);
        if (is_unknown_csi(v)) {
            const double d = s.z.squaredNorm() - cfg.p_an_mw();
            row(tag + " AN floor", num(d), ">= -1e-4", d >= -1e-4);
        }
        if (mc_samples > 0) {
            Rng rng = oracle_rng(cfg.seed);
            const auto mode = is_deterministic(v) ? oracle::McSampling::Ball : oracle::McSampling::Gaussian;
            const auto rep = oracle::mc_validate(s, ch, cfg, sym, mc_samples, rng, mode);
            if (is_deterministic(v)) {
                row(tag + " in-ball IR violations", std::to_string(rep.ir_violations), "0", rep.ir_violations == 0);
            } else {
                row(tag + " MC ir_ci_prob", num(rep.ir_ci_prob), ">= eta_d - 0.02", rep.ir_ci_prob >= cfg.eta_d - 0.02);
            }
            if (!is_unknown_csi(v)) {
                double worst = 1.0;
                for (double p : rep.eve_destr_prob) worst = std::min(worst, p);
                const double bar = is_deterministic(v) ? 1.0 : cfg.eta_k - 0.02;
                row(tag + " MC min eve_destr_prob", num(worst), is_deterministic(v) ? "1" : ">= eta_k - 0.02",
                    worst >= bar);
            }
        }
    }

    {
        ScenarioConfig c = cfg;
        c.n_das = 4;
        c.n_eves = std::min(cfg.n_eves, 2);
        const ChannelSet small = make_instance(c);
        const PrecoderSolution s = sca_solve(Variant::ImperfectProb, small, c, sym);
        const auto bf = oracle::brute_force_selection(Variant::ImperfectProb, small, c, sym);
        if (s.ok() && bf.found) {
            const double gap = (s.power.total_mw - bf.best_total_mw) / bf.best_total_mw;
            row("N=4 SCA vs brute force", num(gap), "<= 0.05", gap <= 0.05);
            row("N=4 brute force dominates", num(bf.best_total_mw - s.power.total_mw), "<= 1e-6",
                bf.best_total_mw <= s.power.total_mw + 1e-6);
        } else {
            row("N=4 feasibility agreement", std::string(s.ok() ? "sca" : "-") + "/" + (bf.found ? "bf" : "-"),
                "equal", s.ok() == bf.found);
        }
    }

    {
        std::string vals;
        bool mono = true, all_ok = true;
        double prev = -conic::kInf;
        for (double g : {0.0, 10.0, 20.0, 30.0}) {
            ScenarioConfig c = cfg;
            c.gamma_d_db = g;
            const PrecoderSolution s = sca_solve(Variant::ImperfectProb, ch, c, sym);
            if (!s.ok()) {
                // infeasible from here on is consistent with monotone growth
                vals += " inf";
                all_ok = false;
                prev = conic::kInf;
                continue;
            }
            if (!all_ok || s.power.total_mw < prev - 1e-6 * std::max(1.0, prev)) mono = false;
            prev = s.power.total_mw;
            vals += " " + num(s.power.total_mw);
        }
        row("gamma_d monotonicity", vals.substr(1), "non-decreasing", mono);
    }
    return out;
}

}  // namespace dasec::harness
