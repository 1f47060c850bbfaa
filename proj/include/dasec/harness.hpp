#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "dasec/oracle.hpp"

namespace dasec::harness {

enum class SweepVar { GammaD, GammaK, EdgeFraction, NumEves, SigmaE };
SweepVar parse_sweep_var(const std::string& s);
std::string to_string(SweepVar v);

struct SweepSpec {
    SweepVar var = SweepVar::GammaD;
    std::vector<double> values;
    int n_trials = 1;
    std::vector<Variant> variants = {Variant::ImperfectProb};
    std::vector<Layout> layouts = {Layout::DaGrid};
    bool no_as = false;  // every antenna on, no selection
    int mc_samples = 1000;

    void check() const;  // throws ConfigError
};

void apply_sweep_value(ScenarioConfig& cfg, SweepVar var, double value);

// Trial i of a run uses seed cfg.seed + i for both deployment and channels.
ChannelSet make_instance(const ScenarioConfig& cfg);

// Minimal CSV writer: first line is a provenance comment, second the header.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const ScenarioConfig& cfg, const std::vector<std::string>& header);
    CsvWriter& cell(const std::string& s);
    CsvWriter& cell(double v);
    CsvWriter& cell(long long v);
    CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
    void end_row();

private:
    std::ofstream out_;
    std::size_t cols_ = 0;
    std::size_t in_row_ = 0;
};

std::string provenance(const ScenarioConfig& cfg);

struct RunResult {
    PrecoderSolution sol;
    oracle::McReport mc;
};

// Writes solution.csv, summary.csv, mc_report.csv and trace.csv under out_dir.
RunResult run_single(const ScenarioConfig& cfg, Variant v, int mc_samples, const std::string& out_dir);

// Writes sweep.csv (one row per variant, layout, value, trial) and sweep_summary.csv.
void run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec, const std::string& out_dir);

// Writes heatmap.csv with per-antenna activation frequency over n_trials placements.
std::vector<double> activation_heatmap(const ScenarioConfig& cfg, Variant v, int n_trials, const std::string& out_dir);

// Writes bruteforce.csv, the full selection table.
oracle::BruteForceResult run_bruteforce(const ScenarioConfig& cfg, Variant v, const std::string& out_dir);

struct CheckRow {
    std::string name;
    std::string value;
    std::string bar;
    bool pass = false;
};

// Invariant suite on the configured instance; prints nothing.
std::vector<CheckRow> validate(const ScenarioConfig& cfg, int mc_samples);

}  // namespace dasec::harness
