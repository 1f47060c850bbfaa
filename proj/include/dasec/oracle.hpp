#pragma once

#include <functional>
#include <vector>

#include "dasec/secure_precoder.hpp"

namespace dasec::oracle {

// Gaussian: per-entry CN(0, sigma_e^2) errors, the chance-constraint model.
// Ball: stacked error vector inside the sigma ball, half on the surface and
// half uniform in the interior.
enum class McSampling { Gaussian, Ball };

struct McReport {
    int n_samples = 0;
    double ir_ci_prob = 0.0;
    std::vector<double> eve_destr_prob;
    std::vector<double> eve_sinr_exceed_prob;
    double mean_margin = 0.0;
    double worst_violation = 0.0;  // largest IR margin deficit, 0 when none
    int ir_violations = 0;

    bool conclusive() const { return n_samples >= 1000; }
};

McReport mc_validate(const PrecoderSolution& sol, const ChannelSet& ch, const ScenarioConfig& cfg,
                     const SymbolSpec& sym, int n_samples, Rng& rng, McSampling mode = McSampling::Gaussian);

struct BruteForceEntry {
    Eigen::VectorXi t;
    bool feasible = false;
    double total_mw = 0.0;
};

struct BruteForceResult {
    Eigen::VectorXi best_t;
    double best_total_mw = 0.0;
    bool found = false;
    std::vector<BruteForceEntry> table;
};

BruteForceResult brute_force_selection(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg,
                                       const SymbolSpec& sym);

// Precoder for the symbol `target` obtained by rotating the reference solution.
CVec rotate_to(const CVec& u_ref, const SymbolSpec& ref, const SymbolSpec& target);

// Uniform PSK symbols, u rotated per symbol, CN(0, noise_std^2) noise,
// nearest-phase detection. Returns the symbol error rate.
double ser_sim(const CVec& u_ref, const CVec& h, const SymbolSpec& ref, double noise_std, long n_symbols, Rng& rng);

// Same experiment with an explicit precoder per transmitted symbol index.
double ser_sim(const std::function<CVec(const SymbolSpec&)>& builder, const CVec& h, int m_psk, double noise_std,
               long n_symbols, Rng& rng);

// Exact QPSK symbol error rate over AWGN at Es/N0 = snr.
double qpsk_awgn_ser(double snr);
// Nearest-neighbour approximation 2 Q(sqrt(2 snr) sin(pi/M)); exact for M = 2.
double mpsk_awgn_ser(int m, double snr);

struct SinrReport {
    double ir = 0.0;
    std::vector<double> eves;
};

// |h^T w|^2 / (sigma_n^2 + |h^T z|^2) on the estimated channels.
SinrReport conventional_sinr_report(const PrecoderSolution& sol, const ChannelSet& ch);

struct NominalResult {
    bool feasible = false;
    CVec u;
    double tx_mw = 0.0;
    double total_mw = 0.0;
};

// Error-free constructive-interference design for a fixed selection, written
// directly as an SOCP in u (no lift, no robust terms). Imperfect-CSI variants.
NominalResult nominal_ci_reference(const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                   const Eigen::VectorXi& t_fixed);

}  // namespace dasec::oracle
