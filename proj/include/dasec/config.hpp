#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "dasec/types.hpp"

namespace dasec {

enum class Layout { DaGrid, CaCenter };
enum class QuantileMode { Normal, ErfLiteral };
enum class CovarianceMode { PaperVerbatim, DerivedExact };
enum class SprocMode { PaperFaithful, NormRobust };
enum class IrForm { Soc, Lmi };
enum class SolverKind { Auto, Clarabel, Scs };
enum class Variant { ImperfectProb, ImperfectDet, UnknownProb, UnknownDet };

struct ScenarioConfig {
    double cell_side_m = 100.0;
    int n_das = 16;
    int n_eves = 3;
    Layout layout = Layout::DaGrid;
    double carrier_hz = 2.0e9;
    double bandwidth_hz = 1.0e6;
    double noise_psd_dbm_hz = -174.0;
    double sigma_e = 0.01;
    double alpha = 0.4;
    double p_on_mw = 500.0;
    double p_off_mw = 50.0;
    double p_da_mw = 1000.0;
    double gamma_d_db = 20.0;
    double gamma_k_db = -10.0;
    double eta_d = 0.95;
    double eta_k = 0.95;
    double p_an_dbm = 25.0;
    int m_psk = 4;
    double penalty_phi = 0.0;  // 0 -> 100 * N * p_on
    double sigma_ball = 0.0;   // 0 -> 2N * sigma_e^2
    double edge_fraction = 0.0;
    std::uint64_t seed = 1;
    int max_sca_iters = 30;
    double conv_tol = 1e-4;

    // path loss, PL_dB(d) = pl0_db + 10 pl_exponent log10(d / pl_d0_m)
    double pl0_db = 38.0;
    double pl_exponent = 5.0;
    double pl_d0_m = 1.0;

    QuantileMode quantile = QuantileMode::Normal;
    CovarianceMode covariance_mode = CovarianceMode::PaperVerbatim;
    SprocMode sproc_mode = SprocMode::NormRobust;
    IrForm ir_form = IrForm::Soc;
    double symbol_phase = -1.0;  // <0 -> first PSK point, pi/M
    bool local_search = true;
    bool lift_psd_block = false;  // X >= 0 as its own cone; already implied by the Schur block

    SolverKind solver = SolverKind::Auto;  // auto -> interior point when built with it
    double solver_eps = 1e-9;
    int solver_max_iters = 200000;

    double gamma_d_lin() const { return db_to_lin(gamma_d_db); }
    double gamma_k_lin() const { return db_to_lin(gamma_k_db); }
    double p_an_mw() const { return dbm_to_mw(p_an_dbm); }
    double phi() const { return penalty_phi > 0.0 ? penalty_phi : 100.0 * n_das * p_on_mw; }
    double sigma_ball_eff() const {
        return sigma_ball > 0.0 ? sigma_ball : 2.0 * n_das * sigma_e * sigma_e;
    }
};

// Throws ConfigError on any violated invariant.
void validate(const ScenarioConfig& cfg);

// Applies one key = value pair. Unknown keys and malformed values throw ConfigError.
void apply_key(ScenarioConfig& cfg, const std::string& key, const std::string& value);

ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

// Canonical key = value dump, every field, fixed order, 17 significant digits.
std::string canonical_text(const ScenarioConfig& cfg);
std::uint64_t config_hash(const ScenarioConfig& cfg);

std::string to_string(Layout v);
std::string to_string(QuantileMode v);
std::string to_string(CovarianceMode v);
std::string to_string(SprocMode v);
std::string to_string(IrForm v);
std::string to_string(SolverKind v);
std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

inline bool is_unknown_csi(Variant v) {
    return v == Variant::UnknownProb || v == Variant::UnknownDet;
}
inline bool is_deterministic(Variant v) {
    return v == Variant::ImperfectDet || v == Variant::UnknownDet;
}

}  // namespace dasec
