#include "dasec/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dasec {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("bad number for '" + key + "': " + v);
    }
    if (pos != v.size() || !std::isfinite(out)) throw ConfigError("bad number for '" + key + "': " + v);
    return out;
}

long long to_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long long out = 0;
    try {
        out = std::stoll(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("bad integer for '" + key + "': " + v);
    }
    if (pos != v.size()) throw ConfigError("bad integer for '" + key + "': " + v);
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("bad boolean for '" + key + "': " + v);
}

template <class E>
E to_enum(const std::string& key, const std::string& v, std::initializer_list<std::pair<const char*, E>> names) {
    for (const auto& [n, e] : names)
        if (v == n) return e;
    throw ConfigError("bad value for '" + key + "': " + v);
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string to_string(Layout v) { return v == Layout::DaGrid ? "da_grid" : "ca_center"; }
std::string to_string(QuantileMode v) { return v == QuantileMode::Normal ? "normal" : "erf_literal"; }
std::string to_string(CovarianceMode v) {
    return v == CovarianceMode::PaperVerbatim ? "paper_verbatim" : "derived_exact";
}
std::string to_string(SprocMode v) { return v == SprocMode::PaperFaithful ? "paper_faithful" : "norm_robust"; }
std::string to_string(IrForm v) { return v == IrForm::Soc ? "soc" : "lmi"; }
std::string to_string(SolverKind v) {
    switch (v) {
        case SolverKind::Auto: return "auto";
        case SolverKind::Clarabel: return "clarabel";
        case SolverKind::Scs: return "scs";
    }
    return "?";
}
std::string to_string(Variant v) {
    switch (v) {
        case Variant::ImperfectProb: return "imperfect-prob";
        case Variant::ImperfectDet: return "imperfect-det";
        case Variant::UnknownProb: return "unknown-prob";
        case Variant::UnknownDet: return "unknown-det";
    }
    return "?";
}

Variant parse_variant(const std::string& s) {
    return to_enum<Variant>("variant", s,
                            {{"imperfect-prob", Variant::ImperfectProb},
                             {"imperfect-det", Variant::ImperfectDet},
                             {"unknown-prob", Variant::UnknownProb},
                             {"unknown-det", Variant::UnknownDet}});
}

void apply_key(ScenarioConfig& c, const std::string& key, const std::string& value) {
    const std::string& v = value;
    auto d = [&](double& f) { f = to_double(key, v); };
    auto i = [&](int& f) {
        const long long x = to_int(key, v);
        if (x < -1000000000LL || x > 1000000000LL) throw ConfigError("out of range: " + key);
        f = static_cast<int>(x);
    };

    if (key == "cell_side_m") d(c.cell_side_m);
    else if (key == "n_das") i(c.n_das);
    else if (key == "n_eves") i(c.n_eves);
    else if (key == "layout")
        c.layout = to_enum<Layout>(key, v, {{"da_grid", Layout::DaGrid}, {"DaGrid", Layout::DaGrid},
                                            {"ca_center", Layout::CaCenter}, {"CaCenter", Layout::CaCenter}});
    else if (key == "carrier_hz") d(c.carrier_hz);
    else if (key == "bandwidth_hz") d(c.bandwidth_hz);
    else if (key == "noise_psd_dbm_hz") d(c.noise_psd_dbm_hz);
    else if (key == "sigma_e") d(c.sigma_e);
    else if (key == "alpha") d(c.alpha);
    else if (key == "p_on_mw") d(c.p_on_mw);
    else if (key == "p_off_mw") d(c.p_off_mw);
    else if (key == "p_da_mw") d(c.p_da_mw);
    else if (key == "gamma_d_db") d(c.gamma_d_db);
    else if (key == "gamma_k_db") d(c.gamma_k_db);
    else if (key == "eta_d") d(c.eta_d);
    else if (key == "eta_k") d(c.eta_k);
    else if (key == "p_an_dbm") d(c.p_an_dbm);
    else if (key == "m_psk") i(c.m_psk);
    else if (key == "penalty_phi") d(c.penalty_phi);
    else if (key == "sigma_ball") d(c.sigma_ball);
    else if (key == "edge_fraction") d(c.edge_fraction);
    else if (key == "seed") {
        const long long x = to_int(key, v);
        if (x < 0) throw ConfigError("seed must be nonnegative");
        c.seed = static_cast<std::uint64_t>(x);
    } else if (key == "max_sca_iters") i(c.max_sca_iters);
    else if (key == "conv_tol") d(c.conv_tol);
    else if (key == "pl0_db") d(c.pl0_db);
    else if (key == "pl_exponent") d(c.pl_exponent);
    else if (key == "pl_d0_m") d(c.pl_d0_m);
    else if (key == "quantile")
        c.quantile = to_enum<QuantileMode>(key, v, {{"normal", QuantileMode::Normal},
                                                    {"erf_literal", QuantileMode::ErfLiteral}});
    else if (key == "covariance_mode")
        c.covariance_mode = to_enum<CovarianceMode>(
            key, v, {{"paper_verbatim", CovarianceMode::PaperVerbatim}, {"derived_exact", CovarianceMode::DerivedExact}});
    else if (key == "sproc_mode")
        c.sproc_mode = to_enum<SprocMode>(key, v, {{"paper_faithful", SprocMode::PaperFaithful},
                                                   {"norm_robust", SprocMode::NormRobust}});
    else if (key == "ir_form")
        c.ir_form = to_enum<IrForm>(key, v, {{"soc", IrForm::Soc}, {"lmi", IrForm::Lmi}});
    else if (key == "symbol_phase") d(c.symbol_phase);
    else if (key == "local_search") c.local_search = to_bool(key, v);
    else if (key == "lift_psd_block") c.lift_psd_block = to_bool(key, v);
    else if (key == "solver")
        c.solver = to_enum<SolverKind>(key, v, {{"auto", SolverKind::Auto}, {"clarabel", SolverKind::Clarabel},
                                                {"scs", SolverKind::Scs}});
    else if (key == "solver_eps") d(c.solver_eps);
    else if (key == "solver_max_iters") i(c.solver_max_iters);
    else throw ConfigError("unknown key: " + key);
}

void validate(const ScenarioConfig& c) {
    auto req = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(what);
    };
    req(c.cell_side_m > 0, "cell_side_m must be positive");
    req(c.n_das >= 1, "n_das must be >= 1");
    req(c.n_eves >= 0, "n_eves must be >= 0");
    req(c.bandwidth_hz > 0, "bandwidth_hz must be positive");
    req(c.sigma_e >= 0, "sigma_e must be >= 0");
    req(c.alpha > 0 && c.alpha <= 1, "alpha must lie in (0,1]");
    req(c.p_off_mw >= 0 && c.p_off_mw <= c.p_on_mw, "need 0 <= p_off_mw <= p_on_mw");
    req(c.p_da_mw >= 0, "p_da_mw must be >= 0");
    // the quantile scale has to be positive; the erf reading stays positive down to eta -> 0
    const double lo = c.quantile == QuantileMode::Normal ? 0.5 : 0.0;
    req(c.eta_d > lo && c.eta_d < 1, "eta_d outside the range giving a positive quantile");
    req(c.eta_k > lo && c.eta_k < 1, "eta_k outside the range giving a positive quantile");
    req(c.m_psk == 2 || c.m_psk == 4 || c.m_psk == 8 || c.m_psk == 16, "m_psk must be 2, 4, 8 or 16");
    req(c.penalty_phi >= 0, "penalty_phi must be >= 0");
    req(c.sigma_ball >= 0, "sigma_ball must be >= 0");
    req(c.sigma_ball == 0 || c.sigma_ball >= c.sigma_e * c.sigma_e, "sigma_ball must be >= sigma_e^2");
    req(c.edge_fraction >= 0 && c.edge_fraction <= 1, "edge_fraction must lie in [0,1]");
    req(c.max_sca_iters >= 1, "max_sca_iters must be >= 1");
    req(c.conv_tol > 0, "conv_tol must be positive");
    req(c.pl_d0_m > 0, "pl_d0_m must be positive");
    req(c.solver_eps > 0, "solver_eps must be positive");
    req(c.solver_max_iters >= 1, "solver_max_iters must be >= 1");
}

ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        apply_key(cfg, key, val);
    }
    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

std::string canonical_text(const ScenarioConfig& c) {
    std::ostringstream o;
    auto kv = [&](const char* k, const std::string& v) { o << k << " = " << v << '\n'; };
    auto kd = [&](const char* k, double v) { kv(k, fmt17(v)); };
    kd("cell_side_m", c.cell_side_m);
    kv("n_das", std::to_string(c.n_das));
    kv("n_eves", std::to_string(c.n_eves));
    kv("layout", to_string(c.layout));
    kd("carrier_hz", c.carrier_hz);
    kd("bandwidth_hz", c.bandwidth_hz);
    kd("noise_psd_dbm_hz", c.noise_psd_dbm_hz);
    kd("sigma_e", c.sigma_e);
    kd("alpha", c.alpha);
    kd("p_on_mw", c.p_on_mw);
    kd("p_off_mw", c.p_off_mw);
    kd("p_da_mw", c.p_da_mw);
    kd("gamma_d_db", c.gamma_d_db);
    kd("gamma_k_db", c.gamma_k_db);
    kd("eta_d", c.eta_d);
    kd("eta_k", c.eta_k);
    kd("p_an_dbm", c.p_an_dbm);
    kv("m_psk", std::to_string(c.m_psk));
    kd("penalty_phi", c.penalty_phi);
    kd("sigma_ball", c.sigma_ball);
    kd("edge_fraction", c.edge_fraction);
    kv("seed", std::to_string(c.seed));
    kv("max_sca_iters", std::to_string(c.max_sca_iters));
    kd("conv_tol", c.conv_tol);
    kd("pl0_db", c.pl0_db);
    kd("pl_exponent", c.pl_exponent);
    kd("pl_d0_m", c.pl_d0_m);
    kv("quantile", to_string(c.quantile));
    kv("covariance_mode", to_string(c.covariance_mode));
    kv("sproc_mode", to_string(c.sproc_mode));
    kv("ir_form", to_string(c.ir_form));
    kd("symbol_phase", c.symbol_phase);
    kv("local_search", c.local_search ? "true" : "false");
    kv("lift_psd_block", c.lift_psd_block ? "true" : "false");
    kv("solver", to_string(c.solver));
    kd("solver_eps", c.solver_eps);
    kv("solver_max_iters", std::to_string(c.solver_max_iters));
    return o.str();
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    // FNV-1a 64
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : canonical_text(cfg)) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace dasec
