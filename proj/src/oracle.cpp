#include "dasec/oracle.hpp"

#include <cmath>
#include <numbers>

namespace dasec::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double q_func(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

CVec gaussian_error(int n, double sigma_e, Rng& rng) {
    CVec e(n);
    std::normal_distribution<double> g(0.0, sigma_e / std::numbers::sqrt2);
    for (int i = 0; i < n; ++i) {
        const double re = g(rng);
        const double im = g(rng);
        e[i] = cplx(re, im);
    }
    return e;
}

CVec ball_error(int n, double radius, bool surface, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    RVec d(2 * n);
    for (int i = 0; i < 2 * n; ++i) d[i] = g(rng);
    const double nrm = d.norm();
    if (nrm == 0.0) return CVec::Zero(n);
    double r = radius;
    if (!surface) r *= std::pow(std::uniform_real_distribution<double>(0.0, 1.0)(rng), 1.0 / (2.0 * n));
    return unstack(d * (r / nrm));
}

int detect(cplx y, int m) {
    double a = std::arg(y);
    if (a < 0) a += kTwoPi;
    return static_cast<int>(std::floor(a / (kTwoPi / m))) % m;
}

}  // namespace

McReport mc_validate(const PrecoderSolution& sol, const ChannelSet& ch, const ScenarioConfig& cfg,
                     const SymbolSpec& sym, int n_samples, Rng& rng, McSampling mode) {
    if (!sol.ok()) throw PreconditionError("mc_validate: solution has no feasible point");
    if (sol.u.size() != ch.n()) throw PreconditionError("mc_validate: precoder length does not match channels");
    if (n_samples < 1) throw PreconditionError("mc_validate: need at least one sample");

    const int n = ch.n();
    const int k = ch.k();
    const double gd = cfg.gamma_d_lin();
    const double gk = cfg.gamma_k_lin();
    const double radius = std::sqrt(cfg.sigma_ball_eff());
    int sample_idx = 0;
    auto draw = [&]() {
        if (mode == McSampling::Gaussian) return gaussian_error(n, ch.sigma_e, rng);
        return ball_error(n, radius, sample_idx % 2 == 0, rng);
    };

    McReport rep;
    rep.n_samples = n_samples;
    rep.eve_destr_prob.assign(static_cast<std::size_t>(k), 0.0);
    rep.eve_sinr_exceed_prob.assign(static_cast<std::size_t>(k), 0.0);
    long ir_ok = 0;
    std::vector<long> destr(static_cast<std::size_t>(k), 0), exceed(static_cast<std::size_t>(k), 0);
    double margin_sum = 0.0;
    for (sample_idx = 0; sample_idx < n_samples; ++sample_idx) {
        const CVec hd = ch.h_d_hat + draw();
        const double m = ci::ci_margin(hd, sol.u, sym, ch.noise_std, gd);
        margin_sum += m;
        if (m >= 0.0) {
            ++ir_ok;
        } else {
            ++rep.ir_violations;
            rep.worst_violation = std::max(rep.worst_violation, -m);
        }
        for (int e = 0; e < k; ++e) {
            const CVec he = ch.h_k_hat[static_cast<std::size_t>(e)] + draw();
            if (ci::classify(he, sol.u, sym, ch.noise_std, gk) == Region::Destructive) ++destr[e];
            if (ci::ci_sinr(he, sol.u, ch.noise_std) > gk) ++exceed[e];
        }
    }
    rep.ir_ci_prob = static_cast<double>(ir_ok) / n_samples;
    rep.mean_margin = margin_sum / n_samples;
    for (int e = 0; e < k; ++e) {
        rep.eve_destr_prob[e] = static_cast<double>(destr[e]) / n_samples;
        rep.eve_sinr_exceed_prob[e] = static_cast<double>(exceed[e]) / n_samples;
    }
    return rep;
}

BruteForceResult brute_force_selection(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg,
                                       const SymbolSpec& sym) {
    const int n = ch.n();
    if (n < 1 || n > 12) throw PreconditionError("brute_force_selection: needs 1 <= N <= 12");
    BruteForceResult res;
    const long count = 1L << n;
    res.table.reserve(static_cast<std::size_t>(count));
    for (long mask = 0; mask < count; ++mask) {
        BruteForceEntry e;
        e.t = Eigen::VectorXi::Zero(n);
        for (int i = 0; i < n; ++i) e.t[i] = static_cast<int>((mask >> i) & 1);
        const PrecoderSolution s = fixed_t_solve(v, ch, cfg, sym, e.t);
        e.feasible = s.ok();
        e.total_mw = e.feasible ? s.power.total_mw : conic::kInf;
        if (e.feasible && (!res.found || e.total_mw < res.best_total_mw)) {
            res.found = true;
            res.best_total_mw = e.total_mw;
            res.best_t = e.t;
        }
        res.table.push_back(std::move(e));
    }
    if (!res.found) res.best_total_mw = conic::kInf;
    return res;
}

CVec rotate_to(const CVec& u_ref, const SymbolSpec& ref, const SymbolSpec& target) {
    return u_ref * std::polar(1.0, target.phi_d - ref.phi_d);
}

double ser_sim(const std::function<CVec(const SymbolSpec&)>& builder, const CVec& h, int m_psk, double noise_std,
               long n_symbols, Rng& rng) {
    if (n_symbols < 1) throw PreconditionError("ser_sim: need at least one symbol");
    std::vector<cplx> rx;
    for (int i = 0; i < m_psk; ++i) rx.push_back(ci::noiseless_rx(h, builder(SymbolSpec::psk(m_psk, i))));
    std::uniform_int_distribution<int> pick(0, m_psk - 1);
    std::normal_distribution<double> g(0.0, noise_std / std::numbers::sqrt2);
    long errors = 0;
    for (long s = 0; s < n_symbols; ++s) {
        const int i = pick(rng);
        const double re = g(rng);
        const double im = g(rng);
        if (detect(rx[i] + cplx(re, im), m_psk) != i) ++errors;
    }
    return static_cast<double>(errors) / n_symbols;
}

double ser_sim(const CVec& u_ref, const CVec& h, const SymbolSpec& ref, double noise_std, long n_symbols, Rng& rng) {
    return ser_sim([&](const SymbolSpec& s) { return rotate_to(u_ref, ref, s); }, h, ref.m_psk, noise_std,
                   n_symbols, rng);
}

double qpsk_awgn_ser(double snr) {
    const double p = q_func(std::sqrt(snr));
    return 2.0 * p - p * p;
}

double mpsk_awgn_ser(int m, double snr) {
    if (m == 2) return q_func(std::sqrt(2.0 * snr));
    if (m == 4) return qpsk_awgn_ser(snr);
    return 2.0 * q_func(std::sqrt(2.0 * snr) * std::sin(std::numbers::pi / m));
}

SinrReport conventional_sinr_report(const PrecoderSolution& sol, const ChannelSet& ch) {
    const CVec w = sol.w.size() == sol.u.size() ? sol.w : sol.u;
    const CVec z = sol.z.size() == sol.u.size() ? sol.z : CVec::Zero(sol.u.size());
    const double s2 = ch.noise_std * ch.noise_std;
    auto sinr = [&](const CVec& h) {
        return std::norm(ci::noiseless_rx(h, w)) / (s2 + std::norm(ci::noiseless_rx(h, z)));
    };
    SinrReport r;
    r.ir = sinr(ch.h_d_hat);
    for (const auto& h : ch.h_k_hat) r.eves.push_back(sinr(h));
    return r;
}

NominalResult nominal_ci_reference(const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                   const Eigen::VectorXi& t_fixed) {
    const int n_all = ch.n();
    if (t_fixed.size() != n_all) throw PreconditionError("nominal_ci_reference: selection length mismatch");
    std::vector<int> on;
    for (int i = 0; i < n_all; ++i)
        if (t_fixed[i]) on.push_back(i);
    const int n = static_cast<int>(on.size());
    const double circuit = circuit_power(t_fixed.cast<double>(), cfg);

    conic::ConicProgram p;
    const auto x = p.add_var_block(2 * n, -conic::kInf, conic::kInf, "u");
    const auto s = p.add_var_block(1, 0.0, conic::kInf, "s");
    p.set_cost(s[0], 1.0 / cfg.alpha);
    p.set_cost_constant(circuit);

    // ||x||^2 <= s
    conic::SocCon epi;
    epi.t = conic::Affine(1.0).add(s[0], 1.0);
    for (int i = 0; i < 2 * n; ++i) epi.y.push_back(conic::Affine().add(x[i], 2.0));
    epi.y.push_back(conic::Affine(-1.0).add(s[0], 1.0));
    epi.tag = "tx_power";
    p.add_soc(std::move(epi));

    for (int i = 0; i < n; ++i) {
        conic::SocCon c;
        c.t = conic::Affine(std::sqrt(cfg.p_da_mw));
        c.y = {conic::Affine().add(x[i], 1.0), conic::Affine().add(x[n + i], 1.0)};
        c.tag = "antenna_power" + std::to_string(on[i] + 1);
        p.add_soc(std::move(c));
    }

    // Re and Im of h^T u e^{-j phi} as rows over [u_R; u_I]
    const double tan_t = std::tan(sym.theta);
    auto rows = [&](const CVec& h, RVec& re, RVec& im) {
        re.resize(2 * n);
        im.resize(2 * n);
        const cplx rot = std::polar(1.0, -sym.phi_d);
        for (int i = 0; i < n; ++i) {
            const cplx g = h[on[i]] * rot;
            re[i] = g.real();
            re[n + i] = -g.imag();
            im[i] = g.imag();
            im[n + i] = g.real();
        }
    };
    auto add_row = [&](const RVec& a, double c, const std::string& tag) {
        const double w = a.norm() > 0.0 ? 1.0 / a.norm() : 1.0;
        conic::Affine e(c * w);
        for (int i = 0; i < 2 * n; ++i) e.add(x[i], a[i] * w);
        p.add_linear(std::move(e), conic::Sense::Le, tag);
    };

    RVec re, im;
    const double sd = ch.noise_std * std::sqrt(cfg.gamma_d_lin());
    rows(ch.h_d_hat, re, im);
    // |Im r| <= (Re r - sd) tan
    add_row(im - tan_t * re, sd * tan_t, "ir_upper");
    add_row(-im - tan_t * re, sd * tan_t, "ir_lower");
    const double sk = ch.noise_std * std::sqrt(cfg.gamma_k_lin());
    for (int e = 0; e < ch.k(); ++e) {
        rows(ch.h_k_hat[static_cast<std::size_t>(e)], re, im);
        // |Im r| <= (sk - Re r) tan
        add_row(im + tan_t * re, -sk * tan_t, "eve" + std::to_string(e + 1) + "_upper");
        add_row(-im + tan_t * re, -sk * tan_t, "eve" + std::to_string(e + 1) + "_lower");
    }

    NominalResult res;
    if (n == 0) {
        // nothing to transmit with; feasible only if u = 0 satisfies every row
        res.u = CVec::Zero(n_all);
        res.feasible = sd <= 0.0;
        res.total_mw = circuit;
        return res;
    }
    const auto r = conic::solve(p, solver_options(cfg));
    if (r.status != conic::SolveStatus::Optimal) return res;
    res.feasible = true;
    const CVec ul = unstack(r.v.segment(x.begin, x.count));
    res.u = CVec::Zero(n_all);
    for (int i = 0; i < n; ++i) res.u[on[i]] = ul[i];
    res.tx_mw = res.u.squaredNorm() / cfg.alpha;
    res.total_mw = res.tx_mw + circuit;
    return res;
}

}  // namespace dasec::oracle
