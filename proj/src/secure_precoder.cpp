#include "dasec/secure_precoder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace dasec {

using conic::Affine;
using conic::PsdCon;
using conic::Sense;
using conic::SocCon;
using conic::VarRange;

namespace {

constexpr double kInf = conic::kInf;

int lift_var(const VarRange& X, int dim, int i, int j) { return X.begin + static_cast<int>(PsdCon::index(dim, i, j)); }

VarRange add_lift(conic::ConicProgram& p, int n2, const std::string& name) {
    return p.add_var_block(n2 * (n2 + 1) / 2, -kInf, kInf, name);
}

// [[X, x], [x^T, 1]] >= 0, optionally with the implied X >= 0 as its own cone
void add_schur(conic::ConicProgram& p, const VarRange& X, const VarRange& x, int n2, const std::string& tag,
               bool explicit_psd) {
    PsdCon s(n2 + 1, tag + "_schur");
    for (int j = 0; j < n2; ++j)
        for (int i = j; i < n2; ++i) s.at(i, j).add(lift_var(X, n2, i, j), 1.0);
    for (int i = 0; i < n2; ++i) s.at(n2, i).add(x[i], 1.0);
    s.at(n2, n2).c = 1.0;
    p.add_psd(std::move(s));
    if (n2 == 0 || !explicit_psd) return;
    PsdCon q(n2, tag + "_psd");
    for (int j = 0; j < n2; ++j)
        for (int i = j; i < n2; ++i) q.at(i, j).add(lift_var(X, n2, i, j), 1.0);
    p.add_psd(std::move(q));
}

Affine antenna_power(const VarRange& X, int n, int k) {
    Affine a;
    a.add(lift_var(X, 2 * n, k, k), 1.0);
    a.add(lift_var(X, 2 * n, n + k, n + k), 1.0);
    return a;
}

Affine lift_trace(const VarRange& X, int n2) {
    Affine a;
    for (int i = 0; i < n2; ++i) a.add(lift_var(X, n2, i, i), 1.0);
    return a;
}

double row_weight(const RVec& a) {
    const double nrm = a.norm();
    return nrm > 0.0 ? 1.0 / nrm : 1.0;
}

void add_soc_block(conic::ConicProgram& p, const robust::SocBlock& b, const VarRange& x, const std::string& tag) {
    const double w = row_weight(b.a_bar);
    Affine lin(b.rhs * w);
    for (int i = 0; i < x.count; ++i) lin.add(x[i], -b.a_bar[i] * w);
    SocCon s;
    s.tag = tag;
    for (int i = 0; i < x.count; ++i) {
        const double c = b.scale * b.theta_sqrt[i] * w;
        if (c != 0.0) s.y.push_back(Affine().add(x[i], c));
    }
    if (s.y.empty()) {
        p.add_linear(std::move(lin), Sense::Ge, tag);
        return;
    }
    s.t = std::move(lin);
    p.add_soc(std::move(s));
}

void add_lmi_block(conic::ConicProgram& p, const robust::LmiBlock& b, const VarRange& x, const std::vector<int>& lam,
                   double w, const std::string& tag) {
    PsdCon s(b.size, tag);
    for (int j = 0; j < b.size; ++j)
        for (int i = j; i < b.size; ++i) {
            Affine& a = s.at(i, j);
            a.c = b.F0(i, j) * w;
            for (int k = 0; k < x.count; ++k) a.add(x[k], b.Fx[k](i, j) * w);
            for (std::size_t m = 0; m < lam.size(); ++m) a.add(lam[m], b.Fm[m](i, j) * w);
        }
    p.add_psd(std::move(s));
}

template <class Blocks>
void add_sproc(conic::ConicProgram& p, const Blocks& blocks, const VarRange& x, std::vector<int>& lambda,
               const std::string& tag) {
    int idx = 1;
    for (const auto& b : blocks) {
        const std::string t = tag + std::to_string(idx++);
        if (b.mode == SprocMode::NormRobust) {
            add_soc_block(p, b.soc, x, t);
            continue;
        }
        const VarRange l = p.add_var_block(1, 0.0, kInf, "lambda_" + t);
        lambda.push_back(l[0]);
        add_lmi_block(p, b.lmi, x, {l[0]}, row_weight(b.a_bar), t);
    }
}

template <class Blocks>
void add_chance(conic::ConicProgram& p, const Blocks& blocks, const VarRange& x, IrForm form, const std::string& tag) {
    int idx = 1;
    for (const auto& b : blocks) {
        const std::string t = tag + std::to_string(idx++);
        if (form == IrForm::Soc)
            add_soc_block(p, b, x, t);
        else
            add_lmi_block(p, robust::soc_to_lmi(b), x, {}, row_weight(b.a_bar), t);
    }
}

CVec restrict_to(const CVec& h, const std::vector<int>& active) {
    CVec r(static_cast<Eigen::Index>(active.size()));
    for (std::size_t i = 0; i < active.size(); ++i) r[i] = h[active[i]];
    return r;
}

// IR (and Eve, for imperfect CSI) constraints on the composite precoder
void add_ci_constraints(conic::ConicProgram& p, AssembledProgram& ap, Variant v, const CVec& hd,
                        const std::vector<CVec>& hk, const ScenarioConfig& cfg, const SymbolSpec& sym, double sn) {
    if (is_deterministic(v)) {
        add_sproc(p, robust::ir_sproc_lmis(hd, cfg, sym, cfg.sproc_mode, sn), ap.x, ap.lambda, "ir");
        if (!is_unknown_csi(v))
            for (std::size_t k = 0; k < hk.size(); ++k)
                add_sproc(p, robust::eve_sproc_lmis(hk[k], cfg, sym, cfg.sproc_mode, sn), ap.x, ap.lambda,
                          "eve" + std::to_string(k + 1) + "_");
    } else {
        add_chance(p, robust::ir_chance_blocks(hd, cfg, sym, sn), ap.x, cfg.ir_form, "ir");
        if (!is_unknown_csi(v))
            for (std::size_t k = 0; k < hk.size(); ++k)
                add_chance(p, robust::eve_chance_blocks(hk[k], cfg, sym, sn), ap.x, cfg.ir_form,
                           "eve" + std::to_string(k + 1) + "_");
    }
}

AssembledProgram build(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                       const std::vector<int>& active, const RVec* t_prev, double circuit_const) {
    AssembledProgram ap;
    ap.active = active;
    const int n = static_cast<int>(active.size());
    const int n2 = 2 * n;
    ap.n_local = n;
    auto& p = ap.prog;
    const CVec hd = restrict_to(ch.h_d_hat, active);
    std::vector<CVec> hk;
    for (const auto& h : ch.h_k_hat) hk.push_back(restrict_to(h, active));

    ap.x = p.add_var_block(n2, -kInf, kInf, "u");
    ap.X = add_lift(p, n2, "U");
    if (t_prev) ap.t = p.add_var_block(n, 0.0, 1.0, "t");
    if (is_unknown_csi(v)) {
        ap.z = p.add_var_block(n2, -kInf, kInf, "z");
        ap.Z = add_lift(p, n2, "Z");
    }

    for (int i = 0; i < n2; ++i) p.set_cost(lift_var(ap.X, n2, i, i), 1.0 / cfg.alpha);
    if (t_prev) {
        const double phi = cfg.phi();
        for (int k = 0; k < n; ++k)
            p.set_cost(ap.t[k], (cfg.p_on_mw - cfg.p_off_mw) + phi * (1.0 - 2.0 * (*t_prev)[k]));
        p.set_cost_constant(n * cfg.p_off_mw + phi * t_prev->squaredNorm());
    } else {
        p.set_cost_constant(circuit_const);
    }

    for (int k = 0; k < n; ++k) {
        Affine a = antenna_power(ap.X, n, k);
        if (t_prev)
            a.add(ap.t[k], -cfg.p_da_mw);
        else
            a.c -= cfg.p_da_mw;
        p.add_linear(a.scaled(1.0 / std::max(cfg.p_da_mw, 1.0)), Sense::Le, "antenna_power" + std::to_string(k + 1));
    }
    add_schur(p, ap.X, ap.x, n2, "U", cfg.lift_psd_block);
    add_ci_constraints(p, ap, v, hd, hk, cfg, sym, ch.noise_std);

    if (is_unknown_csi(v)) {
        const double pan = cfg.p_an_mw();
        Affine tr = lift_trace(ap.Z, n2);
        tr.c = -pan;
        p.add_linear(tr.scaled(1.0 / std::max(pan, 1.0)), Sense::Ge, "an_floor");
        for (int k = 0; k < n; ++k) {
            Affine a = antenna_power(ap.Z, n, k);
            a.add(antenna_power(ap.X, n, k), -1.0);
            p.add_linear(a.scaled(1.0 / std::max(cfg.p_da_mw, 1.0)), Sense::Le, "an_per_antenna" + std::to_string(k + 1));
        }
        add_schur(p, ap.Z, ap.z, n2, "Z", cfg.lift_psd_block);
    }
    return ap;
}

RMat read_lift(const RVec& v, const VarRange& X, int n2) {
    RMat m(n2, n2);
    for (int j = 0; j < n2; ++j)
        for (int i = j; i < n2; ++i) m(i, j) = m(j, i) = v[lift_var(X, n2, i, j)];
    return m;
}

void write_lift(RVec& v, const VarRange& X, const RMat& m) {
    const int n2 = static_cast<int>(m.rows());
    for (int j = 0; j < n2; ++j)
        for (int i = j; i < n2; ++i) v[lift_var(X, n2, i, j)] = m(i, j);
}

RVec read(const RVec& v, const VarRange& r) { return v.segment(r.begin, r.count); }

// local stacked index -> global stacked index
RVec embed(const RVec& xl, const std::vector<int>& active, int n) {
    RVec g = RVec::Zero(2 * n);
    const int nl = static_cast<int>(active.size());
    for (int i = 0; i < nl; ++i) {
        g[active[i]] = xl[i];
        g[n + active[i]] = xl[nl + i];
    }
    return g;
}

RMat embed(const RMat& Ml, const std::vector<int>& active, int n) {
    const int nl = static_cast<int>(active.size());
    std::vector<int> map(2 * nl);
    for (int i = 0; i < nl; ++i) {
        map[i] = active[i];
        map[nl + i] = n + active[i];
    }
    RMat g = RMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < 2 * nl; ++i)
        for (int j = 0; j < 2 * nl; ++j) g(map[i], map[j]) = Ml(i, j);
    return g;
}

struct Recovery {
    bool ok = false;
    RVec x;
    RVec lambda;
    std::string note;
    int solves = 0;
    double time_s = 0.0;
};

// Convex restriction of ||x||^2 >= p_an around x_ref, iterated. Used only when
// the scaled lift point breaks a per-antenna limit.
Recovery refine_an_floor(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                         const std::vector<int>& active, RVec x_ref) {
    Recovery out;
    const int n = static_cast<int>(active.size());
    const int n2 = 2 * n;
    const CVec hd = restrict_to(ch.h_d_hat, active);
    double prev = kInf;
    for (int it = 0; it < 30; ++it) {
        AssembledProgram ap;
        auto& p = ap.prog;
        ap.x = p.add_var_block(n2, -kInf, kInf, "u");
        const VarRange s = p.add_var_block(1, 0.0, kInf, "power");
        p.set_cost(s[0], 1.0 / cfg.alpha);
        SocCon epi;  // ||x||^2 <= s
        epi.tag = "power_epigraph";
        epi.t = Affine(1.0).add(s[0], 1.0);
        for (int i = 0; i < n2; ++i) epi.y.push_back(Affine().add(ap.x[i], 2.0));
        epi.y.push_back(Affine(-1.0).add(s[0], 1.0));
        p.add_soc(std::move(epi));
        for (int k = 0; k < n; ++k) {
            SocCon c;
            c.tag = "antenna_power" + std::to_string(k + 1);
            c.t = Affine(std::sqrt(cfg.p_da_mw));
            c.y.push_back(Affine().add(ap.x[k], 1.0));
            c.y.push_back(Affine().add(ap.x[n + k], 1.0));
            p.add_soc(std::move(c));
        }
        add_ci_constraints(p, ap, v, hd, {}, cfg, sym, ch.noise_std);
        Affine floor(-(cfg.p_an_mw() + x_ref.squaredNorm()));
        for (int i = 0; i < n2; ++i) floor.add(ap.x[i], 2.0 * x_ref[i]);
        p.add_linear(floor.scaled(1.0 / std::max(cfg.p_an_mw(), 1.0)), Sense::Ge, "an_floor_linearized");

        const auto r = conic::solve(p, solver_options(cfg));
        ++out.solves;
        out.time_s += r.solve_time_s;
        if (r.status != conic::SolveStatus::Optimal) {
            out.note = "an-floor refinement " + conic::to_string(r.status) + " at step " + std::to_string(it + 1);
            return out;
        }
        out.ok = true;
        out.x = read(r.v, ap.x);
        out.lambda.resize(static_cast<Eigen::Index>(ap.lambda.size()));
        for (std::size_t i = 0; i < ap.lambda.size(); ++i) out.lambda[i] = r.v[ap.lambda[i]];
        x_ref = out.x;
        const double obj = r.objective_value;
        if (std::abs(prev - obj) <= 1e-7 * std::max(1.0, std::abs(obj))) break;
        prev = obj;
    }
    return out;
}

std::string mask_key(const Eigen::VectorXi& t) {
    std::string s(static_cast<std::size_t>(t.size()), '0');
    for (Eigen::Index i = 0; i < t.size(); ++i) s[i] = t[i] ? '1' : '0';
    return s;
}

double penalty_value(const RVec& t, double phi) { return phi * (t.sum() - t.squaredNorm()); }

void check_inputs(const ChannelSet& ch, const ScenarioConfig& cfg) {
    validate(cfg);
    if (ch.n() != cfg.n_das) throw PreconditionError("channel length differs from n_das");
    for (const auto& h : ch.h_k_hat)
        if (h.size() != ch.h_d_hat.size()) throw PreconditionError("Eve channel length mismatch");
}

}  // namespace

SelectionVector SelectionVector::from_relaxed(const RVec& t) {
    SelectionVector s;
    s.t = t.cwiseMax(0.0).cwiseMin(1.0);
    s.t_rounded.resize(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) s.t_rounded[i] = s.t[i] >= 0.5 ? 1 : 0;
    return s;
}

SelectionVector SelectionVector::from_binary(const Eigen::VectorXi& b) {
    SelectionVector s;
    s.t_rounded = b;
    s.t = b.cast<double>();
    return s;
}

double SelectionVector::max_rounding_gap() const {
    if (t.size() == 0) return 0.0;
    return (t - t_rounded.cast<double>()).cwiseAbs().maxCoeff();
}

std::string to_string(PrecoderStatus s) {
    switch (s) {
        case PrecoderStatus::Optimal: return "optimal";
        case PrecoderStatus::Repaired: return "repaired";
        case PrecoderStatus::FallbackAllOn: return "fallback_all_on";
        case PrecoderStatus::Infeasible: return "infeasible";
        case PrecoderStatus::NumericalTrouble: return "numerical_trouble";
    }
    return "?";
}

conic::SolverOptions solver_options(const ScenarioConfig& cfg) {
    conic::SolverOptions o;
    o.eps = cfg.solver_eps;
    o.max_iters = cfg.solver_max_iters;
    if (cfg.solver != SolverKind::Auto) {
        o.backend = cfg.solver == SolverKind::Clarabel ? conic::Backend::Clarabel : conic::Backend::Scs;
        if (!conic::backend_available(o.backend))
            throw ConfigError("solver " + to_string(cfg.solver) + " not available in this build");
    }
    return o;
}

SymbolSpec reference_symbol(const ScenarioConfig& cfg) {
    return cfg.symbol_phase < 0.0 ? SymbolSpec::psk(cfg.m_psk, 0) : SymbolSpec::with_phase(cfg.m_psk, cfg.symbol_phase);
}

double circuit_power(const RVec& t, const ScenarioConfig& cfg) {
    return (t.array() * cfg.p_on_mw + (1.0 - t.array()) * cfg.p_off_mw).sum();
}

PowerBreakdown power_report(const PrecoderSolution& sol, const ScenarioConfig& cfg) {
    PowerBreakdown p;
    p.tx_mw = sol.U_lift.size() ? sol.U_lift.trace() / cfg.alpha : 0.0;
    p.circuit_mw = circuit_power(sol.selection.t_rounded.cast<double>(), cfg);
    p.penalty_term = penalty_value(sol.selection.t, cfg.phi());
    p.total_mw = p.tx_mw + p.circuit_mw;
    return p;
}

AssembledProgram assemble(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                          const RVec& t_prev) {
    if (t_prev.size() != ch.n()) throw PreconditionError("assemble: t_prev length mismatch");
    std::vector<int> all(static_cast<std::size_t>(ch.n()));
    std::iota(all.begin(), all.end(), 0);
    return build(v, ch, cfg, sym, all, &t_prev, 0.0);
}

conic::ConicProgram assemble_imperfect_prob(const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                            const RVec& t_prev) {
    return assemble(Variant::ImperfectProb, ch, cfg, sym, t_prev).prog;
}
conic::ConicProgram assemble_imperfect_det(const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                           const RVec& t_prev) {
    return assemble(Variant::ImperfectDet, ch, cfg, sym, t_prev).prog;
}
conic::ConicProgram assemble_unknown_prob(const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                          const RVec& t_prev) {
    return assemble(Variant::UnknownProb, ch, cfg, sym, t_prev).prog;
}
conic::ConicProgram assemble_unknown_det(const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                         const RVec& t_prev) {
    return assemble(Variant::UnknownDet, ch, cfg, sym, t_prev).prog;
}

AssembledProgram assemble_fixed(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                const Eigen::VectorXi& t_fixed) {
    if (t_fixed.size() != ch.n()) throw PreconditionError("assemble_fixed: selection length mismatch");
    std::vector<int> active;
    for (Eigen::Index i = 0; i < t_fixed.size(); ++i) {
        if (t_fixed[i] != 0 && t_fixed[i] != 1) throw PreconditionError("assemble_fixed: selection must be binary");
        if (t_fixed[i]) active.push_back(static_cast<int>(i));
    }
    return build(v, ch, cfg, sym, active, nullptr, circuit_power(t_fixed.cast<double>(), cfg));
}

PrecoderSolution fixed_t_solve(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                               const Eigen::VectorXi& t_fixed) {
    check_inputs(ch, cfg);
    const int n = ch.n();
    AssembledProgram ap = assemble_fixed(v, ch, cfg, sym, t_fixed);
    const int n2l = 2 * ap.n_local;

    PrecoderSolution sol;
    sol.variant = v;
    sol.selection = SelectionVector::from_binary(t_fixed);
    sol.relaxed_t = sol.selection.t;
    const auto r = conic::solve(ap.prog, solver_options(cfg));
    sol.n_solves = 1;
    sol.solve_time_s = r.solve_time_s;
    sol.diagnostic = r.diagnostic;
    if (r.status != conic::SolveStatus::Optimal) {
        sol.status = r.status == conic::SolveStatus::Infeasible ? PrecoderStatus::Infeasible
                                                                : PrecoderStatus::NumericalTrouble;
        sol.u = CVec::Zero(n);
        return sol;
    }

    RVec x = read(r.v, ap.x);
    RMat X = read_lift(r.v, ap.X, n2l);
    RVec lam(static_cast<Eigen::Index>(ap.lambda.size()));
    for (std::size_t i = 0; i < ap.lambda.size(); ++i) lam[i] = r.v[ap.lambda[i]];
    sol.rank1_gap = (X.trace() - x.squaredNorm()) / std::max(1.0, x.squaredNorm());
    sol.audit_violation = r.max_violation;

    RVec zs = RVec::Zero(n2l);
    RMat Z = RMat::Zero(n2l, n2l);
    if (is_unknown_csi(v)) {
        const RVec zsol = read(r.v, ap.z);
        const RMat Zsol = read_lift(r.v, ap.Z, n2l);
        sol.rank1_gap_z = (Zsol.trace() - zsol.squaredNorm()) / std::max(1.0, zsol.squaredNorm());
        // rank-one recovery: scale u up to the lifted power; homogeneity keeps the IR constraints
        const double pan = cfg.p_an_mw();
        const double nx = x.squaredNorm();
        if (nx <= 0.0) {
            sol.status = PrecoderStatus::NumericalTrouble;
            sol.diagnostic = "rank-one recovery: zero precoder";
            sol.u = CVec::Zero(n);
            return sol;
        }
        const double target = std::max(X.trace(), pan);
        const double beta = std::sqrt(target / nx);
        if (beta > 1.0) {
            x *= beta;
            lam *= beta;
        }
        bool per_antenna_ok = true;
        for (int k = 0; k < ap.n_local; ++k)
            per_antenna_ok &= x[k] * x[k] + x[ap.n_local + k] * x[ap.n_local + k] <= cfg.p_da_mw * (1.0 + 1e-9);
        if (!per_antenna_ok) {
            const Recovery rec = refine_an_floor(v, ch, cfg, sym, ap.active, x);
            sol.n_solves += rec.solves;
            sol.solve_time_s += rec.time_s;
            if (!rec.ok) {
                sol.status = PrecoderStatus::NumericalTrouble;
                sol.diagnostic = "rank-one recovery failed: " + rec.note;
                sol.u = CVec::Zero(n);
                return sol;
            }
            x = rec.x;
            lam = rec.lambda;
        }
        const double nu = x.squaredNorm();
        const double c = std::sqrt(std::min(1.0, std::max(pan, std::min(Zsol.trace(), nu)) / nu));
        // z e^{-j phi_d} = c u, so the AN adds constructively at the IR
        const CVec ul = unstack(x);
        zs = stack(ul * std::polar(c, sym.phi_d));
        X = x * x.transpose();
        Z = zs * zs.transpose();

        RVec packed = r.v;
        packed.segment(ap.x.begin, ap.x.count) = x;
        write_lift(packed, ap.X, X);
        packed.segment(ap.z.begin, ap.z.count) = zs;
        write_lift(packed, ap.Z, Z);
        for (std::size_t i = 0; i < ap.lambda.size(); ++i) packed[ap.lambda[i]] = lam[i];
        const auto a = conic::audit(ap.prog, packed);
        sol.audit_violation = a.max_violation;
        if (a.max_violation > conic::kAuditTol) {
            sol.status = PrecoderStatus::NumericalTrouble;
            sol.diagnostic = "recovered point fails audit at " + a.worst_tag;
            sol.u = CVec::Zero(n);
            return sol;
        }
    }

    sol.u = unstack(embed(x, ap.active, n));
    sol.U_lift = embed(X, ap.active, n);
    if (is_unknown_csi(v)) {
        sol.z = unstack(embed(zs, ap.active, n));
        sol.Z_lift = embed(Z, ap.active, n);
        sol.w = sol.u - sol.z * std::polar(1.0, -sym.phi_d);
    } else {
        sol.w = sol.u;
    }
    sol.multipliers.assign(lam.data(), lam.data() + lam.size());
    sol.status = PrecoderStatus::Optimal;
    sol.power = power_report(sol, cfg);
    return sol;
}

namespace {

struct ScaRun {
    bool ok = false;
    conic::SolveStatus fail = conic::SolveStatus::Optimal;
    int failed_iteration = -1;
    RVec t;
    int iterations = 0;
    double time_s = 0.0;
    std::string diagnostic;
};

ScaRun run_sca(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym, RVec t_prev,
               int stage, std::vector<TraceEntry>& trace) {
    ScaRun run;
    const double phi = cfg.phi();
    double prev = kInf;
    for (int it = 1; it <= cfg.max_sca_iters; ++it) {
        AssembledProgram ap = assemble(v, ch, cfg, sym, t_prev);
        const auto r = conic::solve(ap.prog, solver_options(cfg));
        run.time_s += r.solve_time_s;
        run.iterations = it;
        if (r.status != conic::SolveStatus::Optimal) {
            run.fail = r.status;
            run.failed_iteration = it;
            run.diagnostic = r.diagnostic;
            return run;
        }
        const RVec t = read(r.v, ap.t).cwiseMax(0.0).cwiseMin(1.0);
        const RMat X = read_lift(r.v, ap.X, 2 * ch.n());
        const double obj = X.trace() / cfg.alpha + circuit_power(t, cfg);
        const double f = obj + penalty_value(t, phi);
        trace.push_back({stage, it, f, r.objective_value, SelectionVector::from_relaxed(t).max_rounding_gap(),
                         r.solve_time_s});
        t_prev = t;
        if (std::abs(prev - f) <= cfg.conv_tol * std::max(1.0, std::abs(f))) break;
        prev = f;
    }
    run.ok = true;
    run.t = t_prev;
    return run;
}

}  // namespace

PrecoderSolution sca_solve(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym) {
    check_inputs(ch, cfg);
    const int n = ch.n();
    std::vector<TraceEntry> trace;
    int solves = 0;
    double time_s = 0.0;

    std::map<std::string, PrecoderSolution> cache;
    auto evaluate = [&](const Eigen::VectorXi& t) -> const PrecoderSolution& {
        const std::string key = mask_key(t);
        auto it = cache.find(key);
        if (it == cache.end()) {
            PrecoderSolution s = fixed_t_solve(v, ch, cfg, sym, t);
            solves += s.n_solves;
            time_s += s.solve_time_s;
            it = cache.emplace(key, std::move(s)).first;
        }
        return it->second;
    };
    auto finish = [&](PrecoderSolution s) {
        s.trace = trace;
        s.n_solves = solves;
        s.solve_time_s = time_s;
        return s;
    };

    // stage 1: from t = 1/2 the first surrogate is the plain relaxation
    ScaRun a = run_sca(v, ch, cfg, sym, RVec::Constant(n, 0.5), 1, trace);
    solves += a.iterations;
    time_s += a.time_s;
    if (!a.ok) {
        PrecoderSolution s;
        s.variant = v;
        s.u = CVec::Zero(n);
        s.status = a.fail == conic::SolveStatus::Infeasible && a.failed_iteration == 1 ? PrecoderStatus::Infeasible
                                                                                        : PrecoderStatus::NumericalTrouble;
        s.failed_iteration = a.failed_iteration;
        s.iterations = s.relaxed_iterations = a.iterations;
        s.diagnostic = "SCA iteration " + std::to_string(a.failed_iteration) + ": " + a.diagnostic;
        return finish(s);
    }

    const SelectionVector rounded = SelectionVector::from_relaxed(a.t);
    Eigen::VectorXi sel = rounded.t_rounded;
    PrecoderStatus status = PrecoderStatus::Optimal;
    std::string note;
    if (!evaluate(sel).ok()) {
        // add antennas in decreasing relaxed t until the fixed-selection problem is feasible
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a.t[i] > a.t[j]; });
        status = PrecoderStatus::Repaired;
        for (int k : order) {
            if (sel[k]) continue;
            sel[k] = 1;
            if (evaluate(sel).ok()) break;
        }
        if (!evaluate(sel).ok()) {
            PrecoderSolution s = evaluate(sel);
            s.status = PrecoderStatus::Infeasible;
            s.relaxed_t = a.t;
            s.iterations = s.relaxed_iterations = a.iterations;
            s.diagnostic = "rounded selection and all repairs infeasible";
            return finish(s);
        }
        if (sel.sum() == n) status = PrecoderStatus::FallbackAllOn;
        note = "rounding repaired to " + std::to_string(sel.sum()) + " antennas";
    }

    if (cfg.local_search) {
        bool improved = true;
        while (improved) {
            improved = false;
            const double best = evaluate(sel).power.total_mw;
            auto try_move = [&](const Eigen::VectorXi& cand) {
                const PrecoderSolution& s = evaluate(cand);
                if (s.ok() && s.power.total_mw < best - 1e-9 * std::max(1.0, best)) {
                    sel = cand;
                    improved = true;
                }
                return improved;
            };
            for (int i = 0; i < n && !improved; ++i)
                if (sel[i]) {
                    Eigen::VectorXi c = sel;
                    c[i] = 0;
                    try_move(c);
                }
            for (int i = 0; i < n && !improved; ++i)
                for (int j = 0; j < n && !improved; ++j)
                    if (sel[i] && !sel[j]) {
                        Eigen::VectorXi c = sel;
                        c[i] = 0;
                        c[j] = 1;
                        try_move(c);
                    }
            for (int j = 0; j < n && !improved; ++j)
                if (!sel[j]) {
                    Eigen::VectorXi c = sel;
                    c[j] = 1;
                    try_move(c);
                }
        }
        if (status == PrecoderStatus::FallbackAllOn && sel.sum() < n) status = PrecoderStatus::Repaired;
    }

    // stage 2: SCA restarted from the selected binary point
    ScaRun b = run_sca(v, ch, cfg, sym, sel.cast<double>(), 2, trace);
    solves += b.iterations;
    time_s += b.time_s;
    RVec t_final = sel.cast<double>();
    if (b.ok) {
        const SelectionVector sb = SelectionVector::from_relaxed(b.t);
        if (sb.t_rounded == sel) {
            t_final = sb.t;
        } else {
            const PrecoderSolution& alt = evaluate(sb.t_rounded);
            if (alt.ok() && alt.power.total_mw < evaluate(sel).power.total_mw) {
                sel = sb.t_rounded;
                t_final = sb.t;
            }
            note += (note.empty() ? "" : "; ") + std::string("restarted SCA left the selected point");
        }
    } else {
        note += (note.empty() ? "" : "; ") + std::string("restarted SCA failed at iteration ") +
                std::to_string(b.failed_iteration);
    }

    PrecoderSolution s = evaluate(sel);
    s.status = status;
    s.relaxed_t = a.t;
    s.selection.t = t_final;
    s.selection.t_rounded = sel;
    s.iterations = a.iterations + b.iterations;
    s.relaxed_iterations = a.iterations;
    s.power = power_report(s, cfg);
    s.diagnostic = note;
    return finish(s);
}

}  // namespace dasec
