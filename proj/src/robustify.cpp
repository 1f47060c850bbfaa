#include "dasec/robustify.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/erf.hpp>

namespace dasec::robust {
namespace {

double tan_checked(double theta) {
    if (theta >= std::numbers::pi / 2 - 1e-6)
        throw UnsupportedConstellation("constellation unsupported: tan(theta) unbounded for theta = " +
                                       std::to_string(theta));
    return std::tan(theta);
}

std::pair<RVec, RVec> split(const RVec& h) {
    const Eigen::Index n = h.size() / 2;
    if (2 * n != h.size()) throw PreconditionError("stacked channel must have even length");
    return {h.head(n), h.tail(n)};
}

RVec cat(const RVec& a, const RVec& b) {
    RVec r(a.size() + b.size());
    r << a, b;
    return r;
}

RVec rotated_stack(const CVec& h, const SymbolSpec& sym) { return stack(h * std::polar(1.0, -sym.phi_d)); }

}  // namespace

double SocBlock::slack(const RVec& x) const {
    return rhs - a_bar.dot(x) - scale * theta_sqrt.cwiseProduct(x).norm();
}

RMat LmiBlock::assemble(const RVec& x, const RVec& lambda) const {
    if (x.size() != static_cast<Eigen::Index>(Fx.size())) throw PreconditionError("LmiBlock: x length mismatch");
    if (lambda.size() != static_cast<Eigen::Index>(Fm.size()))
        throw PreconditionError("LmiBlock: multiplier count mismatch");
    RMat m = F0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x[i] != 0.0) m += x[i] * Fx[i];
    for (Eigen::Index j = 0; j < lambda.size(); ++j) m += lambda[j] * Fm[j];
    return m;
}

double LmiBlock::min_eig(const RVec& x, const RVec& lambda) const {
    Eigen::SelfAdjointEigenSolver<RMat> es(assemble(x, lambda), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

std::pair<RVec, RVec> abar_ir(const RVec& h, double theta) {
    const double t = tan_checked(theta);
    const auto [hr, hi] = split(h);
    return {cat(hi - hr * t, hr + hi * t), cat(-hi - hr * t, -hr + hi * t)};
}

std::pair<RVec, RVec> abar_eve(const RVec& h, double theta) {
    const double t = tan_checked(theta);
    const auto [hr, hi] = split(h);
    return {cat(hi + hr * t, hr - hi * t), cat(-hi + hr * t, -hr - hi * t)};
}

RVec cov_sqrt(double theta, double sigma_e, int n, CovarianceMode mode) {
    const double t = tan_checked(theta);
    const double e = mode == CovarianceMode::PaperVerbatim ? (1.0 + t) * sigma_e
                                                           : sigma_e * std::sqrt((1.0 + t * t) / 2.0);
    return RVec::Constant(2 * n, e);
}

double quantile(double eta, QuantileMode mode) {
    if (!(eta > 0.0 && eta < 1.0)) throw PreconditionError("quantile: eta must lie in (0,1)");
    if (mode == QuantileMode::Normal) return boost::math::quantile(boost::math::normal_distribution<double>(), eta);
    return boost::math::erf_inv(eta);
}

SocBlock chance_to_soc(const RVec& a_bar, const RVec& cs, double eta, double rhs, QuantileMode mode) {
    if (a_bar.size() != cs.size()) throw PreconditionError("chance_to_soc: dimension mismatch");
    if ((cs.array() < 0.0).any()) throw PreconditionError("chance_to_soc: negative covariance root");
    const double s = quantile(eta, mode);
    if (!(s > 0.0)) throw PreconditionError("chance_to_soc: eta gives a non-positive quantile scale");
    return SocBlock{a_bar, cs, s, rhs};
}

LmiBlock soc_to_lmi(const SocBlock& soc) {
    if (!(soc.scale > 0.0)) throw PreconditionError("soc_to_lmi: scale must be positive");
    const int n2 = static_cast<int>(soc.a_bar.size());
    LmiBlock b;
    b.size = n2 + 1;
    b.F0 = RMat::Identity(b.size, b.size) * (soc.rhs / soc.scale);
    b.Fx.assign(n2, RMat::Zero(b.size, b.size));
    for (int i = 0; i < n2; ++i) {
        RMat& f = b.Fx[i];
        f.diagonal().setConstant(-soc.a_bar[i] / soc.scale);
        f(i, n2) = f(n2, i) = soc.theta_sqrt[i];
    }
    return b;
}

std::array<SocBlock, 2> ir_chance_blocks(const CVec& h_hat, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                         double sigma_n) {
    const auto [a1, a2] = abar_ir(rotated_stack(h_hat, sym), sym.theta);
    const RVec cs = cov_sqrt(sym.theta, cfg.sigma_e, static_cast<int>(h_hat.size()), cfg.covariance_mode);
    const double rhs = -sigma_n * std::sqrt(cfg.gamma_d_lin()) * std::tan(sym.theta);
    return {chance_to_soc(a1, cs, cfg.eta_d, rhs, cfg.quantile), chance_to_soc(a2, cs, cfg.eta_d, rhs, cfg.quantile)};
}

std::array<SocBlock, 2> eve_chance_blocks(const CVec& h_hat_k, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                          double sigma_n) {
    const auto [a1, a2] = abar_eve(rotated_stack(h_hat_k, sym), sym.theta);
    const RVec cs = cov_sqrt(sym.theta, cfg.sigma_e, static_cast<int>(h_hat_k.size()), cfg.covariance_mode);
    const double rhs = sigma_n * std::sqrt(cfg.gamma_k_lin()) * std::tan(sym.theta);
    return {chance_to_soc(a1, cs, cfg.eta_k, rhs, cfg.quantile), chance_to_soc(a2, cs, cfg.eta_k, rhs, cfg.quantile)};
}

double norm_robust_factor(double sigma, double theta) { return sigma / std::cos(theta); }

namespace {

SprocBlock sproc_block(const RVec& a_bar, double rhs, double sigma2, double theta, SprocMode mode) {
    const int n2 = static_cast<int>(a_bar.size());
    SprocBlock out;
    out.mode = mode;
    out.a_bar = a_bar;
    out.rhs = rhs;
    if (mode == SprocMode::NormRobust) {
        out.soc = SocBlock{a_bar, RVec::Constant(n2, norm_robust_factor(std::sqrt(sigma2), theta)), 1.0, rhs};
        return out;
    }
    // [[lambda I - diag(x), 0], [0, -lambda sigma^2 - rho]], rho = a_bar^T x - rhs
    LmiBlock& b = out.lmi;
    b.size = n2 + 1;
    b.F0 = RMat::Zero(b.size, b.size);
    b.F0(n2, n2) = rhs;
    b.Fx.assign(n2, RMat::Zero(b.size, b.size));
    for (int i = 0; i < n2; ++i) {
        b.Fx[i](i, i) = -1.0;
        b.Fx[i](n2, n2) = -a_bar[i];
    }
    RMat fl = RMat::Zero(b.size, b.size);
    fl.topLeftCorner(n2, n2).setIdentity();
    fl(n2, n2) = -sigma2;
    b.Fm.push_back(fl);
    b.multiplier_lb.push_back(0.0);
    return out;
}

}  // namespace

std::array<SprocBlock, 2> ir_sproc_lmis(const CVec& h_hat, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                        SprocMode mode, double sigma_n) {
    const auto [a1, a2] = abar_ir(rotated_stack(h_hat, sym), sym.theta);
    const double rhs = -sigma_n * std::sqrt(cfg.gamma_d_lin()) * std::tan(sym.theta);
    const double s2 = cfg.sigma_ball_eff();
    return {sproc_block(a1, rhs, s2, sym.theta, mode), sproc_block(a2, rhs, s2, sym.theta, mode)};
}

std::array<SprocBlock, 2> eve_sproc_lmis(const CVec& h_hat_k, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                         SprocMode mode, double sigma_n) {
    const auto [a1, a2] = abar_eve(rotated_stack(h_hat_k, sym), sym.theta);
    const double rhs = sigma_n * std::sqrt(cfg.gamma_k_lin()) * std::tan(sym.theta);
    const double s2 = cfg.sigma_ball_eff();
    return {sproc_block(a1, rhs, s2, sym.theta, mode), sproc_block(a2, rhs, s2, sym.theta, mode)};
}

}  // namespace dasec::robust
