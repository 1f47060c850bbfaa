#pragma once

#include <array>
#include <utility>
#include <vector>

#include "dasec/ci_core.hpp"
#include "dasec/config.hpp"

namespace dasec::robust {

class UnsupportedConstellation : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

// a_bar^T x + scale * ||theta_sqrt .* x|| <= rhs
struct SocBlock {
    RVec a_bar;
    RVec theta_sqrt;  // diagonal of Theta^{1/2}
    double scale = 1.0;
    double rhs = 0.0;

    double slack(const RVec& x) const;  // rhs - lhs
    bool satisfied(const RVec& x, double tol = 0.0) const { return slack(x) >= -tol; }
};

// M(x, lambda) = F0 + sum_i x_i Fx[i] + sum_j lambda_j Fm[j], required PSD.
// x has length 2N; lambda are block-local multipliers.
struct LmiBlock {
    int size = 0;
    RMat F0;
    std::vector<RMat> Fx;
    std::vector<RMat> Fm;
    std::vector<double> multiplier_lb;

    RMat assemble(const RVec& x, const RVec& lambda = RVec()) const;
    double min_eig(const RVec& x, const RVec& lambda = RVec()) const;
};

std::pair<RVec, RVec> abar_ir(const RVec& h_stacked, double theta);
std::pair<RVec, RVec> abar_eve(const RVec& h_stacked, double theta);

// diagonal of Theta^{1/2}, length 2n
RVec cov_sqrt(double theta, double sigma_e, int n, CovarianceMode mode);

// Phi^{-1}(eta): standard normal quantile, or the inverse error function under the literal reading
double quantile(double eta, QuantileMode mode);

SocBlock chance_to_soc(const RVec& a_bar, const RVec& cov_sqrt_diag, double eta, double rhs,
                       QuantileMode mode = QuantileMode::Normal);

LmiBlock soc_to_lmi(const SocBlock& soc);

// Channels are rotated by e^{-j phi_d} inside; sigma_n is the noise amplitude of the normalized channels.
std::array<SocBlock, 2> ir_chance_blocks(const CVec& h_hat, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                         double sigma_n = 1.0);
std::array<SocBlock, 2> eve_chance_blocks(const CVec& h_hat_k, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                          double sigma_n = 1.0);

// Deterministic counterpart of one half-plane constraint. NormRobust fills soc,
// PaperFaithful fills lmi with a single multiplier lambda >= 0.
struct SprocBlock {
    SprocMode mode = SprocMode::NormRobust;
    SocBlock soc;
    LmiBlock lmi;
    RVec a_bar;  // nominal direction
    double rhs = 0.0;
};

std::array<SprocBlock, 2> ir_sproc_lmis(const CVec& h_hat, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                        SprocMode mode, double sigma_n = 1.0);
std::array<SprocBlock, 2> eve_sproc_lmis(const CVec& h_hat_k, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                         SprocMode mode, double sigma_n = 1.0);

// worst case of the error term over ||[e_R; e_I]|| <= sigma is sigma * sec(theta) * ||x||
double norm_robust_factor(double sigma, double theta);

}  // namespace dasec::robust
