#pragma once

#include <string>
#include <vector>

#include "dasec/ci_core.hpp"
#include "dasec/config.hpp"
#include "dasec/conic_model.hpp"
#include "dasec/robustify.hpp"
#include "dasec/scenario.hpp"

namespace dasec {

struct SelectionVector {
    RVec t;
    Eigen::VectorXi t_rounded;

    static SelectionVector from_relaxed(const RVec& t);
    static SelectionVector from_binary(const Eigen::VectorXi& b);
    double max_rounding_gap() const;
    int active() const { return t_rounded.sum(); }
};

struct PowerBreakdown {
    double tx_mw = 0.0;
    double circuit_mw = 0.0;
    double penalty_term = 0.0;
    double total_mw = 0.0;
};

enum class PrecoderStatus { Optimal, Repaired, FallbackAllOn, Infeasible, NumericalTrouble };
std::string to_string(PrecoderStatus s);

struct TraceEntry {
    int stage = 0;  // 1 relaxed run, 2 run restarted from the selected binary point
    int iter = 0;
    double objective = 0.0;  // objective plus phi * (sum t - sum t^2) at the new iterate
    double surrogate = 0.0;  // value of the convexified program
    double binary_gap = 0.0;
    double solve_time_s = 0.0;
};

struct PrecoderSolution {
    Variant variant = Variant::ImperfectProb;
    PrecoderStatus status = PrecoderStatus::Infeasible;
    CVec u;
    CVec z;  // unknown-CSI variants only
    CVec w;
    RMat U_lift;  // 2N x 2N real lift of [u_R; u_I]
    RMat Z_lift;
    SelectionVector selection;
    RVec relaxed_t;
    std::vector<double> multipliers;
    PowerBreakdown power;
    int iterations = 0;        // all SCA iterations
    int relaxed_iterations = 0;  // first SCA run only
    std::vector<TraceEntry> trace;
    int failed_iteration = -1;
    double rank1_gap = 0.0;
    double rank1_gap_z = 0.0;
    double audit_violation = 0.0;
    double solve_time_s = 0.0;
    int n_solves = 0;
    std::string diagnostic;

    bool ok() const {
        return status == PrecoderStatus::Optimal || status == PrecoderStatus::Repaired ||
               status == PrecoderStatus::FallbackAllOn;
    }
};

// Assembled program with the positions of each variable group. Groups a
// variant does not use have count 0. `active` maps local antenna slots to
// global indices (all antennas for relaxed programs).
struct AssembledProgram {
    conic::ConicProgram prog;
    conic::VarRange x, X, t, z, Z;
    std::vector<int> lambda;
    std::vector<int> active;
    int n_local = 0;
};

// Relaxed-selection program around t_prev (t in [0,1], linearized penalty).
AssembledProgram assemble(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                          const RVec& t_prev);
conic::ConicProgram assemble_imperfect_prob(const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                            const RVec& t_prev);
conic::ConicProgram assemble_imperfect_det(const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                           const RVec& t_prev);
conic::ConicProgram assemble_unknown_prob(const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                          const RVec& t_prev);
conic::ConicProgram assemble_unknown_det(const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                         const RVec& t_prev);

// Fixed binary selection: switched-off antennas are removed from the program,
// their circuit power enters as a constant.
AssembledProgram assemble_fixed(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                                const Eigen::VectorXi& t_fixed);

PrecoderSolution sca_solve(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym);
PrecoderSolution fixed_t_solve(Variant v, const ChannelSet& ch, const ScenarioConfig& cfg, const SymbolSpec& sym,
                               const Eigen::VectorXi& t_fixed);

PowerBreakdown power_report(const PrecoderSolution& sol, const ScenarioConfig& cfg);
double circuit_power(const RVec& t, const ScenarioConfig& cfg);

conic::SolverOptions solver_options(const ScenarioConfig& cfg);
SymbolSpec reference_symbol(const ScenarioConfig& cfg);

}  // namespace dasec
