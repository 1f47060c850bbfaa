#include <cmath>

#include "conic_standard.hpp"

namespace dasec::conic {

namespace detail {

SolveResult solve_scs(const ConicProgram& prog, const SolverOptions& opt);
#ifdef DASEC_HAVE_CLARABEL
SolveResult solve_clarabel(const ConicProgram& prog, const SolverOptions& opt);
#endif

SolveResult finish(const ConicProgram& prog, int code, const std::vector<double>& x, SolveResult res) {
    switch (code) {
        case 1:
        case 2: {
            RVec v = Eigen::Map<const RVec>(x.data(), static_cast<Eigen::Index>(x.size()));
            const auto a = audit(prog, v);
            res.max_violation = a.max_violation;
            if (a.max_violation <= kAuditTol) {
                res.status = SolveStatus::Optimal;
                res.v = std::move(v);
                res.objective_value = prog.objective(res.v);
            } else {
                res.status = SolveStatus::NumericalTrouble;
                res.diagnostic += "; audit violation " + std::to_string(a.max_violation) + " at " + a.worst_tag;
            }
            break;
        }
        case -2:
        case -7: res.status = SolveStatus::Infeasible; break;
        case -1:
        case -6: res.status = SolveStatus::Unbounded; break;
        default: res.status = SolveStatus::NumericalTrouble; break;
    }
    return res;
}

}  // namespace detail

std::string to_string(Backend b) { return b == Backend::Clarabel ? "clarabel" : "scs"; }

bool backend_available(Backend b) {
#ifdef DASEC_HAVE_CLARABEL
    (void)b;
    return true;
#else
    return b == Backend::Scs;
#endif
}

Backend default_backend() { return backend_available(Backend::Clarabel) ? Backend::Clarabel : Backend::Scs; }

SolveResult solve(const ConicProgram& prog, const SolverOptions& opt) {
    prog.check();
    if (prog.n_vars() == 0) {
        // nothing to optimize: the constant point is either feasible or not
        SolveResult res;
        res.v = RVec(0);
        const auto a = audit(prog, res.v);
        res.max_violation = a.max_violation;
        if (a.max_violation <= kAuditTol) {
            res.status = SolveStatus::Optimal;
            res.objective_value = prog.cost_constant();
        } else {
            res.status = SolveStatus::Infeasible;
            res.v = RVec();
            res.diagnostic = "constant program violates " + a.worst_tag;
        }
        return res;
    }
    if (!backend_available(opt.backend)) throw PreconditionError("backend not built: " + to_string(opt.backend));
#ifdef DASEC_HAVE_CLARABEL
    if (opt.backend == Backend::Clarabel) return detail::solve_clarabel(prog, opt);
#endif
    return detail::solve_scs(prog, opt);
}

}  // namespace dasec::conic
