#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dasec/types.hpp"

namespace dasec::conic {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// sum_i coef_i * v[var_i] + c
struct Affine {
    std::vector<std::pair<int, double>> terms;
    double c = 0.0;

    Affine() = default;
    explicit Affine(double constant) : c(constant) {}

    Affine& add(int var, double coef) {
        if (coef != 0.0) terms.emplace_back(var, coef);
        return *this;
    }
    Affine& add(const Affine& o, double scale = 1.0);
    Affine scaled(double s) const;
    double eval(const RVec& v) const;
};

enum class Sense { Le, Ge, Eq };  // expr <= 0, expr >= 0, expr == 0

struct LinearCon {
    Affine expr;
    Sense sense = Sense::Le;
    std::string tag;
};

// ||y|| <= t
struct SocCon {
    Affine t;
    std::vector<Affine> y;
    std::string tag;
};

// symmetric dim x dim matrix, lower triangle stored column by column
struct PsdCon {
    int dim = 0;
    std::vector<Affine> lower;
    std::string tag;

    PsdCon() = default;
    PsdCon(int d, std::string t);
    static std::size_t index(int dim, int i, int j);
    Affine& at(int i, int j);
    const Affine& at(int i, int j) const;
    RMat eval(const RVec& v) const;
};

struct VarRange {
    int begin = 0;
    int count = 0;
    int operator[](int i) const { return begin + i; }
    int end() const { return begin + count; }
};

class ConicProgram {
public:
    VarRange add_var_block(int count, double lb = -kInf, double ub = kInf, const std::string& name = "");

    void add_linear(LinearCon c) { linear_.push_back(std::move(c)); }
    void add_linear(Affine e, Sense s, std::string tag) { linear_.push_back({std::move(e), s, std::move(tag)}); }
    void add_soc(SocCon c) { soc_.push_back(std::move(c)); }
    void add_psd(PsdCon c) { psd_.push_back(std::move(c)); }

    void set_cost(int var, double c) { cost_[var] = c; }
    void add_cost(int var, double c) { cost_[var] += c; }
    void set_cost_constant(double c) { cost_const_ = c; }
    void set_bounds(int var, double lb, double ub) {
        lb_[var] = lb;
        ub_[var] = ub;
    }

    int n_vars() const { return static_cast<int>(cost_.size()); }
    const RVec& cost() const { return cost_; }
    double cost_constant() const { return cost_const_; }
    const RVec& lower() const { return lb_; }
    const RVec& upper() const { return ub_; }
    const std::vector<LinearCon>& linear() const { return linear_; }
    const std::vector<SocCon>& socs() const { return soc_; }
    const std::vector<PsdCon>& psds() const { return psd_; }
    const std::vector<std::pair<std::string, VarRange>>& blocks() const { return names_; }

    double objective(const RVec& v) const { return cost_.dot(v) + cost_const_; }

    // Throws PreconditionError on out-of-range indices or malformed blocks.
    void check() const;

private:
    RVec cost_ = RVec(0);
    double cost_const_ = 0.0;
    RVec lb_ = RVec(0);
    RVec ub_ = RVec(0);
    std::vector<LinearCon> linear_;
    std::vector<SocCon> soc_;
    std::vector<PsdCon> psd_;
    std::vector<std::pair<std::string, VarRange>> names_;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalTrouble };
std::string to_string(SolveStatus s);

enum class Backend { Clarabel, Scs };
std::string to_string(Backend b);
bool backend_available(Backend b);
Backend default_backend();

struct SolverOptions {
    Backend backend = default_backend();
    double eps = 1e-9;
    int max_iters = 200000;  // first-order backend
    int ipm_max_iters = 500;  // interior-point backend
    bool verbose = false;
};

struct SolveResult {
    SolveStatus status = SolveStatus::NumericalTrouble;
    RVec v;  // empty unless Optimal
    double objective_value = 0.0;
    double solve_time_s = 0.0;
    int iterations = 0;
    double max_violation = 0.0;  // independent audit of v
    std::string diagnostic;
};

struct AuditReport {
    double max_violation = 0.0;
    std::string worst_tag;
};

// Independent constraint checker; does not use the backend.
AuditReport audit(const ConicProgram& prog, const RVec& v);

// Optimal results are audited independently and downgraded to
// NumericalTrouble when the audit exceeds kAuditTol.
SolveResult solve(const ConicProgram& prog, const SolverOptions& opt = {});
inline constexpr double kAuditTol = 1e-6;

// Text dump, one section per constraint class, dense rows, 17 significant digits.
std::string dump(const ConicProgram& prog);
ConicProgram parse_dump(const std::string& text);

}  // namespace dasec::conic
