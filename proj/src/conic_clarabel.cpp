#include <chrono>
#include <cstdint>

#include "conic_standard.hpp"

extern "C" {
struct DasecClarabelInfo {
    std::int32_t status;
    std::uint32_t iterations;
    double obj_val;
    double solve_time;
    double r_prim;
    double r_dual;
};
std::int32_t dasec_clarabel_solve(std::size_t n, std::size_t m, const std::size_t* colptr, const std::size_t* rowval,
                                  const double* nzval, const double* b, const double* c, std::size_t n_zero,
                                  std::size_t n_nonneg, const std::size_t* soc_dims, std::size_t n_soc,
                                  const std::size_t* psd_dims, std::size_t n_psd, double tol, std::uint32_t max_iter,
                                  std::int32_t verbose, double* x_out, DasecClarabelInfo* info);
}

namespace dasec::conic::detail {

SolveResult solve_clarabel(const ConicProgram& prog, const SolverOptions& opt) {
    using Index = std::ptrdiff_t;
    auto f = lower<Index>(prog, TriangleOrder::UpperByColumn);
    std::vector<std::size_t> colptr(f.A.outerIndexPtr(), f.A.outerIndexPtr() + f.n + 1);
    std::vector<std::size_t> rowval(f.A.innerIndexPtr(), f.A.innerIndexPtr() + f.A.nonZeros());
    std::vector<std::size_t> soc(f.soc.begin(), f.soc.end());
    std::vector<std::size_t> psd(f.psd.begin(), f.psd.end());
    std::vector<double> x(f.n, 0.0);
    DasecClarabelInfo info{};

    SolveResult res;
    const auto t0 = std::chrono::steady_clock::now();
    const int code = dasec_clarabel_solve(
        static_cast<std::size_t>(f.n), static_cast<std::size_t>(f.m), colptr.data(), rowval.data(), f.A.valuePtr(),
        f.b.data(), f.c.data(), static_cast<std::size_t>(f.n_zero), static_cast<std::size_t>(f.n_nonneg), soc.data(),
        soc.size(), psd.data(), psd.size(), opt.eps, static_cast<std::uint32_t>(opt.ipm_max_iters), opt.verbose ? 1 : 0,
        x.data(), &info);
    res.solve_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.iterations = static_cast<int>(info.iterations);
    res.diagnostic = "clarabel: code " + std::to_string(code) + " (r_prim " + std::to_string(info.r_prim) +
                     ", r_dual " + std::to_string(info.r_dual) + ")";
    return finish(prog, code, x, std::move(res));
}

}  // namespace dasec::conic::detail
