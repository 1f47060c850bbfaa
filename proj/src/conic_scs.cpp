#include <chrono>
#include <cstring>

#include "conic_standard.hpp"

extern "C" {
#include "scs.h"
}

namespace dasec::conic::detail {

SolveResult solve_scs(const ConicProgram& prog, const SolverOptions& opt) {
    auto f = lower<scs_int>(prog, TriangleOrder::LowerByColumn);

    ScsMatrix Am;
    Am.x = f.A.valuePtr();
    Am.i = f.A.innerIndexPtr();
    Am.p = f.A.outerIndexPtr();
    Am.m = f.m;
    Am.n = f.n;

    ScsData d;
    std::memset(&d, 0, sizeof d);
    d.m = f.m;
    d.n = f.n;
    d.A = &Am;
    d.P = nullptr;
    d.b = f.b.data();
    d.c = f.c.data();

    ScsCone k;
    std::memset(&k, 0, sizeof k);
    k.z = f.n_zero;
    k.l = f.n_nonneg;
    k.q = f.soc.empty() ? nullptr : f.soc.data();
    k.qsize = static_cast<scs_int>(f.soc.size());
    k.s = f.psd.empty() ? nullptr : f.psd.data();
    k.ssize = static_cast<scs_int>(f.psd.size());

    ScsSettings st;
    scs_set_default_settings(&st);
    st.eps_abs = opt.eps;
    st.eps_rel = opt.eps;
    st.max_iters = opt.max_iters;
    st.verbose = opt.verbose ? 1 : 0;

    std::vector<double> x(f.n, 0.0), y(f.m, 0.0), s(f.m, 0.0);
    ScsSolution sol{x.data(), y.data(), s.data()};
    ScsInfo info;
    std::memset(&info, 0, sizeof info);

    SolveResult res;
    const auto t0 = std::chrono::steady_clock::now();
    const scs_int flag = scs(&d, &k, &st, &sol, &info);
    res.solve_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.iterations = static_cast<int>(info.iter);
    res.diagnostic = "scs: " + std::string(info.status) + " (res_pri " + std::to_string(info.res_pri) +
                     ", res_dual " + std::to_string(info.res_dual) + ", gap " + std::to_string(info.gap) + ")";
    return finish(prog, static_cast<int>(flag), x, std::move(res));
}

}  // namespace dasec::conic::detail
