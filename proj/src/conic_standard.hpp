#pragma once
// Shared lowering of ConicProgram to  min c'x  s.t.  s = b - A x,  s in K,
// K = zero x nonnegative x second-order x PSD (in that order).

#include <vector>

#include <Eigen/Sparse>

#include "dasec/conic_model.hpp"

namespace dasec::conic::detail {

enum class TriangleOrder {
    LowerByColumn,  // (0,0) (1,0) (2,0) ... (1,1) (2,1) ...
    UpperByColumn,  // (0,0) (0,1) (1,1) (0,2) ...
};

template <class Index>
struct StandardForm {
    int n = 0;
    int m = 0;
    Eigen::SparseMatrix<double, Eigen::ColMajor, Index> A;
    std::vector<double> b;
    std::vector<double> c;
    double c_scale = 1.0;
    int n_zero = 0;
    int n_nonneg = 0;
    std::vector<Index> soc;
    std::vector<Index> psd;
};

template <class Index>
StandardForm<Index> lower(const ConicProgram& prog, TriangleOrder order) {
    StandardForm<Index> f;
    f.n = prog.n_vars();
    std::vector<Eigen::Triplet<double, Index>> trip;
    // cone row s = coef * (a'v + c)
    auto row = [&](const Affine& a, double coef) {
        const Index r = static_cast<Index>(f.b.size());
        for (const auto& [v, x] : a.terms) trip.emplace_back(r, static_cast<Index>(v), -coef * x);
        f.b.push_back(coef * a.c);
    };
    for (const auto& l : prog.linear())
        if (l.sense == Sense::Eq) {
            row(l.expr, 1.0);
            ++f.n_zero;
        }
    for (const auto& l : prog.linear())
        if (l.sense != Sense::Eq) {
            row(l.expr, l.sense == Sense::Le ? -1.0 : 1.0);
            ++f.n_nonneg;
        }
    for (int i = 0; i < f.n; ++i) {
        if (std::isfinite(prog.upper()[i])) {
            row(Affine(prog.upper()[i]).add(i, -1.0), 1.0);
            ++f.n_nonneg;
        }
        if (std::isfinite(prog.lower()[i])) {
            row(Affine(-prog.lower()[i]).add(i, 1.0), 1.0);
            ++f.n_nonneg;
        }
    }
    for (const auto& s : prog.socs()) {
        row(s.t, 1.0);
        for (const auto& y : s.y) row(y, 1.0);
        f.soc.push_back(static_cast<Index>(s.y.size() + 1));
    }
    const double r2 = std::sqrt(2.0);
    for (const auto& p : prog.psds()) {
        for (int j = 0; j < p.dim; ++j) {
            if (order == TriangleOrder::LowerByColumn) {
                for (int i = j; i < p.dim; ++i) row(p.at(i, j), i == j ? 1.0 : r2);
            } else {
                for (int i = 0; i <= j; ++i) row(p.at(i, j), i == j ? 1.0 : r2);
            }
        }
        f.psd.push_back(static_cast<Index>(p.dim));
    }
    f.m = static_cast<int>(f.b.size());
    f.A.resize(f.m, f.n);
    f.A.setFromTriplets(trip.begin(), trip.end());
    f.A.makeCompressed();
    // objective values are recomputed from the program, so a positive rescale is free
    const double cmax = prog.cost().size() ? prog.cost().cwiseAbs().maxCoeff() : 0.0;
    f.c_scale = cmax > 0.0 ? 1.0 / cmax : 1.0;
    f.c.resize(f.n);
    for (int i = 0; i < f.n; ++i) f.c[i] = prog.cost()[i] * f.c_scale;
    return f;
}

// Shared post-processing: audit and status mapping. Codes follow the SCS convention.
SolveResult finish(const ConicProgram& prog, int code, const std::vector<double>& x, SolveResult res);

}  // namespace dasec::conic::detail
