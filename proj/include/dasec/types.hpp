#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dasec {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

// [re; im] stacking used by every real-valued constraint builder.
inline RVec stack(const CVec& v) {
    RVec x(2 * v.size());
    x.head(v.size()) = v.real();
    x.tail(v.size()) = v.imag();
    return x;
}

inline CVec unstack(const RVec& x) {
    const Eigen::Index n = x.size() / 2;
    if (2 * n != x.size()) throw PreconditionError("unstack: odd length");
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = cplx(x[i], x[n + i]);
    return v;
}

}  // namespace dasec
