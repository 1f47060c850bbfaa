#include "dasec/ci_core.hpp"

#include <cmath>
#include <numbers>

namespace dasec {

SymbolSpec SymbolSpec::psk(int m, int index) {
    if (m < 2) throw PreconditionError("psk: M must be >= 2");
    if (index < 0 || index >= m) throw PreconditionError("psk: symbol index out of range");
    return with_phase(m, (2 * index + 1) * std::numbers::pi / m);
}

SymbolSpec SymbolSpec::with_phase(int m, double phi) {
    if (m < 2) throw PreconditionError("psk: M must be >= 2");
    SymbolSpec s;
    s.m_psk = m;
    s.phi_d = phi;
    s.theta = std::numbers::pi / m;
    return s;
}

CompositePrecoder CompositePrecoder::from_parts(const CVec& w, const CVec& z, double phi_d) {
    if (w.size() != z.size()) throw PreconditionError("from_parts: length mismatch");
    CompositePrecoder p;
    p.u = w + z * std::polar(1.0, -phi_d);
    p.w = w;
    p.z = z;
    return p;
}

double CompositePrecoder::consistency_error(double phi_d) const {
    if (!w || !z) return 0.0;
    return (u - (*w + *z * std::polar(1.0, -phi_d))).cwiseAbs().maxCoeff();
}

namespace ci {

cplx noiseless_rx(const CVec& h, const CVec& u) {
    if (h.size() != u.size()) throw PreconditionError("noiseless_rx: length mismatch");
    return (h.transpose() * u)(0);
}

cplx rotated_rx(const CVec& h, const CVec& u, const SymbolSpec& sym) {
    return noiseless_rx(h, u) * std::polar(1.0, -sym.phi_d);
}

double margin_of(cplx r, const SymbolSpec& sym, double sigma_n, double gamma_lin) {
    if (gamma_lin < 0) throw PreconditionError("ci_margin: gamma must be linear and >= 0");
    return (r.real() - sigma_n * std::sqrt(gamma_lin)) * std::tan(sym.theta) - std::abs(r.imag());
}

double ci_margin(const CVec& h, const CVec& u, const SymbolSpec& sym, double sigma_n, double gamma_lin) {
    return margin_of(rotated_rx(h, u, sym), sym, sigma_n, gamma_lin);
}

Region classify_point(cplx r, const SymbolSpec& sym, double sigma_n, double gamma_lin) {
    return margin_of(r, sym, sigma_n, gamma_lin) >= 0.0 ? Region::Constructive : Region::Destructive;
}

Region classify(const CVec& h, const CVec& u, const SymbolSpec& sym, double sigma_n, double gamma_lin) {
    return classify_point(rotated_rx(h, u, sym), sym, sigma_n, gamma_lin);
}

double ci_sinr(const CVec& h, const CVec& u, double sigma_n) {
    return std::norm(noiseless_rx(h, u)) / (sigma_n * sigma_n);
}

}  // namespace ci
}  // namespace dasec
