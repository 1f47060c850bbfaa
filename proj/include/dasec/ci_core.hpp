#pragma once

#include <optional>

#include "dasec/types.hpp"

namespace dasec {

struct SymbolSpec {
    int m_psk = 4;
    double phi_d = 0.0;
    double theta = 0.0;

    // i-th standard PSK point, phase (2i+1) pi / M
    static SymbolSpec psk(int m, int index = 0);
    static SymbolSpec with_phase(int m, double phi);
};

struct CompositePrecoder {
    CVec u;
    std::optional<CVec> w;
    std::optional<CVec> z;

    static CompositePrecoder from_parts(const CVec& w, const CVec& z, double phi_d);
    // max |u - (w + z e^{-j phi_d})|, 0 when either part is absent
    double consistency_error(double phi_d) const;
};

enum class Region { Constructive, Destructive };

namespace ci {

cplx noiseless_rx(const CVec& h, const CVec& u);

// rotated receive point r = h^T u e^{-j phi_d}
cplx rotated_rx(const CVec& h, const CVec& u, const SymbolSpec& sym);

// (Re r - sigma_n sqrt(gamma)) tan(theta) - |Im r|
double margin_of(cplx r, const SymbolSpec& sym, double sigma_n, double gamma_lin);
double ci_margin(const CVec& h, const CVec& u, const SymbolSpec& sym, double sigma_n, double gamma_lin);

Region classify_point(cplx r, const SymbolSpec& sym, double sigma_n, double gamma_lin);
Region classify(const CVec& h, const CVec& u, const SymbolSpec& sym, double sigma_n, double gamma_lin);

double ci_sinr(const CVec& h, const CVec& u, double sigma_n);

}  // namespace ci
}  // namespace dasec
