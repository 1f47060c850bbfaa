#include "dasec/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace dasec {
namespace {

constexpr double kEdgeWidth = 0.10;

double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

Rng seeded(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), 0x5eedu};
    return Rng(seq);
}

Point uniform_edge(double side, Rng& rng) {
    // rejection from the full square keeps the ring density uniform
    std::uniform_real_distribution<double> u(0.0, side);
    for (;;) {
        Point p{u(rng), u(rng)};
        if (on_edge_ring(p, side)) return p;
    }
}

Point uniform_interior(double side, Rng& rng) {
    const double m = kEdgeWidth * side;
    std::uniform_real_distribution<double> u(m, side - m);
    return {u(rng), u(rng)};
}

CVec cn_vector(int n, double var, Rng& rng) {
    if (var <= 0.0) return CVec::Zero(n);
    std::normal_distribution<double> g(0.0, std::sqrt(var / 2.0));
    CVec v(n);
    for (int i = 0; i < n; ++i) {
        const double re = g(rng);
        const double im = g(rng);
        v[i] = cplx(re, im);
    }
    return v;
}

}  // namespace

double noise_power(const ScenarioConfig& cfg) {
    return std::pow(10.0, cfg.noise_psd_dbm_hz / 10.0) * cfg.bandwidth_hz;
}

double path_gain(const ScenarioConfig& cfg, double d) {
    const double dd = std::max(d, cfg.pl_d0_m);
    const double pl_db = cfg.pl0_db + 10.0 * cfg.pl_exponent * std::log10(dd / cfg.pl_d0_m);
    return std::pow(10.0, -pl_db / 10.0);
}

std::vector<Point> grid_positions(int n, double side) {
    const int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-12));
    std::vector<Point> out;
    out.reserve(n);
    for (int i = 0; i < g && static_cast<int>(out.size()) < n; ++i)
        for (int j = 0; j < g && static_cast<int>(out.size()) < n; ++j)
            out.push_back({side * (2 * j + 1) / (2.0 * g), side * (2 * i + 1) / (2.0 * g)});
    return out;
}

bool on_edge_ring(const Point& p, double side) {
    const double m = kEdgeWidth * side;
    return p.x <= m || p.y <= m || p.x >= side - m || p.y >= side - m;
}

Deployment make_deployment(const ScenarioConfig& cfg, Rng& rng) {
    Deployment dep;
    const double s = cfg.cell_side_m;
    if (cfg.layout == Layout::DaGrid)
        dep.da_positions = grid_positions(cfg.n_das, s);
    else
        dep.da_positions.assign(cfg.n_das, Point{s / 2, s / 2});

    const int users = cfg.n_eves + 1;
    const int n_edge = static_cast<int>(std::lround(cfg.edge_fraction * users));
    // IR first, then Eves; the first n_edge users go to the ring
    std::vector<Point> pts;
    for (int i = 0; i < users; ++i) pts.push_back(i < n_edge ? uniform_edge(s, rng) : uniform_interior(s, rng));
    dep.ir_position = pts[0];
    dep.eve_positions.assign(pts.begin() + 1, pts.end());
    return dep;
}

Deployment make_deployment(const ScenarioConfig& cfg) {
    Rng rng = deployment_rng(cfg.seed);
    return make_deployment(cfg, rng);
}

ChannelSet draw_channels(const Deployment& dep, const ScenarioConfig& cfg, Rng& rng) {
    const int n = static_cast<int>(dep.da_positions.size());
    const double sn2 = noise_power(cfg);
    auto one = [&](const Point& user) {
        CVec g = cn_vector(n, 1.0, rng);
        for (int i = 0; i < n; ++i) g[i] *= std::sqrt(path_gain(cfg, dist(dep.da_positions[i], user)) / sn2);
        return g;
    };
    ChannelSet ch;
    ch.sigma_e = cfg.sigma_e;
    ch.noise_std = 1.0;
    ch.h_d_true = one(dep.ir_position);
    for (const auto& p : dep.eve_positions) ch.h_k_true.push_back(one(p));
    ch.h_d_hat = *ch.h_d_true - cn_vector(n, cfg.sigma_e * cfg.sigma_e, rng);
    for (const auto& h : ch.h_k_true) ch.h_k_hat.push_back(h - cn_vector(n, cfg.sigma_e * cfg.sigma_e, rng));
    return ch;
}

Rng deployment_rng(std::uint64_t seed) { return seeded(seed, 1); }
Rng channel_rng(std::uint64_t seed) { return seeded(seed, 2); }
Rng oracle_rng(std::uint64_t seed) { return seeded(seed, 3); }

}  // namespace dasec
