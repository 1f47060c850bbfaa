#pragma once

#include <optional>
#include <random>
#include <vector>

#include "dasec/config.hpp"

namespace dasec {

using Rng = std::mt19937_64;

struct Deployment {
    std::vector<Point> da_positions;
    Point ir_position;
    std::vector<Point> eve_positions;
};

// Channels are stored divided by the receiver noise amplitude, so every
// constraint downstream sees sigma_n = 1. sigma_e is per complex entry in
// the same normalized units.
struct ChannelSet {
    CVec h_d_hat;
    std::vector<CVec> h_k_hat;
    std::optional<CVec> h_d_true;
    std::vector<CVec> h_k_true;
    double sigma_e = 0.0;
    double noise_std = 1.0;

    int n() const { return static_cast<int>(h_d_hat.size()); }
    int k() const { return static_cast<int>(h_k_hat.size()); }
};

double noise_power(const ScenarioConfig& cfg);

// Linear power gain of the log-distance model at distance d (clamped to d0).
double path_gain(const ScenarioConfig& cfg, double d);

std::vector<Point> grid_positions(int n, double side);

// Ring = points with distance to the nearest side <= 10% of the side length.
bool on_edge_ring(const Point& p, double side);

Deployment make_deployment(const ScenarioConfig& cfg, Rng& rng);
Deployment make_deployment(const ScenarioConfig& cfg);

ChannelSet draw_channels(const Deployment& dep, const ScenarioConfig& cfg, Rng& rng);

// Independent sub-streams derived from the config seed.
Rng deployment_rng(std::uint64_t seed);
Rng channel_rng(std::uint64_t seed);
Rng oracle_rng(std::uint64_t seed);

}  // namespace dasec
