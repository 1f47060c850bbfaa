#include "doctest.h"

#include <cmath>
#include <set>

#include "dasec/scenario.hpp"

using namespace dasec;

TEST_CASE("DA grid for N = 16") {
    const auto p = grid_positions(16, 100.0);
    REQUIRE(p.size() == 16);
    std::set<double> xs, ys;
    for (const auto& q : p) {
        xs.insert(q.x);
        ys.insert(q.y);
    }
    CHECK(xs == std::set<double>{12.5, 37.5, 62.5, 87.5});
    CHECK(ys == std::set<double>{12.5, 37.5, 62.5, 87.5});
    CHECK(p[0].x == 12.5);
    CHECK(p[1].x == 37.5);
    CHECK(p[4].y == 37.5);
}

TEST_CASE("co-located layout puts every antenna at the centre") {
    ScenarioConfig c;
    c.layout = Layout::CaCenter;
    const auto d = make_deployment(c);
    REQUIRE(d.da_positions.size() == 16);
    for (const auto& q : d.da_positions) {
        CHECK(q.x == 50.0);
        CHECK(q.y == 50.0);
    }
}

TEST_CASE("edge fraction places users on the ring") {
    ScenarioConfig c;
    c.n_eves = 5;
    c.edge_fraction = 1.0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        c.seed = s;
        const auto d = make_deployment(c);
        CHECK(on_edge_ring(d.ir_position, c.cell_side_m));
        for (const auto& e : d.eve_positions) CHECK(on_edge_ring(e, c.cell_side_m));
    }
    c.edge_fraction = 0.0;
    const auto d = make_deployment(c);
    CHECK_FALSE(on_edge_ring(d.ir_position, c.cell_side_m));
    for (const auto& e : d.eve_positions) CHECK_FALSE(on_edge_ring(e, c.cell_side_m));
}

TEST_CASE("noise power") {
    ScenarioConfig c;
    CHECK(noise_power(c) == doctest::Approx(std::pow(10.0, -11.4)).epsilon(1e-12));
    CHECK(noise_power(c) == doctest::Approx(3.98e-12).epsilon(1e-3));
    ScenarioConfig d = c;
    d.bandwidth_hz *= 2.0;
    CHECK(noise_power(d) == doctest::Approx(2.0 * noise_power(c)));
    d.bandwidth_hz = 1.0;
    CHECK(noise_power(d) == doctest::Approx(std::pow(10.0, -17.4)));
}

TEST_CASE("path gain depends on distance only and decreases") {
    ScenarioConfig c;
    CHECK(path_gain(c, 10.0) == path_gain(c, 10.0));
    double prev = path_gain(c, 0.1);
    CHECK(prev == path_gain(c, c.pl_d0_m));
    for (double d = 1.0; d < 200.0; d *= 1.3) {
        const double g = path_gain(c, d);
        CHECK(g <= prev);
        prev = g;
    }
    CHECK(lin_to_db(1.0 / path_gain(c, 10.0)) == doctest::Approx(c.pl0_db + 10.0 * c.pl_exponent));
}

TEST_CASE("seed determinism") {
    ScenarioConfig c;
    c.seed = 9;
    c.edge_fraction = 0.5;
    const auto d1 = make_deployment(c);
    const auto d2 = make_deployment(c);
    CHECK(d1.ir_position.x == d2.ir_position.x);
    CHECK(d1.eve_positions[2].y == d2.eve_positions[2].y);
    Rng r1 = channel_rng(c.seed), r2 = channel_rng(c.seed);
    const auto a = draw_channels(d1, c, r1);
    const auto b = draw_channels(d2, c, r2);
    CHECK(a.h_d_hat == b.h_d_hat);
    CHECK(*a.h_d_true == *b.h_d_true);
    CHECK(a.h_k_hat[1] == b.h_k_hat[1]);
}

TEST_CASE("zero error gives exact estimates") {
    ScenarioConfig c;
    c.sigma_e = 0.0;
    const auto d = make_deployment(c);
    Rng r = channel_rng(c.seed);
    const auto ch = draw_channels(d, c, r);
    CHECK(ch.h_d_hat == *ch.h_d_true);
    for (int k = 0; k < ch.k(); ++k) CHECK(ch.h_k_hat[k] == ch.h_k_true[k]);
}

TEST_CASE("estimation error variance matches sigma_e^2") {
    ScenarioConfig c;
    c.n_das = 4;
    c.n_eves = 0;
    c.sigma_e = 0.05;
    const auto d = make_deployment(c);
    Rng r = channel_rng(3);
    double acc = 0.0;
    long count = 0;
    for (int i = 0; i < 25000; ++i) {
        const auto ch = draw_channels(d, c, r);
        acc += (*ch.h_d_true - ch.h_d_hat).squaredNorm();
        count += ch.n();
    }
    CHECK(acc / count == doctest::Approx(c.sigma_e * c.sigma_e).epsilon(0.01));
}

TEST_CASE("equidistant users see the same path loss coefficient") {
    ScenarioConfig c;
    c.n_das = 1;
    c.n_eves = 1;
    c.sigma_e = 0.0;
    Deployment d;
    d.da_positions = {{50.0, 50.0}};
    d.ir_position = {80.0, 50.0};
    d.eve_positions = {{50.0, 20.0}};
    Rng r = channel_rng(1);
    double ir = 0.0, eve = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const auto ch = draw_channels(d, c, r);
        ir += std::norm(ch.h_d_hat[0]);
        eve += std::norm(ch.h_k_hat[0][0]);
    }
    CHECK(ir == doctest::Approx(eve).epsilon(0.05));
}
