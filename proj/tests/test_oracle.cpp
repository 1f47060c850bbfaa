#include "doctest.h"

#include <cmath>
#include <numbers>

#include "dasec/harness.hpp"

using namespace dasec;

namespace {

ScenarioConfig small(int n, int k, std::uint64_t seed) {
    ScenarioConfig c;
    c.n_das = n;
    c.n_eves = k;
    c.seed = seed;
    c.edge_fraction = 1.0;
    return c;
}

}  // namespace

TEST_CASE("zero estimation error gives certain constructive reception") {
    ScenarioConfig c = small(6, 2, 1);
    c.sigma_e = 0.0;
    const ChannelSet ch = harness::make_instance(c);
    const auto s = sca_solve(Variant::ImperfectProb, ch, c, reference_symbol(c));
    REQUIRE(s.ok());
    Rng rng = oracle_rng(1);
    const auto r = oracle::mc_validate(s, ch, c, reference_symbol(c), 2000, rng);
    CHECK(r.ir_ci_prob == 1.0);
    CHECK(r.ir_violations == 0);
    CHECK(r.conclusive());
    for (double p : r.eve_destr_prob) CHECK(p == 1.0);
    CHECK(r.mean_margin >= 0.0);
}

TEST_CASE("report probabilities are in range and deterministic") {
    const ScenarioConfig c = small(6, 3, 2);
    const ChannelSet ch = harness::make_instance(c);
    const auto s = sca_solve(Variant::ImperfectProb, ch, c, reference_symbol(c));
    REQUIRE(s.ok());
    Rng r1 = oracle_rng(5), r2 = oracle_rng(5);
    const auto a = oracle::mc_validate(s, ch, c, reference_symbol(c), 5000, r1);
    const auto b = oracle::mc_validate(s, ch, c, reference_symbol(c), 5000, r2);
    CHECK(a.ir_ci_prob == b.ir_ci_prob);
    CHECK(a.mean_margin == b.mean_margin);
    CHECK(a.ir_ci_prob >= 0.0);
    CHECK(a.ir_ci_prob <= 1.0);
    REQUIRE(a.eve_destr_prob.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(a.eve_destr_prob[k] >= 0.0);
        CHECK(a.eve_destr_prob[k] <= 1.0);
        CHECK(a.eve_sinr_exceed_prob[k] >= 0.0);
        CHECK(a.eve_sinr_exceed_prob[k] <= 1.0);
    }
    PrecoderSolution bad;
    CHECK_THROWS_AS(oracle::mc_validate(bad, ch, c, reference_symbol(c), 10, r1), PreconditionError);
}

TEST_CASE("estimator standard error falls with the square root of the sample count") {
    ScenarioConfig c = small(2, 0, 1);
    ChannelSet ch;
    ch.h_d_hat = CVec::Constant(2, cplx(1.0, 0.0));
    ch.sigma_e = 1.0;
    PrecoderSolution s;
    s.status = PrecoderStatus::Optimal;
    s.u = CVec::Constant(2, std::polar(3.0, std::numbers::pi / 4));
    const auto sym = reference_symbol(c);
    auto spread = [&](int n) {
        Rng rng(77 + n);
        std::vector<double> est;
        for (int rep = 0; rep < 300; ++rep) est.push_back(oracle::mc_validate(s, ch, c, sym, n, rng).ir_ci_prob);
        double m = 0.0, v = 0.0;
        for (double e : est) m += e;
        m /= est.size();
        for (double e : est) v += (e - m) * (e - m);
        return std::sqrt(v / (est.size() - 1));
    };
    const double s1 = spread(250), s4 = spread(1000);
    CHECK(s1 > 0.0);
    CHECK(s1 / s4 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("ball sampling stays in the ball and reaches its surface") {
    ScenarioConfig c = small(4, 1, 3);
    c.sproc_mode = SprocMode::NormRobust;
    const ChannelSet ch = harness::make_instance(c);
    const auto s = sca_solve(Variant::ImperfectDet, ch, c, reference_symbol(c));
    REQUIRE(s.ok());
    Rng rng = oracle_rng(3);
    const auto r = oracle::mc_validate(s, ch, c, reference_symbol(c), 10000, rng, oracle::McSampling::Ball);
    CHECK(r.ir_violations == 0);
    CHECK(r.eve_destr_prob[0] == 1.0);
}

TEST_CASE("brute force on a single antenna") {
    ScenarioConfig c = small(1, 0, 1);
    c.edge_fraction = 0.0;
    const ChannelSet ch = harness::make_instance(c);
    const auto r = oracle::brute_force_selection(Variant::ImperfectProb, ch, c, reference_symbol(c));
    REQUIRE(r.table.size() == 2);
    CHECK_FALSE(r.table[0].feasible);  // off: no transmit power, gamma > 0
    CHECK(r.table[1].feasible);
    CHECK(r.found);
    CHECK(r.best_t[0] == 1);
}

TEST_CASE("brute force flags an all-infeasible instance") {
    ScenarioConfig c = small(3, 1, 2);
    c.gamma_d_db = 120.0;
    c.p_da_mw = 1e-3;
    const ChannelSet ch = harness::make_instance(c);
    const auto r = oracle::brute_force_selection(Variant::ImperfectProb, ch, c, reference_symbol(c));
    CHECK(r.table.size() == 8);
    CHECK_FALSE(r.found);
    for (const auto& e : r.table) CHECK_FALSE(e.feasible);
    ScenarioConfig big = small(13, 1, 1);
    CHECK_THROWS_AS(oracle::brute_force_selection(Variant::ImperfectProb, harness::make_instance(big), big,
                                                  reference_symbol(big)),
                    PreconditionError);
}

TEST_CASE("brute force dominates the heuristic and is the table minimum") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const ScenarioConfig c = small(4, 2, seed);
        const ChannelSet ch = harness::make_instance(c);
        for (Variant v : {Variant::ImperfectProb, Variant::UnknownDet}) {
            const auto bf = oracle::brute_force_selection(v, ch, c, reference_symbol(c));
            const auto s = sca_solve(v, ch, c, reference_symbol(c));
            REQUIRE(bf.found);
            REQUIRE(s.ok());
            CHECK(bf.best_total_mw <= s.power.total_mw + 1e-6);
            CHECK(s.power.total_mw <= 1.05 * bf.best_total_mw);
            for (const auto& e : bf.table)
                if (e.feasible) CHECK(bf.best_total_mw <= e.total_mw);
        }
    }
}

TEST_CASE("closed-form PSK references") {
    const double q = 0.5 * std::erfc(std::sqrt(10.0) / std::numbers::sqrt2);
    CHECK(oracle::qpsk_awgn_ser(10.0) == doctest::Approx(2 * q - q * q));
    CHECK(oracle::mpsk_awgn_ser(4, 10.0) == oracle::qpsk_awgn_ser(10.0));
    CHECK(oracle::mpsk_awgn_ser(2, 3.0) == doctest::Approx(0.5 * std::erfc(std::sqrt(3.0))));
    CHECK(oracle::qpsk_awgn_ser(0.0) == doctest::Approx(0.75));
    // the simulator reproduces plain QPSK over a unit channel
    CVec h(1), u(1);
    h[0] = 1.0;
    const double snr = db_to_lin(5.0);
    const auto ref = SymbolSpec::psk(4, 0);
    u[0] = std::polar(std::sqrt(snr), ref.phi_d);
    Rng rng(9);
    const double ser = oracle::ser_sim(u, h, ref, 1.0, 400000, rng);
    const double exact = oracle::qpsk_awgn_ser(snr);
    CHECK(std::abs(ser - exact) < 4.0 * std::sqrt(exact * (1 - exact) / 400000));
}

TEST_CASE("symbol error rate limits") {
    ScenarioConfig c = small(6, 2, 4);
    const ChannelSet ch = harness::make_instance(c);
    const auto sym = reference_symbol(c);
    Rng rng(10);
    const double noise_only = oracle::ser_sim(CVec::Zero(6), ch.h_d_hat, sym, 1.0, 100000, rng);
    CHECK(noise_only == doctest::Approx(0.75).epsilon(0.02));
    const auto s = sca_solve(Variant::ImperfectProb, ch, c, sym);
    REQUIRE(s.ok());
    CHECK(oracle::ser_sim(s.u, ch.h_d_hat, sym, 1e-6, 20000, rng) == 0.0);
}

TEST_CASE("constructive design beats uncoded QPSK at the same SNR") {
    for (double gdb : {6.0, 20.0}) {
        ScenarioConfig c = small(6, 2, 5);
        c.gamma_d_db = gdb;
        c.sigma_e = 0.0;
        const ChannelSet ch = harness::make_instance(c);
        const auto sym = reference_symbol(c);
        const auto s = sca_solve(Variant::ImperfectProb, ch, c, sym);
        REQUIRE(s.ok());
        Rng rng(11);
        const long n = 200000;
        const double ser = oracle::ser_sim(s.u, ch.h_d_hat, sym, 1.0, n, rng);
        const double bound = oracle::qpsk_awgn_ser(db_to_lin(gdb));
        CHECK(ser <= bound + 3.0 * std::sqrt(bound * (1 - bound) / n) + 1e-12);
    }
}

TEST_CASE("rotating one solution matches re-solving for every symbol") {
    const ScenarioConfig c = small(4, 1, 6);
    const ChannelSet ch = harness::make_instance(c);
    const auto ref = SymbolSpec::psk(4, 0);
    const auto base = sca_solve(Variant::ImperfectProb, ch, c, ref);
    REQUIRE(base.ok());
    const double gd = c.gamma_d_lin();
    const double m0 = ci::ci_margin(ch.h_d_hat, base.u, ref, 1.0, gd);
    for (int i = 0; i < 4; ++i) {
        const auto si = SymbolSpec::psk(4, i);
        const CVec fast = oracle::rotate_to(base.u, ref, si);
        CHECK(ci::ci_margin(ch.h_d_hat, fast, si, 1.0, gd) == doctest::Approx(m0).epsilon(1e-12));
        const auto slow = fixed_t_solve(Variant::ImperfectProb, ch, c, si, base.selection.t_rounded);
        REQUIRE(slow.ok());
        CHECK(std::abs(ci::ci_margin(ch.h_d_hat, slow.u, si, 1.0, gd) - m0) < 1e-6);
        CHECK(slow.power.tx_mw == doctest::Approx(base.power.tx_mw).epsilon(1e-6));
    }
    // explicit per-symbol precoders through the builder path give the same error rate
    Rng r1(12), r2(12);
    const double a = oracle::ser_sim(base.u, ch.h_d_hat, ref, 3.0, 100, r1);
    const double b = oracle::ser_sim([&](const SymbolSpec& s) { return oracle::rotate_to(base.u, ref, s); },
                                     ch.h_d_hat, 4, 3.0, 100, r2);
    CHECK(a == b);
}

TEST_CASE("conventional SINR report") {
    const ScenarioConfig c = small(5, 2, 7);
    const ChannelSet ch = harness::make_instance(c);
    const auto s = sca_solve(Variant::ImperfectProb, ch, c, reference_symbol(c));
    REQUIRE(s.ok());
    const auto r = oracle::conventional_sinr_report(s, ch);
    CHECK(r.ir == doctest::Approx(ci::ci_sinr(ch.h_d_hat, s.u, 1.0)));
    REQUIRE(r.eves.size() == 2);
    const auto u = sca_solve(Variant::UnknownProb, ch, c, reference_symbol(c));
    REQUIRE(u.ok());
    const auto ru = oracle::conventional_sinr_report(u, ch);
    const double expect = std::norm(ci::noiseless_rx(ch.h_d_hat, u.w)) / (1.0 + std::norm(ci::noiseless_rx(ch.h_d_hat, u.z)));
    CHECK(ru.ir == doctest::Approx(expect));
}

TEST_CASE("nominal reference solution is feasible for the nominal regions") {
    ScenarioConfig c = small(6, 2, 8);
    c.sigma_e = 0.0;
    const ChannelSet ch = harness::make_instance(c);
    const auto sym = reference_symbol(c);
    const auto r = oracle::nominal_ci_reference(ch, c, sym, Eigen::VectorXi::Ones(6));
    REQUIRE(r.feasible);
    CHECK(ci::ci_margin(ch.h_d_hat, r.u, sym, 1.0, c.gamma_d_lin()) >= -1e-7);
    for (const auto& h : ch.h_k_hat) CHECK(ci::ci_margin(h, r.u, sym, 1.0, c.gamma_k_lin()) <= 1e-7);
    CHECK(r.total_mw == doctest::Approx(r.tx_mw + 6 * c.p_on_mw));
    const auto off = oracle::nominal_ci_reference(ch, c, sym, Eigen::VectorXi::Zero(6));
    CHECK_FALSE(off.feasible);
}
