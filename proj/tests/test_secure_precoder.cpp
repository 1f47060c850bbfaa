#include "doctest.h"

#include <cmath>

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

const Variant kAll[] = {Variant::ImperfectProb, Variant::ImperfectDet, Variant::UnknownProb, Variant::UnknownDet};

void check_solution(const PrecoderSolution& s, const ScenarioConfig& cfg) {
    REQUIRE(s.ok());
    CHECK(s.audit_violation <= 1e-6);
    CHECK(s.rank1_gap >= -1e-6);
    CHECK(s.selection.max_rounding_gap() <= 1e-3);
    CHECK(s.selection.t.sum() - s.selection.t.squaredNorm() <= 1e-3 * cfg.n_das);
    for (int i = 0; i < cfg.n_das; ++i) {
        const double pu = s.U_lift(i, i) + s.U_lift(cfg.n_das + i, cfg.n_das + i);
        CHECK(pu <= s.selection.t_rounded[i] * cfg.p_da_mw + 1e-6);
        CHECK(std::norm(s.u[i]) <= s.selection.t_rounded[i] * cfg.p_da_mw + 1e-6);
    }
    CHECK(s.power.tx_mw + s.power.circuit_mw == doctest::Approx(s.power.total_mw));
    CHECK(s.power.tx_mw >= 0.0);
    CHECK(s.power.penalty_term >= -1e-9);
    for (std::size_t i = 1; i < s.trace.size(); ++i)
        if (s.trace[i].stage == s.trace[i - 1].stage)
            CHECK(s.trace[i].objective <= s.trace[i - 1].objective + 1e-6 * std::max(1.0, s.trace[i - 1].objective));
}

}  // namespace

TEST_CASE("power report examples") {
    ScenarioConfig c;
    PrecoderSolution s;
    s.U_lift = RMat::Zero(32, 32);
    s.selection = SelectionVector::from_binary(Eigen::VectorXi::Zero(16));
    auto p = power_report(s, c);
    CHECK(p.total_mw == doctest::Approx(16 * 50.0));
    CHECK(p.tx_mw == 0.0);
    s.selection = SelectionVector::from_binary(Eigen::VectorXi::Ones(16));
    s.U_lift(0, 0) = 150.0;
    s.U_lift(20, 20) = 250.0;
    p = power_report(s, c);
    CHECK(p.tx_mw == doctest::Approx(1000.0));
    CHECK(p.circuit_mw == doctest::Approx(8000.0));
    CHECK(p.total_mw == doctest::Approx(9000.0));
    CHECK(p.penalty_term == doctest::Approx(0.0));
}

TEST_CASE("selection vector rounding") {
    RVec t(4);
    t << 0.2, 0.5, 0.9999, 1.2;
    const auto s = SelectionVector::from_relaxed(t);
    CHECK(s.t_rounded == Eigen::Vector4i(0, 1, 1, 1));
    CHECK(s.t[3] == 1.0);
    CHECK(s.max_rounding_gap() == doctest::Approx(0.5));
    CHECK(s.active() == 3);
}

TEST_CASE("assembled program layout") {
    const ScenarioConfig c = small(3, 2, 1);
    const ChannelSet ch = harness::make_instance(c);
    const auto sym = reference_symbol(c);
    const RVec tp = RVec::Constant(3, 0.5);
    const auto ip = assemble(Variant::ImperfectProb, ch, c, sym, tp);
    CHECK(ip.x.count == 6);
    CHECK(ip.X.count == 21);
    CHECK(ip.t.count == 3);
    CHECK(ip.z.count == 0);
    CHECK(ip.prog.psds().size() == 1);
    CHECK(ip.prog.socs().size() == 2 + 2 * 2);
    ScenarioConfig e = c;
    e.lift_psd_block = true;
    CHECK(assemble(Variant::ImperfectProb, ch, e, sym, tp).prog.psds().size() == 2);
    e.ir_form = IrForm::Lmi;
    CHECK(assemble(Variant::ImperfectProb, ch, e, sym, tp).prog.psds().size() == 2 + 2 + 4);
    const auto up = assemble(Variant::UnknownProb, ch, c, sym, tp);
    CHECK(up.z.count == 6);
    CHECK(up.prog.socs().size() == 2);
    CHECK(up.prog.psds().size() == 2);
    ScenarioConfig f = c;
    f.sproc_mode = SprocMode::PaperFaithful;
    const auto dp = assemble(Variant::ImperfectDet, ch, f, sym, tp);
    CHECK(dp.lambda.size() == 6);
    for (int l : dp.lambda) CHECK(dp.prog.lower()[l] == 0.0);
    const auto fx = assemble_fixed(Variant::ImperfectProb, ch, c, sym, Eigen::Vector3i(1, 0, 1));
    CHECK(fx.n_local == 2);
    CHECK(fx.t.count == 0);
    CHECK(fx.active == std::vector<int>{0, 2});
}

TEST_CASE("all variants on small instances") {
    for (std::uint64_t seed : {1, 2}) {
        const ScenarioConfig c = small(6, 2, seed);
        const ChannelSet ch = harness::make_instance(c);
        for (Variant v : kAll) {
            CAPTURE(to_string(v));
            const auto s = sca_solve(v, ch, c, reference_symbol(c));
            check_solution(s, c);
            CHECK(s.iterations <= 2 * c.max_sca_iters);
            if (is_unknown_csi(v)) {
                CHECK(s.z.squaredNorm() >= c.p_an_mw() - 1e-4);
                CHECK(s.Z_lift.trace() >= c.p_an_mw() - 1e-6);
                CHECK((s.w - (s.u - s.z * std::polar(1.0, -reference_symbol(c).phi_d))).norm() < 1e-12);
                for (int i = 0; i < c.n_das; ++i)
                    CHECK(s.Z_lift(i, i) + s.Z_lift(6 + i, 6 + i) <= s.U_lift(i, i) + s.U_lift(6 + i, 6 + i) + 1e-6);
            } else {
                CHECK(s.z.size() == 0);
            }
        }
    }
}

TEST_CASE("separate lift cone does not change the optimum") {
    const ScenarioConfig c = small(4, 2, 5);
    const ChannelSet ch = harness::make_instance(c);
    ScenarioConfig e = c;
    e.lift_psd_block = true;
    for (Variant v : kAll) {
        CAPTURE(to_string(v));
        const auto a = sca_solve(v, ch, c, reference_symbol(c));
        const auto b = sca_solve(v, ch, e, reference_symbol(e));
        REQUIRE(a.ok());
        REQUIRE(b.ok());
        CHECK(a.selection.t_rounded == b.selection.t_rounded);
        CHECK(a.power.total_mw == doctest::Approx(b.power.total_mw).epsilon(1e-6));
    }
}

TEST_CASE("generous thresholds converge to a binary point") {
    ScenarioConfig c = small(4, 1, 3);
    c.gamma_d_db = 0.0;
    const auto s = sca_solve(Variant::ImperfectProb, harness::make_instance(c), c, reference_symbol(c));
    check_solution(s, c);
    CHECK(s.iterations <= 10);
}

TEST_CASE("equal on and off power keeps the all-on optimum") {
    ScenarioConfig c = small(4, 1, 4);
    c.p_off_mw = c.p_on_mw;
    const ChannelSet ch = harness::make_instance(c);
    const auto s = sca_solve(Variant::ImperfectProb, ch, c, reference_symbol(c));
    const auto all = fixed_t_solve(Variant::ImperfectProb, ch, c, reference_symbol(c), Eigen::VectorXi::Ones(4));
    REQUIRE(s.ok());
    REQUIRE(all.ok());
    CHECK(s.power.total_mw <= all.power.total_mw * (1.0 + 1e-6));
    CHECK(s.selection.active() == 4);
}

TEST_CASE("infeasible instances are reported") {
    ScenarioConfig c = small(4, 1, 5);
    c.gamma_d_db = 120.0;
    c.p_da_mw = 1e-3;
    const ChannelSet ch = harness::make_instance(c);
    const auto s = sca_solve(Variant::ImperfectProb, ch, c, reference_symbol(c));
    CHECK(s.status == PrecoderStatus::Infeasible);
    CHECK(s.failed_iteration == 1);
    CHECK_FALSE(fixed_t_solve(Variant::ImperfectProb, ch, c, reference_symbol(c), Eigen::VectorXi::Zero(4)).ok());
}

TEST_CASE("Schur-LMI form of the chance blocks matches the SOC form") {
    ScenarioConfig c = small(5, 2, 6);
    const ChannelSet ch = harness::make_instance(c);
    const Eigen::VectorXi on = Eigen::VectorXi::Ones(5);
    const auto a = fixed_t_solve(Variant::ImperfectProb, ch, c, reference_symbol(c), on);
    c.ir_form = IrForm::Lmi;
    const auto b = fixed_t_solve(Variant::ImperfectProb, ch, c, reference_symbol(c), on);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(b.power.tx_mw == doctest::Approx(a.power.tx_mw).epsilon(1e-5));
}

TEST_CASE("S-procedure LMI mode solves with nonnegative multipliers") {
    ScenarioConfig c = small(5, 2, 7);
    c.sproc_mode = SprocMode::PaperFaithful;
    const ChannelSet ch = harness::make_instance(c);
    for (Variant v : {Variant::ImperfectDet, Variant::UnknownDet}) {
        const auto s = sca_solve(v, ch, c, reference_symbol(c));
        check_solution(s, c);
        CHECK_FALSE(s.multipliers.empty());
        for (double l : s.multipliers) CHECK(l >= -1e-7);
    }
}

TEST_CASE("backends agree on a fixed selection") {
    if (!conic::backend_available(conic::Backend::Clarabel)) return;
    ScenarioConfig c = small(3, 1, 8);
    const ChannelSet ch = harness::make_instance(c);
    const Eigen::VectorXi on = Eigen::VectorXi::Ones(3);
    c.solver = SolverKind::Clarabel;
    const auto a = fixed_t_solve(Variant::ImperfectProb, ch, c, reference_symbol(c), on);
    c.solver = SolverKind::Scs;
    c.solver_eps = 1e-8;
    const auto b = fixed_t_solve(Variant::ImperfectProb, ch, c, reference_symbol(c), on);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(b.power.tx_mw == doctest::Approx(a.power.tx_mw).epsilon(1e-4));
}

TEST_CASE("total power grows with the IR threshold on fixed channels") {
    for (std::uint64_t seed : {1, 2, 3}) {
        ScenarioConfig c = small(6, 2, seed);
        const ChannelSet ch = harness::make_instance(c);
        double prev = 0.0;
        for (double g : {0.0, 10.0, 20.0, 30.0}) {
            c.gamma_d_db = g;
            const auto s = sca_solve(Variant::ImperfectProb, ch, c, reference_symbol(c));
            if (!s.ok()) break;
            CHECK(s.power.total_mw >= prev * (1.0 - 1e-6));
            prev = s.power.total_mw;
        }
    }
}

TEST_CASE("length mismatch is a precondition error") {
    ScenarioConfig c = small(4, 1, 1);
    ChannelSet ch = harness::make_instance(c);
    ch.h_k_hat[0] = CVec::Zero(3);
    CHECK_THROWS_AS(sca_solve(Variant::ImperfectProb, ch, c, reference_symbol(c)), PreconditionError);
}
