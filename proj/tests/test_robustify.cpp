#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "dasec/robustify.hpp"

using namespace dasec;

namespace {

RVec randn(int n, std::mt19937_64& rng, double s = 1.0) {
    std::normal_distribution<double> g(0.0, s);
    RVec v(n);
    for (int i = 0; i < n; ++i) v[i] = g(rng);
    return v;
}

// a(e) for the first IR half-plane, same orientation as abar_ir's first vector
RVec ir_first(const CVec& h, double t) {
    const RVec s = stack(h);
    const int n = static_cast<int>(h.size());
    RVec a(2 * n);
    a.head(n) = s.tail(n) - s.head(n) * t;
    a.tail(n) = s.head(n) + s.tail(n) * t;
    return a;
}

}  // namespace

TEST_CASE("IR and Eve direction vectors for QPSK") {
    std::mt19937_64 rng(1);
    const RVec h = randn(6, rng);
    const RVec hr = h.head(3), hi = h.tail(3);
    const double th = std::numbers::pi / 4;
    auto [d1, d2] = robust::abar_ir(h, th);
    RVec e1(6), e2(6), k1(6);
    e1 << hi - hr, hr + hi;
    e2 << -hi - hr, -hr + hi;
    CHECK((d1 - e1).norm() < 1e-14);
    CHECK((d2 - e2).norm() < 1e-14);
    auto [v1, v2] = robust::abar_eve(h, th);
    k1 << hi + hr, hr - hi;
    CHECK((v1 - k1).norm() < 1e-14);
    auto [z1, z2] = robust::abar_ir(RVec::Zero(6), th);
    CHECK(z1.norm() == 0.0);
    CHECK(z2.norm() == 0.0);
    CHECK(robust::abar_eve(RVec::Zero(6), th).second.norm() == 0.0);
}

TEST_CASE("second Eve vector is the first one at the conjugate channel with u_I negated") {
    std::mt19937_64 rng(2);
    for (int m : {4, 8}) {
        const double th = std::numbers::pi / m;
        const RVec h = randn(8, rng);
        RVec hc = h;
        hc.tail(4) *= -1.0;
        RVec flip = robust::abar_eve(hc, th).first;
        flip.tail(4) *= -1.0;
        CHECK((robust::abar_eve(h, th).second - flip).norm() < 1e-14);
    }
}

TEST_CASE("BPSK wedge is rejected") {
    CHECK_THROWS_AS(robust::abar_ir(RVec::Ones(4), std::numbers::pi / 2), robust::UnsupportedConstellation);
    ScenarioConfig c;
    c.m_psk = 2;
    CHECK_THROWS_AS(robust::ir_chance_blocks(CVec::Ones(2), c, SymbolSpec::psk(2, 0)),
                    robust::UnsupportedConstellation);
}

TEST_CASE("covariance square roots") {
    const double th = std::numbers::pi / 4;
    const RVec p = robust::cov_sqrt(th, 0.01, 4, CovarianceMode::PaperVerbatim);
    CHECK(p.size() == 8);
    for (int i = 0; i < 8; ++i) CHECK(p[i] == doctest::Approx(0.02));
    const RVec d = robust::cov_sqrt(th, 0.01, 4, CovarianceMode::DerivedExact);
    for (int i = 0; i < 8; ++i) CHECK(d[i] == doctest::Approx(0.01));
    CHECK(robust::cov_sqrt(th, 0.0, 4, CovarianceMode::PaperVerbatim).norm() == 0.0);
}

TEST_CASE("derived covariance matches sampled variance of the direction entries") {
    std::mt19937_64 rng(3);
    const int n = 1;
    const double se = 0.3;
    for (int m : {4, 8}) {
        const double th = std::numbers::pi / m;
        const double t = std::tan(th);
        std::normal_distribution<double> g(0.0, se / std::numbers::sqrt2);
        double s0 = 0.0, s1 = 0.0;
        const int draws = 1000000;
        for (int i = 0; i < draws; ++i) {
            CVec e(1);
            const double re = g(rng);
            const double im = g(rng);
            e[0] = cplx(re, im);
            const RVec a = ir_first(e, t);
            s0 += a[0] * a[0];
            s1 += a[1] * a[1];
        }
        const double expect = std::pow(robust::cov_sqrt(th, se, n, CovarianceMode::DerivedExact)[0], 2);
        CHECK(s0 / draws == doctest::Approx(expect).epsilon(0.01));
        CHECK(s1 / draws == doctest::Approx(expect).epsilon(0.01));
    }
}

TEST_CASE("quantiles") {
    CHECK(robust::quantile(0.95, QuantileMode::Normal) == doctest::Approx(1.6448536269514722).epsilon(1e-12));
    CHECK(robust::quantile(0.5, QuantileMode::Normal) == doctest::Approx(0.0));
    // literal reading: inverse error function, which is not zero at one half
    CHECK(robust::quantile(0.5, QuantileMode::ErfLiteral) == doctest::Approx(0.4769362762044699).epsilon(1e-12));
    CHECK(std::erf(robust::quantile(0.95, QuantileMode::ErfLiteral)) == doctest::Approx(0.95).epsilon(1e-14));
}

TEST_CASE("chance block arithmetic") {
    RVec a(2), c(2), x(2);
    a << 1.0, -2.0;
    c << 0.5, 0.5;
    x << 1.0, 1.0;
    const auto s = robust::chance_to_soc(a, c, 0.95, 3.0);
    CHECK(s.scale == doctest::Approx(1.6448536269514722));
    CHECK(s.slack(x) == doctest::Approx(3.0 - (-1.0) - s.scale * std::sqrt(0.5)));
    // no uncertainty leaves the nominal linear inequality
    const auto z = robust::chance_to_soc(a, RVec::Zero(2), 0.95, 3.0);
    CHECK(z.slack(x) == doctest::Approx(4.0));
    CHECK_THROWS_AS(robust::chance_to_soc(a, c, 0.5, 3.0), PreconditionError);
}

TEST_CASE("SOC and Schur LMI verdicts agree") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 0.5);
    int disagreements = 0;
    for (int i = 0; i < 1000; ++i) {
        const int n2 = 6;
        RVec c(n2);
        for (int j = 0; j < n2; ++j) c[j] = u(rng);
        const auto s = robust::chance_to_soc(randn(n2, rng), c, 0.9, randn(1, rng, 3.0)[0]);
        const auto l = robust::soc_to_lmi(s);
        const RVec x = randn(n2, rng);
        if ((s.slack(x) >= 0.0) != (l.min_eig(x) >= -1e-8)) ++disagreements;
        const RMat m = l.assemble(x);
        CHECK(m == m.transpose());
    }
    CHECK(disagreements == 0);
}

TEST_CASE("LMI at the origin and on the SOC boundary") {
    RVec a(2), c(2), x(2);
    a << 0.3, -0.1;
    c << 0.2, 0.4;
    const auto s = robust::chance_to_soc(a, c, 0.95, 2.0);
    const auto l = robust::soc_to_lmi(s);
    const RMat m0 = l.assemble(RVec::Zero(2));
    CHECK((m0 - (2.0 / s.scale) * RMat::Identity(3, 3)).norm() < 1e-12);
    // scale x onto the boundary: a^T x + q ||c.x|| = rhs
    x << 1.0, 2.0;
    const double k = s.rhs / (a.dot(x) + s.scale * c.cwiseProduct(x).norm());
    CHECK(std::abs(s.slack(k * x)) < 1e-12);
    CHECK(std::abs(l.min_eig(k * x)) < 1e-10);
    CHECK(l.min_eig(1.01 * k * x) < 0.0);
}

TEST_CASE("chance constraint holds with probability eta at the boundary") {
    std::mt19937_64 rng(5);
    const int n = 3;
    const double se = 0.2;
    const double th = std::numbers::pi / 4;
    const CVec h = unstack(randn(2 * n, rng));
    const RVec x = randn(2 * n, rng);
    const RVec ab = robust::abar_ir(stack(h), th).first;
    const RVec c = robust::cov_sqrt(th, se, n, CovarianceMode::DerivedExact);
    // choose rhs so that x sits exactly on the boundary
    const double rhs = ab.dot(x) + robust::quantile(0.95, QuantileMode::Normal) * c.cwiseProduct(x).norm();
    const auto s = robust::chance_to_soc(ab, c, 0.95, rhs);
    CHECK(std::abs(s.slack(x)) < 1e-12);
    std::normal_distribution<double> g(0.0, se / std::numbers::sqrt2);
    long ok = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        CVec e(n);
        for (int j = 0; j < n; ++j) {
            const double re = g(rng);
            const double im = g(rng);
            e[j] = cplx(re, im);
        }
        if (ir_first(h + e, 1.0).dot(x) <= rhs) ++ok;
    }
    CHECK(static_cast<double>(ok) / draws == doctest::Approx(0.95).epsilon(0.0106));
}

TEST_CASE("norm-robust block never violates inside the ball") {
    std::mt19937_64 rng(6);
    ScenarioConfig cfg;
    cfg.n_das = 3;
    cfg.sigma_e = 0.05;
    const auto sym = SymbolSpec::psk(4, 0);
    const double sigma = std::sqrt(cfg.sigma_ball_eff());
    const CVec h = unstack(randn(6, rng));
    const auto blocks = robust::ir_sproc_lmis(h, cfg, sym, SprocMode::NormRobust);
    CHECK(robust::norm_robust_factor(sigma, sym.theta) == doctest::Approx(sigma / std::cos(sym.theta)));
    // random x scaled into feasibility of both blocks
    int violations = 0, tested = 0;
    for (int i = 0; i < 200; ++i) {
        const RVec x = randn(6, rng, 5.0);
        if (blocks[0].soc.slack(x) < 0.0 || blocks[1].soc.slack(x) < 0.0) continue;
        ++tested;
        for (int j = 0; j < 100; ++j) {
            RVec d = randn(6, rng);
            d *= sigma / d.norm() * (j % 2 ? 1.0 : std::uniform_real_distribution<double>(0, 1)(rng));
            const CVec ht = h + unstack(d);
            if (ci::ci_margin(ht, unstack(x), sym, 1.0, cfg.gamma_d_lin()) < -1e-12) ++violations;
        }
    }
    CHECK(tested > 0);
    CHECK(violations == 0);
    // with no uncertainty the block is the nominal half-plane
    ScenarioConfig z = cfg;
    z.sigma_e = 0.0;
    z.sigma_ball = 0.0;
    const auto nb = robust::ir_sproc_lmis(h, z, sym, SprocMode::NormRobust);
    const RVec x = randn(6, rng);
    CHECK(nb[0].soc.slack(x) == doctest::Approx(nb[0].rhs - nb[0].a_bar.dot(x)));
}

TEST_CASE("S-procedure LMI block") {
    std::mt19937_64 rng(7);
    ScenarioConfig cfg;
    cfg.n_das = 2;
    const auto sym = SymbolSpec::psk(4, 0);
    const CVec h = unstack(randn(4, rng));
    const auto blocks = robust::ir_sproc_lmis(h, cfg, sym, SprocMode::PaperFaithful);
    const auto& l = blocks[0].lmi;
    REQUIRE(l.Fm.size() == 1);
    // strongly satisfied nominal constraint and a large multiplier: diagonal dominance
    const RVec xs = -1e4 * blocks[0].a_bar / blocks[0].a_bar.squaredNorm();
    RVec lam(1);
    lam[0] = std::max(0.0, xs.maxCoeff()) + 1.0;
    const double rho0 = blocks[0].a_bar.dot(xs) - blocks[0].rhs;
    REQUIRE(lam[0] * cfg.sigma_ball_eff() < -rho0);
    CHECK(l.min_eig(xs, lam) > 0.0);
    // feasibility implies lambda >= max x_i and lambda sigma^2 <= -rho
    const double s2 = cfg.sigma_ball_eff();
    for (int i = 0; i < 500; ++i) {
        const RVec xr = randn(4, rng);
        RVec lr(1);
        lr[0] = std::abs(randn(1, rng)[0]) * 3.0;
        if (l.min_eig(xr, lr) < 0.0) continue;
        CHECK(lr[0] >= xr.maxCoeff() - 1e-9);
        const double rho = blocks[0].a_bar.dot(xr) - blocks[0].rhs;
        CHECK(lr[0] * s2 <= -rho + 1e-9);
        const RMat m = l.assemble(xr, lr);
        CHECK(m == m.transpose());
    }
}
