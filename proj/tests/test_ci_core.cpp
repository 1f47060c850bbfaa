#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "dasec/ci_core.hpp"

using namespace dasec;

namespace {

CVec random_cvec(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CVec v(n);
    for (int i = 0; i < n; ++i) {
        const double re = g(rng);
        const double im = g(rng);
        v[i] = cplx(re, im);
    }
    return v;
}

}  // namespace

TEST_CASE("psk symbol phases") {
    const auto q = SymbolSpec::psk(4, 0);
    CHECK(q.phi_d == doctest::Approx(std::numbers::pi / 4));
    CHECK(q.theta == doctest::Approx(std::numbers::pi / 4));
    CHECK(SymbolSpec::psk(8, 3).phi_d == doctest::Approx(7 * std::numbers::pi / 8));
    CHECK_THROWS_AS(SymbolSpec::psk(4, 4), PreconditionError);
    CHECK_THROWS_AS(SymbolSpec::psk(1, 0), PreconditionError);
}

TEST_CASE("noiseless receive is an unconjugated inner product") {
    std::mt19937_64 rng(1);
    CVec u = random_cvec(5, rng);
    CVec e1 = CVec::Zero(5);
    e1[0] = 1.0;
    CHECK(ci::noiseless_rx(e1, u) == u[0]);
    CHECK(ci::noiseless_rx(u, CVec::Zero(5)) == cplx(0.0, 0.0));
    for (int t = 0; t < 20; ++t) {
        const CVec h = random_cvec(6, rng);
        const CVec w = random_cvec(6, rng);
        cplx s = 0.0;
        for (int i = 0; i < 6; ++i) s += h[i] * w[i];
        CHECK(std::abs(ci::noiseless_rx(h, w) - s) < 1e-12);
    }
    CHECK_THROWS_AS(ci::noiseless_rx(CVec::Zero(2), CVec::Zero(3)), PreconditionError);
}

TEST_CASE("margin examples") {
    const auto q = SymbolSpec::with_phase(4, 0.0);
    const double g = 4.0, s = 1.5;
    CHECK(ci::margin_of(cplx(s * 2.0, 0.0), q, s, g) == doctest::Approx(0.0));
    CHECK(ci::margin_of(cplx(0.0, 0.0), q, s, g) == doctest::Approx(-s * 2.0 * std::tan(q.theta)));
    CHECK(ci::classify_point(cplx(s * 2.0, 0.0), q, s, g) == Region::Constructive);
    CHECK(ci::classify_point(cplx(-1e-3, 0.0), q, s, 0.0) == Region::Destructive);
    CHECK(ci::classify_point(cplx(-5.0, 0.2), q, s, g) == Region::Destructive);
    CHECK(ci::classify_point(cplx(s * std::sqrt(g) * 2.0, 0.0), q, s, g) == Region::Constructive);
    CHECK_THROWS_AS(ci::margin_of(cplx(1.0, 0.0), q, 1.0, -1.0), PreconditionError);
}

TEST_CASE("margin sign agrees with the two scalar inequalities") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 3.0);
    for (int m : {4, 8, 16}) {
        const auto sym = SymbolSpec::with_phase(m, 0.0);
        const double t = std::tan(sym.theta);
        const double sg = 1.3;
        for (int i = 0; i < 10000; ++i) {
            const cplx r(g(rng), g(rng));
            const double b = sg * std::sqrt(2.0);
            const bool upper = r.imag() <= (r.real() - b) * t;
            const bool lower = -r.imag() <= (r.real() - b) * t;
            const bool in = ci::margin_of(r, sym, sg, 2.0) >= 0.0;
            CHECK(in == (upper && lower));
        }
    }
}

TEST_CASE("rotation equivariance") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 200; ++i) {
        const CVec h = random_cvec(4, rng);
        const CVec u = random_cvec(4, rng);
        const double phi = ang(rng), psi = ang(rng);
        const auto a = SymbolSpec::with_phase(4, phi);
        const auto b = SymbolSpec::with_phase(4, phi + psi);
        CHECK(ci::ci_margin(h, u * std::polar(1.0, psi), b, 1.0, 3.0) ==
              doctest::Approx(ci::ci_margin(h, u, a, 1.0, 3.0)).epsilon(1e-12));
    }
}

TEST_CASE("ci sinr") {
    std::mt19937_64 rng(4);
    const CVec h = random_cvec(3, rng);
    const CVec u = random_cvec(3, rng);
    CHECK(ci::ci_sinr(h, CVec::Zero(3), 1.0) == 0.0);
    CHECK(ci::ci_sinr(h, u * cplx(0.0, 2.0), 0.5) == doctest::Approx(4.0 * ci::ci_sinr(h, u, 0.5)));
    CHECK(ci::ci_sinr(h, u, 0.7) == doctest::Approx(std::norm(ci::noiseless_rx(h, u)) / 0.49));
    // on the real axis a nonnegative margin implies sinr >= gamma
    const auto sym = SymbolSpec::with_phase(4, 0.0);
    for (double re : {2.0, 2.5, 10.0}) {
        CVec one(1);
        one[0] = 1.0;
        CVec uu(1);
        uu[0] = re;
        if (ci::ci_margin(one, uu, sym, 1.0, 4.0) >= 0.0) CHECK(ci::ci_sinr(one, uu, 1.0) >= 4.0);
    }
}

TEST_CASE("composite precoder") {
    std::mt19937_64 rng(5);
    const CVec w = random_cvec(3, rng), z = random_cvec(3, rng);
    const auto p = CompositePrecoder::from_parts(w, z, 0.7);
    CHECK(p.consistency_error(0.7) < 1e-15);
    CHECK(p.consistency_error(0.1) > 1e-3);
    CHECK_THROWS_AS(CompositePrecoder::from_parts(w, CVec::Zero(2), 0.0), PreconditionError);
}
