#include "doctest.h"

#include <cmath>
#include <random>

#include "dasec/conic_model.hpp"

using namespace dasec;
using namespace dasec::conic;

namespace {

std::vector<Backend> backends() {
    std::vector<Backend> b;
    for (Backend x : {Backend::Clarabel, Backend::Scs})
        if (backend_available(x)) b.push_back(x);
    return b;
}

SolverOptions opts(Backend b) {
    SolverOptions o;
    o.backend = b;
    o.eps = b == Backend::Scs ? 1e-7 : 1e-9;
    return o;
}

// min c^T v s.t. ||v - center|| <= r, a^T v <= b, over 2 variables
ConicProgram small_socp(const RVec& c, const RVec& center, double r, const RVec& a, double b) {
    ConicProgram p;
    const auto v = p.add_var_block(2);
    p.set_cost(v[0], c[0]);
    p.set_cost(v[1], c[1]);
    SocCon s;
    s.t = Affine(r);
    s.y = {Affine(-center[0]).add(v[0], 1.0), Affine(-center[1]).add(v[1], 1.0)};
    s.tag = "ball";
    p.add_soc(std::move(s));
    p.add_linear(Affine(-b).add(v[0], a[0]).add(v[1], a[1]), Sense::Le, "cut");
    return p;
}

}  // namespace

TEST_CASE("scalar bound") {
    for (Backend b : backends()) {
        CAPTURE(to_string(b));
        ConicProgram p;
        const auto x = p.add_var_block(1, 1.0, kInf, "x");
        p.set_cost(x[0], 1.0);
        const auto r = solve(p, opts(b));
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.v[0] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(r.objective_value == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("trace minimisation over X >= I") {
    for (Backend b : backends()) {
        CAPTURE(to_string(b));
        ConicProgram p;
        const auto x = p.add_var_block(3, -kInf, kInf, "X");  // X00, X10, X11
        p.set_cost(x[0], 1.0);
        p.set_cost(x[2], 1.0);
        PsdCon m(2, "shifted");
        m.at(0, 0) = Affine(-1.0).add(x[0], 1.0);
        m.at(1, 0) = Affine().add(x[1], 1.0);
        m.at(1, 1) = Affine(-1.0).add(x[2], 1.0);
        p.add_psd(std::move(m));
        const auto r = solve(p, opts(b));
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.objective_value == doctest::Approx(2.0).epsilon(1e-6));
        CHECK(std::abs(r.v[1]) < 1e-5);
    }
}

TEST_CASE("random SOCPs agree with a grid search") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 5; ++trial) {
        RVec c(2), ctr(2), a(2);
        c << g(rng), g(rng);
        ctr << g(rng), g(rng);
        a << g(rng), g(rng);
        const double r = 1.0 + std::abs(g(rng));
        const double b = a.dot(ctr) + 0.3 * r * a.norm();
        const ConicProgram p = small_socp(c, ctr, r, a, b);
        // a linear objective attains its minimum on the boundary: sample the circle and the chord
        double best = kInf;
        const int steps = 400000;
        for (int j = 0; j < steps; ++j) {
            const double th = 2.0 * M_PI * j / steps;
            RVec v(2);
            v << ctr[0] + r * std::cos(th), ctr[1] + r * std::sin(th);
            if (a.dot(v) <= b) best = std::min(best, c.dot(v));
        }
        // chord: foot of the cut line plus a direction along it
        const RVec foot = ctr + (b - a.dot(ctr)) / a.squaredNorm() * a;
        RVec dir(2);
        dir << -a[1], a[0];
        dir /= dir.norm();
        const double half = std::sqrt(std::max(0.0, r * r - (foot - ctr).squaredNorm()));
        for (int j = 0; j <= steps; ++j) {
            const RVec v = foot + dir * (-half + 2.0 * half * j / steps);
            best = std::min(best, c.dot(v));
        }
        for (Backend bk : backends()) {
            CAPTURE(to_string(bk));
            const auto s = solve(p, opts(bk));
            REQUIRE(s.status == SolveStatus::Optimal);
            CHECK(s.objective_value == doctest::Approx(best).epsilon(1e-4).scale(1.0));
        }
    }
}

TEST_CASE("infeasible and unbounded programs") {
    for (Backend b : backends()) {
        CAPTURE(to_string(b));
        ConicProgram p;
        const auto x = p.add_var_block(1);
        p.set_cost(x[0], 1.0);
        p.add_linear(Affine(-2.0).add(x[0], 1.0), Sense::Ge, "x>=2");
        p.add_linear(Affine(-1.0).add(x[0], 1.0), Sense::Le, "x<=1");
        CHECK(solve(p, opts(b)).status == SolveStatus::Infeasible);

        ConicProgram q;
        const auto y = q.add_var_block(1);
        q.set_cost(y[0], 1.0);
        q.add_linear(Affine(-1.0).add(y[0], 1.0), Sense::Le, "y<=1");
        CHECK(solve(q, opts(b)).status == SolveStatus::Unbounded);
    }
}

TEST_CASE("backends agree on a mixed program") {
    if (backends().size() < 2) return;
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    ConicProgram p;
    const auto x = p.add_var_block(2, -kInf, kInf, "x");
    const auto X = p.add_var_block(3, -kInf, kInf, "X");
    for (int i = 0; i < 2; ++i) p.set_cost(x[i], g(rng));
    p.set_cost(X[0], 1.0);
    p.set_cost(X[2], 1.0);
    PsdCon s(3, "schur");
    s.at(0, 0).add(X[0], 1.0);
    s.at(1, 0).add(X[1], 1.0);
    s.at(1, 1).add(X[2], 1.0);
    s.at(2, 0).add(x[0], 1.0);
    s.at(2, 1).add(x[1], 1.0);
    s.at(2, 2).c = 1.0;
    p.add_psd(std::move(s));
    p.add_linear(Affine(-4.0).add(X[0], 1.0).add(X[2], 1.0), Sense::Le, "trace");
    const auto a = solve(p, opts(Backend::Clarabel));
    const auto b = solve(p, opts(Backend::Scs));
    REQUIRE(a.status == SolveStatus::Optimal);
    REQUIRE(b.status == SolveStatus::Optimal);
    CHECK(a.objective_value == doctest::Approx(b.objective_value).epsilon(1e-5));
}

TEST_CASE("independent audit") {
    ConicProgram p;
    const auto v = p.add_var_block(3, 0.0, 2.0, "v");
    p.add_linear(Affine(-1.0).add(v[0], 1.0).add(v[1], 1.0), Sense::Eq, "sum");
    SocCon s;
    s.t = Affine().add(v[2], 1.0);
    s.y = {Affine().add(v[0], 1.0), Affine().add(v[1], 1.0)};
    s.tag = "cone";
    p.add_soc(std::move(s));
    PsdCon m(2, "psd");
    m.at(0, 0).add(v[2], 1.0);
    m.at(1, 0).add(v[0], 1.0);
    m.at(1, 1).c = 1.0;
    p.add_psd(std::move(m));
    RVec ok(3);
    ok << 0.5, 0.5, 1.0;
    CHECK(audit(p, ok).max_violation < 1e-12);
    RVec bad(3);
    bad << 0.5, 0.7, 0.1;
    const auto rep = audit(p, bad);
    CHECK(rep.max_violation > 0.1);
    RVec oob(3);
    oob << 3.0, -2.0, 5.0;
    CHECK(audit(p, oob).max_violation == doctest::Approx(3.0));
}

TEST_CASE("dump round trip") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g;
    ConicProgram p;
    const auto x = p.add_var_block(4, -1.0, kInf, "x");
    const auto y = p.add_var_block(2, -kInf, 3.5, "y");
    for (int i = 0; i < 4; ++i) p.set_cost(x[i], g(rng));
    p.set_cost_constant(0.1);
    p.add_linear(Affine(g(rng)).add(x[0], g(rng)).add(y[1], 1.0 / 3.0), Sense::Le, "a");
    p.add_linear(Affine(g(rng)).add(x[2], g(rng)), Sense::Ge, "b");
    p.add_linear(Affine(1.0).add(y[0], -1.0), Sense::Eq, "c");
    SocCon s;
    s.t = Affine(2.0).add(x[3], M_PI);
    s.y = {Affine().add(x[1], 1.0), Affine(1e-17).add(y[0], -2.0)};
    s.tag = "s";
    p.add_soc(std::move(s));
    PsdCon m(2, "m");
    m.at(0, 0).add(x[0], 1.0);
    m.at(1, 0).add(x[1], std::sqrt(2.0));
    m.at(1, 1).c = 1.0;
    p.add_psd(std::move(m));
    const std::string t1 = dump(p);
    const ConicProgram q = parse_dump(t1);
    CHECK(dump(q) == t1);
    CHECK(q.n_vars() == p.n_vars());
    CHECK(q.cost() == p.cost());
    RVec v = RVec::Zero(6);
    v << 0.3, -0.2, 0.1, 0.7, 1.0, -3.0;
    CHECK(audit(q, v).max_violation == audit(p, v).max_violation);
    CHECK_THROWS(parse_dump("conic_program 1\nvars x\n"));
}

TEST_CASE("empty program evaluates its constant") {
    ConicProgram p;
    p.set_cost_constant(7.0);
    const auto r = solve(p);
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(r.objective_value == 7.0);
}
