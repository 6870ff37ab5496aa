#include "doctest.h"
#include "fixtures.hpp"
#include "wedge/oracle_normal.hpp"

using namespace wedge;
using fixture::rel;

namespace {
WedgeProblem normal(const std::string& name, cplx i2 = 0.5) {
    for (auto& c : reference_cases())
        if (c.name == name) return make_problem_k0(cplx(1, 0.1), PI / 2, PI / 3, c.g1p, c.g4p, c.g1m, c.g4m, 1.0, i2);
    throw std::invalid_argument(name);
}
}  // namespace

TEST_CASE("scalar closed forms satisfy their own jump and residue conditions") {
    for (auto& c : reference_cases()) {
        CAPTURE(c.name);
        auto o = build_oracle(normal(c.name));
        CHECK(oracle_jump_residual(o) < 1e-12);
        CHECK(oracle_identity_residual(o) < 1e-12);
        Vec2 res = circle_residue([&](cplx z) { return o.Phi_plus(z); }, o.p.eta0, 1e-3);
        CHECK(rel(res, Vec2(I * o.C)) < 1e-9);
    }
}

TEST_CASE("two-constant form reduces to the compact one") {
    auto o = build_oracle(normal("3a"));
    for (cplx e : {cplx(0.3, 0.2), cplx(-1.4, 0.7), cplx(2.2, -0.1)}) CHECK(rel(o.Phi_plus_raw(e), o.Phi_plus(e)) < 1e-13);
}

TEST_CASE("closed-form reflection amplitudes match the plane-wave solution") {
    auto p = normal("2d");
    auto o = build_oracle(p);
    auto r = reflection_coefficients(p);
    CHECK(rel(o.r_plus, Vec2(r.r1p, r.r2p)) < 1e-12);
    CHECK(rel(o.r_minus, Vec2(r.r1m, r.r2m)) < 1e-12);
}

TEST_CASE("residues of the closed-form spectra") {
    auto o = build_oracle(normal("2b"));
    double th = o.p.theta0;
    auto Fp = [&](cplx s) { return o.F_plus(s); };
    auto Fm = [&](cplx s) { return o.F_minus(s); };
    CHECK(rel(circle_residue(Fp, PI / 2 - th, 0.05), o.Lp) < 1e-10);
    CHECK(rel(circle_residue(Fm, th, 0.05), o.Lm) < 1e-10);
    CHECK(rel(circle_residue(Fm, PI - th, 0.05), o.Mm) < 1e-10);
    CHECK(rel(circle_residue(Fp, PI / 2 + th, 0.05), o.Mp) < 1e-10);
}

TEST_CASE("no edge wave at normal incidence") {
    auto o = build_oracle(normal("3c"));
    for (double th : {0.2, 0.7, 1.3}) CHECK(o.diffraction(th).norm() < 1e-12);
}

TEST_CASE("resonant parameters are rejected") {
    auto p = normal("2a");
    p.g1m = -p.eta0;
    CHECK_THROWS_AS(build_oracle(p), OracleError);
    CHECK_THROWS_AS(build_oracle(reference_problem("2a")), OracleError);
}

TEST_CASE("full pipeline at normal incidence matches the closed forms") {
    for (const char* name : {"2a", "3d"}) {
        CAPTURE(name);
        auto p = normal(name);
        auto o = build_oracle(p);
        Spectra sp(std::make_shared<const RhpSolution>(solve_rhp(p)));
        for (auto& row : oracle_compare(o, sp)) {
            CAPTURE(row.name);
            CHECK(row.residual < 1e-8);
        }
    }
}
