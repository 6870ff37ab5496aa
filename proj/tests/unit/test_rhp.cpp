#include "doctest.h"
#include "fixtures.hpp"

using namespace wedge;
using fixture::rel;

TEST_CASE("boundary condition and symmetry of the solution") {
    for (const char* name : {"2a", "2d", "3a", "3c"}) {
        CAPTURE(name);
        const auto& sol = fixture::spectra(name)->solution();
        const auto& p = sol.rhp1->problem();
        for (double x : {-2.3, -0.6, 0.15, 0.9, 3.1}) {
            cplx e = x * std::abs(p.k0);
            Vec2 plus = sol.eval(e, Which::plus), minus = sol.eval(e, Which::minus);
            CHECK(rel(plus, eval_G(p, e) * minus) < 1e-10);
            CHECK(rel(plus, sol.eval(-e, Which::minus)) < 1e-10);
        }
    }
}

TEST_CASE("residue at eta0 equals i C") {
    for (const char* name : {"2b", "3a", "3d"}) {
        CAPTURE(name);
        const auto& sol = fixture::spectra(name)->solution();
        const auto& p = sol.rhp1->problem();
        Vec2 res = circle_residue([&](cplx z) { return sol.eval(z, Which::plus); }, p.eta0, 1e-3 * std::abs(p.k0));
        CHECK(rel(res, I * sol.C) < 1e-8);
    }
}

TEST_CASE("solution space dimensions") {
    for (const char* name : {"2a", "2b", "2d", "3a", "3b", "3c", "3d"}) {
        CAPTURE(name);
        const auto& sol = fixture::spectra(name)->solution();
        CHECK(sol.rhp1->nullity() == sol.rhp1->spec().kappa + 3);
        CHECK(sol.rhp2->nullity() == sol.rhp2->spec().kappa + 3);
        CHECK(sol.joint_nullity == 2);
    }
}

TEST_CASE("compatibility holds away from the sample points") {
    const auto& sol = fixture::spectra("3a")->solution();
    for (cplx e : {cplx(0.2, 0.3), cplx(-0.4, 0.1), cplx(0.6, 0.5)})
        CHECK(rel(sol.compat_lhs(e), sol.compat_rhs(e)) < 1e-8);
}

TEST_CASE("degenerate set reports its real branch point") {
    CHECK_THROWS_WITH(solve_rhp(reference_problem("2c")), doctest::Contains("real branch point"));
}

TEST_CASE("D is unchanged by other surface seeds") {
    auto p = reference_problem("3a");
    auto sp0 = fixture::spectra("3a");
    double k = std::abs(p.k0);
    RhpConfig cfg;
    cfg.surface.rho0 = k * cplx(-0.4, 1.3);
    cfg.surface.sigma0 = k * cplx(0.7, 0.45);
    Spectra sp1(std::make_shared<const RhpSolution>(solve_rhp(p, cfg)));
    for (double th : {0.2, 0.7, 1.3}) CHECK(rel(sp1.D(th), sp0->D(th)) < 1e-8);
}
