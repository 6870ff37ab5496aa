#include "doctest.h"
#include "fixtures.hpp"

using namespace wedge;
using fixture::rel;

TEST_CASE("F- from either problem") {
    auto sp = fixture::spectra("3a");
    for (cplx s : {cplx(0.3, 0.2), cplx(1.0, -0.4), cplx(1.4, 0.9), cplx(0.8, 0.02)})
        CHECK(rel(sp->F_minus_direct(s), sp->F_minus(s)) < 1e-9);
}

TEST_CASE("residues of F match the closed-form constants") {
    for (const char* name : {"2a", "3b"}) {
        CAPTURE(name);
        auto sp = fixture::spectra(name);
        const auto& rc = sp->constants();
        double th = sp->problem().theta0;
        auto Fp = [&](cplx s) { return sp->F_plus(s); };
        auto Fm = [&](cplx s) { return sp->F_minus(s); };
        CHECK(rel(circle_residue(Fp, PI / 2 - th, 0.05), rc.Lp) < 1e-9);
        CHECK(rel(circle_residue(Fp, PI / 2 + th, 0.05), rc.Mp) < 1e-9);
        CHECK(rel(circle_residue(Fm, th, 0.05), rc.Lm) < 1e-9);
        CHECK(rel(circle_residue(Fm, PI - th, 0.05), rc.Mm) < 1e-9);
    }
}

TEST_CASE("residue constants and the reflection set") {
    for (auto& c : reference_cases()) {
        CAPTURE(c.name);
        CHECK(residue_constants(reference_problem(c.name)).identity_residual() < 1e-12);
    }
}

TEST_CASE("S has residue i at theta0") {
    auto sp = fixture::spectra("2b");
    const auto& p = sp->problem();
    Vec2 res = circle_residue([&](cplx s) { return sp->S(s); }, p.theta0, 0.05);
    CHECK(rel(res, Vec2(p.i1, p.i2)) < 1e-9);
}

TEST_CASE("F+ vanishes at the origin and F is odd") {
    auto sp = fixture::spectra("2d");
    CHECK(sp->F_plus(0.0).norm() < 1e-12);
    for (cplx s : {cplx(0.4, 0.3), cplx(1.1, -0.2)}) {
        CHECK(rel(sp->F_plus(-s), Vec2(-sp->F_plus(s))) < 1e-10);
        CHECK(rel(sp->F_minus(-s), Vec2(-sp->F_minus(s))) < 1e-10);
    }
}

TEST_CASE("continued S agrees with the axis integral where both apply") {
    auto sp = fixture::spectra("3a");
    for (double tau : {0.0, 0.3, -0.8})
        for (double d : {0.01, 0.05}) {
            cplx s(PI / 2 - d, tau);
            CHECK(rel(sp->S(s), Vec2(sp->S_axis(s) + sp->S_poles(s))) < 1e-9);
        }
}

TEST_CASE("diffraction coefficient by two routes") {
    auto sp = fixture::spectra("3c");
    const cplx pre = std::exp(-I * (PI / 4)) / std::sqrt(2 * PI);
    for (double th : {0.3, 0.8, 1.4}) {
        Vec2 via_S = pre * (sp->S(th - PI) - sp->S(th + PI));
        CHECK(rel(sp->D(th), via_S) < 1e-9);
    }
}

TEST_CASE("zero incident field gives zero spectra") {
    auto p = reference_problem("3a", PI / 3, 0.0, 0.0);
    Spectra sp(std::make_shared<const RhpSolution>(solve_rhp(p)));
    for (double th : {0.2, 0.9}) CHECK(sp.D(th).norm() < 1e-14);
}

TEST_CASE("parallel grid equals the serial reference") {
    auto sp = fixture::spectra("2a");
    std::vector<double> th;
    for (int i = 0; i < 17; ++i) th.push_back(0.05 + 1.45 * i / 16);
    auto a = diffraction_grid(*sp, th), b = diffraction_grid(*sp, th, true);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].D == b[i].D);
        CHECK(a[i].flagged == b[i].flagged);
    }
}

TEST_CASE("geometric-optics amplitudes of the far field") {
    auto sp = fixture::spectra("2b");
    const auto& p = sp->problem();
    auto refl = reflection_coefficients(p);
    double rho = 40 / std::abs(p.k0);
    cplx kr = p.k0 * rho;
    double th1 = p.theta0 / 2, th2 = (p.theta0 + PI / 2) / 2;
    auto t1 = far_field(*sp, rho, th1), t2 = far_field(*sp, rho, th2);
    CHECK(t1.asymptotic_ok);
    CHECK(rel(t1.refl_plus * std::exp(-I * kr * std::cos(th1 + p.theta0)), Vec2(refl.r1p, refl.r2p)) < 1e-10);
    CHECK(rel(t1.refl_minus * std::exp(I * kr * std::cos(th1 + p.theta0)), Vec2(refl.r1m, refl.r2m)) < 1e-10);
    CHECK(rel(t1.double_plus * std::exp(-I * kr * std::cos(th1 - p.theta0)), Vec2(refl.R1p, refl.R2p)) < 1e-10);
    CHECK(rel(t2.double_minus * std::exp(-I * kr * std::cos(th2 - p.theta0)), Vec2(refl.R1m, refl.R2m)) < 1e-10);
    CHECK(t2.double_plus.norm() == 0.0);
}
