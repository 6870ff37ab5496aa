#include <map>

#include "doctest.h"
#include "wedge/factorization.hpp"

using namespace wedge;

namespace {
int end_sheet(const SurfaceData& S, const std::vector<cplx>& path) {
    int sheet = 0;
    S.split(path, 1, &sheet);
    return sheet;
}
}  // namespace

TEST_CASE("kappa0 of the reference sets") {
    // frozen from the winding of the reflection-ratio function
    const std::map<std::string, int> expect = {{"2a", 0}, {"2b", 0}, {"2c", 1}, {"2d", -1},
                                               {"3a", 0}, {"3b", 0}, {"3c", 0}, {"3d", 1}};
    for (auto& c : reference_cases()) {
        CAPTURE(c.name);
        auto p = reference_problem(c.name);
        auto S = build_surface(p, build_structural(p));
        CHECK(S.kappa0 == expect.at(c.name));
        CHECK(std::abs(S.kappa0_raw - S.kappa0) < 1e-6);
    }
}

TEST_CASE("branch points lie in the upper half plane, ordered") {
    auto p = reference_problem("2b");
    auto S = build_surface(p, build_structural(p));
    for (int i = 0; i < 4; ++i) CHECK(S.a[i].imag() > 0);
    for (int i = 0; i + 1 < 4; ++i) CHECK(S.a[i].imag() <= S.a[i + 1].imag());
}

TEST_CASE("exact-offset square root matches the plain one off the cuts") {
    auto p = reference_problem("3a");
    auto S = build_surface(p, build_structural(p));
    for (double d : {0.3, 0.05, 1e-3}) {
        cplx t = S.a[1] + cplx(d, -d);
        cplx a = S.sqrt_f(t), b = S.sqrt_f_off(t, S.a[1], t - S.a[1]);
        CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("Jacobi inversion closes and the loop integrals match their elliptic forms") {
    for (const char* name : {"2a", "2d", "3a"}) {
        CAPTURE(name);
        auto pl = build_factorization(reference_problem(name));
        const auto& S = *pl.surf;
        CHECK(std::abs(pl.jac.closure) < 1e-9);
        CHECK(std::abs(pl.jac.m0_raw - pl.jac.m0) < 1e-6);
        CHECK(std::abs(pl.jac.n0_raw - pl.jac.n0) < 1e-6);
        CHECK(std::abs(S.loop_a - S.loop_a_ell) < 1e-9 * std::abs(S.loop_a));
        CHECK(std::abs(S.loop_b - S.loop_b_ell) < 1e-9 * std::abs(S.loop_b));
    }
}

TEST_CASE("routed paths end on the requested sheet") {
    auto pl = build_factorization(reference_problem("3a"));
    const auto& S = *pl.surf;
    for (int sheet : {1, 2}) {
        for (cplx z : {cplx(0.4, 0.9), cplx(-0.7, 0.3), cplx(1.2, 2.0)}) {
            auto path = route_path(S, cplx(0.1, 0.2), z * S.scale, sheet);
            CHECK(end_sheet(S, path) == (sheet == 1 ? 1 : -1));
            CHECK(path.front() == cplx(0.1, 0.2));
            CHECK(path.back() == z * S.scale);
        }
    }
    CHECK(end_sheet(S, pl.jac.path) == (pl.jac.sheet == 1 ? 1 : -1));
}

TEST_CASE("the reference point rho0 is reached on the first sheet") {
    for (const char* name : {"2d", "3d"}) {
        CAPTURE(name);
        auto pl = build_factorization(reference_problem(name));
        REQUIRE(pl.surf->kappa0 != 0);
        CHECK(end_sheet(*pl.surf, pl.jac.rho_path) == 1);
        CHECK(pl.jac.rho_path.back() == pl.jac.rho0);
    }
}
