#include "doctest.h"
#include "wedge/problem.hpp"

using namespace wedge;

namespace {
RawProblem base_raw() {
    RawProblem r;
    r.k0 = cplx(1, 0.1);
    r.beta = PI / 4;
    r.theta0 = PI / 3;
    r.g1p = cplx(1.5, 0.5);
    r.g4p = cplx(1, 1);
    r.g1m = cplx(1, -0.5);
    r.g4m = cplx(1, 1);
    return r;
}

bool rejects(const RawProblem& r, const std::string& fragment) {
    try {
        build_problem(r);
    } catch (const ValidationError& e) {
        for (auto& m : e.messages)
            if (m.find(fragment) != std::string::npos) return true;
    }
    return false;
}
}  // namespace

TEST_CASE("input validation") {
    auto r = base_raw();
    r.k = cplx(1, 0.1);
    CHECK(rejects(r, "either k or k0"));
    r = base_raw();
    r.k0 = cplx(1, -0.1);
    CHECK(rejects(r, "Im k"));
    r = base_raw();
    r.theta0 = 2.0;
    CHECK(rejects(r, "theta0"));
    r = base_raw();
    r.g4m.reset();
    CHECK(rejects(r, "all four gammas"));
    r = base_raw();
    r.eta_rr_p = 1.0;
    CHECK(rejects(r, "not both"));
}

TEST_CASE("k and k0 forms agree") {
    auto a = build_problem(base_raw());
    auto r = base_raw();
    r.k0.reset();
    r.k = a.k;
    auto b = build_problem(r);
    CHECK(std::abs(a.k0 - b.k0) < 1e-14);
    CHECK(std::abs(a.eta0 - b.eta0) < 1e-14);
}

TEST_CASE("impedance input reproduces the gammas") {
    auto a = build_problem(base_raw());
    auto z = impedances_from_gammas(a);
    auto r = base_raw();
    r.g1p.reset(), r.g4p.reset(), r.g1m.reset(), r.g4m.reset();
    r.eta_rr_p = z.eta_rr_p, r.eta_zz_p = z.eta_zz_p, r.eta_rr_m = z.eta_rr_m, r.eta_zz_m = z.eta_zz_m;
    auto b = build_problem(r);
    CHECK(std::abs(a.g1p - b.g1p) < 1e-13);
    CHECK(std::abs(a.g4p - b.g4p) < 1e-13);
    CHECK(std::abs(a.g1m - b.g1m) < 1e-13);
    CHECK(std::abs(a.g4m - b.g4m) < 1e-13);
}

TEST_CASE("face exchange is an involution") {
    auto p = reference_problem("3c");
    auto q = p.swapped().swapped();
    CHECK(std::abs(q.beta - p.beta) < 1e-15);
    CHECK(std::abs(q.theta0 - p.theta0) < 1e-15);
    CHECK(q.g1p == p.g1p);
    CHECK(q.g4m == p.g4m);
    CHECK(std::abs(q.k0 - p.k0) < 1e-14);
}

TEST_CASE("reflected plane waves satisfy the face conditions") {
    for (auto& c : reference_cases()) {
        CAPTURE(c.name);
        auto p = reference_problem(c.name);
        CHECK(reflection_bc_residual(p, reflection_coefficients(p)) < 1e-12);
    }
    CHECK(reference_cases().size() == 8);
}
