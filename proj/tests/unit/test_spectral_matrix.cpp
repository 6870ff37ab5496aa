#include "doctest.h"
#include "wedge/spectral_matrix.hpp"

using namespace wedge;

TEST_CASE("structural polynomials agree with the brute-force build") {
    for (auto& c : reference_cases()) {
        CAPTURE(c.name);
        auto p = reference_problem(c.name);
        auto s = build_structural(p);
        CHECK(s.check_g1 < 1e-10);
        CHECK(s.check_d1 < 1e-10);
        CHECK(s.check_lmnr < 1e-10);
        CHECK(s.check_h < 1e-10);
    }
}

TEST_CASE("delta0 zeros match the closed form") {
    for (auto& c : reference_cases()) {
        auto p = reference_problem(c.name);
        auto s = build_structural(p);
        auto z = delta0_zeros_closed(p);
        double e1 = std::abs(z[0] - s.eta_roots[0]) + std::abs(z[1] - s.eta_roots[1]);
        double e2 = std::abs(z[0] - s.eta_roots[1]) + std::abs(z[1] - s.eta_roots[0]);
        CHECK(std::min(e1, e2) < 1e-10);
    }
}

TEST_CASE("Gamma reproduces G after the scalar factor") {
    auto p = reference_problem("2a");
    auto s = build_structural(p);
    RhoSplit rho(s);
    for (double x : {-3.0, -0.7, 0.2, 1.5, 4.0}) {
        cplx e = x;
        Mat2 G = eval_G(p, e);
        Mat2 Gam = eval_Gamma(p, s, rho, e);
        Mat2 rec = s.delta_star * rho.plus(e) / rho.minus(e) / s.delta0(e) * eval_G1(s, e) * Gam;
        CHECK((rec - G).norm() / G.norm() < 1e-11);
        // rho+/rho- is a square root of Delta
        cplx q = rho.plus(e) / rho.minus(e);
        CHECK(std::abs(q * q - eval_Delta(p, s, e)) / std::abs(q * q) < 1e-11);
    }
}
