#include "doctest.h"
#include "wedge/factorization.hpp"

using namespace wedge;

namespace {
std::vector<double> grid(double h, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(-h + 2 * h * (i + 0.37) / n);
    return g;
}

// mean of f over a small circle against f at the centre
double mean_value_error(const std::function<Mat2(cplx)>& f, cplx z0, double r) {
    const int n = 48;
    Mat2 m = Mat2::Zero();
    for (int j = 0; j < n; ++j) m += f(z0 + r * std::exp(I * (2 * PI * j / n)));
    m /= double(n);
    Mat2 c = f(z0);
    return (m - c).norm() / c.norm();
}
}  // namespace

TEST_CASE("Gamma splits into X+ (X-)^-1 on the real line") {
    for (const char* name : {"2a", "2d", "3b"}) {
        CAPTURE(name);
        auto p = reference_problem(name);
        auto pl = build_factorization(p);
        CHECK(factorization_residual(p, *pl.fac, grid(4, 25)) < 1e-9);
        CHECK(splitting_residual(p, *pl.fac, grid(4, 25)) < 1e-9);
    }
}

TEST_CASE("X is analytic off the real axis") {
    auto pl = build_factorization(reference_problem("3a"));
    auto X = [&](cplx e) { return pl.fac->X(e); };
    // X may be singular at the Jacobi points, so keep the circles away from them
    std::vector<cplx> avoid = {pl.jac.sigma0, pl.jac.sigma1, pl.jac.rho0, pl.p.eta0, -pl.p.eta0};
    for (auto a : pl.surf->a) avoid.push_back(a);
    for (cplx z : {cplx(1.3, 0.8), cplx(-1.1, 0.4), cplx(0.5, -0.6), cplx(2.0, 1.5), cplx(-0.4, 2.0)}) {
        CAPTURE(z);
        for (auto a : avoid) REQUIRE(std::abs(z - a) > 0.2);
        CHECK(mean_value_error(X, z, 0.1) < 1e-10);
    }
}

TEST_CASE("near and far forms of psi2 agree where both apply") {
    auto pl = build_factorization(reference_problem("2b"));
    double r = pl.fac->r_switch();
    for (cplx e : {cplx(r, 0.3 * r), cplx(-1.2 * r, 0.5 * r), cplx(0.8 * r, -0.9 * r)})
        CHECK(std::abs(pl.fac->psi2_near(e) - pl.fac->psi2_far(e)) < 1e-9 * std::max(1.0, std::abs(pl.fac->psi2_far(e))));
}

TEST_CASE("X times its inverse") {
    auto pl = build_factorization(reference_problem("2d"));
    for (cplx e : {cplx(0.2, 0.7), cplx(-0.9, -0.4), cplx(1.7, 0.0)})
        CHECK((pl.fac->X(e, e.imag() == 0 ? 1 : 0) * pl.fac->X_inv(e, e.imag() == 0 ? 1 : 0) - Mat2::Identity()).norm() <
              1e-12);
}
