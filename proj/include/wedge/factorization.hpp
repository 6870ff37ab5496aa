#pragma once
// Wiener-Hopf factors X(eta) = exp(psi1) [cosh(w psi2) I + sinh(w psi2)/w Q] of Gamma.

#include <memory>

#include "wedge/surface.hpp"

namespace wedge {

struct FactorConfig {
    QuadratureConfig quad{1e-12, 1e-15, 1e8, 4000, 3.0};
    double r_switch_factor = 4.0;  // large-eta form beyond r_switch_factor * max(|a4|, |k0|)
};

// side = 0 for eta off the real axis, +1/-1 for boundary values from C+/C-.
class FactorData {
public:
    FactorData(std::shared_ptr<const SurfaceData> S, JacobiSolution J, FactorConfig cfg = {});

    const SurfaceData& surface() const { return *S_; }
    const JacobiSolution& jacobi() const { return J_; }
    double r_switch() const { return r_switch_; }

    cplx psi1(cplx eta) const;
    // near-field form and large-eta form (weights t and t^3/eta^2)
    cplx psi2_near(cplx eta, int side = 0) const;
    cplx psi2_far(cplx eta, int side = 0) const;
    cplx psi2(cplx eta, int side = 0) const;
    Mat2 X(cplx eta, int side = 0) const;
    Mat2 X_inv(cplx eta, int side = 0) const;
    // X+ on C+ and the real axis (side +1), X- on C- and the real axis (side -1)
    Mat2 X_plus(cplx eta) const { return X(eta, eta.imag() == 0 ? 1 : 0); }
    Mat2 X_minus(cplx eta) const { return X(eta, eta.imag() == 0 ? -1 : 0); }

private:
    // (1/2 pi i) int_0^inf eps(t) t^{2k+1} / (sqrt f(t) (t^2 - eta^2)) dt
    cplx eps_term(cplx eta, int k, int side) const;
    cplx surface_terms(cplx eta, int k) const;

    std::shared_ptr<const SurfaceData> S_;
    JacobiSolution J_;
    FactorConfig cfg_;
    double r_switch_;
};

struct Pipeline1 {
    WedgeProblem p;
    std::shared_ptr<const SurfaceData> surf;
    JacobiSolution jac;
    std::shared_ptr<const FactorData> fac;
};

// Structural data, surface, Jacobi inversion and factors in one call.
Pipeline1 build_factorization(const WedgeProblem& p, const SurfaceConfig& scfg = {}, const FactorConfig& fcfg = {});

// max over the grid of |Gamma - X+ (X-)^{-1}| / |Gamma|
double factorization_residual(const WedgeProblem& p, const FactorData& fac, const std::vector<double>& grid);
// same for the full splitting G = delta* rho+/(rho- delta0) G1 X+ (X-)^{-1}
double splitting_residual(const WedgeProblem& p, const FactorData& fac, const std::vector<double>& grid);

enum class PointBehavior { PoleOfX, PoleOfXinv, Regular };
struct ExceptionalDescriptor {
    cplx point;
    PointBehavior behavior;
    double exponent_X, exponent_Xinv;  // log-log slopes of |X|, |X^{-1}| along an approach sequence
    Mat2 Y;                            // (I + Q/w)/2 at the point
};
ExceptionalDescriptor exceptional_behavior(const FactorData& fac, cplx point, cplx w);

}  // namespace wedge
