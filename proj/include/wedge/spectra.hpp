#pragma once
// Sommerfeld spectra S_1, S_2, the geometric-optics residue constants and the
// diffraction coefficients built from the solution of both vector problems.

#include <functional>
#include <memory>

#include "wedge/rhp_solver.hpp"

namespace wedge {

using SpecFn = std::function<Vec2(cplx)>;

// Residues of F_{j+} at pi/2 -+ theta0 (Lp, Mp) and of F_{j-} at theta0, pi - theta0 (Lm, Mm).
struct ResidueConstants {
    Vec2 C;
    Mat2 mu;       // G(eta0)^{-1}, zeta = -i etah0 (the branch met at s = theta0)
    Mat2 mu_far;   // the same with zeta = +i etah0 (met at s = pi - theta0)
    Vec2 Lp, Lm, Mp, Mm;
    // the six identities: Lm - (r- + i), Mm - (r+ + R+), Mp - (r- + R-)
    Vec2 res_Lm, res_Mm, res_Mp;
    double identity_residual() const;
};

// Closed forms in terms of G(eta0) and C = r+ + i; needs no RHP solution.
ResidueConstants residue_constants(const WedgeProblem& p);

// (e^{-i pi/4}/sqrt(2 pi)) [S(theta - pi) - S(theta + pi)], with S continued by its
// two functional equations; only F at real arguments is needed.
Vec2 diffraction_from_F(const SpecFn& Fp, const SpecFn& Fm, double theta);

struct SpectraConfig {
    double h = 0.1;       // trapezoid step in Im sigma
    double y_max = 14.0;  // truncation; the regularized kernels decay like exp(-2|y|)
    double pole_band = 0.5;  // kernel poles closer than this to the contour are subtracted
    double shadow_tol = 1e-4;
};

class Spectra {
public:
    Spectra(std::shared_ptr<const RhpSolution> sol, SpectraConfig cfg = {});

    const WedgeProblem& problem() const { return p_; }
    const RhpSolution& solution() const { return *sol_; }
    const ResidueConstants& constants() const { return rc_; }

    // i k0 sin s Phi+(k0 cos s) and i k0 sin s Phi_hat+(k0 cos s)
    Vec2 F_plus(cplx s) const;
    Vec2 F_minus(cplx s) const;
    // F_- from the boundary values of the first problem at k0 sin s; valid for
    // 0 < Re s <= pi/2 and near the real segment (0, pi)
    Vec2 F_minus_direct(cplx s) const;

    // Contour integrals along Re sigma = 0 with the cot/tan kernels regularized at
    // +-i infinity (this fixes the free additive constant of S).
    Vec2 S_axis(cplx s) const;
    // i_j [cot(s - theta0) - cot(s + theta0)]
    Vec2 S_poles(cplx s) const;
    // S anywhere in -pi < Re s < 3 pi/2
    Vec2 S(cplx s) const;

    Vec2 D(double theta) const;
    bool near_shadow(double theta) const;

private:
    std::shared_ptr<const RhpSolution> sol_;
    WedgeProblem p_;
    SpectraConfig cfg_;
    ResidueConstants rc_;
    std::vector<double> y_;
    std::vector<Vec2> Fm_axis_, Fp_axis_;
};

// Plane-wave and edge-wave asymptotics of (E_z, Z H_z) at (rho, theta).
struct FarFieldTerms {
    Vec2 incident, refl_plus, refl_minus, double_plus, double_minus, diffracted;
    Vec2 total() const { return incident + refl_plus + refl_minus + double_plus + double_minus + diffracted; }
    bool asymptotic_ok;  // k0 rho >= 20
};
FarFieldTerms far_field(const Spectra& sp, double rho, double theta);

double window(double theta, double a, double b);

struct DiffractionSample {
    double theta;
    Vec2 D;
    bool flagged;
};
// Parallel over the grid; serial_reference forces a single thread.
std::vector<DiffractionSample> diffraction_grid(const Spectra& sp, const std::vector<double>& theta,
                                                bool serial_reference = false);

}  // namespace wedge
