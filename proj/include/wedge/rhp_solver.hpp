#pragma once
// Vector RHPs 1 and 2: rational vector R = P/Den, symmetry and pole-removal
// conditions, the compatibility system linking both problems, and the
// geometric-optics residue conditions.

#include <Eigen/Dense>
#include <limits>

#include "wedge/factorization.hpp"

namespace wedge {

using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

class RhpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RhpConfig {
    SurfaceConfig surface;
    FactorConfig factor;
    double rank_tol = 1e-9;
    // compatibility sample points (C+); empty -> default set
    std::vector<cplx> compat_points;
    int compat_shift = 0;  // selects an alternative default point set
};

struct RationalVectorSpec {
    CaseTag case_tag = CaseTag::i;
    int kappa = 1, kappa0 = 0, nplus = 0;
    int degree = 5;                   // of P1, P2
    std::vector<cplx> denominator;    // roots of Den
    bool normal_incidence = false;
};

// One RHP (the problem or its face-swapped image).
class RhpSystem {
public:
    RhpSystem(const WedgeProblem& p, const RhpConfig& cfg);

    const WedgeProblem& problem() const { return p_; }
    const StructuralData& structural() const { return s_; }
    const RationalVectorSpec& spec() const { return spec_; }
    const FactorData* factors() const { return fac_.get(); }
    const Pipeline1* pipeline() const { return pipe_ ? &*pipe_ : nullptr; }
    int n_coeffs() const { return 2 * (spec_.degree + 1); }

    // Phi(eta) = map(eta) * c for the full coefficient vector c = (a_0..a_N, b_0..b_N)
    MatX plus_map(cplx eta, int side = 0) const;   // native for Im eta >= 0
    MatX minus_map(cplx eta, int side = 0) const;  // native for Im eta <= 0
    // residue of Phi+ at eta0 as a map
    MatX residue_map_eta0() const;

    MatX symmetry_rows() const;
    MatX removal_rows() const;
    const MatX& basis() const { return basis_; }  // columns span the solution space
    int nullity() const { return (int)basis_.cols(); }
    const Eigen::VectorXd& singular_values() const { return sv_; }

    cplx den(cplx e) const;
    Mat2 X(cplx e, int side) const;
    cplx rho_plus(cplx e) const;
    cplx rho_minus(cplx e) const;
    cplx Dplus(cplx e) const;
    cplx Dminus(cplx e) const;

private:
    MatX pvec_map(cplx e) const;

    WedgeProblem p_;
    StructuralData s_;
    RationalVectorSpec spec_;
    std::optional<Pipeline1> pipe_;
    std::shared_ptr<const FactorData> fac_;
    std::optional<RhoSplit> rho_;
    cplx nu_, t1_, t2_;
    std::vector<cplx> rplus_, rminus_;
    MatX basis_;
    Eigen::VectorXd sv_;
};

inline const cplx NaN_C{std::numeric_limits<double>::quiet_NaN(), 0.0};

enum class Which { plus, minus, hat_plus, hat_minus };

struct RhpSolution {
    std::shared_ptr<const RhpSystem> rhp1, rhp2;
    VecX c1, c2;  // full coefficient vectors
    Vec2 C;       // r+ + i
    int joint_nullity = 0;
    Eigen::VectorXd compat_sv;
    std::vector<cplx> compat_points;

    Vec2 eval(cplx eta, Which w) const;
    // continuation across the real axis uses G with the given zeta instead of the principal branch
    Vec2 eval(cplx eta, Which w, cplx zeta) const;
    // compatibility residual at a point (both sides of the linking relation)
    Vec2 compat_lhs(cplx eta) const;
    Vec2 compat_rhs(cplx eta) const;
};

// Phi+ of a system with coefficients c, continued to the whole plane through
// Phi+ = G Phi-.  zeta (if finite) fixes the branch of G off the real axis.
Vec2 eval_plus(const RhpSystem& r, const VecX& c, cplx eta, cplx zeta = NaN_C);
Vec2 eval_minus(const RhpSystem& r, const VecX& c, cplx eta, cplx zeta = NaN_C);

std::vector<cplx> default_compat_points(const WedgeProblem& p, int count, int shift = 0);

RhpSolution solve_rhp(const WedgeProblem& p, const RhpConfig& cfg = {});

// Residue of a vector function at z0 by a small circle (trapezoidal rule).
Vec2 circle_residue(const std::function<Vec2(cplx)>& f, cplx z0, double radius, int n = 64);

}  // namespace wedge
