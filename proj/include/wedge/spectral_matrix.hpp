#pragma once
// Polynomial and matrix objects attached to the RHP coefficient G(eta).

#include <Eigen/Dense>
#include <array>

#include "wedge/numerics.hpp"
#include "wedge/problem.hpp"

namespace wedge {

using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CaseTag { i, ii, iii };
const char* case_name(CaseTag c);

struct StructuralData {
    Poly delta0, delta0_hat, d1, l, m, n, r, f;
    std::array<std::array<Poly, 2>, 2> g1;
    cplx delta_star, gamma_hat;
    std::array<cplx, 2> eta_roots;  // zeros of delta0
    std::array<cplx, 2> tau;        // zeros of delta0 reflected into the upper half-plane
    std::array<cplx, 2> t;          // zeros of d1 with Im > 0
    CaseTag case_tag = CaseTag::i;
    int kappa = 1, kappa1 = 1, kappa2 = 1;
    int n_upper = 0;  // zeros of delta0 in the upper half-plane
    // build-time cross-check residuals (closed form vs brute force)
    double check_g1 = 0, check_d1 = 0, check_lmnr = 0, check_f = 0, check_h = 0;
};

// zeta = sqrt(eta^2 - k0^2), zeta(0) = -i k0, Re zeta >= 0 on the real axis.
cplx zeta_branch(cplx k0, cplx eta);

StructuralData build_structural(const WedgeProblem& p);

// Closed-form pieces, exposed for tests.
Poly m_closed_form(const WedgeProblem& p, cplx g1p, cplx g4p, cplx g1m, cplx g4m);
std::array<cplx, 5> h_coefficients(const WedgeProblem& p);
std::array<cplx, 2> delta0_zeros_closed(const WedgeProblem& p);

void eval_AB(const WedgeProblem& p, cplx eta, cplx zeta, Mat2& A, Mat2& B);
Mat2 eval_G(const WedgeProblem& p, cplx eta);
Mat2 eval_G_branch(const WedgeProblem& p, cplx eta, cplx zeta);
Mat2 eval_G1(const StructuralData& s, cplx eta);
Mat2 eval_Q(const StructuralData& s, cplx eta);
cplx eval_delta1(const WedgeProblem& p, cplx eta, cplx zeta);
cplx eval_Delta(const WedgeProblem& p, const StructuralData& s, cplx eta);

// Factors of the scalar splitting: rho+ analytic in C+, rho- in C-, both -> 1 at infinity,
// rho+/rho- a fixed branch of sqrt(Delta).
class RhoSplit {
public:
    explicit RhoSplit(const StructuralData& s) : t_(s.t), tau_(s.tau) {}
    cplx plus(cplx eta) const;
    cplx minus(cplx eta) const;

private:
    std::array<cplx, 2> t_, tau_;
};

// sqrt with the cut on the straight segment a -> b: (e - m) sqrt(1 - (h/(e-m))^2).
cplx seg_sqrt(cplx e, cplx a, cplx b);
// same root from the offsets e - a and e - b (no cancellation next to an end)
cplx seg_sqrt_off(cplx da, cplx db);

// Gamma(eta) with sqrt(Delta) := rho+/rho-.
Mat2 eval_Gamma(const WedgeProblem& p, const StructuralData& s, const RhoSplit& rho, cplx eta);
// b0 and c0 of Gamma = b0 I + c0 Q.
std::pair<cplx, cplx> eval_b0c0(const WedgeProblem& p, const StructuralData& s, const RhoSplit& rho, cplx eta);

}  // namespace wedge
