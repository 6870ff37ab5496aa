#pragma once
// Closed-form solution at normal incidence (beta = pi/2), where both vector
// problems decouple into scalar ones with rational coefficients.

#include <string>
#include <vector>

#include "wedge/problem.hpp"
#include "wedge/spectra.hpp"

namespace wedge {

struct NormalOracle {
    WedgeProblem p;
    Vec2 gm, gp;  // gamma_{j-}, gamma_{j+}: (gamma_1^-, gamma_4^-), (gamma_1^+, gamma_4^+)
    Vec2 D;       // free constant of each scalar problem, fixed by the residue at eta0
    Vec2 D0, D1, D0hat, D1hat;
    Vec2 C;
    Vec2 mu;  // diagonal of G(eta0)^{-1}
    Vec2 Lp, Lm, Mp, Mm;
    Vec2 r_plus, r_minus, R;

    Vec2 Phi_plus(cplx eta) const;
    Vec2 Phi_minus(cplx eta) const;
    Vec2 Phi_hat_plus(cplx eta) const;
    Vec2 Phi_hat_minus(cplx eta) const;
    // before the compatibility constants are tied together: D0 + D1 eta^2 over (eta^2 - eta0^2)(gamma_- -+ eta)
    Vec2 Phi_plus_raw(cplx eta) const;
    Vec2 F_plus(cplx s) const;   // i k0 sin s Phi+(k0 cos s)
    Vec2 F_minus(cplx s) const;  // i k0 sin s Phi_hat+(k0 cos s)
    Vec2 diffraction(double theta) const;
};

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

NormalOracle build_oracle(const WedgeProblem& p);

// max relative residual of the scalar jump conditions of both problems on a real grid
double oracle_jump_residual(const NormalOracle& o, int n = 41);
// the six residue identities (Lambda_-, M_-, M_+ against the reflection set)
double oracle_identity_residual(const NormalOracle& o);

struct OracleRow {
    std::string name;
    double residual;  // max relative deviation
};

// Entrywise comparison of a pipeline run at beta = pi/2 with the closed forms.
std::vector<OracleRow> oracle_compare(const NormalOracle& o, const Spectra& sp);

}  // namespace wedge
