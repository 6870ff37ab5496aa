#pragma once
// Physical parameters of the right-angled impedance wedge and the
// geometric-optics reflection coefficients.

#include <optional>
#include <string>
#include <vector>

#include "wedge/numerics.hpp"

namespace wedge {

struct WedgeProblem {
    cplx k;      // wavenumber, Im k > 0
    double beta;  // skew angle
    double theta0;
    cplx g1p, g4p, g1m, g4m;  // gamma_1^+, gamma_4^+, gamma_1^-, gamma_4^-
    cplx i1 = 1.0, i2 = 0.0;
    // derived
    cplx k0, eta0, etah0;
    double cb = 0, sb = 1;
    std::string provenance;

    // Face/angle exchange: gamma^+ <-> gamma^-, beta -> pi - beta, theta0 -> pi/2 - theta0.
    WedgeProblem swapped() const;
    void derive();
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> msgs);
    std::vector<std::string> messages;
};

struct RawProblem {
    std::optional<cplx> k, k0;
    std::optional<double> beta, theta0;
    std::optional<cplx> g1p, g4p, g1m, g4m;
    std::optional<cplx> eta_rr_p, eta_zz_p, eta_rr_m, eta_zz_m;  // impedances (alternative input)
    cplx i1 = 1.0, i2 = 0.0;
};

WedgeProblem build_problem(const RawProblem& raw);

// Direct construction from k0.
WedgeProblem make_problem_k0(cplx k0, double beta, double theta0, cplx g1p, cplx g4p, cplx g1m, cplx g4m,
                             cplx i1 = 1.0, cplx i2 = 0.0);

struct Impedances {
    cplx eta_rr_p, eta_zz_p, eta_rr_m, eta_zz_m;
};
Impedances impedances_from_gammas(const WedgeProblem& p);

struct ReflectionSet {
    cplx r1p, r2p, r1m, r2m, R1p, R2p, R1m, R2m;
    cplx K1p, K1m, K2, K1hat_p, K1hat_m, K2hat;
    cplx Delta0, Delta0_hat;
};

ReflectionSet reflection_coefficients(const WedgeProblem& p);

// Incident and reflected plane waves substituted into the four face
// conditions; returns the max relative residual over `n` points per face.
double reflection_bc_residual(const WedgeProblem& p, const ReflectionSet& r, int n = 20, unsigned seed = 7);

// Eight reference parameter sets (k0 = 1 + 0.1i, beta = pi/4) with their expected index.
struct ReferenceCase {
    std::string name;
    cplx g1p, g4p, g1m, g4m;
    int kappa0_expected;
};
const std::vector<ReferenceCase>& reference_cases();
WedgeProblem reference_problem(const std::string& name, double theta0 = PI / 3, cplx i1 = 1.0, cplx i2 = 0.0);

}  // namespace wedge
