#pragma once
// Residual and invariant checks over the whole pipeline, one row per check.
// Shared by the acceptance runner and the command-line front end.

#include <string>
#include <vector>

#include "wedge/oracle_normal.hpp"
#include "wedge/spectra.hpp"

namespace wedge {

struct CheckRow {
    std::string name;
    std::string ref;  // topic tag
    double residual = 0;
    double tol = 0;
    std::string note;
    bool pass() const { return residual <= tol; }  // NaN fails
};

struct Tolerances {
    double index = 0;
    double structural = 1e-9;
    double reflection_bc = 1e-9;
    double jacobi = 1e-6;
    double factorization = 1e-6;
    double kernel = 1e-7;
    double boundary = 1e-6;
    double symmetry = 1e-9;
    double decay = 1e-2;
    double residue = 1e-6;
    double identities = 1e-6;
    double oracle = 1e-8;
    double invariance = 1e-6;
    double elliptic = 1e-8;
    double additivity = 1e-10;
    // NAME=VALUE override; false if NAME is unknown
    bool set(const std::string& name, double v);
};

// kappa0 of each reference parameter set against its expected value
std::vector<CheckRow> index_checks(const Tolerances& t, const SurfaceConfig& scfg = {});

// polynomial and matrix identities on a 100-point real grid
std::vector<CheckRow> structural_checks(const WedgeProblem& p, const Tolerances& t);
CheckRow reflection_check(const WedgeProblem& p, const Tolerances& t);

// closure re-summed with independent quadrature, integrality, loop formulas
std::vector<CheckRow> jacobi_checks(const WedgeProblem& p, const Tolerances& t, const SurfaceConfig& scfg = {});

// Gamma = X+ (X-)^{-1} on 40 real points and the symmetry kernel identity at 10 points in C+
std::vector<CheckRow> factorization_checks(const WedgeProblem& p, const Tolerances& t,
                                           const SurfaceConfig& scfg = {});

// jump, symmetry and decay of the solution; constant counting
std::vector<CheckRow> rhp_checks(const RhpSolution& sol, const Tolerances& t);

// the six residue identities (no RHP solution needed)
CheckRow identity_check(const WedgeProblem& p, const Tolerances& t);
// residue of S at theta0 by contour
CheckRow residue_check(const Spectra& sp, const Tolerances& t);

// closed forms at beta = pi/2 against the full pipeline
std::vector<CheckRow> oracle_checks(const WedgeProblem& p, const Tolerances& t);

// D at ten angles across alternative seeds and compatibility point sets
std::vector<CheckRow> invariance_checks(const WedgeProblem& p, const Tolerances& t, const RhpConfig& base = {});

// elliptic round trips and quadrature additivity
std::vector<CheckRow> numerics_checks(const Tolerances& t);

// ten probe angles in (0, pi/2) avoiding the shadow boundary of p
std::vector<double> probe_angles(const WedgeProblem& p);

std::string format_row(const CheckRow& r);

}  // namespace wedge
