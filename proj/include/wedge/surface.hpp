#pragma once
// Genus-3 surface w^2 = f(eta): fixed branch of sqrt(f), the eigenvalue-ratio
// logarithm eps, the index kappa0, the elliptic reduction and the Jacobi inversion.

#include <array>
#include <optional>

#include "wedge/spectral_matrix.hpp"

namespace wedge {

class SurfaceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SurfaceConfig {
    QuadratureConfig quad{1e-12, 1e-15, 1e8, 4000, 4.0};
    std::optional<cplx> rho0, sigma0;
    int eps_linear_samples = 80000;
    int eps_geometric_samples = 30000;
};

// Polyline piece between cut crossings; sheet = +1 (C1) or -1 (C2).
struct SheetEdge {
    cplx a, b;
    int sheet;
};

struct SurfaceData {
    WedgeProblem p;
    StructuralData s;
    std::array<cplx, 4> a;  // 0 < Im a1 <= ... <= Im a4
    std::array<std::pair<cplx, cplx>, 4> cuts;
    cplx lead;  // 2i sin^4(beta)
    double scale = 1;

    // eps table on t >= 0, unwrapped from infinity
    std::vector<double> tg;
    std::vector<cplx> epsg, lg;
    int kappa0 = 0;
    double kappa0_raw = 0;

    // elliptic reduction: t* = T(tau) = (b1 + b2 tau)/(1 - mu tau)
    cplx kap, mu, b1, b2, C, h, K, Kp;
    cplx kap_star_sq_formula, kap_star_sq_check;
    cplx loop_a, loop_b;               // direct quadrature
    cplx loop_a_ell, loop_b_ell;       // h i K', -2 h K

    cplx sqrt_f(cplx e) const;
    // sqrt f(t) given the exact offset off = t - base, base a cut endpoint
    cplx sqrt_f_off(cplx t, cplx base, cplx off) const;
    // sqrt(f) on the left bank of cut ci (direction a -> b)
    cplx sqrt_f_left(cplx t, int ci) const;
    cplx lratio(cplx e) const;
    cplx eps(double t) const;  // odd in t
    cplx T(cplx tau) const { return (b1 + b2 * tau) / (1.0 - mu * tau); }
    cplx Tinv(cplx ts) const { return (ts - b1) / (b2 + ts * mu); }

    std::vector<SheetEdge> split(const std::vector<cplx>& verts, int sheet0, int* sheet_end = nullptr) const;
    // int g(t, xi) dt along a polyline, xi = sheet * sqrt f(t)
    cplx path_int(const std::vector<cplx>& verts, const std::function<cplx(cplx, cplx)>& g, int sheet0 = 1,
                  bool sing_start = false, bool sing_end = false, const QuadratureConfig& q = {}) const;
    // 2 int_{a1}^{a2} g(t, xi_left) dt (the a+ loop)
    cplx loop_a_int(const std::function<cplx(cplx, cplx)>& g, const QuadratureConfig& q = {}) const;
    // 2 int_{a2}^{a3} g on sheet 1 (the b+ loop, contracted)
    cplx loop_b_int(const std::function<cplx(cplx, cplx)>& g, const QuadratureConfig& q = {}) const;
};

struct JacobiSolution {
    cplx rho0, sigma0, sigma0_hat, u0, d_hat, sigma1;
    int sheet = 1;
    int m0 = 0, n0 = 0;
    double m0_raw = 0, n0_raw = 0;
    cplx E, Jpath;  // eps term (with the kappa0 rho0 term) and the p0 -> p1 integral
    double closure = 0;
    double homography_check = 0, w0_check = 0;
    std::vector<cplx> path;      // polyline p0 -> p1 on the surface (starts on sheet 1)
    std::vector<cplx> rho_path;  // 0 -> rho0, ending on sheet 1
    int kappa_choice = 0, c_sign = 1;
};

SurfaceData build_surface(const WedgeProblem& p, const StructuralData& s, const SurfaceConfig& cfg = {});
void compute_epsilon_kappa0(SurfaceData& S, const SurfaceConfig& cfg = {});
// Homography, h, K, K' for one root choice of kappa and one sign of C.
void elliptic_reduction(SurfaceData& S, int kappa_choice = 0, int c_sign = 1);
JacobiSolution jacobi_inversion(SurfaceData& S, const SurfaceConfig& cfg = {});

// Polyline z0 -> z1 (starting on sheet 1) that ends on `sheet` (1 or 2) and keeps clear of branch points.
std::vector<cplx> route_path(const SurfaceData& S, cplx z0, cplx z1, int sheet);

// Default reference points, moved off the exclusion set.
cplx default_rho0(const SurfaceData& S);
cplx default_sigma0(const SurfaceData& S);

}  // namespace wedge
