#pragma once
// Complex-analysis toolbox: polynomials, adaptive contour quadrature,
// complete/incomplete elliptic integrals, Jacobi elliptic functions and
// phase unwrapping.

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wedge {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};
inline constexpr double PI = 3.14159265358979323846;

using CFun = std::function<cplx(cplx)>;

// ---------------------------------------------------------------- polynomials

struct Poly {
    std::vector<cplx> c;  // ascending degree

    Poly() = default;
    Poly(std::initializer_list<cplx> l) : c(l) {}
    explicit Poly(std::vector<cplx> v) : c(std::move(v)) {}

    int degree() const { return static_cast<int>(c.size()) - 1; }
    cplx operator()(cplx x) const;
    cplx coeff(int k) const { return k >= 0 && k < (int)c.size() ? c[k] : cplx{}; }
    Poly reflected() const;  // p(-x)
    Poly trimmed(double rel = 0.0) const;
    double max_abs() const;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(cplx s, const Poly& a);
Poly poly_from_roots(const std::vector<cplx>& roots);

// Max coefficient difference relative to the larger coefficient scale.
double poly_rel_diff(const Poly& a, const Poly& b);

// All roots (with multiplicity), companion-matrix eigenvalues polished by Newton.
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs);
inline std::vector<cplx> poly_roots(const Poly& p) { return poly_roots(p.c); }

// ---------------------------------------------------------------- quadrature

struct QuadratureConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-15;
    double truncation_radius = 1e8;
    int max_subdivisions = 4000;
    double tail_exponent = 4.0;  // algebraic decay assumed for ray tails
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& msg, cplx a, cplx b, double err)
        : std::runtime_error(msg), worst_a(a), worst_b(b), worst_err(err) {}
    cplx worst_a, worst_b;
    double worst_err;
};

struct ComplexPath {
    enum class Kind { RealRay, ImagSegment, Segment, Loop };
    std::vector<cplx> samples;
    Kind kind = Kind::Segment;
};

struct QuadResult {
    cplx value;
    double error;
    int evaluations;
};

// Adaptive Gauss-Kronrod (7/15) on the straight segment a -> b.
QuadResult integrate_segment_ex(const CFun& f, cplx a, cplx b, const QuadratureConfig& cfg = {});
cplx integrate_segment(const CFun& f, cplx a, cplx b, const QuadratureConfig& cfg = {});

// Segment whose integrand has inverse square-root behaviour at the marked ends.
cplx integrate_segment_sing(const CFun& f, cplx a, cplx b, bool sing_a, bool sing_b,
                            const QuadratureConfig& cfg = {});

// Ray a + dir * [0, inf), |dir| = 1; truncated when the tail bound |f(R)| R/(p-1)
// drops under abs_tol or at cfg.truncation_radius.
cplx integrate_ray(const CFun& f, cplx a, cplx dir, const QuadratureConfig& cfg = {});

// Polyline through path.samples (or a ray for RealRay with two samples: start, direction).
cplx integrate_path(const CFun& f, const ComplexPath& path, const QuadratureConfig& cfg = {});

// ---------------------------------------------------------------- elliptic

cplx agm(cplx a, cplx b);
// K(k) = int_0^1 dt / sqrt((1-t^2)(1-k^2 t^2)).
cplx complete_elliptic_K(cplx k);
// K'(k) = K(sqrt(1-k^2)).
cplx complete_elliptic_Kp(cplx k);
// int_0^z dt / v(t), v continuous along the straight segment with v(0) = 1.
cplx elliptic_integral_to(cplx z, cplx k, const QuadratureConfig& cfg = {});
// F(phi, k) = int_0^{sin phi} dt / v(t).
cplx incomplete_elliptic_F(cplx phi, cplx k, const QuadratureConfig& cfg = {});

struct SnCnDn {
    cplx sn, cn, dn;
};

class JacobiElliptic {
public:
    explicit JacobiElliptic(cplx k);
    SnCnDn operator()(cplx u) const;
    cplx sn(cplx u) const { return (*this)(u).sn; }
    cplx K() const { return K_; }
    cplx Kp() const { return Kp_; }
    cplx modulus() const { return k_; }

private:
    SnCnDn landen(cplx u) const;
    cplx k_, K_, Kp_;
    std::vector<cplx> a_, c_;
};

inline cplx jacobi_sn(cplx u, cplx k) { return JacobiElliptic(k).sn(u); }

// ---------------------------------------------------------------- phases

// Continuous argument along the samples; the first value is the principal argument.
std::vector<double> unwrap_phase(const std::vector<cplx>& values);

// Unwraps arg g(t) over [t0, t1] starting from t0, bisecting any step whose
// jump exceeds pi/2. Returns the total increment.
double unwrap_increment(const std::function<cplx(double)>& g, double t0, double t1, int n0 = 256,
                        int max_depth = 40);

}  // namespace wedge
