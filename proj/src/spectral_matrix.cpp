#include "wedge/spectral_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace wedge {

const char* case_name(CaseTag c) {
    switch (c) {
        case CaseTag::i: return "i";
        case CaseTag::ii: return "ii";
        default: return "iii";
    }
}

cplx zeta_branch(cplx k0, cplx eta) { return std::sqrt(eta * eta - k0 * k0); }

cplx seg_sqrt(cplx e, cplx a, cplx b) {
    cplx m = 0.5 * (a + b), h = 0.5 * (b - a), u = e - m;
    if (u == cplx{}) return I * h;
    cplx q = h / u;
    return u * std::sqrt(1.0 - q * q);
}

cplx seg_sqrt_off(cplx da, cplx db) {
    cplx u = 0.5 * (da + db);
    if (u == cplx{}) return 0.5 * I * (da - db);
    return u * std::sqrt(da * db / (u * u));
}

// ---------------------------------------------------------------- A, B, G

void eval_AB(const WedgeProblem& p, cplx e, cplx z, Mat2& A, Mat2& B) {
    const cplx cb = p.cb;
    auto dp = [&](int j, cplx x, cplx zz) -> cplx {
        switch (j) {
            case 1: return p.g1p + I * zz;
            case 4: return p.g4p + I * zz;
            default: return x * cb;
        }
    };
    auto dm = [&](int j, cplx x, cplx zz) -> cplx {
        switch (j) {
            case 1: return (p.g1m + x) / (2.0 * x);
            case 4: return (p.g4m + x) / (2.0 * x);
            default: return I * zz * cb / (2.0 * x);
        }
    };
    // zeta is even in eta, so d_{j+}(-eta) uses the same zeta value
    A(0, 0) = dp(1, e, z) * (1.0 - dm(1, e, z)) - dm(2, e, z) * dp(3, e, z);
    A(0, 1) = -dp(2, e, z) * (1.0 - dm(1, e, z)) - dm(2, e, z) * dp(4, e, z);
    A(1, 0) = dp(3, e, z) * (1.0 - dm(4, e, z)) + dm(3, e, z) * dp(1, e, z);
    A(1, 1) = dp(4, e, z) * (1.0 - dm(4, e, z)) - dm(3, e, z) * dp(2, e, z);
    B(0, 0) = dm(1, e, z) * dp(1, -e, z) + dm(2, e, z) * dp(3, -e, z);
    B(0, 1) = -dm(1, e, z) * dp(2, -e, z) + dm(2, e, z) * dp(4, -e, z);
    B(1, 0) = -dm(3, e, z) * dp(1, -e, z) + dm(4, e, z) * dp(3, -e, z);
    B(1, 1) = dm(3, e, z) * dp(2, -e, z) + dm(4, e, z) * dp(4, -e, z);
}

Mat2 eval_G_branch(const WedgeProblem& p, cplx eta, cplx zeta) {
    Mat2 A, B;
    eval_AB(p, eta, zeta, A, B);
    cplx det = A.determinant();
    if (std::abs(det) < 1e-300) throw std::domain_error("A(eta) is singular");
    return -A.inverse() * B;
}

Mat2 eval_G(const WedgeProblem& p, cplx eta) { return eval_G_branch(p, eta, zeta_branch(p.k0, eta)); }

cplx eval_delta1(const WedgeProblem& p, cplx eta, cplx z) {
    return (p.g1p + I * z) * (p.g4p + I * z) + eta * eta * p.cb * p.cb;
}

Mat2 eval_G1(const StructuralData& s, cplx eta) {
    Mat2 M;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) M(i, j) = s.g1[i][j](eta);
    return M;
}

Mat2 eval_Q(const StructuralData& s, cplx eta) {
    Mat2 Q;
    cplx l = s.l(eta);
    Q << l, s.m(eta), s.n(eta), -l;
    return Q;
}

cplx eval_Delta(const WedgeProblem&, const StructuralData& s, cplx eta) {
    return s.delta0(eta) * s.delta0(-eta) / (s.delta_star * s.delta_star * s.d1(eta));
}

cplx RhoSplit::plus(cplx e) const {
    return seg_sqrt(e, -tau_[0], -tau_[1]) / seg_sqrt(e, -t_[0], -t_[1]);
}

cplx RhoSplit::minus(cplx e) const { return seg_sqrt(e, t_[0], t_[1]) / seg_sqrt(e, tau_[0], tau_[1]); }

std::pair<cplx, cplx> eval_b0c0(const WedgeProblem& p, const StructuralData& s, const RhoSplit& rho, cplx eta) {
    cplx z = zeta_branch(p.k0, eta);
    cplx d1 = s.d1(eta), dl1 = eval_delta1(p, eta, z);
    cplx b = z / (s.delta_star * dl1) * (1.0 + s.r(eta) / (z * d1));
    cplx c = I * s.gamma_hat * eta * p.cb / (s.delta_star * dl1 * d1);
    cplx sq = rho.plus(eta) / rho.minus(eta);
    return {b / sq, c / sq};
}

Mat2 eval_Gamma(const WedgeProblem& p, const StructuralData& s, const RhoSplit& rho, cplx eta) {
    auto [b0, c0] = eval_b0c0(p, s, rho, eta);
    return b0 * Mat2::Identity() + c0 * eval_Q(s, eta);
}

// ---------------------------------------------------------------- closed forms

Poly m_closed_form(const WedgeProblem& p, cplx /*g1p*/, cplx g4p, cplx g1m, cplx g4m) {
    const cplx k2 = p.k0 * p.k0;
    const double c2b = std::cos(2 * p.beta), c4b = std::cos(4 * p.beta);
    Poly t;
    t.c.assign(5, cplx{});
    t.c[4] += -0.75;
    t.c[3] += g1m - g4m;
    t.c[1] += 2.0 * (g1m - g4m) * (g4p * g4p - k2);
    t.c[0] += (g4p * g4p - k2) * (2.0 * g1m * g4m + k2);
    t.c[2] += 0.75 * (4.0 * g1m * g4m - 4.0 * g4p * g4p + k2);
    t.c[4] += -0.25 * c4b;
    t.c[2] += 0.25 * k2 * c4b;
    t.c[4] += c2b;
    t.c[3] += -(g1m - g4m) * c2b;
    t.c[2] += (g1m * g4m - g4p * g4p - k2) * c2b;
    t.c[0] += k2 * (g4p * g4p - k2) * c2b;
    return t;
}

std::array<cplx, 5> h_coefficients(const WedgeProblem& p) {
    const cplx k2 = p.k0 * p.k0, g1p = p.g1p, g4p = p.g4p, g1m = p.g1m, g4m = p.g4m;
    const double cb = p.cb, sb = p.sb, c2b = std::cos(2 * p.beta);
    const double cb2 = cb * cb, sb2 = sb * sb, sb4 = sb2 * sb2;
    cplx u1 = g1p * g1p - k2, u2 = g4p * g4p - k2, u3 = g1m * g4m + k2 * cb2;
    cplx u4p = g1p * g1p + g4p * g4p, u4m = g1m * g1m + g4m * g4m;
    std::array<cplx, 5> h;
    h[0] = -4.0 * u1 * u2 * u3 * u3;
    h[4] = -4.0 * sb4 * sb4;
    cplx q = 2.0 * g1m * g4m - 3.0 * k2 + k2 * c2b;
    h[1] = 4.0 * (g1m - g4m) * (g1m - g4m) * u1 * u2 + (g1p - g4p) * (g1p - g4p) * q * q * cb2 -
           2.0 * u3 *
               (u2 * ((g1m * g4m - g1p * g1p) * (c2b + 3) + 2.0 * k2 * sb4) +
                u1 * ((g1m * g4m - g4p * g4p) * (c2b + 3) + 2.0 * k2 * sb4));
    h[2] = 4.0 * u4p * u4m + 8.0 * (g1m * g4m * u4p + g1p * g4p * u4m) * cb2 +
           8.0 * g1m * g1p * g4m * g4p * cb2 * (c2b - 3) -
           ((g1m * g4m) * (g1m * g4m) + (g1p * g4p) * (g1p * g4p)) * (c2b + 3) * (c2b + 3) +
           2.0 * k2 * sb2 *
               (-u4p * (3 * c2b + 1) + 2.0 * cb2 * (-2.0 * g1p * g4p * (c2b - 3) + g1m * g4m * (c2b + 3)) -
                4.0 * u4m - 2.0 * k2 * sb2 * (1 + cb2 * cb2));
    h[3] = 4.0 * sb4 * (u4m - u4p + 2.0 * (g1m * g4m - g1p * g4p) * cb2 + 2.0 * k2 * sb4);
    return h;
}

std::array<cplx, 2> delta0_zeros_closed(const WedgeProblem& p) {
    const double sb2 = p.sb * p.sb, cb2 = p.cb * p.cb;
    cplx D = (p.g1m - p.g4m) * (p.g1m - p.g4m) + 4.0 * (p.g1m * p.g4m - p.k0 * p.k0 * sb2) * cb2;
    cplx sq = std::sqrt(D);
    return {(p.g1m + p.g4m + sq) / (2 * sb2), (p.g1m + p.g4m - sq) / (2 * sb2)};
}

namespace {

struct ClosedForms {
    Poly delta0, delta0_hat, d1, l, m, n, r;
    std::array<std::array<Poly, 2>, 2> g1;
};

ClosedForms closed_forms(const WedgeProblem& p) {
    ClosedForms c;
    const cplx k0 = p.k0, k2 = k0 * k0, g1p = p.g1p, g4p = p.g4p, g1m = p.g1m, g4m = p.g4m;
    const double cb = p.cb, sb = p.sb, cb2 = cb * cb, sb2 = sb * sb;
    const double c2b = std::cos(2 * p.beta), c4b = std::cos(4 * p.beta);
    const cplx gam = g1p + g4p;
    c.delta0 = Poly{-k2 * cb2 - g1m * g4m, g1m + g4m, cb2 - 1};
    c.delta0_hat = Poly{-k2 * cb2 - g1p * g4p, g1p + g4p, cb2 - 1};
    c.g1[0][0] = -I * gam * Poly{k2 * cb2 + g1m * g4m, -(g1m - g4m), -sb2};
    c.g1[1][1] = -I * gam * Poly{k2 * cb2 + g1m * g4m, g1m - g4m, -sb2};
    c.g1[0][1] = Poly{0.0, -2.0 * I * cb * (g1m * g4m - g4p * g4p - k2 * sb2), 0.0};
    c.g1[1][0] = Poly{0.0, 2.0 * I * cb * (g1m * g4m - g1p * g1p - k2 * sb2), 0.0};
    cplx al0 = -gam * gam * (g1m * g4m + k2 * cb2) * (g1m * g4m + k2 * cb2);
    cplx al2 = -gam * gam * sb2 * sb2;
    cplx al1 = gam * gam * (g1m * g1m + g4m * g4m - 2.0 * k2 * cb2 * cb2) +
               (-4.0 * (g1m * g4m) * (g1m * g4m) - (2.0 * g1p * g4p - k2) * (2.0 * g1p * g4p - k2) +
                2.0 * g1m * g4m * ((g1p - g4p) * (g1p - g4p) + 2.0 * k2) +
                2.0 * k2 * (g1p * g1p - 2.0 * g1m * g4m + g4p * g4p + k2) * c2b - k2 * k2 * c2b * c2b) *
                   cb2;
    c.d1 = Poly{al0, 0.0, al1, 0.0, al2};
    Poly e{0.0, 1.0}, e2{0.0, 0.0, 1.0}, ek{-k2, 0.0, 1.0};
    c.l = cplx(cb) * e *
          ((g1p - g4p) * e2 + cplx(-2.0) * (g1m - g4m) * gam * e + Poly{(g1p - g4p) * (2.0 * g1m * g4m - 3.0 * k2)} +
           cplx(-(g1p - g4p) * c2b) * ek);
    c.m = m_closed_form(p, g1p, g4p, g1m, g4m);
    c.n = cplx(-1.0) * m_closed_form(p, g4p, g1p, g4m, g1m);
    Poly A1{2.0 * (g1p * g4p + k2), 0.0, -1.0 + c2b};
    Poly B1 = Poly{8.0 * g1m * g1m * g4m * g4m + 8.0 * g1m * g4m * k2 + 3.0 * k2 * k2, 0.0,
                   -8.0 * g1m * g1m - 8.0 * g1m * g4m - 8.0 * g4m * g4m + 2.0 * k2, 0.0, 3.0} +
              cplx(-4.0 * c2b) * (ek * Poly{2.0 * g1m * g4m + k2, 0.0, 1.0}) + cplx(c4b) * (ek * ek);
    c.r = (I / 16.0 * gam) * (A1 * B1);
    return c;
}

// Polynomial of degree <= deg through samples on a circle (discrete Fourier fit).
Poly fit_circle(const std::vector<cplx>& pts, const std::vector<cplx>& vals, int deg) {
    int M = (int)pts.size();
    Poly p;
    p.c.assign(deg + 1, cplx{});
    for (int j = 0; j <= deg; ++j) {
        cplx s{};
        for (int k = 0; k < M; ++k) s += vals[k] * std::pow(pts[k], -j);
        p.c[j] = s / double(M);
    }
    return p;
}

}  // namespace

StructuralData build_structural(const WedgeProblem& p) {
    StructuralData s;
    ClosedForms cf = closed_forms(p);
    s.delta0 = cf.delta0;
    s.delta0_hat = cf.delta0_hat;
    s.g1 = cf.g1;
    s.d1 = cf.d1;
    s.l = cf.l;
    s.m = cf.m;
    s.n = cf.n;
    s.r = cf.r;
    s.delta_star = -I / (p.g1p + p.g4p);
    s.gamma_hat = p.g1m * p.g4m + p.g1p * p.g4p - p.k0 * p.k0 * p.sb * p.sb;
    s.f = s.l * s.l + s.m * s.n;

    // closed-form f from its h coefficients
    auto h = h_coefficients(p);
    Poly fh;
    fh.c.assign(9, cplx{});
    for (int j = 0; j < 5; ++j) fh.c[2 * j] = h[j];
    s.check_h = poly_rel_diff(fh, s.f);

    // brute force from A, B: G1 from the two zeta branches, then R = r I + i gamma_hat eta cb Q
    double R = 1.3 * std::max({std::abs(p.k0), std::abs(p.g1p), std::abs(p.g4p), std::abs(p.g1m),
                               std::abs(p.g4m), 1.0});
    const int M = 48;
    std::vector<cplx> pts(M);
    std::array<std::array<std::vector<cplx>, 2>, 2> g1v, Rv;
    for (int k = 0; k < M; ++k) pts[k] = R * std::exp(I * (2 * PI * (k + 0.37) / M));
    std::vector<cplx> d1v(M);
    for (int k = 0; k < M; ++k) {
        cplx e = pts[k], z = zeta_branch(p.k0, e);
        Mat2 Gp = eval_G_branch(p, e, z), Gm = eval_G_branch(p, e, -z);
        cplx fp = cf.delta0(e) * eval_delta1(p, e, z), fm = cf.delta0(e) * eval_delta1(p, e, -z);
        Mat2 G1 = (fp * Gp - fm * Gm) / (2.0 * z);
        Mat2 Rm = G1.determinant() * (fp * G1.inverse() * Gp - z * Mat2::Identity());
        d1v[k] = G1.determinant();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                g1v[i][j].push_back(G1(i, j));
                Rv[i][j].push_back(Rm(i, j));
            }
    }
    s.check_g1 = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            s.check_g1 = std::max(s.check_g1, poly_rel_diff(fit_circle(pts, g1v[i][j], 2), cf.g1[i][j]));
    s.check_d1 = std::max(poly_rel_diff(fit_circle(pts, d1v, 4), cf.d1),
                          poly_rel_diff(cf.g1[0][0] * cf.g1[1][1] - cf.g1[0][1] * cf.g1[1][0], cf.d1));
    std::vector<cplx> rv(M), lv(M), mv(M), nv(M);
    for (int k = 0; k < M; ++k) rv[k] = 0.5 * (Rv[0][0][k] + Rv[1][1][k]);
    double rscale = s.r.max_abs();
    s.check_lmnr = poly_rel_diff(fit_circle(pts, rv, 6), s.r);
    if (std::abs(p.cb) > 1e-6) {
        for (int k = 0; k < M; ++k) {
            cplx sc = I * s.gamma_hat * pts[k] * p.cb;
            lv[k] = 0.5 * (Rv[0][0][k] - Rv[1][1][k]) / sc;
            mv[k] = Rv[0][1][k] / sc;
            nv[k] = Rv[1][0][k] / sc;
        }
        s.check_lmnr = std::max({s.check_lmnr, poly_rel_diff(fit_circle(pts, lv, 4), s.l),
                                 poly_rel_diff(fit_circle(pts, mv, 4), s.m),
                                 poly_rel_diff(fit_circle(pts, nv, 4), s.n)});
    }
    (void)rscale;
    s.check_f = s.check_h;
    const double tol = 1e-8;
    if (s.check_g1 > tol || s.check_d1 > tol || s.check_lmnr > tol || s.check_h > tol)
        throw ConsistencyError("closed-form and brute-force structural polynomials disagree");

    // zeros and case classification
    auto z0 = poly_roots(s.delta0);
    if (z0.size() != 2) throw ConsistencyError("delta0 is not quadratic");
    double band = 1e-9 * std::abs(p.k0);
    s.n_upper = 0;
    for (int j = 0; j < 2; ++j) {
        s.eta_roots[j] = z0[j];
        if (std::abs(z0[j].imag()) < band) throw std::domain_error("zero of delta0 on the real axis");
        if (z0[j].imag() > 0) ++s.n_upper;
        s.tau[j] = z0[j].imag() > 0 ? z0[j] : -z0[j];
    }
    s.kappa1 = z0[0].imag() < 0 ? 1 : 0;
    s.kappa2 = z0[1].imag() < 0 ? 1 : 0;
    s.kappa = s.kappa1 + s.kappa2 - 1;
    s.case_tag = s.kappa == 1 ? CaseTag::i : (s.kappa == 0 ? CaseTag::ii : CaseTag::iii);
    auto zd = poly_roots(s.d1);
    int nt = 0;
    for (auto z : zd)
        if (z.imag() > 0 && nt < 2) s.t[nt++] = z;
    if (nt != 2) throw std::domain_error("d1 has zeros on the real axis");
    return s;
}

}  // namespace wedge
