#include "wedge/oracle_normal.hpp"

#include <cmath>

namespace wedge {

namespace {

double rel(const Vec2& a, const Vec2& b) {
    double s = std::max({std::abs(b(0)), std::abs(b(1)), 1e-300});
    return std::max(std::abs(a(0) - b(0)), std::abs(a(1) - b(1))) / s;
}

double rel(const Mat2& a, const Mat2& b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-300);
}

}  // namespace

NormalOracle build_oracle(const WedgeProblem& p) {
    if (std::abs(p.beta - PI / 2) > 1e-14) throw OracleError("the closed form needs beta = pi/2");
    NormalOracle o;
    o.p = p;
    o.gm = Vec2(p.g1m, p.g4m);
    o.gp = Vec2(p.g1p, p.g4p);
    const cplx e0 = p.eta0, eh = p.etah0;
    const Vec2 iv(p.i1, p.i2);
    for (int j = 0; j < 2; ++j) {
        cplx am = e0 + o.gm(j), ap = eh + o.gp(j);
        double scale = std::abs(e0) + std::abs(o.gm(j)) + std::abs(eh) + std::abs(o.gp(j));
        if (std::abs(am) < 1e-12 * scale || std::abs(ap) < 1e-12 * scale)
            throw OracleError("resonant denominator eta0 + gamma_- or etah0 + gamma_+");
        o.D(j) = 4.0 * I * e0 * eh * iv(j) / (am * ap);
        o.D0(j) = o.gm(j) * o.gm(j) * o.D(j);
        o.D1(j) = -o.D(j);
        o.D1hat(j) = -o.D0(j) / (o.gm(j) * o.gm(j));
        o.D0hat(j) = o.gp(j) * o.gp(j) * o.D0(j) / (o.gm(j) * o.gm(j));
        o.C(j) = -I * o.D(j) * am / (2.0 * e0);
        o.mu(j) = (o.gm(j) - e0) / am;
        o.Lp(j) = o.C(j);
        o.Lm(j) = 2.0 * e0 * iv(j) / am;
        o.Mm(j) = 2.0 * e0 * (eh - o.gp(j)) * iv(j) / (am * ap);
        o.Mp(j) = 2.0 * eh * (e0 - o.gm(j)) * iv(j) / (am * ap);
        o.r_plus(j) = (eh - o.gp(j)) / ap * iv(j);
        o.r_minus(j) = (e0 - o.gm(j)) / am * iv(j);
        o.R(j) = (eh - o.gp(j)) * (e0 - o.gm(j)) / (ap * am) * iv(j);
    }
    return o;
}

Vec2 NormalOracle::Phi_plus(cplx e) const { return D.cwiseProduct(gm + Vec2::Constant(e)) / (e * e - p.eta0 * p.eta0); }
Vec2 NormalOracle::Phi_minus(cplx e) const { return D.cwiseProduct(gm - Vec2::Constant(e)) / (e * e - p.eta0 * p.eta0); }
Vec2 NormalOracle::Phi_hat_plus(cplx e) const {
    return D.cwiseProduct(gp + Vec2::Constant(e)) / (e * e - p.etah0 * p.etah0);
}
Vec2 NormalOracle::Phi_hat_minus(cplx e) const {
    return D.cwiseProduct(gp - Vec2::Constant(e)) / (e * e - p.etah0 * p.etah0);
}

Vec2 NormalOracle::Phi_plus_raw(cplx e) const {
    Vec2 out;
    for (int j = 0; j < 2; ++j) out(j) = (D0(j) + D1(j) * e * e) / ((e * e - p.eta0 * p.eta0) * (gm(j) - e));
    return out;
}

Vec2 NormalOracle::F_plus(cplx s) const { return I * p.k0 * std::sin(s) * Phi_plus(p.k0 * std::cos(s)); }
Vec2 NormalOracle::F_minus(cplx s) const { return I * p.k0 * std::sin(s) * Phi_hat_plus(p.k0 * std::cos(s)); }

Vec2 NormalOracle::diffraction(double theta) const {
    return diffraction_from_F([this](cplx s) { return F_plus(s); }, [this](cplx s) { return F_minus(s); }, theta);
}

double oracle_jump_residual(const NormalOracle& o, int n) {
    double worst = 0;
    double L = 5 * std::abs(o.p.k0);
    for (int i = 0; i < n; ++i) {
        double x = -L + 2 * L * (i + 0.5) / n;
        Vec2 a = o.Phi_plus(x), b = o.Phi_minus(x), ah = o.Phi_hat_plus(x), bh = o.Phi_hat_minus(x);
        Vec2 ga, gha;
        for (int j = 0; j < 2; ++j) {
            ga(j) = (o.gm(j) + x) / (o.gm(j) - x) * b(j);
            gha(j) = (o.gp(j) + x) / (o.gp(j) - x) * bh(j);
        }
        worst = std::max({worst, rel(ga, a), rel(gha, ah)});
    }
    return worst;
}

double oracle_identity_residual(const NormalOracle& o) {
    const Vec2 iv(o.p.i1, o.p.i2);
    double s = std::max({std::abs(iv(0)), std::abs(iv(1)), 1e-300});
    Vec2 d1 = o.Lm - (o.r_minus + iv), d2 = o.Mm - (o.r_plus + o.R), d3 = o.Mp - (o.r_minus + o.R);
    return std::max({d1.cwiseAbs().maxCoeff(), d2.cwiseAbs().maxCoeff(), d3.cwiseAbs().maxCoeff()}) / s;
}

std::vector<OracleRow> oracle_compare(const NormalOracle& o, const Spectra& sp) {
    std::vector<OracleRow> rows;
    const auto& sol = sp.solution();
    const cplx k0 = o.p.k0;
    // Phi on both half-planes and the real axis
    double wp = 0, wm = 0, whp = 0;
    for (int i = 0; i < 12; ++i) {
        double x = -4 + 8 * (i + 0.37) / 12;
        for (double y : {0.0, 0.7}) {
            cplx eu = k0 * cplx(x, y), el = k0 * cplx(x, -y);
            wp = std::max(wp, rel(sol.eval(eu, Which::plus), o.Phi_plus(eu)));
            wm = std::max(wm, rel(sol.eval(el, Which::minus), o.Phi_minus(el)));
            whp = std::max(whp, rel(sol.eval(eu, Which::hat_plus), o.Phi_hat_plus(eu)));
        }
    }
    rows.push_back({"phi_plus", wp});
    rows.push_back({"phi_minus", wm});
    rows.push_back({"phi_hat_plus", whp});

    const auto& rc = sp.constants();
    Mat2 mu_o = Mat2::Zero();
    mu_o(0, 0) = o.mu(0);
    mu_o(1, 1) = o.mu(1);
    rows.push_back({"mu", rel(rc.mu, mu_o)});
    rows.push_back({"C", rel(sol.C, o.C)});
    rows.push_back({"lambda_plus", rel(rc.Lp, o.Lp)});
    rows.push_back({"lambda_minus", rel(rc.Lm, o.Lm)});
    rows.push_back({"m_plus", rel(rc.Mp, o.Mp)});
    rows.push_back({"m_minus", rel(rc.Mm, o.Mm)});

    auto refl = reflection_coefficients(o.p);
    rows.push_back({"r_plus", rel(Vec2(refl.r1p, refl.r2p), o.r_plus)});
    rows.push_back({"r_minus", rel(Vec2(refl.r1m, refl.r2m), o.r_minus)});
    rows.push_back({"R_plus", rel(Vec2(refl.R1p, refl.R2p), o.R)});
    rows.push_back({"R_minus", rel(Vec2(refl.R1m, refl.R2m), o.R)});

    double wd = 0;
    for (int i = 0; i < 10; ++i) {
        double th = 0.05 + (PI / 2 - 0.1) * i / 9.0;
        if (std::abs(th - o.p.theta0) < 1e-3) continue;
        // the edge wave vanishes identically here, so compare against the incident amplitude
        Vec2 a = sp.D(th), b = o.diffraction(th);
        wd = std::max(wd, (a - b).cwiseAbs().maxCoeff() / std::max({b.cwiseAbs().maxCoeff(), std::abs(o.p.i1), std::abs(o.p.i2)}));
    }
    rows.push_back({"diffraction", wd});
    return rows;
}

}  // namespace wedge
