#include "wedge/factorization.hpp"

#include <cmath>

namespace wedge {

FactorData::FactorData(std::shared_ptr<const SurfaceData> S, JacobiSolution J, FactorConfig cfg)
    : S_(std::move(S)), J_(std::move(J)), cfg_(cfg) {
    r_switch_ = cfg_.r_switch_factor * std::max(std::abs(S_->a[3]), std::abs(S_->p.k0));
}

cplx FactorData::eps_term(cplx eta, int k, int side) const {
    const SurfaceData& S = *S_;
    auto g = [&](cplx t) { return S.eps(t.real()) / (S.sqrt_f(t) * (2 * PI * I)); };
    auto pw = [&](cplx t) { return k == 0 ? t : t * t * t; };
    QuadratureConfig q = cfg_.quad;
    q.tail_exponent = 3;
    if (side == 0) {
        cplx e2 = eta * eta;
        return integrate_ray([&](cplx t) { return g(t) * pw(t) / (t * t - e2); }, 0.0, 1.0, q);
    }
    double x = eta.real();
    if (x < 0) return eps_term(-x, k, -side);
    if (x == 0) throw std::domain_error("psi2 is singular at eta = 0");
    // int h(t)/(t - x), h = g t^{2k+1}/(t + x): principal value plus the half residue
    auto h = [&](cplx t) { return g(t) * pw(t) / (t + x); };
    cplx hx = h(x);
    cplx pv = integrate_segment([&](cplx t) { return t == cplx(x) ? cplx{} : (h(t) - hx) / (t - x); }, 0.0, 2 * x, q);
    pv += integrate_ray([&](cplx t) { return h(t) / (t - x); }, 2 * x, 1.0, q);
    return pv + double(side) * I * PI * hx;
}

cplx FactorData::surface_terms(cplx eta, int k) const {
    const SurfaceData& S = *S_;
    cplx e2 = eta * eta;
    auto ker = [&](cplx t, cplx xi) { return (k == 0 ? t : t * t * t) / (xi * (t * t - e2)); };
    const auto& q = cfg_.quad;
    cplx v = S.path_int(J_.path, ker, 1, false, false, q);
    if (S.kappa0) v += double(S.kappa0) * S.path_int(J_.rho_path, ker, 1, false, false, q);
    if (J_.m0) v += double(J_.m0) * S.loop_a_int(ker, q);
    if (J_.n0) v += double(J_.n0) * S.loop_b_int(ker, q);
    return v;
}

cplx FactorData::psi2_near(cplx eta, int side) const { return eps_term(eta, 0, side) + surface_terms(eta, 0); }

cplx FactorData::psi2_far(cplx eta, int side) const {
    return (eps_term(eta, 1, side) + surface_terms(eta, 1)) / (eta * eta);
}

cplx FactorData::psi2(cplx eta, int side) const {
    return std::abs(eta) > r_switch_ ? psi2_far(eta, side) : psi2_near(eta, side);
}

cplx FactorData::psi1(cplx e) const {
    const SurfaceData& S = *S_;
    cplx v{};
    // straight pieces: the principal logs are exact integrals of 1/(t -+ e)
    if (S.kappa0) {
        const auto& R = J_.rho_path;
        for (size_t i = 0; i + 1 < R.size(); ++i) {
            cplx a = R[i], b = R[i + 1];
            v += 0.5 * double(S.kappa0) * (std::log((b - e) / (a - e)) - std::log((b + e) / (a + e)));
        }
    }
    const auto& V = J_.path;
    for (size_t i = 0; i + 1 < V.size(); ++i) {
        cplx a = V[i], b = V[i + 1];
        v += 0.5 * (std::log((b - e) / (a - e)) + std::log((b + e) / (a + e)));
    }
    return v;
}

Mat2 FactorData::X(cplx eta, int side) const {
    cplx w = S_->sqrt_f(eta), p2 = psi2(eta, side), e1 = std::exp(psi1(eta));
    cplx z = w * p2;
    return e1 * (std::cosh(z) * Mat2::Identity() + std::sinh(z) / w * eval_Q(S_->s, eta));
}

Mat2 FactorData::X_inv(cplx eta, int side) const {
    cplx w = S_->sqrt_f(eta), p2 = psi2(eta, side), e1 = std::exp(-psi1(eta));
    cplx z = w * p2;
    return e1 * (std::cosh(z) * Mat2::Identity() - std::sinh(z) / w * eval_Q(S_->s, eta));
}

Pipeline1 build_factorization(const WedgeProblem& p, const SurfaceConfig& scfg, const FactorConfig& fcfg) {
    Pipeline1 out;
    out.p = p;
    auto st = build_structural(p);
    auto S = std::make_shared<SurfaceData>(build_surface(p, st, scfg));
    out.jac = jacobi_inversion(*S, scfg);
    elliptic_reduction(*S, out.jac.kappa_choice, out.jac.c_sign);
    out.surf = S;
    out.fac = std::make_shared<FactorData>(S, out.jac, fcfg);
    return out;
}

namespace {

double rel_max(const Mat2& a, const Mat2& b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-300);
}

}  // namespace

double factorization_residual(const WedgeProblem& p, const FactorData& fac, const std::vector<double>& grid) {
    const auto& S = fac.surface();
    RhoSplit rho(S.s);
    double worst = 0;
    for (double x : grid) {
        Mat2 Gam = eval_Gamma(p, S.s, rho, x);
        worst = std::max(worst, rel_max(fac.X(x, 1) * fac.X_inv(x, -1), Gam));
    }
    return worst;
}

double splitting_residual(const WedgeProblem& p, const FactorData& fac, const std::vector<double>& grid) {
    const auto& S = fac.surface();
    RhoSplit rho(S.s);
    double worst = 0;
    for (double x : grid) {
        cplx e = x;
        Mat2 G = eval_G(p, e);
        Mat2 rec = S.s.delta_star * rho.plus(e) / (rho.minus(e) * S.s.delta0(e)) * eval_G1(S.s, e) * fac.X(e, 1) *
                   fac.X_inv(e, -1);
        worst = std::max(worst, rel_max(rec, G));
    }
    return worst;
}

ExceptionalDescriptor exceptional_behavior(const FactorData& fac, cplx point, cplx w) {
    const auto& S = fac.surface();
    ExceptionalDescriptor d;
    d.point = point;
    d.Y = 0.5 * (Mat2::Identity() + eval_Q(S.s, point) / w);
    double k = std::abs(S.p.k0);
    cplx dir = std::exp(I * 0.3);
    std::vector<double> lx, ly, lyi;
    for (int j = 0; j < 5; ++j) {
        double del = 1e-3 * k * std::pow(0.5, j);
        cplx e = point + del * dir;
        lx.push_back(std::log(del));
        ly.push_back(std::log(fac.X(e).cwiseAbs().maxCoeff()));
        lyi.push_back(std::log(fac.X_inv(e).cwiseAbs().maxCoeff()));
    }
    auto slope = [&](const std::vector<double>& y) {
        double mx = 0, my = 0, sxy = 0, sxx = 0;
        int n = (int)lx.size();
        for (int i = 0; i < n; ++i) mx += lx[i] / n, my += y[i] / n;
        for (int i = 0; i < n; ++i) sxy += (lx[i] - mx) * (y[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
        return sxy / sxx;
    };
    d.exponent_X = slope(ly);
    d.exponent_Xinv = slope(lyi);
    auto pole = [](double s) { return s > -1.5 && s < -0.5; };
    auto flat = [](double s) { return std::abs(s) < 0.25; };
    if (pole(d.exponent_X) && !pole(d.exponent_Xinv))
        d.behavior = PointBehavior::PoleOfX;
    else if (pole(d.exponent_Xinv) && !pole(d.exponent_X))
        d.behavior = PointBehavior::PoleOfXinv;
    else if (flat(d.exponent_X) && flat(d.exponent_Xinv))
        d.behavior = PointBehavior::Regular;
    else
        throw std::runtime_error("ambiguous local behaviour of X at an exceptional point");
    return d;
}

}  // namespace wedge
