#include "wedge/spectra.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wedge {

namespace {

class SpectraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Vec2 checked(const Vec2& v, const char* what, cplx s) {
    if (!std::isfinite(std::abs(v(0))) || !std::isfinite(std::abs(v(1))))
        throw SpectraError(std::string(what) + " hits a pole at s = (" + std::to_string(s.real()) + ", " +
                           std::to_string(s.imag()) + ")");
    return v;
}

double vmax(const Vec2& v) { return std::max(std::abs(v(0)), std::abs(v(1))); }

}  // namespace

// ------------------------------------------------------------ residue constants

double ResidueConstants::identity_residual() const {
    double scale = std::max({vmax(C), vmax(Lm), vmax(Mm), vmax(Mp), 1e-300});
    return std::max({vmax(res_Lm), vmax(res_Mm), vmax(res_Mp)}) / scale;
}

ResidueConstants residue_constants(const WedgeProblem& p) {
    ResidueConstants rc;
    auto refl = reflection_coefficients(p);
    const cplx e0 = p.eta0, eh = p.etah0, cb = p.cb;
    rc.C = Vec2(refl.r1p + p.i1, refl.r2p + p.i2);
    rc.mu = eval_G_branch(p, e0, -I * eh).inverse();
    rc.mu_far = eval_G_branch(p, e0, I * eh).inverse();
    const Vec2 gp(p.g1p, p.g4p);
    // p_j, q_j for the pole of F_- at theta0 (sg = +1) or pi - theta0 (sg = -1)
    auto pq = [&](const Mat2& mu, double sg, cplx out[4]) {
        cplx a1 = gp(0) + sg * eh, a2 = gp(1) + sg * eh;
        out[0] = (a1 * (1.0 - mu(0, 0)) - e0 * mu(1, 0) * cb) / (2.0 * eh);
        out[1] = (a1 * mu(0, 1) + e0 * (1.0 + mu(1, 1)) * cb) / (2.0 * eh);
        out[2] = (a2 * (1.0 - mu(1, 1)) + e0 * mu(0, 1) * cb) / (2.0 * eh);
        out[3] = (a2 * mu(1, 0) - e0 * (1.0 + mu(0, 0)) * cb) / (2.0 * eh);
    };
    cplx pp[4], pm[4];
    pq(rc.mu, 1.0, pp);
    pq(rc.mu_far, -1.0, pm);
    const Vec2& C = rc.C;
    rc.Lp = C;
    rc.Mp = -rc.mu * C;
    rc.Lm = Vec2(pp[0] * C(0) - pp[1] * C(1), -pp[3] * C(0) + pp[2] * C(1));
    rc.Mm = Vec2(-pm[0] * C(0) + pm[1] * C(1), pm[3] * C(0) - pm[2] * C(1));
    rc.res_Lm = rc.Lm - Vec2(refl.r1m + p.i1, refl.r2m + p.i2);
    rc.res_Mm = rc.Mm - Vec2(refl.r1p + refl.R1p, refl.r2p + refl.R2p);
    rc.res_Mp = rc.Mp - Vec2(refl.r1m + refl.R1m, refl.r2m + refl.R2m);
    return rc;
}

Vec2 diffraction_from_F(const SpecFn& Fp, const SpecFn& Fm, double th) {
    const cplx c = std::exp(-I * (PI / 4)) / std::sqrt(2 * PI);
    return c * (Fp(PI / 2 - th) - Fp(PI / 2 + th) + Fm(th - PI) - Fm(-th));
}

// ------------------------------------------------------------------- spectra

Spectra::Spectra(std::shared_ptr<const RhpSolution> sol, SpectraConfig cfg)
    : sol_(std::move(sol)), p_(sol_->rhp1->problem()), cfg_(cfg), rc_(residue_constants(p_)) {
    int K = (int)std::ceil(cfg_.y_max / cfg_.h);
    y_.resize(2 * K + 1);
    for (int k = -K; k <= K; ++k) y_[k + K] = k * cfg_.h;
    Fm_axis_.assign(y_.size(), Vec2::Zero());
    Fp_axis_.assign(y_.size(), Vec2::Zero());
    // F(-iy) = -F(iy) on the axis, so only y >= 0 is evaluated
#pragma omp parallel for schedule(dynamic)
    for (int k = 1; k <= K; ++k) {
        cplx s(0, y_[k + K]);
        Fm_axis_[K + k] = F_minus(s);
        Fp_axis_[K + k] = F_plus(s);
    }
    for (int k = 1; k <= K; ++k) {
        Fm_axis_[K - k] = -Fm_axis_[K + k];
        Fp_axis_[K - k] = -Fp_axis_[K + k];
    }
}

// Both F are odd in s.  For Re s >= 0 the branch zeta = -i k0 sin s is the one that
// agrees with the principal root wherever k0 cos s crosses the real axis.
Vec2 Spectra::F_plus(cplx s) const {
    if (s.real() < 0) return -F_plus(-s);
    cplx k0 = p_.k0;
    return checked(I * k0 * std::sin(s) * sol_->eval(k0 * std::cos(s), Which::plus, -I * k0 * std::sin(s)), "F+", s);
}

Vec2 Spectra::F_minus(cplx s) const {
    if (s.real() < 0) return -F_minus(-s);
    cplx k0 = p_.k0;
    return checked(I * k0 * std::sin(s) * sol_->eval(k0 * std::cos(s), Which::hat_plus, -I * k0 * std::sin(s)), "F-",
                   s);
}

Vec2 Spectra::F_minus_direct(cplx s) const {
    cplx k0 = p_.k0, cs = std::cos(s), sn = std::sin(s);
    cplx e = k0 * sn, z = -I * k0 * cs;
    Vec2 a = sol_->eval(e, Which::plus, z), b = sol_->eval(e, Which::minus, z);
    Vec2 out;
    out(0) = -0.5 * I * (p_.g1p + k0 * cs) * (a(0) - b(0)) + 0.5 * I * k0 * p_.cb * sn * (a(1) + b(1));
    out(1) = -0.5 * I * (p_.g4p + k0 * cs) * (a(1) - b(1)) - 0.5 * I * k0 * p_.cb * sn * (a(0) + b(0));
    return checked(out, "F- (direct)", s);
}

Vec2 Spectra::S_poles(cplx s) const {
    const Vec2 iv(p_.i1, p_.i2);
    return iv * (1.0 / std::tan(s - p_.theta0) - 1.0 / std::tan(s + p_.theta0));
}

Vec2 Spectra::S_axis(cplx s) const {
    auto cot = [](cplx z) { return 1.0 / std::tan(z); };
    auto tn = [](cplx z) { return std::tan(z); };
    // nearest kernel pole: cot(sigma - s) at s - n pi, tan(sigma - s) at s - pi/2 - n pi
    struct Sub {
        bool on = false;
        cplx sstar;
        Vec2 Fp;
        double J = 0;
    } sub_m, sub_p;
    auto prepare = [&](Sub& sb, double offset, bool is_cot) {
        double n = std::round((s.real() - offset) / PI);
        cplx sp = s - offset - n * PI;
        if (std::abs(sp.real()) >= cfg_.pole_band) return;
        if (std::abs(sp.real()) < 1e-6) throw SpectraError("s is on a strip boundary of the axis formula");
        double shift = (sp.real() > 0 ? 1.0 : -1.0) * (cfg_.pole_band + 0.1);
        sb.on = true;
        sb.sstar = s + shift;
        sb.Fp = is_cot ? F_minus(sp) : F_plus(sp);
        // -(1/2 pi i) * int [K(sigma - s) - K(sigma - s*)] d sigma
        sb.J = is_cot ? shift / PI : -shift / PI;
    };
    prepare(sub_m, 0.0, true);
    prepare(sub_p, PI / 2, false);
    Vec2 acc = Vec2::Zero();
    for (size_t k = 0; k < y_.size(); ++k) {
        cplx sg(0, y_[k]);
        double reg = std::tanh(y_[k]);
        cplx kc = cot(sg - s), kt = tn(sg - s);
        Vec2 v = Fm_axis_[k] * (kc + I * reg) + Fp_axis_[k] * (kt - I * reg);
        if (sub_m.on) v -= sub_m.Fp * (kc - cot(sg - sub_m.sstar));
        if (sub_p.on) v -= sub_p.Fp * (kt - tn(sg - sub_p.sstar));
        acc += v;
    }
    Vec2 out = -(cfg_.h / (2 * PI)) * acc;
    if (sub_m.on) out += sub_m.Fp * sub_m.J;
    if (sub_p.on) out += sub_p.Fp * sub_p.J;
    return out;
}

Vec2 Spectra::S(cplx s) const {
    double x = s.real();
    if (x <= -PI || x >= 1.5 * PI) throw SpectraError("Re s outside (-pi, 3 pi/2)");
    if (x >= 0 && x < PI / 2) return S_axis(s) + S_poles(s);
    if (x > -PI / 2 && x <= 0) return S(-s) + F_minus(s);
    if (x >= PI / 2 && x < PI) return S(PI - s) + F_plus(s - PI / 2);
    if (x >= PI) return S(s - PI) + F_minus(PI - s) + F_plus(s - PI / 2);
    return S(s + PI) + F_plus(-s - PI / 2) + F_minus(s);
}

Vec2 Spectra::D(double theta) const {
    return diffraction_from_F([this](cplx s) { return F_plus(s); }, [this](cplx s) { return F_minus(s); }, theta);
}

bool Spectra::near_shadow(double theta) const { return std::abs(theta - p_.theta0) < cfg_.shadow_tol; }

double window(double theta, double a, double b) { return (theta > a && theta < b) ? 1.0 : 0.0; }

FarFieldTerms far_field(const Spectra& sp, double rho, double th) {
    const auto& p = sp.problem();
    const auto& rc = sp.constants();
    const Vec2 iv(p.i1, p.i2);
    cplx kr = p.k0 * rho;
    cplx em = std::cos(th - p.theta0), ep = std::cos(th + p.theta0);
    FarFieldTerms t;
    t.incident = iv * std::exp(-I * kr * em);
    t.refl_plus = (rc.Lp - iv) * std::exp(I * kr * ep);
    t.refl_minus = (rc.Lm - iv) * std::exp(-I * kr * ep);
    t.double_plus = (iv + rc.Mm - rc.Lp) * (std::exp(I * kr * em) * window(th, 0, p.theta0));
    t.double_minus = (iv + rc.Mp - rc.Lm) * (std::exp(I * kr * em) * window(th, p.theta0, PI / 2));
    t.diffracted = sp.D(th) * (std::exp(I * kr) / std::sqrt(kr));
    t.asymptotic_ok = std::abs(kr) >= 20;
    return t;
}

std::vector<DiffractionSample> diffraction_grid(const Spectra& sp, const std::vector<double>& theta,
                                                bool serial_reference) {
    std::vector<DiffractionSample> out(theta.size());
    const int n = (int)theta.size();
#pragma omp parallel for schedule(dynamic) if (!serial_reference)
    for (int i = 0; i < n; ++i) {
        DiffractionSample& d = out[i];
        d.theta = theta[i];
        d.flagged = sp.near_shadow(theta[i]);
        try {
            d.D = sp.D(theta[i]);
            if (!std::isfinite(std::abs(d.D(0))) || !std::isfinite(std::abs(d.D(1)))) d.flagged = true;
        } catch (const std::exception&) {
            d.D = Vec2::Constant(cplx(std::numeric_limits<double>::quiet_NaN(), 0));
            d.flagged = true;
        }
    }
    return out;
}

}  // namespace wedge
