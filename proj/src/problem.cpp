#include "wedge/problem.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

namespace wedge {

ValidationError::ValidationError(std::vector<std::string> msgs)
    : std::runtime_error([&] {
          std::string s = "invalid problem:";
          for (auto& m : msgs) s += " [" + m + "]";
          return s;
      }()),
      messages(std::move(msgs)) {}

void WedgeProblem::derive() {
    cb = std::cos(beta);
    sb = std::sin(beta);
    k0 = k * sb;
    eta0 = k0 * std::sin(theta0);
    etah0 = k0 * std::cos(theta0);
}

WedgeProblem WedgeProblem::swapped() const {
    WedgeProblem q = *this;
    q.g1p = g1m;
    q.g4p = g4m;
    q.g1m = g1p;
    q.g4m = g4p;
    q.beta = PI - beta;
    q.theta0 = PI / 2 - theta0;
    q.derive();
    q.k0 = k0;  // sin(pi - beta) = sin(beta) up to rounding; keep k0 identical
    q.eta0 = k0 * std::sin(q.theta0);
    q.etah0 = k0 * std::cos(q.theta0);
    q.provenance = provenance + "+swapped";
    return q;
}

WedgeProblem build_problem(const RawProblem& raw) {
    std::vector<std::string> err;
    WedgeProblem p;
    if (!raw.beta) err.push_back("beta missing");
    if (!raw.theta0) err.push_back("theta0 missing");
    double beta = raw.beta.value_or(PI / 2), th = raw.theta0.value_or(PI / 4);
    if (!(beta > 0 && beta < PI)) err.push_back("beta must lie in (0, pi)");
    if (!(th > 0 && th < PI / 2)) err.push_back("theta0 must lie in (0, pi/2)");
    double sb = std::sin(beta);
    if (raw.k && raw.k0) err.push_back("give either k or k0, not both");
    if (!raw.k && !raw.k0) err.push_back("wavenumber missing (k or k0)");
    cplx k = raw.k ? *raw.k : (raw.k0 && sb > 0 ? *raw.k0 / sb : cplx{});
    p.provenance = raw.k ? "k" : "k0";
    if (!(k.imag() > 0)) err.push_back("Im k must be positive");
    bool have_g = raw.g1p || raw.g4p || raw.g1m || raw.g4m;
    bool have_z = raw.eta_rr_p || raw.eta_zz_p || raw.eta_rr_m || raw.eta_zz_m;
    if (have_g && have_z) err.push_back("give either gammas or impedances, not both");
    if (have_g) {
        if (!(raw.g1p && raw.g4p && raw.g1m && raw.g4m)) err.push_back("all four gammas required");
        p.g1p = raw.g1p.value_or(1.0);
        p.g4p = raw.g4p.value_or(1.0);
        p.g1m = raw.g1m.value_or(1.0);
        p.g4m = raw.g4m.value_or(1.0);
        p.provenance += ",gamma";
    } else if (have_z) {
        if (!(raw.eta_rr_p && raw.eta_zz_p && raw.eta_rr_m && raw.eta_zz_m))
            err.push_back("all four impedances required");
        cplx f = k * sb * sb;
        auto rr_p = raw.eta_rr_p.value_or(1.0), rr_m = raw.eta_rr_m.value_or(1.0);
        if (rr_p == cplx{} || rr_m == cplx{}) err.push_back("eta_rr must be nonzero");
        else {
            p.g1p = f / rr_p;
            p.g1m = f / rr_m;
        }
        p.g4p = f * raw.eta_zz_p.value_or(1.0);
        p.g4m = f * raw.eta_zz_m.value_or(1.0);
        p.provenance += ",impedance";
    } else {
        err.push_back("boundary parameters missing");
    }
    if (std::abs(p.g1p + p.g4p) < 1e-14) err.push_back("gamma_1^+ + gamma_4^+ must be nonzero");
    if (!err.empty()) throw ValidationError(err);
    p.k = k;
    p.beta = beta;
    p.theta0 = th;
    p.i1 = raw.i1;
    p.i2 = raw.i2;
    p.derive();
    if (raw.k0) p.k0 = *raw.k0, p.eta0 = p.k0 * std::sin(th), p.etah0 = p.k0 * std::cos(th);
    return p;
}

WedgeProblem make_problem_k0(cplx k0, double beta, double theta0, cplx g1p, cplx g4p, cplx g1m, cplx g4m, cplx i1,
                             cplx i2) {
    RawProblem r;
    r.k0 = k0;
    r.beta = beta;
    r.theta0 = theta0;
    r.g1p = g1p;
    r.g4p = g4p;
    r.g1m = g1m;
    r.g4m = g4m;
    r.i1 = i1;
    r.i2 = i2;
    return build_problem(r);
}

Impedances impedances_from_gammas(const WedgeProblem& p) {
    cplx f = p.k * p.sb * p.sb;
    return {f / p.g1p, p.g4p / f, f / p.g1m, p.g4m / f};
}

ReflectionSet reflection_coefficients(const WedgeProblem& p) {
    ReflectionSet s;
    cplx e0 = p.eta0, eh = p.etah0, c2 = p.cb * p.cb;
    s.Delta0 = (eh + p.g1p) * (eh + p.g4p) + e0 * e0 * c2;
    s.Delta0_hat = (e0 + p.g1m) * (e0 + p.g4m) + eh * eh * c2;
    if (std::abs(s.Delta0) < 1e-300) throw std::domain_error("Delta0 vanishes");
    if (std::abs(s.Delta0_hat) < 1e-300) throw std::domain_error("Delta0_hat vanishes");
    s.K1p = ((eh + p.g1p) * (eh - p.g4p) - e0 * e0 * c2) / s.Delta0;
    s.K1m = ((eh - p.g1p) * (eh + p.g4p) - e0 * e0 * c2) / s.Delta0;
    s.K2 = 2.0 * e0 * eh * p.cb / s.Delta0;
    s.K1hat_p = ((e0 + p.g1m) * (e0 - p.g4m) - eh * eh * c2) / s.Delta0_hat;
    s.K1hat_m = ((e0 - p.g1m) * (e0 + p.g4m) - eh * eh * c2) / s.Delta0_hat;
    s.K2hat = 2.0 * e0 * eh * p.cb / s.Delta0_hat;
    s.r1p = s.K1m * p.i1 + s.K2 * p.i2;
    s.r2p = -s.K2 * p.i1 + s.K1p * p.i2;
    s.R1p = s.K1hat_m * s.r1p + s.K2hat * s.r2p;
    s.R2p = -s.K2hat * s.r1p + s.K1hat_p * s.r2p;
    s.r1m = s.K1hat_m * p.i1 - s.K2hat * p.i2;
    s.r2m = s.K2hat * p.i1 + s.K1hat_p * p.i2;
    s.R1m = s.K1m * s.r1m - s.K2 * s.r2m;
    s.R2m = s.K2 * s.r1m + s.K1p * s.r2m;
    return s;
}

namespace {

struct Wave {
    cplx kx, ky;  // field ~ a exp(i (kx x + ky y))
    cplx a1, a2;
};

}  // namespace

double reflection_bc_residual(const WedgeProblem& p, const ReflectionSet& r, int n, unsigned seed) {
    const cplx e0 = p.eta0, eh = p.etah0, cb = p.cb;
    Wave inc{-eh, -e0, p.i1, p.i2};
    Wave rp{eh, -e0, r.r1p, r.r2p}, rm{-eh, e0, r.r1m, r.r2m};
    Wave Rp{eh, e0, r.R1p, r.R2p}, Rm{eh, e0, r.R1m, r.R2m};
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> U(0.1, 5.0);
    double worst = 0;
    auto eval = [&](const std::vector<Wave>& ws, double x, double y, bool face_x0) {
        cplx res[2] = {}, scale = 0;
        double sc = 0;
        for (auto& w : ws) {
            cplx ex = std::exp(I * (w.kx * x + w.ky * y));
            cplx f1 = w.a1 * ex, f2 = w.a2 * ex;
            cplx dx1 = I * w.kx * f1, dy1 = I * w.ky * f1, dx2 = I * w.kx * f2, dy2 = I * w.ky * f2;
            cplx t[2];
            if (face_x0) {
                t[0] = I * dx1 + I * cb * dy2 - p.g1p * f1;
                t[1] = I * cb * dy1 - I * dx2 + p.g4p * f2;
            } else {
                t[0] = -I * dy1 + I * cb * dx2 + p.g1m * f1;
                t[1] = I * cb * dx1 + I * dy2 - p.g4m * f2;
            }
            res[0] += t[0];
            res[1] += t[1];
            sc = std::max({sc, std::abs(t[0]), std::abs(t[1])});
        }
        (void)scale;
        return std::max(std::abs(res[0]), std::abs(res[1])) / std::max(sc, 1e-300);
    };
    for (int i = 0; i < n; ++i) {
        double s = U(gen);
        worst = std::max(worst, eval({inc, rp, rm, Rm}, 0.0, s, true));
        worst = std::max(worst, eval({inc, rp, rm, Rp}, s, 0.0, false));
    }
    return worst;
}

const std::vector<ReferenceCase>& reference_cases() {
    static const std::vector<ReferenceCase> v = {
        {"2a", {1, -1}, {1, 2}, {1, -2}, {1, -3}, 0},        {"2b", {2, 1}, {1, 2}, {1, -1}, {1, -2}, 0},
        {"2c", {-1, 1}, {-1, 2}, {-1, -0.1}, {-1, -0.2}, 1}, {"2d", {1, 1}, {1, -1}, {1, -0.3}, {1, -1}, -1},
        {"3a", {1.5, 0.5}, {1, 1}, {1, -0.5}, {1, 1}, 0},    {"3b", {1, 1}, {1, -1}, {1, -1}, {1, 1}, 1},
        {"3c", {1, 3}, {1, 4}, {1, 1}, {1, 2}, 0},           {"3d", {1, 0.5}, {1, 1}, {2, 0.5}, {1, 2}, -1},
    };
    return v;
}

WedgeProblem reference_problem(const std::string& name, double theta0, cplx i1, cplx i2) {
    for (auto& c : reference_cases())
        if (c.name == name) return make_problem_k0({1.0, 0.1}, PI / 4, theta0, c.g1p, c.g4p, c.g1m, c.g4m, i1, i2);
    throw std::invalid_argument("unknown reference set " + name);
}

}  // namespace wedge
