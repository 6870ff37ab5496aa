#include "wedge/surface.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace wedge {

namespace {

// Parameter s in (0,1) along p->q where it crosses the segment a-b.
std::optional<double> seg_intersect(cplx p, cplx q, cplx a, cplx b) {
    cplx d = q - p, e = b - a;
    double den = (std::conj(d) * e).imag();
    if (std::abs(den) < 1e-300) return std::nullopt;
    cplx w = a - p;
    double s = (std::conj(w) * e).imag() / den;
    double u = (std::conj(w) * d).imag() / den;
    if (s > 0 && s < 1 && u > 0 && u < 1) return s;
    return std::nullopt;
}

bool near_any(cplx z, const std::vector<cplx>& pts, double tol) {
    for (auto x : pts)
        if (std::abs(z - x) < tol) return true;
    return false;
}

std::vector<cplx> exclusion_set(const SurfaceData& S) {
    std::vector<cplx> ex;
    for (auto x : S.a) ex.push_back(x), ex.push_back(-x);
    ex.push_back(S.p.eta0);
    ex.push_back(-S.p.eta0);
    for (auto z : poly_roots(S.s.d1)) ex.push_back(z);
    for (auto z : S.s.eta_roots) ex.push_back(z), ex.push_back(-z);
    return ex;
}

cplx move_off(cplx z, const SurfaceData& S, unsigned seed) {
    auto ex = exclusion_set(S);
    double tol = 1e-3 * std::abs(S.p.k0);
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> U(-0.05, 0.05);
    double k = std::abs(S.p.k0);
    for (int it = 0; it < 100 && (near_any(z, ex, tol) || z.imag() <= 0); ++it)
        z += k * cplx(U(gen), std::abs(U(gen)));
    return z;
}

}  // namespace

// ---------------------------------------------------------------- SurfaceData

cplx SurfaceData::sqrt_f(cplx e) const {
    cplx v = lead;
    for (auto& c : cuts) v *= seg_sqrt(e, c.first, c.second);
    return v;
}

cplx SurfaceData::sqrt_f_off(cplx t, cplx base, cplx off) const {
    cplx v = lead;
    for (auto& c : cuts) {
        if (c.first == base)
            v *= seg_sqrt_off(off, off + (base - c.second));
        else if (c.second == base)
            v *= seg_sqrt_off(off + (base - c.first), off);
        else
            v *= seg_sqrt(t, c.first, c.second);
    }
    return v;
}

cplx SurfaceData::sqrt_f_left(cplx t, int ci) const {
    auto [ca, cb] = cuts[ci];
    cplx m = 0.5 * (ca + cb), h = 0.5 * (cb - ca);
    double x = ((t - m) / h).real();
    cplx v = lead * I * h * std::sqrt(std::max(1 - x * x, 0.0));
    for (int j = 0; j < 4; ++j)
        if (j != ci) v *= seg_sqrt(t, cuts[j].first, cuts[j].second);
    return v;
}

cplx SurfaceData::lratio(cplx e) const {
    cplx z = zeta_branch(p.k0, e);
    cplx num0 = z * s.d1(e) + s.r(e);
    cplx c = I * s.gamma_hat * e * p.cb * sqrt_f(e);
    return (num0 + c) / (num0 - c);
}

cplx SurfaceData::eps(double t) const {
    if (t < 0) return -eps(-t);
    if (tg.empty()) return {};
    if (t >= tg.back()) return std::log(lratio(t));
    size_t k = std::lower_bound(tg.begin(), tg.end(), t) - tg.begin();
    k = std::min(k, tg.size() - 1);
    return epsg[k] + std::log(lratio(t) / lg[k]);
}

std::vector<SheetEdge> SurfaceData::split(const std::vector<cplx>& verts, int sheet0, int* sheet_end) const {
    std::vector<SheetEdge> out;
    int sg = sheet0;
    for (size_t i = 0; i + 1 < verts.size(); ++i) {
        cplx p0 = verts[i], q0 = verts[i + 1];
        std::vector<double> cr{0.0};
        for (auto& c : cuts)
            if (auto x = seg_intersect(p0, q0, c.first, c.second)) cr.push_back(*x);
        std::sort(cr.begin() + 1, cr.end());
        cr.push_back(1.0);
        for (size_t j = 0; j + 1 < cr.size(); ++j) {
            out.push_back({p0 + (q0 - p0) * cr[j], p0 + (q0 - p0) * cr[j + 1], sg});
            if (j + 2 < cr.size()) sg = -sg;
        }
    }
    if (sheet_end) *sheet_end = sg;
    return out;
}

cplx SurfaceData::path_int(const std::vector<cplx>& verts, const std::function<cplx(cplx, cplx)>& g, int sheet0,
                           bool sing_start, bool sing_end, const QuadratureConfig& q) const {
    auto edges = split(verts, sheet0);
    cplx tot{};
    for (size_t i = 0; i < edges.size(); ++i) {
        const double sgn = edges[i].sheet;
        const cplx a = edges[i].a, b = edges[i].b, d = b - a;
        const bool sa = i == 0 && sing_start, sb = i + 1 == edges.size() && sing_end;
        if (!sa && !sb) {
            tot += integrate_segment([&](cplx t) { return g(t, sgn * sqrt_f(t)); }, a, b, q);
            continue;
        }
        // substitution against the inverse square root; offsets from the nearer end stay exact
        auto near_a = [&](cplx off) {
            if (off == cplx{}) return cplx{};
            cplx t = a + off; return g(t, sgn * sqrt_f_off(t, a, off)); };
        auto near_b = [&](cplx off) {
            if (off == cplx{}) return cplx{};
            cplx t = b + off; return g(t, sgn * sqrt_f_off(t, b, off)); };
        if (sa && sb) {
            tot += integrate_segment(
                [&](cplx thc) {
                    double th = thc.real(), s = std::sin(0.5 * th), c = std::cos(0.5 * th);
                    cplx v = th < PI / 2 ? near_a(d * (s * s)) : near_b(-d * (c * c));
                    return v * d * (0.5 * std::sin(th));
                },
                0.0, PI, q);
        } else if (sa) {
            tot += integrate_segment(
                [&](cplx u) {
                    double s = u.real();
                    return near_a(d * (s * s)) * d * (2 * s);
                },
                0.0, 1.0, q);
        } else {
            tot += integrate_segment(
                [&](cplx u) {
                    double s = u.real();
                    return near_b(-d * (s * s)) * d * (2 * s);
                },
                0.0, 1.0, q);
        }
    }
    return tot;
}

cplx SurfaceData::loop_a_int(const std::function<cplx(cplx, cplx)>& g, const QuadratureConfig& q) const {
    // t = m - h cos(th); on the left bank sqrt(1 - x^2) = sin(th) exactly
    cplx m = 0.5 * (a[0] + a[1]), h = 0.5 * (a[1] - a[0]);
    auto fun = [&](cplx thc) {
        double th = thc.real(), st = std::sin(th);
        cplx t = m - h * std::cos(th);
        cplx xi = lead * I * h * st;
        for (int j = 1; j < 4; ++j) xi *= seg_sqrt(t, cuts[j].first, cuts[j].second);
        return g(t, xi) * h * st;
    };
    return 2.0 * integrate_segment(fun, 0.0, PI, q);
}

cplx SurfaceData::loop_b_int(const std::function<cplx(cplx, cplx)>& g, const QuadratureConfig& q) const {
    return 2.0 * path_int({a[1], a[2]}, g, 1, true, true, q);
}

// ---------------------------------------------------------------- construction

SurfaceData build_surface(const WedgeProblem& p, const StructuralData& s, const SurfaceConfig& cfg) {
    SurfaceData S;
    S.p = p;
    S.s = s;
    std::vector<cplx> fs;
    for (size_t j = 0; j < s.f.c.size(); j += 2) fs.push_back(s.f.c[j]);
    auto ts = poly_roots(fs);
    if (ts.size() != 4) throw SurfaceError("f is not of degree 8");
    std::vector<cplx> a;
    for (auto t : ts) {
        cplx r = std::sqrt(t);
        if (r.imag() < 0) r = -r;
        a.push_back(r);
    }
    std::sort(a.begin(), a.end(), [](cplx x, cplx y) { return x.imag() < y.imag(); });
    double sc = std::abs(p.k0);
    for (int i = 0; i < 4; ++i) {
        if (std::abs(a[i].imag()) < 1e-10 * sc) throw SurfaceError("real branch point");
        for (int j = 0; j < i; ++j)
            if (std::abs(a[i] - a[j]) < 1e-8 * sc) throw SurfaceError("repeated branch points");
        S.a[i] = a[i];
    }
    S.cuts = {std::pair{a[0], a[1]}, std::pair{a[2], a[3]}, std::pair{-a[0], -a[1]}, std::pair{-a[2], -a[3]}};
    S.lead = 2.0 * I * std::pow(p.sb, 4);
    S.scale = std::max(std::abs(p.k0), std::abs(a[3]));
    compute_epsilon_kappa0(S, cfg);
    return S;
}

void compute_epsilon_kappa0(SurfaceData& S, const SurfaceConfig& cfg) {
    for (int refine = 1; refine <= 4; refine *= 2) {
        int nl = cfg.eps_linear_samples * refine, ng = cfg.eps_geometric_samples * refine;
        double T1 = 40 * S.scale, T2 = 1e9 * S.scale;
        S.tg.clear();
        for (int i = 1; i <= nl; ++i) S.tg.push_back(T1 * i / nl);
        for (int i = 1; i < ng; ++i) S.tg.push_back(T1 * std::pow(T2 / T1, double(i) / (ng - 1)));
        size_t n = S.tg.size();
        S.lg.resize(n);
        for (size_t i = 0; i < n; ++i) S.lg[i] = S.lratio(S.tg[i]);
        // unwrap from infinity downward
        std::vector<double> ph(n);
        ph[n - 1] = std::arg(S.lg[n - 1]);
        double worst_step = 0;
        for (size_t i = n - 1; i-- > 0;) {
            double d = std::arg(S.lg[i] / S.lg[i + 1]);
            worst_step = std::max(worst_step, std::abs(d));
            ph[i] = ph[i + 1] + d;
        }
        S.epsg.resize(n);
        for (size_t i = 0; i < n; ++i) S.epsg[i] = cplx(std::log(std::abs(S.lg[i])), ph[i]);
        // extrapolate the phase to t = 0+ through the exact log correction
        double t0 = 1e-9 * S.scale;
        S.kappa0_raw = -(ph[0] + std::arg(S.lratio(t0) / S.lg[0])) / (2 * PI);
        if (worst_step < 1.0 && std::abs(S.kappa0_raw - std::round(S.kappa0_raw)) < 1e-3) {
            S.kappa0 = (int)std::lround(S.kappa0_raw);
            return;
        }
    }
    throw SurfaceError("eps sampling did not resolve an integer winding");
}

void elliptic_reduction(SurfaceData& S, int kappa_choice, int c_sign) {
    std::array<cplx, 4> A;
    for (int j = 0; j < 4; ++j) A[j] = S.a[j] * S.a[j];
    cplx X = (A[0] - A[2]) * (A[1] - A[3]) / ((A[0] - A[3]) * (A[1] - A[2]));
    auto ks = poly_roots(std::vector<cplx>{1.0, 2.0 - 4.0 * X, 1.0});
    std::sort(ks.begin(), ks.end(), [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
    cplx kap = ks[kappa_choice];
    std::array<cplx, 3> taus{1.0, 1.0 / kap, -1.0 / kap};
    Eigen::Matrix3cd M;
    Eigen::Vector3cd rhs;
    for (int j = 0; j < 3; ++j) {
        M(j, 0) = 1.0;
        M(j, 1) = taus[j];
        M(j, 2) = A[j] * taus[j];
        rhs(j) = A[j];
    }
    Eigen::Vector3cd sol = M.partialPivLu().solve(rhs);
    S.kap = kap;
    S.b1 = sol(0);
    S.b2 = sol(1);
    S.mu = sol(2);
    cplx C2 = -4.0 * std::pow(S.p.sb, 8) / (kap * kap);
    for (int j = 0; j < 4; ++j) C2 *= S.b2 + A[j] * S.mu;
    S.C = double(c_sign) * std::sqrt(C2);
    S.h = (S.b2 + S.mu * S.b1) / S.C;
    S.K = complete_elliptic_K(kap);
    S.Kp = complete_elliptic_Kp(kap);
    S.loop_a_ell = S.h * I * S.Kp;
    S.loop_b_ell = -2.0 * S.h * S.K;
    cplx ks_ = (kap - 1.0) / (kap + 1.0);
    S.kap_star_sq_check = ks_ * ks_;
    S.kap_star_sq_formula = (A[1] - A[0]) * (A[2] - A[3]) / ((A[1] - A[3]) * (A[2] - A[0]));
}

cplx default_rho0(const SurfaceData& S) { return move_off(S.a[0] / 2.0 + I * std::abs(S.p.k0), S, 11); }
cplx default_sigma0(const SurfaceData& S) { return move_off(std::abs(S.p.k0) * cplx(0.31, 0.87), S, 13); }

namespace {

double seg_dist(cplx z, cplx a, cplx b) {
    cplx d = b - a;
    double t = std::norm(d) > 0 ? std::clamp(((z - a) * std::conj(d)).real() / std::norm(d), 0.0, 1.0) : 0.0;
    return std::abs(z - (a + t * d));
}

double poly_len(const std::vector<cplx>& v) {
    double L = 0;
    for (size_t i = 0; i + 1 < v.size(); ++i) L += std::abs(v[i + 1] - v[i]);
    return L;
}

}  // namespace

std::vector<cplx> route_path(const SurfaceData& S, cplx z0, cplx z1, int sheet) {
    const int want = sheet == 1 ? 1 : -1;
    std::vector<cplx> branch;
    for (auto& c : S.cuts) branch.push_back(c.first), branch.push_back(c.second);
    double clear = 0.03 * S.scale;
    for (auto b : branch) clear = std::min({clear, 0.5 * std::abs(b - z0), 0.5 * std::abs(b - z1)});
    auto admissible = [&](const std::vector<cplx>& v) {
        for (size_t i = 0; i + 1 < v.size(); ++i)
            for (auto b : branch)
                if (seg_dist(b, v[i], v[i + 1]) < clear) return false;
        int sg;
        S.split(v, 1, &sg);
        return sg == want;
    };
    auto upper = [&](const std::vector<cplx>& v) {
        return std::all_of(v.begin() + 1, v.end(), [](cplx x) { return x.imag() > 1e-3; });
    };
    // short routes first: straight, or a single crossing through the middle of one cut
    std::vector<std::vector<cplx>> crossings{{}};
    for (auto& c : S.cuts) {
        cplx m = 0.5 * (c.first + c.second), n = I * (c.second - c.first) * 0.05;
        crossings.push_back({m + n, m - n});
        crossings.push_back({m - n, m + n});
    }
    for (int pass = 0; pass < 2; ++pass)
        for (auto& x : crossings) {
            std::vector<cplx> v{z0};
            v.insert(v.end(), x.begin(), x.end());
            v.push_back(z1);
            if ((pass == 1 || upper(v)) && admissible(v)) return v;
        }
    // otherwise bend through one waypoint, with or without a cut crossing
    std::vector<cplx> way;
    for (double r : {0.5, 1.0, 2.0, 3.5, 6.0})
        for (int j = 0; j < 24; ++j) way.push_back(r * S.scale * std::exp(I * (2 * PI * (j + 0.25) / 24)));
    std::vector<cplx> best;
    double best_len = 0;
    bool best_up = false;
    for (auto w : way)
        for (auto& x : crossings)
            for (int order = 0; order < 2; ++order) {
                std::vector<cplx> v{z0};
                if (order == 0) v.push_back(w);
                v.insert(v.end(), x.begin(), x.end());
                if (order == 1) v.push_back(w);
                v.push_back(z1);
                if (!admissible(v)) continue;
                bool up = upper(v);
                double L = poly_len(v);
                if (best.empty() || (up && !best_up) || (up == best_up && L < best_len)) best = v, best_len = L, best_up = up;
            }
    if (best.empty()) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "no admissible path (%.4g%+.4gi) -> (%.4g%+.4gi) on sheet %d", z0.real(), z0.imag(),
                      z1.real(), z1.imag(), sheet);
        throw SurfaceError(buf);
    }
    return best;
}

namespace {

}  // namespace

JacobiSolution jacobi_inversion(SurfaceData& S, const SurfaceConfig& cfg) {
    const auto& q = cfg.quad;
    auto tk = [](cplx t, cplx xi) { return t / xi; };
    // loops by direct quadrature
    S.loop_a = S.loop_a_int(tk, q);
    S.loop_b = S.loop_b_int(tk, q);

    JacobiSolution J;
    J.rho0 = cfg.rho0 ? *cfg.rho0 : default_rho0(S);
    J.sigma0 = cfg.sigma0 ? *cfg.sigma0 : default_sigma0(S);
    QuadratureConfig qr = q;
    qr.tail_exponent = 3;
    cplx E1 = integrate_ray([&](cplx t) { return S.eps(t.real()) * t / S.sqrt_f(t); }, 0.0, 1.0, qr) / (2 * PI * I);
    J.rho_path = S.kappa0 ? route_path(S, 0.0, J.rho0, 1) : std::vector<cplx>{0.0, J.rho0};
    cplx E2 = S.kappa0 ? double(S.kappa0) * S.path_int(J.rho_path, tk, 1, false, false, q) : cplx{};
    J.E = E1 + E2;

    Eigen::Matrix2d Mm;
    Mm << S.loop_a.real(), S.loop_b.real(), S.loop_a.imag(), S.loop_b.imag();
    std::string why;
    for (int kc = 0; kc < 2; ++kc)
        for (int cs : {1, -1}) {
            elliptic_reduction(S, kc, cs);
            double hom = std::abs(S.T(-1.0) - S.a[3] * S.a[3]) / std::abs(S.a[3] * S.a[3]);
            double la = std::abs(S.loop_a - S.loop_a_ell) / std::abs(S.loop_a);
            double lb = std::abs(S.loop_b - S.loop_b_ell) / std::abs(S.loop_b);
            if (hom > 1e-8 || la > 1e-6 || lb > 1e-6) {
                why += " [kappa root " + std::to_string(kc) + ", sign " + std::to_string(cs) + ": loop formulas]";
                continue;
            }
            JacobiElliptic jf(S.kap);
            J.kappa_choice = kc;
            J.c_sign = cs;
            J.homography_check = hom;
            J.sigma0_hat = S.Tinv(J.sigma0 * J.sigma0);
            cplx u = elliptic_integral_to(J.sigma0_hat, S.kap, q);
            auto wstar = [&](cplx uu) {
                auto e = jf(uu);
                return S.C * e.cn * e.dn / ((1.0 - S.mu * e.sn) * (1.0 - S.mu * e.sn));
            };
            cplx w0 = S.sqrt_f(J.sigma0);
            if (std::abs(wstar(u) - w0) > std::abs(wstar(u) + w0)) u = 2.0 * S.K - u;
            J.w0_check = std::abs(wstar(u) - w0) / std::abs(w0);
            J.u0 = u;
            J.d_hat = u - 2.0 * J.E / S.h;
            auto e1 = jf(J.d_hat);
            cplx ts1 = S.T(e1.sn);
            cplx w1 = wstar(J.d_hat);
            cplx sig1 = std::sqrt(ts1);
            if (sig1.imag() < 0) sig1 = -sig1;
            J.sigma1 = sig1;
            cplx f1 = S.sqrt_f(sig1);
            J.sheet = std::abs(w1 - f1) < std::abs(w1 + f1) ? 1 : 2;
            J.path = route_path(S, J.sigma0, sig1, J.sheet);
            J.Jpath = S.path_int(J.path, tk, 1, false, false, q);
            cplx tot = J.E + J.Jpath;
            Eigen::Vector2d mn = Mm.colPivHouseholderQr().solve(Eigen::Vector2d(-tot.real(), -tot.imag()));
            J.m0_raw = mn(0);
            J.n0_raw = mn(1);
            double dev = std::max(std::abs(mn(0) - std::round(mn(0))), std::abs(mn(1) - std::round(mn(1))));
            if (dev > 1e-3) {
                why += " [kappa root " + std::to_string(kc) + ": m0,n0 = " + std::to_string(mn(0)) + "," +
                       std::to_string(mn(1)) + "]";
                continue;
            }
            J.m0 = (int)std::lround(mn(0));
            J.n0 = (int)std::lround(mn(1));
            J.closure = std::abs(tot + double(J.m0) * S.loop_a + double(J.n0) * S.loop_b);
            return J;
        }
    throw SurfaceError("Jacobi inversion failed:" + why);
}

}  // namespace wedge
