#include "wedge/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <queue>

namespace wedge {

// ---------------------------------------------------------------- polynomials

cplx Poly::operator()(cplx x) const {
    cplx s{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
}

Poly Poly::reflected() const {
    Poly r = *this;
    for (size_t k = 1; k < r.c.size(); k += 2) r.c[k] = -r.c[k];
    return r;
}

double Poly::max_abs() const {
    double m = 0;
    for (auto& v : c) m = std::max(m, std::abs(v));
    return m;
}

Poly Poly::trimmed(double rel) const {
    Poly r = *this;
    double tol = rel * max_abs();
    while (r.c.size() > 1 && std::abs(r.c.back()) <= tol) r.c.pop_back();
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.coeff((int)k) + b.coeff((int)k);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + cplx(-1.0) * b; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.c.empty() || b.c.empty()) return {};
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, cplx{});
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

Poly operator*(cplx s, const Poly& a) {
    Poly r = a;
    for (auto& v : r.c) v *= s;
    return r;
}

Poly poly_from_roots(const std::vector<cplx>& roots) {
    Poly p{1.0};
    for (auto z : roots) p = p * Poly{-z, 1.0};
    return p;
}

double poly_rel_diff(const Poly& a, const Poly& b) {
    double scale = std::max({a.max_abs(), b.max_abs(), 1e-300});
    double d = 0;
    size_t n = std::max(a.c.size(), b.c.size());
    for (size_t k = 0; k < n; ++k) d = std::max(d, std::abs(a.coeff((int)k) - b.coeff((int)k)));
    return d / scale;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs) {
    std::vector<cplx> c = coeffs;
    while (!c.empty() && c.back() == cplx{}) c.pop_back();
    int n = (int)c.size() - 1;
    if (n <= 0) return {};
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) M(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) M(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    std::vector<cplx> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
    Poly p(c), dp;
    for (int k = 1; k <= n; ++k) dp.c.push_back(double(k) * c[k]);
    for (auto& z : r) {
        for (int it = 0; it < 3; ++it) {
            cplx d = dp(z);
            if (std::abs(d) == 0) break;
            cplx step = p(z) / d;
            if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-6 * (1 + std::abs(z))) break;
            z -= step;
        }
    }
    return r;
}

// ---------------------------------------------------------------- quadrature

namespace {

const double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                       0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                       0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                       0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                       0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                       0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                       0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    cplx a, b, val;
    double err, absint;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const CFun& f, cplx a, cplx b) {
    cplx m = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = f(m);
    cplx rk = fc * wgk[7], rg = fc * wg[3];
    double ra = std::abs(fc) * wgk[7];
    for (int j = 0; j < 7; ++j) {
        cplx f1 = f(m - h * xgk[j]), f2 = f(m + h * xgk[j]);
        rk += (f1 + f2) * wgk[j];
        ra += (std::abs(f1) + std::abs(f2)) * wgk[j];
        if (j % 2 == 1) rg += (f1 + f2) * wg[j / 2];
    }
    Panel p{a, b, rk * h, std::abs((rk - rg) * h), ra * std::abs(h)};
    return p;
}

}  // namespace

QuadResult integrate_segment_ex(const CFun& f, cplx a, cplx b, const QuadratureConfig& cfg) {
    if (a == b) return {cplx{}, 0.0, 0};
    std::priority_queue<Panel> heap;
    Panel p0 = gk15(f, a, b);
    heap.push(p0);
    cplx total = p0.val;
    double err = p0.err;
    double absint = p0.absint;
    int n = 1;
    constexpr double eps = 2.2e-16;
    while (true) {
        double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (err <= tol || err <= 50 * eps * absint) break;
        if (n >= cfg.max_subdivisions) {
            const Panel& w = heap.top();
            if (w.err <= 1e-8 * std::max(1.0, std::abs(total)))
                break;  // accept: residual error is far below any downstream tolerance
            throw QuadratureError("quadrature did not converge", w.a, w.b, w.err);
        }
        Panel w = heap.top();
        heap.pop();
        if (std::abs(w.b - w.a) < 1e-14 * (std::abs(a) + std::abs(b - a))) {
            // interval cannot be refined further; freeze its contribution
            err -= w.err;
            w.err = 0;
            heap.push(w);
            if (heap.top().err == 0) break;
            continue;
        }
        cplx m = 0.5 * (w.a + w.b);
        Panel l = gk15(f, w.a, m), r = gk15(f, m, w.b);
        total += l.val + r.val - w.val;
        err += l.err + r.err - w.err;
        absint += l.absint + r.absint - w.absint;
        heap.push(l);
        heap.push(r);
        n += 2;
    }
    // recompute sum to avoid drift
    cplx s{};
    double e = 0;
    while (!heap.empty()) {
        s += heap.top().val;
        e += heap.top().err;
        heap.pop();
    }
    return {s, e, n * 15};
}

cplx integrate_segment(const CFun& f, cplx a, cplx b, const QuadratureConfig& cfg) {
    return integrate_segment_ex(f, a, b, cfg).value;
}

cplx integrate_segment_sing(const CFun& f, cplx a, cplx b, bool sa, bool sb, const QuadratureConfig& cfg) {
    if (!sa && !sb) return integrate_segment(f, a, b, cfg);
    cplx d = b - a;
    const double tiny = 1e-13 * std::abs(d);
    if (sa && sb) {
        // t = a + d sin^2(th/2), measured from the nearer end to keep the offset exact
        auto g = [&](cplx th) {
            double t = th.real();
            double s = std::sin(0.5 * t), c = std::cos(0.5 * t);
            cplx x = t < PI / 2 ? a + d * (s * s) : b - d * (c * c);
            if (std::abs(x - a) < tiny || std::abs(x - b) < tiny) return cplx{};  // offset lost to rounding
            return f(x) * d * (0.5 * std::sin(t));
        };
        return integrate_segment(g, 0.0, PI, cfg);
    }
    if (sb) {
        auto g = [&](cplx u) {
            double s = u.real();
            cplx x = b - d * (s * s);
            return std::abs(x - b) < tiny ? cplx{} : f(x) * d * (2 * s);
        };
        return integrate_segment(g, 0.0, 1.0, cfg);
    }
    auto g = [&](cplx u) {
        double s = u.real();
        cplx x = a + d * (s * s);
        return std::abs(x - a) < tiny ? cplx{} : f(x) * d * (2 * s);
    };
    return integrate_segment(g, 0.0, 1.0, cfg);
}

cplx integrate_ray(const CFun& f, cplx a, cplx dir, const QuadratureConfig& cfg) {
    double L = 1.0, x = 0.0;
    cplx tot{};
    double p = std::max(cfg.tail_exponent, 1.5);
    for (int k = 0; k < 200; ++k) {
        double y = x + L;
        cplx v = integrate_segment(f, a + dir * x, a + dir * y, cfg);
        tot += v;
        double tail = std::abs(f(a + dir * y)) * y / (p - 1);
        if (k > 3 && tail < std::max(cfg.abs_tol, cfg.rel_tol * std::abs(tot)) &&
            std::abs(v) < 10 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(tot)))
            break;
        if (y > cfg.truncation_radius) break;
        x = y;
        L *= 2;
    }
    return tot;
}

cplx integrate_path(const CFun& f, const ComplexPath& path, const QuadratureConfig& cfg) {
    if (path.samples.size() < 2) throw std::invalid_argument("path needs at least two samples");
    if (path.kind == ComplexPath::Kind::RealRay)
        return integrate_ray(f, path.samples[0], path.samples[1] / std::abs(path.samples[1]), cfg);
    cplx s{};
    for (size_t i = 0; i + 1 < path.samples.size(); ++i) {
        if (path.samples[i] == path.samples[i + 1]) throw std::invalid_argument("repeated path sample");
        s += integrate_segment(f, path.samples[i], path.samples[i + 1], cfg);
    }
    return s;
}

// ---------------------------------------------------------------- elliptic

cplx agm(cplx a, cplx b) {
    for (int i = 0; i < 100; ++i) {
        cplx an = 0.5 * (a + b), bn = std::sqrt(a * b);
        if (std::abs(an - bn) > std::abs(an + bn)) bn = -bn;
        a = an;
        b = bn;
        if (std::abs(a - b) <= 1e-16 * std::abs(a)) break;
    }
    return a;
}

cplx complete_elliptic_K(cplx k) {
    if (std::abs(k * k - 1.0) < 1e-15) throw std::domain_error("modulus at a branch point");
    return PI / (2.0 * agm(1.0, std::sqrt(1.0 - k * k)));
}

cplx complete_elliptic_Kp(cplx k) {
    if (std::abs(k) < 1e-300) throw std::domain_error("K' diverges at k = 0");
    return PI / (2.0 * agm(1.0, k));
}

cplx elliptic_integral_to(cplx z, cplx k, const QuadratureConfig& cfg) {
    if (z == cplx{}) return {};
    // sign table of v along the segment, continuous from v(0) = 1
    const int N = 2048;
    std::vector<cplx> vt(N + 1);
    auto vraw = [&](cplx t) { return std::sqrt((1.0 - t * t) * (1.0 - k * k * t * t)); };
    vt[0] = 1.0;
    for (int i = 1; i <= N; ++i) {
        cplx v = vraw(z * (double(i) / N));
        if (std::abs(v - vt[i - 1]) > std::abs(v + vt[i - 1])) v = -v;
        vt[i] = v;
    }
    auto g = [&](cplx s) {
        double x = std::clamp(s.real(), 0.0, 1.0);
        int i = std::min(N - 1, (int)(x * N));
        double w = x * N - i;
        cplx ref = (1 - w) * vt[i] + w * vt[i + 1];
        cplx v = vraw(z * x);
        if (std::abs(v - ref) > std::abs(v + ref)) v = -v;
        return z / v;
    };
    bool send = std::abs(1.0 - z * z) < 1e-10 || std::abs(1.0 - k * k * z * z) < 1e-10;
    return integrate_segment_sing(g, 0.0, 1.0, false, send, cfg);
}

cplx incomplete_elliptic_F(cplx phi, cplx k, const QuadratureConfig& cfg) {
    return elliptic_integral_to(std::sin(phi), k, cfg);
}

JacobiElliptic::JacobiElliptic(cplx k) : k_(k) {
    cplx a = 1.0, b = std::sqrt(1.0 - k * k), c = k;
    a_.push_back(a);
    c_.push_back(c);
    for (int i = 0; i < 60 && std::abs(c) > 1e-17 * std::abs(a); ++i) {
        cplx an = 0.5 * (a + b), bn = std::sqrt(a * b);
        if (std::abs(an - bn) > std::abs(an + bn)) bn = -bn;
        c = c * c / (4.0 * an);
        a = an;
        b = bn;
        a_.push_back(a);
        c_.push_back(c);
    }
    K_ = PI / (2.0 * a_.back());
    Kp_ = complete_elliptic_Kp(k);
}

SnCnDn JacobiElliptic::landen(cplx u) const {
    int N = (int)a_.size() - 1;
    cplx phi = std::ldexp(1.0, N) * a_[N] * u, phi_prev = phi;
    for (int n = N; n >= 1; --n) {
        phi_prev = phi;
        phi = 0.5 * (phi + std::asin(c_[n] / a_[n] * std::sin(phi)));
    }
    cplx s = std::sin(phi), c = std::cos(phi);
    cplx d = N >= 1 ? c / std::cos(phi_prev - phi) : 1.0;
    return {s, c, d};
}

SnCnDn JacobiElliptic::operator()(cplx u) const {
    // u = x (2K) + y (2iK')
    cplx P = 2.0 * K_, Q = 2.0 * I * Kp_;
    double det = P.real() * Q.imag() - P.imag() * Q.real();
    double x = (u.real() * Q.imag() - u.imag() * Q.real()) / det;
    double y = (P.real() * u.imag() - P.imag() * u.real()) / det;
    double nx = std::round(x), ny = std::round(y);
    cplx ur = u - nx * P - ny * Q;
    double sx = std::fmod(std::abs(nx), 2.0) == 1.0 ? -1.0 : 1.0;
    double sy = std::fmod(std::abs(ny), 2.0) == 1.0 ? -1.0 : 1.0;
    double yr = y - ny;
    SnCnDn r;
    if (std::abs(yr) <= 0.25) {
        r = landen(ur);
    } else {
        // shift by +-iK' into the central band, then apply the quarter-period relations
        double s = yr > 0 ? 1.0 : -1.0;
        SnCnDn v = landen(ur - s * I * Kp_);
        r.sn = 1.0 / (k_ * v.sn);
        r.cn = -I * v.dn / (k_ * v.sn);
        r.dn = -I * v.cn / v.sn;
        if (s < 0) {
            r.cn = -r.cn;
            r.dn = -r.dn;
        }
    }
    r.sn *= sx;
    r.cn *= sx * sy;
    r.dn *= sy;
    return r;
}

// ---------------------------------------------------------------- phases

std::vector<double> unwrap_phase(const std::vector<cplx>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == cplx{}) throw std::domain_error("zero sample in phase unwrapping");
        if (i == 0) {
            out.push_back(std::arg(v[0]));
            continue;
        }
        double d = std::arg(v[i] / v[i - 1]);
        if (std::abs(d) >= PI * (1 - 1e-12)) throw std::domain_error("phase jump of pi between samples");
        out.push_back(out.back() + d);
    }
    return out;
}

double unwrap_increment(const std::function<cplx(double)>& g, double t0, double t1, int n0, int max_depth) {
    double total = 0;
    std::function<double(double, double, cplx, cplx, int)> rec = [&](double a, double b, cplx ga, cplx gb,
                                                                      int depth) -> double {
        if (ga == cplx{} || gb == cplx{}) throw std::domain_error("zero sample in phase unwrapping");
        double d = std::arg(gb / ga);
        if (std::abs(d) < PI / 2) {
            // confirm with the midpoint to reject aliasing
            double m = 0.5 * (a + b);
            cplx gm = g(m);
            double d1 = std::arg(gm / ga), d2 = std::arg(gb / gm);
            if (std::abs(d1 + d2 - d) < 1e-9 && std::abs(d1) < PI / 2 && std::abs(d2) < PI / 2) return d;
        }
        if (depth >= max_depth) throw std::domain_error("phase unwrapping failed to resolve a jump");
        double m = 0.5 * (a + b);
        cplx gm = g(m);
        return rec(a, m, ga, gm, depth + 1) + rec(m, b, gm, gb, depth + 1);
    };
    double h = (t1 - t0) / n0;
    cplx prev = g(t0);
    for (int i = 1; i <= n0; ++i) {
        double t = t0 + h * i;
        cplx cur = g(t);
        total += rec(t - h, t, prev, cur, 0);
        prev = cur;
    }
    return total;
}

}  // namespace wedge
