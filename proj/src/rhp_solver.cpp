#include "wedge/rhp_solver.hpp"

#include <cmath>

namespace wedge {

namespace {

bool is_normal(const WedgeProblem& p) { return std::abs(p.cb) < 1e-12; }

MatX null_space(const MatX& M, double tol, Eigen::VectorXd& sv) {
    Eigen::JacobiSVD<MatX> svd(M, Eigen::ComputeFullV);
    sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++rank;
    return svd.matrixV().rightCols(M.cols() - rank);
}

void normalize_rows(MatX& M) {
    for (int i = 0; i < M.rows(); ++i) {
        double n = M.row(i).norm();
        if (n > 0) M.row(i) /= n;
    }
}

}  // namespace

RhpSystem::RhpSystem(const WedgeProblem& p, const RhpConfig& cfg) : p_(p) {
    spec_.normal_incidence = is_normal(p);
    if (spec_.normal_incidence) {
        s_ = build_structural(p);
    } else {
        pipe_ = build_factorization(p, cfg.surface, cfg.factor);
        s_ = pipe_->surf->s;
        fac_ = pipe_->fac;
        spec_.kappa0 = pipe_->surf->kappa0;
    }
    rho_.emplace(s_);
    for (auto z : s_.eta_roots) (z.imag() > 0 ? rplus_ : rminus_).push_back(z);
    spec_.nplus = (int)rplus_.size();
    spec_.kappa = 1 - spec_.nplus;
    spec_.case_tag = s_.case_tag;
    spec_.degree = (spec_.normal_incidence ? 3 : 5) - spec_.nplus + std::abs(spec_.kappa0);
    nu_ = -s_.delta_star / (p.sb * p.sb);
    t1_ = s_.t[0];
    t2_ = s_.t[1];
    spec_.denominator = {p.eta0, -p.eta0};
    if (!spec_.normal_incidence) {
        cplx s1 = pipe_->jac.sigma1;
        spec_.denominator.push_back(s1);
        spec_.denominator.push_back(-s1);
        if (spec_.kappa0) spec_.denominator.push_back(double(spec_.kappa0) * pipe_->jac.rho0);
    }
    MatX A = symmetry_rows();
    A /= A.rowwise().norm().maxCoeff();
    MatX B = removal_rows();
    normalize_rows(B);
    MatX M(A.rows() + B.rows(), A.cols());
    M << A, B;
    basis_ = null_space(M, cfg.rank_tol, sv_);
}

cplx RhpSystem::den(cplx e) const {
    cplx v = 1.0;
    for (auto z : spec_.denominator) v *= e - z;
    return v;
}

Mat2 RhpSystem::X(cplx e, int side) const { return fac_ ? fac_->X(e, side) : Mat2::Identity(); }
cplx RhpSystem::rho_plus(cplx e) const { return rho_->plus(e); }
cplx RhpSystem::rho_minus(cplx e) const { return rho_->minus(e); }

cplx RhpSystem::Dplus(cplx e) const {
    cplx v = 1.0;
    for (auto z : rminus_) v *= e - z;
    return v;
}

cplx RhpSystem::Dminus(cplx e) const {
    cplx v = 1.0;
    for (auto z : rplus_) v *= e - z;
    return v;
}

MatX RhpSystem::pvec_map(cplx e) const {
    int N = spec_.degree;
    MatX E = MatX::Zero(2, 2 * (N + 1));
    cplx pw = 1.0;
    for (int k = 0; k <= N; ++k, pw *= e) {
        E(0, k) = pw;
        E(1, N + 1 + k) = pw;
    }
    return E;
}

MatX RhpSystem::plus_map(cplx e, int side) const {
    if (side == 0 && e.imag() == 0) side = 1;
    cplx pref = nu_ * rho_plus(e) / (Dplus(e) * (e - t1_) * (e - t2_) * den(e));
    return pref * (eval_G1(s_, e) * X(e, side)) * pvec_map(e);
}

MatX RhpSystem::minus_map(cplx e, int side) const {
    if (side == 0 && e.imag() == 0) side = -1;
    cplx pref = Dminus(e) * rho_minus(e) / ((e - t1_) * (e - t2_) * den(e));
    return pref * X(e, side) * pvec_map(e);
}

MatX RhpSystem::residue_map_eta0() const {
    cplx e = p_.eta0;
    cplx rest = 1.0;
    for (size_t i = 2; i < spec_.denominator.size(); ++i) rest *= e - spec_.denominator[i];
    cplx pref = nu_ * rho_plus(e) / (Dplus(e) * (e - t1_) * (e - t2_) * rest * (2.0 * e));
    return pref * (eval_G1(s_, e) * X(e, 0)) * pvec_map(e);
}

MatX RhpSystem::symmetry_rows() const {
    int N = spec_.degree;
    Poly t12 = poly_from_roots({t1_, t2_});
    double sgn = ((spec_.kappa0 + spec_.nplus) % 2 == 0) ? 1.0 : -1.0;
    cplx sg = sgn * nu_;
    MatX out = MatX::Zero(2 * (N + 3), 2 * (N + 1));
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k <= N; ++k) {
            // (eta - t1)(eta - t2) P_j(-eta)
            double sk = (k % 2 == 0) ? 1.0 : -1.0;
            for (int d = 0; d <= t12.degree(); ++d) out(j * (N + 3) + d + k, j * (N + 1) + k) += sk * t12.c[d];
            // - sg G1_{ji}(eta) P_i(eta)
            for (int i = 0; i < 2; ++i) {
                const Poly& g = s_.g1[j][i];
                for (int d = 0; d <= g.degree(); ++d) out(j * (N + 3) + d + k, i * (N + 1) + k) -= sg * g.c[d];
            }
        }
    }
    return out;
}

MatX RhpSystem::removal_rows() const {
    if (spec_.normal_incidence) return MatX(0, n_coeffs());
    const SurfaceData& S = *pipe_->surf;
    const JacobiSolution& J = pipe_->jac;
    std::vector<std::pair<cplx, cplx>> pts;  // (point, w with the sign selecting the pole direction)
    pts.push_back({J.sigma1, -(J.sheet == 1 ? 1.0 : -1.0) * S.sqrt_f(J.sigma1)});
    pts.push_back({J.sigma0, S.sqrt_f(J.sigma0)});
    if (spec_.kappa0) pts.push_back({J.rho0, -double(spec_.kappa0) * S.sqrt_f(J.rho0)});
    MatX out(pts.size(), n_coeffs());
    for (size_t i = 0; i < pts.size(); ++i) {
        auto [e, w] = pts[i];
        MatX E = pvec_map(e);
        out.row(i) = (w + s_.l(e)) * E.row(0) + s_.m(e) * E.row(1);
    }
    return out;
}

// ---------------------------------------------------------------- evaluation

namespace {

Mat2 G_at(const WedgeProblem& p, cplx eta, cplx zeta) {
    return std::isnan(zeta.real()) ? eval_G(p, eta) : eval_G_branch(p, eta, zeta);
}

}  // namespace

Vec2 eval_plus(const RhpSystem& r, const VecX& c, cplx eta, cplx zeta) {
    if (eta.imag() >= 0) return r.plus_map(eta) * c;
    return G_at(r.problem(), eta, zeta) * (r.minus_map(eta) * c);
}

Vec2 eval_minus(const RhpSystem& r, const VecX& c, cplx eta, cplx zeta) {
    if (eta.imag() <= 0) return r.minus_map(eta) * c;
    return G_at(r.problem(), eta, zeta).inverse() * (r.plus_map(eta) * c);
}

Vec2 RhpSolution::eval(cplx eta, Which w) const {
    switch (w) {
        case Which::plus: return eval_plus(*rhp1, c1, eta);
        case Which::minus: return eval_minus(*rhp1, c1, eta);
        case Which::hat_plus: return eval_plus(*rhp2, c2, eta);
        default: return eval_minus(*rhp2, c2, eta);
    }
}

Vec2 RhpSolution::eval(cplx eta, Which w, cplx zeta) const {
    switch (w) {
        case Which::plus: return eval_plus(*rhp1, c1, eta, zeta);
        case Which::minus: return eval_minus(*rhp1, c1, eta, zeta);
        case Which::hat_plus: return eval_plus(*rhp2, c2, eta, zeta);
        default: return eval_minus(*rhp2, c2, eta, zeta);
    }
}

namespace {

// Phi+ and Phi- maps of RHP 1 at an arbitrary point
std::pair<MatX, MatX> both_maps(const RhpSystem& r, cplx z) {
    if (z.imag() >= 0) {
        MatX Pp = r.plus_map(z);
        MatX Pm = eval_G(r.problem(), z).inverse() * Pp;
        return {Pp, Pm};
    }
    MatX Pm = r.minus_map(z);
    MatX Pp = eval_G(r.problem(), z) * Pm;
    return {Pp, Pm};
}

// linking relation between RHP 1 at zeta_hat and RHP 2 at eta: rows act on c1
MatX compat_lhs_map(const RhpSystem& r, cplx eta) {
    const auto& p = r.problem();
    cplx zh = I * zeta_branch(p.k0, eta);
    auto [Pp, Pm] = both_maps(r, zh);
    MatX out(2, Pp.cols());
    cplx gp[2] = {p.g1p, p.g4p};
    for (int j = 0; j < 2; ++j) {
        double sj = j == 0 ? -1.0 : 1.0;  // (-1)^j with j = 1, 2
        out.row(j) = -(gp[j] + eta) / (2.0 * zh) * (Pp.row(j) - Pm.row(j)) -
                     (sj * p.cb / 2.0) * (Pp.row(1 - j) + Pm.row(1 - j));
    }
    return out;
}

}  // namespace

Vec2 RhpSolution::compat_lhs(cplx eta) const { return compat_lhs_map(*rhp1, eta) * c1; }
Vec2 RhpSolution::compat_rhs(cplx eta) const { return eval_plus(*rhp2, c2, eta); }

std::vector<cplx> default_compat_points(const WedgeProblem& p, int count, int shift) {
    std::vector<cplx> out;
    double base = 0.37 + 0.13 * shift;
    for (int j = 1; j <= count; ++j) out.push_back(p.k0 * cplx(base + 0.61 * j, 0.23));
    return out;
}

Vec2 circle_residue(const std::function<Vec2(cplx)>& f, cplx z0, double radius, int n) {
    Vec2 s = Vec2::Zero();
    for (int i = 0; i < n; ++i) {
        cplx u = radius * std::exp(I * (2 * PI * (i + 0.5) / n));
        s += f(z0 + u) * u;
    }
    return s / double(n);
}

RhpSolution solve_rhp(const WedgeProblem& p, const RhpConfig& cfg) {
    RhpSolution sol;
    auto r1 = std::make_shared<RhpSystem>(p, cfg);
    auto r2 = std::make_shared<RhpSystem>(p.swapped(), cfg);
    sol.rhp1 = r1;
    sol.rhp2 = r2;
    const MatX& B1 = r1->basis();
    const MatX& B2 = r2->basis();
    int n1 = (int)B1.cols(), n2 = (int)B2.cols();
    if (n1 == 0 || n2 == 0) throw RhpError("an RHP has no admissible solution");
    int count = std::max(n1 + n2, 4);
    sol.compat_points = cfg.compat_points.empty() ? default_compat_points(p, count, cfg.compat_shift) : cfg.compat_points;
    MatX M(2 * sol.compat_points.size(), n1 + n2);
    for (size_t k = 0; k < sol.compat_points.size(); ++k) {
        cplx e = sol.compat_points[k];
        MatX L = compat_lhs_map(*r1, e) * B1;
        MatX R = r2->plus_map(e) * B2;
        M.block(2 * k, 0, 2, n1) = L;
        M.block(2 * k, n1, 2, n2) = -R;
    }
    normalize_rows(M);
    Eigen::JacobiSVD<MatX> svd(M, Eigen::ComputeFullV);
    sol.compat_sv = svd.singularValues();
    sol.joint_nullity = 0;
    for (int i = 0; i < sol.compat_sv.size(); ++i)
        if (sol.compat_sv(i) < 1e-7 * sol.compat_sv(0)) ++sol.joint_nullity;
    sol.joint_nullity += std::max(0, (int)M.cols() - (int)sol.compat_sv.size());
    MatX V = svd.matrixV().rightCols(2);

    // residues: Res_{eta0} Phi+ = i (r+ + i)
    auto refl = reflection_coefficients(p);
    sol.C = Vec2(refl.r1p + p.i1, refl.r2p + p.i2);
    MatX Rm = r1->residue_map_eta0() * B1 * V.topRows(n1);
    Eigen::Matrix2cd R2 = Rm;
    if (std::abs(R2.determinant()) < 1e-14 * R2.squaredNorm()) throw RhpError("residue equations are singular");
    Vec2 y = R2.fullPivLu().solve(I * sol.C);
    sol.c1 = B1 * (V.topRows(n1) * y);
    sol.c2 = B2 * (V.bottomRows(n2) * y);
    return sol;
}

}  // namespace wedge
