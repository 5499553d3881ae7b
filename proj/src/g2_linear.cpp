#include "g2lab/g2_linear.hpp"

#include <cmath>

#include "g2lab/octonion.hpp"

namespace g2lab {

namespace {

constexpr int kN = 7;

VecX unit_vec(int i) {
    VecX v = VecX::Zero(kN);
    v[i] = 1.0;
    return v;
}

double max_abs_mat(const MatX& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

VecX gaussian(CounterRng& rng, int n) {
    VecX v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    return v;
}

// Indexed access helpers for dense 7^k storage.
inline std::size_t o3(int i, int j, int k) { return static_cast<std::size_t>((i * kN + j) * kN + k); }
inline std::size_t o4(int i, int j, int k, int l) { return static_cast<std::size_t>(((i * kN + j) * kN + k) * kN + l); }

}  // namespace

AltTensor phi0() {
    AltTensor p(kN, 3);
    for (const auto& t : fano_cycles()) p.set_alt({t[0] - 1, t[1] - 1, t[2] - 1}, 1.0);
    return p;
}

AltTensor psi0() {
    const auto& sc = StructureConstants::get();
    AltTensor p(kN, 4);
    for (int i = 0; i < kN; ++i)
        for (int j = 0; j < kN; ++j)
            for (int k = 0; k < kN; ++k)
                for (int l = 0; l < kN; ++l) p.raw(o4(i, j, k, l)) = sc.c4(i + 1, j + 1, k + 1, l + 1);
    return p;
}

AltTensor vol0() { return volume_form(Metric::identity(kN)); }

MatX phi_bilinear(const AltTensor& phi) {
    if (phi.dim() != kN || phi.degree() != 3) throw DimensionMismatch("expected a 3-form on R^7");
    std::vector<AltTensor> w;
    w.reserve(kN);
    for (int i = 0; i < kN; ++i) w.push_back(interior(unit_vec(i), phi));
    MatX b(kN, kN);
    for (int i = 0; i < kN; ++i)
        for (int j = i; j < kN; ++j) b(i, j) = b(j, i) = wedge_top(wedge(w[i], w[j]), phi);
    return b;
}

G2Structure metric_from_3form(const AltTensor& phi) {
    const MatX b = phi_bilinear(phi);
    const int s = b.trace() >= 0.0 ? 1 : -1;
    const MatX bn = s * b;
    Eigen::LLT<MatX> llt(bn);
    if (llt.info() != Eigen::Success) throw NotPositive("3-form is not positive");
    const MatX& l = llt.matrixL();
    double logdet = 0.0;
    for (int i = 0; i < kN; ++i) {
        if (!(l(i, i) > 0.0)) throw NotPositive("3-form is not positive");
        logdet += 2.0 * std::log(l(i, i));
    }
    // |det B|^{1/9} 6^{2/9}; B carries no 1/6 so phi0 maps to the identity.
    const double scale = std::exp(logdet / 9.0 + 2.0 * std::log(6.0) / 9.0);
    MatX g = bn / scale;
    g = 0.5 * (g + g.transpose());
    G2Structure out;
    out.phi = phi;
    out.g = Metric(g);
    out.orientation = s;
    out.psi = hodge(phi, out.g, s);
    out.vol = volume_form(out.g, s);
    return out;
}

MembershipReport g2_membership(const MatX& t) {
    MembershipReport r;
    static const AltTensor p0 = phi0();
    r.phi_residual = max_abs_diff(pullback(t, p0), p0);
    r.metric_residual = max_abs_mat(t.transpose() * t - MatX::Identity(t.rows(), t.cols()));
    r.det_residual = std::abs(t.determinant() - 1.0);
    return r;
}

bool is_g2_element(const MatX& t, double tol) {
    if (t.rows() != kN || t.cols() != kN) return false;
    return g2_membership(t).phi_residual <= tol;
}

VecX cross(const VecX& x, const VecX& y, const AltTensor& phi, const Metric& g) {
    const AltTensor w = interior(y, interior(x, phi));
    return sharp(Eigen::Map<const VecX>(w.comps().data(), w.dim()), g);
}

VecX cross(const VecX& x, const VecX& y) {
    static const AltTensor p0 = phi0();
    static const Metric id = Metric::identity(kN);
    return cross(x, y, p0, id);
}

MatX g2_from_triple(const VecX& h1, const VecX& h2, const VecX& h4, double tol) {
    if (h1.size() != kN || h2.size() != kN || h4.size() != kN) throw DimensionMismatch("triple vectors must live in R^7");
    MatX gram(3, 3);
    const VecX* hs[3] = {&h1, &h2, &h4};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) gram(a, b) = hs[a]->dot(*hs[b]);
    if (max_abs_mat(gram - MatX::Identity(3, 3)) > tol) throw BadTriple("triple is not orthonormal");
    const VecX h3 = cross(h1, h2);
    if (std::abs(h3.dot(h4)) > tol) throw BadTriple("h4 is not orthogonal to h1 x h2");
    MatX t(kN, kN);
    t.col(0) = h1;
    t.col(1) = h2;
    t.col(2) = h3;
    t.col(3) = h4;
    t.col(4) = cross(h1, h4);
    t.col(5) = cross(h2, h4);
    t.col(6) = cross(h4, h3);
    return t;
}

Triple random_admissible_triple(CounterRng& rng) {
    Triple t;
    t.h1 = gaussian(rng, kN).normalized();
    VecX v = gaussian(rng, kN);
    v -= v.dot(t.h1) * t.h1;
    t.h2 = v.normalized();
    const VecX h3 = cross(t.h1, t.h2);
    VecX w = gaussian(rng, kN);
    const VecX* basis[3] = {&t.h1, &t.h2, &h3};
    for (const VecX* b : basis) w -= w.dot(*b) * *b;
    t.h4 = w.normalized();
    return t;
}

MatX random_conditioned(CounterRng& rng, int n, double max_cond) {
    auto orth = [&] {
        MatX m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
        Eigen::HouseholderQR<MatX> qr(m);
        MatX q = qr.householderQ();
        const MatX r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int i = 0; i < n; ++i)
            if (r(i, i) < 0) q.col(i) *= -1.0;
        return q;
    };
    MatX u = orth(), v = orth();
    if ((u * v).determinant() < 0) u.col(0) *= -1.0;
    // Log-uniform singular values in [c^-1/2, c^1/2], so the ratio stays below c.
    const double half = 0.5 * std::log(max_cond);
    VecX s(n);
    for (int i = 0; i < n; ++i) s[i] = std::exp(rng.uniform(-half, half));
    return u * s.asDiagonal() * v.transpose();
}

std::array<double, 6> contraction_residuals(const G2Structure& s) {
    const MatX& g = s.g.g();
    const MatX& gi = s.g.inv();
    const auto& ph = s.phi.comps();
    const auto& ps = s.psi.comps();
    // One index raised on the last slot: ph1[ijc] = phi_ijk g^kc, etc.
    std::vector<double> ph1(ph.size(), 0.0), ph2(ph.size(), 0.0);
    for (int i = 0; i < kN; ++i)
        for (int j = 0; j < kN; ++j)
            for (int c = 0; c < kN; ++c) {
                double a = 0.0;
                for (int k = 0; k < kN; ++k) a += ph[o3(i, j, k)] * gi(k, c);
                ph1[o3(i, j, c)] = a;
            }
    for (int i = 0; i < kN; ++i)
        for (int b = 0; b < kN; ++b)
            for (int c = 0; c < kN; ++c) {
                double a = 0.0;
                for (int j = 0; j < kN; ++j) a += gi(b, j) * ph1[o3(i, j, c)];
                ph2[o3(i, b, c)] = a;
            }
    std::vector<double> ps1(ps.size(), 0.0), ps2(ps.size(), 0.0), ps3(ps.size(), 0.0);
    for (int i = 0; i < kN; ++i)
        for (int j = 0; j < kN; ++j)
            for (int k = 0; k < kN; ++k)
                for (int d = 0; d < kN; ++d) {
                    double a = 0.0;
                    for (int l = 0; l < kN; ++l) a += ps[o4(i, j, k, l)] * gi(l, d);
                    ps1[o4(i, j, k, d)] = a;
                }
    for (int i = 0; i < kN; ++i)
        for (int j = 0; j < kN; ++j)
            for (int c = 0; c < kN; ++c)
                for (int d = 0; d < kN; ++d) {
                    double a = 0.0;
                    for (int k = 0; k < kN; ++k) a += gi(c, k) * ps1[o4(i, j, k, d)];
                    ps2[o4(i, j, c, d)] = a;
                }
    for (int i = 0; i < kN; ++i)
        for (int b = 0; b < kN; ++b)
            for (int c = 0; c < kN; ++c)
                for (int d = 0; d < kN; ++d) {
                    double a = 0.0;
                    for (int j = 0; j < kN; ++j) a += gi(b, j) * ps2[o4(i, j, c, d)];
                    ps3[o4(i, b, c, d)] = a;
                }

    std::array<double, 6> r{};
    for (int i = 0; i < kN; ++i)
        for (int j = 0; j < kN; ++j)
            for (int a = 0; a < kN; ++a)
                for (int b = 0; b < kN; ++b) {
                    double lhs = 0.0;
                    for (int c = 0; c < kN; ++c) lhs += ph1[o3(i, j, c)] * ph[o3(a, b, c)];
                    const double rhs = g(i, a) * g(j, b) - g(i, b) * g(j, a) + ps[o4(i, j, a, b)];
                    r[0] = std::max(r[0], std::abs(lhs - rhs));
                }
    for (int i = 0; i < kN; ++i)
        for (int a = 0; a < kN; ++a) {
            double lhs = 0.0;
            for (int b = 0; b < kN; ++b)
                for (int c = 0; c < kN; ++c) lhs += ph2[o3(i, b, c)] * ph[o3(a, b, c)];
            r[1] = std::max(r[1], std::abs(lhs - 6.0 * g(i, a)));
        }
    for (int i = 0; i < kN; ++i)
        for (int j = 0; j < kN; ++j)
            for (int a = 0; a < kN; ++a)
                for (int b = 0; b < kN; ++b)
                    for (int c = 0; c < kN; ++c) {
                        double lhs = 0.0;
                        for (int d = 0; d < kN; ++d) lhs += ph1[o3(i, j, d)] * ps[o4(a, b, c, d)];
                        const double rhs = -g(i, a) * ph[o3(j, b, c)] - g(i, b) * ph[o3(a, j, c)] - g(i, c) * ph[o3(a, b, j)] +
                                           g(a, j) * ph[o3(i, b, c)] + g(b, j) * ph[o3(a, i, c)] + g(c, j) * ph[o3(a, b, i)];
                        r[2] = std::max(r[2], std::abs(lhs - rhs));
                    }
    for (int i = 0; i < kN; ++i)
        for (int a = 0; a < kN; ++a)
            for (int b = 0; b < kN; ++b) {
                double lhs = 0.0;
                for (int c = 0; c < kN; ++c)
                    for (int d = 0; d < kN; ++d) lhs += ph2[o3(i, c, d)] * ps[o4(a, b, c, d)];
                r[3] = std::max(r[3], std::abs(lhs - 4.0 * ph[o3(i, a, b)]));
            }
    for (int i = 0; i < kN; ++i)
        for (int j = 0; j < kN; ++j)
            for (int a = 0; a < kN; ++a)
                for (int b = 0; b < kN; ++b) {
                    double lhs = 0.0;
                    for (int c = 0; c < kN; ++c)
                        for (int d = 0; d < kN; ++d) lhs += ps2[o4(i, j, c, d)] * ps[o4(a, b, c, d)];
                    const double rhs = 4.0 * g(i, a) * g(j, b) - 4.0 * g(i, b) * g(j, a) + 2.0 * ps[o4(i, j, a, b)];
                    r[4] = std::max(r[4], std::abs(lhs - rhs));
                }
    for (int i = 0; i < kN; ++i)
        for (int a = 0; a < kN; ++a) {
            double lhs = 0.0;
            for (int b = 0; b < kN; ++b)
                for (int c = 0; c < kN; ++c)
                    for (int d = 0; d < kN; ++d) lhs += ps3[o4(i, b, c, d)] * ps[o4(a, b, c, d)];
            r[5] = std::max(r[5], std::abs(lhs - 24.0 * g(i, a)));
        }
    return r;
}

const char* IdentityPack::name(int i) {
    static const char* names[12] = {
        "norm phi^a = 4|a|^2",          "norm psi^a = 3|a|^2",         "*(phi^*(phi^a)) = -4a",
        "*(psi^*(psi^a)) = 3a",         "psi^*(phi^a) = 0",            "phi^*(psi^a) = 2 psi^a",
        "*(phi^X) = X-|psi",            "*(psi^X) = X-|phi",           "phi^(X-|phi) = 2*(X-|phi)",
        "psi^(X-|phi) = 3*X",           "phi^(X-|psi) = -4*X",         "psi^(X-|psi) = 0",
    };
    return names[i];
}

IdentityPack identity_pack(const G2Structure& s, const VecX& alpha, const VecX& x) {
    const int o = s.orientation;
    const Metric& g = s.g;
    const AltTensor a = AltTensor::from_covector(alpha);
    const AltTensor xf = AltTensor::from_covector(flat(x, g));
    const double na = form_norm2(a, g);
    auto star = [&](const AltTensor& t) { return hodge(t, g, o); };
    const AltTensor pa = wedge(s.phi, a), qa = wedge(s.psi, a);
    const AltTensor xp = interior(x, s.phi), xq = interior(x, s.psi);
    IdentityPack p;
    p.residual[0] = std::abs(form_norm2(pa, g) - 4.0 * na);
    p.residual[1] = std::abs(form_norm2(qa, g) - 3.0 * na);
    p.residual[2] = max_abs_diff(star(wedge(s.phi, star(pa))), -4.0 * a);
    p.residual[3] = max_abs_diff(star(wedge(s.psi, star(qa))), 3.0 * a);
    p.residual[4] = wedge(s.psi, star(pa)).max_abs();
    p.residual[5] = max_abs_diff(wedge(s.phi, star(qa)), 2.0 * qa);
    p.residual[6] = max_abs_diff(star(wedge(s.phi, xf)), xq);
    p.residual[7] = max_abs_diff(star(wedge(s.psi, xf)), xp);
    p.residual[8] = max_abs_diff(wedge(s.phi, xp), 2.0 * star(xp));
    p.residual[9] = max_abs_diff(wedge(s.psi, xp), 3.0 * star(xf));
    p.residual[10] = max_abs_diff(wedge(s.phi, xq), -4.0 * star(xf));
    p.residual[11] = wedge(s.psi, xq).max_abs();
    return p;
}

double cross_norm_volume_residual(const G2Structure& s, const VecX& x) {
    const AltTensor xp = interior(x, s.phi);
    const double n2 = x.dot(s.g.g() * x);
    return max_abs_diff(wedge(wedge(xp, xp), s.phi), 6.0 * n2 * s.vol);
}

int two_form_dim() { return kN * (kN - 1) / 2; }

VecX pack2(const AltTensor& beta) {
    const auto cs = combinations(kN, 2);
    VecX v(static_cast<int>(cs.size()));
    for (std::size_t i = 0; i < cs.size(); ++i) v[static_cast<int>(i)] = beta.at(cs[i].data());
    return v;
}

AltTensor unpack2(const VecX& v) {
    const auto cs = combinations(kN, 2);
    AltTensor b(kN, 2);
    for (std::size_t i = 0; i < cs.size(); ++i) b.set_alt(cs[i].data(), v[static_cast<int>(i)]);
    return b;
}

VecX pack3(const AltTensor& eta) {
    const auto cs = combinations(kN, 3);
    VecX v(static_cast<int>(cs.size()));
    for (std::size_t i = 0; i < cs.size(); ++i) v[static_cast<int>(i)] = eta.at(cs[i].data());
    return v;
}

AltTensor unpack3(const VecX& v) {
    const auto cs = combinations(kN, 3);
    AltTensor b(kN, 3);
    for (std::size_t i = 0; i < cs.size(); ++i) b.set_alt(cs[i].data(), v[static_cast<int>(i)]);
    return b;
}

AltTensor r_operator(const AltTensor& beta, const G2Structure& s) {
    return hodge(wedge(s.phi, beta), s.g, s.orientation);
}

MatX r_operator_matrix(const G2Structure& s) {
    const int d = two_form_dim();
    MatX m(d, d);
    for (int c = 0; c < d; ++c) m.col(c) = pack2(r_operator(unpack2(VecX::Unit(d, c)), s));
    return m;
}

AltTensor r_index_form(const AltTensor& beta, const G2Structure& s) {
    const AltTensor bu = raise_all(beta, s.g);
    const auto& ps = s.psi.comps();
    AltTensor out(kN, 2);
    for (int a = 0; a < kN; ++a)
        for (int b = 0; b < kN; ++b) {
            double acc = 0.0;
            for (int c = 0; c < kN; ++c)
                for (int d = 0; d < kN; ++d) acc += ps[o4(a, b, c, d)] * bu.raw(static_cast<std::size_t>(c * kN + d));
            out.raw(static_cast<std::size_t>(a * kN + b)) = -0.5 * acc;
        }
    return out;
}

FormSplit2 split2(const AltTensor& beta, const G2Structure& s) {
    const AltTensor r = r_operator(beta, s);
    FormSplit2 out;
    out.beta7 = (1.0 / 3.0) * (r + beta);
    out.beta14 = (1.0 / 3.0) * (2.0 * beta - r);
    return out;
}

AltTensor map_F(const MatX& a, const G2Structure& s) {
    const MatX endo = a * s.g.inv();  // endo(i, l) = a_i^l
    const auto& ph = s.phi.comps();
    AltTensor out(kN, 3);
    for (int i = 0; i < kN; ++i)
        for (int j = 0; j < kN; ++j)
            for (int k = 0; k < kN; ++k) {
                double acc = 0.0;
                for (int l = 0; l < kN; ++l)
                    acc += endo(i, l) * ph[o3(l, j, k)] + endo(j, l) * ph[o3(i, l, k)] + endo(k, l) * ph[o3(i, j, l)];
                out.raw(o3(i, j, k)) = acc;
            }
    return out;
}

FormSplit3 split3(const AltTensor& eta, const G2Structure& s) {
    const MatX& g = s.g.g();
    const MatX& gi = s.g.inv();
    auto traceless = [&](const MatX& h) { return MatX(h - ((h.cwiseProduct(gi)).sum() / 7.0) * g); };
    // Unknowns: f, X (7), symmetric h (28) projected to its g-traceless part.
    const int nsym = kN * (kN + 1) / 2;
    const int cols = 1 + kN + nsym;
    MatX m(35, cols);
    m.col(0) = pack3(s.phi);
    for (int l = 0; l < kN; ++l) m.col(1 + l) = pack3(interior(unit_vec(l), s.psi));
    std::vector<MatX> sym;
    for (int a = 0; a < kN; ++a)
        for (int b = a; b < kN; ++b) {
            MatX e = MatX::Zero(kN, kN);
            e(a, b) = e(b, a) = 1.0;
            sym.push_back(e);
        }
    for (int c = 0; c < nsym; ++c) m.col(1 + kN + c) = pack3(map_F(traceless(sym[static_cast<std::size_t>(c)]), s));
    const VecX sol = m.completeOrthogonalDecomposition().solve(pack3(eta));
    FormSplit3 out;
    out.f = sol[0];
    out.x = sol.segment(1, kN);
    MatX h = MatX::Zero(kN, kN);
    for (int c = 0; c < nsym; ++c) h += sol[1 + kN + c] * sym[static_cast<std::size_t>(c)];
    out.h0 = traceless(h);
    out.part1 = out.f * s.phi;
    out.part7 = interior(out.x, s.psi);
    out.part27 = map_F(out.h0, s);
    return out;
}

}  // namespace g2lab
