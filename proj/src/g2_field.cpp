#include "g2lab/g2_field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>

#include "g2lab/deformations.hpp"
#include "g2lab/errors.hpp"
#include "g2lab/phi_algebra.hpp"

namespace g2lab {

namespace {

constexpr int N = 7;

VecX unit_vec(int m) {
    VecX e = VecX::Zero(N);
    e[m] = 1.0;
    return e;
}

// g-inner product of two 2-tensors.
double tensor_inner(const MatX& a, const MatX& b, const MatX& ginv) { return (ginv * a * ginv * b.transpose()).trace(); }

MatX skew_matrix(const AltTensor& b) {
    MatX m(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m(i, j) = b({i, j});
    return m;
}

double oct_max_abs(const Octonion& a) { return max_abs(a); }

}  // namespace

AltTensor PhiField::phi_at(const VecX& x) const {
    if (!domain.contains(x)) throw LeftDomain("point left the domain of field " + name);
    return phi(x);
}

G2Structure PhiField::structure(const VecX& x) const { return metric_from_3form(phi_at(x)); }

PhiField constant_field(const AltTensor& phi, double half_width) {
    return PhiField{"constant", Box::cube(N, half_width), [phi](const VecX&) { return phi; }};
}

PhiField sigma_warp_field(const PhiField& base, OctonionField v, std::string name) {
    auto f = [base, v](const VecX& x) { return sigma(v(x), base.structure(x)); };
    return PhiField{std::move(name), base.domain, f};
}

PhiField pullback_warp_field(std::vector<MatX> slopes, double half_width) {
    if (slopes.size() != static_cast<std::size_t>(N)) throw DimensionMismatch("pullback warp needs one slope matrix per axis");
    const AltTensor p0 = phi0();
    auto f = [slopes, p0](const VecX& x) {
        MatX a = MatX::Identity(N, N);
        for (int l = 0; l < N; ++l) a += x[l] * slopes[static_cast<std::size_t>(l)];
        return pullback(a, p0);
    };
    return PhiField{"pullback_warp", Box::cube(N, half_width), f};
}

PhiField grid_field(const PhiField& source, int cells) {
    if (cells < 1) throw BadConfig("grid needs at least one cell per axis");
    const int pts = cells + 1;
    std::size_t total = 1;
    for (int a = 0; a < N; ++a) total *= static_cast<std::size_t>(pts);
    if (total > 200'000) throw BadConfig("grid field too large; use at most 4 cells per axis");
    const auto combos = combinations(N, 3);
    const std::size_t nc = combos.size();
    const Box dom = source.domain;
    const VecX step = (dom.hi - dom.lo) / cells;
    auto samples = std::make_shared<std::vector<double>>(total * nc);
    for (std::size_t p = 0; p < total; ++p) {
        std::size_t rem = p;
        VecX x(N);
        for (int a = N - 1; a >= 0; --a) {
            x[a] = dom.lo[a] + static_cast<double>(rem % static_cast<std::size_t>(pts)) * step[a];
            x[a] = std::clamp(x[a], dom.lo[a], dom.hi[a]);
            rem /= static_cast<std::size_t>(pts);
        }
        const AltTensor ph = source.phi_at(x);
        for (std::size_t c = 0; c < nc; ++c) (*samples)[p * nc + c] = ph.at(combos[c].data());
    }
    auto f = [samples, combos, dom, step, cells, pts, nc](const VecX& x) {
        std::array<int, N> base{};
        std::array<double, N> frac{};
        for (int a = 0; a < N; ++a) {
            const double u = (x[a] - dom.lo[a]) / step[a];
            base[static_cast<std::size_t>(a)] = std::clamp(static_cast<int>(std::floor(u)), 0, cells - 1);
            frac[static_cast<std::size_t>(a)] = u - base[static_cast<std::size_t>(a)];
        }
        std::vector<double> acc(nc, 0.0);
        for (int corner = 0; corner < (1 << N); ++corner) {
            double w = 1.0;
            std::size_t p = 0;
            for (int a = 0; a < N; ++a) {
                const int bit = (corner >> a) & 1;
                w *= bit ? frac[static_cast<std::size_t>(a)] : 1.0 - frac[static_cast<std::size_t>(a)];
                p = p * static_cast<std::size_t>(pts) + static_cast<std::size_t>(base[static_cast<std::size_t>(a)] + bit);
            }
            if (w == 0.0) continue;
            for (std::size_t c = 0; c < nc; ++c) acc[c] += w * (*samples)[p * nc + c];
        }
        AltTensor out(N, 3);
        for (std::size_t c = 0; c < nc; ++c) out.set_alt(combos[c].data(), acc[c]);
        return out;
    };
    return PhiField{source.name + "_grid", dom, f};
}

OctonionField exp_line_field(const Vec7& u, const VecX& slope) {
    return [u, slope](const VecX& x) { return exponential(Octonion::from_parts(0.0, slope.dot(x) * u)); };
}

OctonionField constant_octonion_field(const Octonion& a) {
    return [a](const VecX&) { return a; };
}

namespace {

struct Jet {
    G2Structure s;
    std::vector<double> gamma;  // Gamma^i_jk
    std::vector<AltTensor> dphi, nphi;  // d_m phi, nabla_m phi
};

Jet field_jet(const PhiField& field, const VecX& x, double h) {
    if (!field.domain.contains(x, h)) throw LeftDomain("stencil leaves the domain of field " + field.name);
    Jet j;
    j.s = field.structure(x);
    j.gamma = levi_civita([&](const VecX& y) { return MatX(field.structure(y).g.g()); }, x, h);
    const AltTensor& ph = j.s.phi;
    for (int m = 0; m < N; ++m) {
        const AltTensor d = (1.0 / (2.0 * h)) * (field.phi_at(x + h * unit_vec(m)) - field.phi_at(x - h * unit_vec(m)));
        AltTensor nab = d;
        for (int a = 0; a < N; ++a)
            for (int b = a + 1; b < N; ++b)
                for (int c = b + 1; c < N; ++c) {
                    double v = d({a, b, c});
                    for (int p = 0; p < N; ++p)
                        v -= j.gamma[idx3(N, p, m, a)] * ph({p, b, c}) + j.gamma[idx3(N, p, m, b)] * ph({a, p, c}) +
                             j.gamma[idx3(N, p, m, c)] * ph({a, b, p});
                    nab.set_alt({a, b, c}, v);
                }
        j.dphi.push_back(d);
        j.nphi.push_back(nab);
    }
    return j;
}

MatX torsion_from_jet(const Jet& j) {
    const AltTensor psi_up = raise_all(j.s.psi, j.s.g);
    const MatX& g = j.s.g.g();
    MatX t(N, N);
    for (int m = 0; m < N; ++m) {
        VecX up = VecX::Zero(N);  // (1/48) nabla_m phi_ijk psi^{qijk}
        const auto& comps = j.nphi[static_cast<std::size_t>(m)].comps();
        for (int q = 0; q < N; ++q) {
            double s = 0.0;
            const std::size_t base = static_cast<std::size_t>(q) * N * N * N;
            for (std::size_t r = 0; r < comps.size(); ++r) s += comps[r] * psi_up.raw(base + r);
            up[q] = s / 48.0;
        }
        t.row(m) = (g * up).transpose();
    }
    return t;
}

Octonion nabla_octonion(const Jet& j, const PhiField& field, const VecX& x, const VecX& dir, const OctonionField& a,
                        double h) {
    (void)field;
    const Octonion ap = a(x + h * dir), am = a(x - h * dir), a0 = a(x);
    Octonion out = (ap - am) / (2.0 * h);
    Vec7 corr = Vec7::Zero();
    const Vec7 v = a0.im();
    for (int i = 0; i < N; ++i) {
        double s = 0.0;
        for (int p = 0; p < N; ++p)
            for (int k = 0; k < N; ++k) s += j.gamma[idx3(N, i, p, k)] * dir[p] * v[k];
        corr[i] = s;
    }
    return out + Octonion::from_parts(0.0, corr);
}

Octonion torsion_oct(const MatX& t, const G2Structure& s, const VecX& dir) {
    const VecX lower = t.transpose() * dir;  // X^m T_mn
    return Octonion::from_parts(0.0, s.g.inv() * lower);
}

}  // namespace

G2Torsion g2_torsion(const PhiField& field, const VecX& x, double fd_step) {
    const Jet j = field_jet(field, x, fd_step);
    G2Torsion r;
    r.T = torsion_from_jet(j);
    const MatX& gi = j.s.g.inv();
    const MatX tup = r.T * gi;  // T_m^q
    for (int m = 0; m < N; ++m) {
        AltTensor pred = interior(tup.row(m).transpose(), j.s.psi);
        pred *= 2.0;
        r.defining_residual = std::max(r.defining_residual, max_abs_diff(j.nphi[static_cast<std::size_t>(m)], pred));
        const FormSplit3 sp = split3(j.nphi[static_cast<std::size_t>(m)], j.s);
        r.omega7_residual = std::max({r.omega7_residual, std::abs(sp.f), sp.h0.cwiseAbs().maxCoeff()});
    }
    const MatX& g = j.s.g.g();
    const double tr = (gi * r.T).trace();
    r.t1 = (tr / 7.0) * g;
    r.t0 = 0.5 * (r.T + r.T.transpose()) - r.t1;
    const MatX skew = 0.5 * (r.T - r.T.transpose());
    const FormSplit2 sp = split2(AltTensor::from_dense(N, 2, std::vector<double>(skew.data(), skew.data() + N * N)), j.s);
    r.t7 = skew_matrix(sp.beta7);
    r.t14 = skew_matrix(sp.beta14);
    const MatX* parts[4] = {&r.t1, &r.t0, &r.t7, &r.t14};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            r.split_orthogonality = std::max(r.split_orthogonality, std::abs(tensor_inner(*parts[a], *parts[b], gi)));
    return r;
}

Octonion torsion_octonion(const G2Torsion& t, const G2Structure& s, const VecX& direction) {
    return torsion_oct(t.T, s, direction);
}

Octonion levi_civita_derivative(const PhiField& field, const VecX& x, const VecX& direction, const OctonionField& a,
                                double fd_step) {
    const Jet j = field_jet(field, x, fd_step);
    return nabla_octonion(j, field, x, direction, a, fd_step);
}

Octonion octonion_covariant_derivative(const PhiField& field, const VecX& x, const VecX& direction,
                                       const OctonionField& a, double fd_step) {
    const Jet j = field_jet(field, x, fd_step);
    const PhiAlgebra alg(j.s);
    const Octonion tx = torsion_oct(torsion_from_jet(j), j.s, direction);
    return nabla_octonion(j, field, x, direction, a, fd_step) - alg.mul(a(x), tx);
}

CovariantDerivativeChecks covariant_derivative_checks(const PhiField& field, const VecX& x, const VecX& direction,
                                                      const OctonionField& a, const OctonionField& b,
                                                      double fd_step) {
    const Jet j = field_jet(field, x, fd_step);
    const PhiAlgebra alg(j.s);
    const Octonion tx = torsion_oct(torsion_from_jet(j), j.s, direction);
    auto D = [&](const OctonionField& f) { return nabla_octonion(j, field, x, direction, f, fd_step) - alg.mul(f(x), tx); };
    const OctonionField one = constant_octonion_field(Octonion::real(1.0));
    const OctonionField ab = [&](const VecX& y) { return PhiAlgebra(field.structure(y)).mul(a(y), b(y)); };

    CovariantDerivativeChecks r;
    r.unit_residual = oct_max_abs(D(one) + tx);
    const Octonion na = nabla_octonion(j, field, x, direction, a, fd_step);
    r.quasi_derivation_residual = oct_max_abs(D(ab) - alg.mul(na, b(x)) - alg.mul(a(x), D(b)));
    auto inner_at = [&](const VecX& y) { return PhiAlgebra(field.structure(y)).inner(a(y), b(y)); };
    const double dinner = (inner_at(x + fd_step * direction) - inner_at(x - fd_step * direction)) / (2.0 * fd_step);
    r.metric_residual = std::abs(dinner - alg.inner(D(a), b(x)) - alg.inner(a(x), D(b)));
    return r;
}

LeibnizDefect leibniz_defect(const PhiField& field, const VecX& x, const Octonion& a, const Octonion& b,
                             const VecX& direction, double fd_step) {
    const Jet j = field_jet(field, x, fd_step);
    const PhiAlgebra alg(j.s);
    const OctonionField fa = constant_octonion_field(a), fb = constant_octonion_field(b);
    const OctonionField ab = [&](const VecX& y) { return PhiAlgebra(field.structure(y)).mul(a, b); };
    LeibnizDefect r;
    r.defect = nabla_octonion(j, field, x, direction, ab, fd_step) -
               alg.mul(nabla_octonion(j, field, x, direction, fa, fd_step), b) -
               alg.mul(a, nabla_octonion(j, field, x, direction, fb, fd_step));
    const Octonion tx = torsion_oct(torsion_from_jet(j), j.s, direction);
    // -[T(X), A, B] with the associator read as A(BC) - (AB)C.
    r.predicted = alg.associator(tx, a, b);
    r.residual = oct_max_abs(r.defect - r.predicted);
    return r;
}

TorsionTransformCheck torsion_transform_check(const PhiField& base, const OctonionField& v, const VecX& x,
                                              double fd_step) {
    for (int m = -1; m < N; ++m) {
        for (double s : {-1.0, 1.0}) {
            const VecX y = m < 0 ? x : VecX(x + s * fd_step * unit_vec(m));
            if (std::abs(norm(v(y)) - 1.0) > 1e-10) throw NormDrift("deforming octonion field is not unit on the stencil");
        }
    }
    const PhiField warped = sigma_warp_field(base, v, base.name + "_sigma");
    TorsionTransformCheck r;
    r.measured = g2_torsion(warped, x, fd_step).T;
    const Jet j = field_jet(base, x, fd_step);
    const PhiAlgebra alg(j.s);
    const MatX tb = torsion_from_jet(j);
    const Octonion vinv = alg.inverse(v(x));
    r.predicted = MatX::Zero(N, N);
    for (int m = 0; m < N; ++m) {
        const VecX dir = unit_vec(m);
        const Octonion dv = nabla_octonion(j, base, x, dir, v, fd_step) - alg.mul(v(x), torsion_oct(tb, j.s, dir));
        const Octonion p = -1.0 * alg.mul(dv, vinv);
        r.predicted.row(m) = (j.s.g.g() * VecX(p.im())).transpose();
    }
    r.residual = (r.measured - r.predicted).cwiseAbs().maxCoeff();
    return r;
}

ClosednessProbe closedness_probe(const PhiField& field, const VecX& x, double fd_step) {
    if (!field.domain.contains(x, fd_step)) throw LeftDomain("stencil leaves the domain of field " + field.name);
    const G2Structure s = field.structure(x);
    std::vector<double> dphi(static_cast<std::size_t>(N * N * N * N), 0.0);
    std::vector<double> dpsi(static_cast<std::size_t>(N * N * N * N * N), 0.0);
    for (int m = 0; m < N; ++m) {
        const G2Structure sp = field.structure(x + fd_step * unit_vec(m));
        const G2Structure sm = field.structure(x - fd_step * unit_vec(m));
        const std::size_t n3 = static_cast<std::size_t>(N * N * N), n4 = n3 * N;
        for (std::size_t r = 0; r < n3; ++r)
            dphi[static_cast<std::size_t>(m) * n3 + r] = (sp.phi.raw(r) - sm.phi.raw(r)) / (2.0 * fd_step);
        for (std::size_t r = 0; r < n4; ++r)
            dpsi[static_cast<std::size_t>(m) * n4 + r] = (sp.psi.raw(r) - sm.psi.raw(r)) / (2.0 * fd_step);
    }
    ClosednessProbe r;
    r.dphi_norm = std::sqrt(form_norm2(4.0 * AltTensor::from_dense(N, 4, std::move(dphi)), s.g));
    r.dpsi_norm = std::sqrt(form_norm2(5.0 * AltTensor::from_dense(N, 5, std::move(dpsi)), s.g));
    return r;
}

}  // namespace g2lab
