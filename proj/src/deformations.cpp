#include "g2lab/deformations.hpp"

#include <cmath>

namespace g2lab {

namespace {

double max_abs_mat(const MatX& m) { return m.cwiseAbs().maxCoeff(); }

double dist(const Octonion& a, const Octonion& b) { return max_abs(a - b); }

}  // namespace

Octonion ad(const Octonion& v, const Octonion& a, const PhiAlgebra& alg) {
    return alg.mul(alg.mul(v, a), alg.inverse(v));
}

MatX ad_matrix(const Octonion& v, const PhiAlgebra& alg) {
    const G2Structure& s = alg.structure();
    const double n2 = alg.norm2(v);
    if (n2 < Tolerances{}.zero_divisor) throw ZeroDivisor("Ad of a (near) zero octonion");
    const VecX vv = v.im();
    const VecX vlo = s.g.g() * vv;
    const double v0 = v.re(), vn2 = vv.dot(vlo);
    const AltTensor w = interior(vv, s.phi);
    MatX omega(7, 7);  // omega(d, c) = (v -| phi)_dc
    for (int d = 0; d < 7; ++d)
        for (int c = 0; c < 7; ++c) omega(d, c) = w({d, c});
    MatX m = (v0 * v0 - vn2) * MatX::Identity(7, 7) - 2.0 * v0 * s.g.inv() * omega + 2.0 * vv * vlo.transpose();
    return m / n2;
}

AltTensor sigma(const Octonion& v, const G2Structure& s) {
    const double n2 = v.re() * v.re() + v.im().dot(s.g.g() * v.im());
    if (n2 < Tolerances{}.zero_divisor) throw ZeroDivisor("deformation by a (near) zero octonion");
    const double inv = 1.0 / std::sqrt(n2);
    const double v0 = v.re() * inv;
    const VecX vv = v.im() * inv;
    const VecX vlo = s.g.g() * vv;
    const double vn2 = vv.dot(vlo);
    AltTensor out = (v0 * v0 - vn2) * s.phi;
    out -= (2.0 * v0) * interior(vv, s.psi);
    out += 2.0 * wedge(AltTensor::from_covector(vlo), interior(vv, s.phi));
    return out;
}

AltTensor sigma(const Octonion& v, const AltTensor& phi) { return sigma(v, metric_from_3form(phi)); }

Octonion deformed_mul(const Octonion& a, const Octonion& b, const Octonion& v, const PhiAlgebra& alg) {
    return alg.mul(alg.mul(a, v), alg.mul(alg.inverse(v), b));
}

Octonion right_associator(const Octonion& a, const Octonion& b, const Octonion& c, const PhiAlgebra& alg) {
    return -alg.associator(a, b, c);
}

DeformedProductCheck deformed_product_check(const Octonion& a, const Octonion& b, const Octonion& v,
                                            const PhiAlgebra& alg) {
    DeformedProductCheck r;
    const Octonion lhs = deformed_mul(a, b, v, alg);
    const Octonion via_assoc = alg.mul(a, b) + alg.mul(right_associator(a, b, v, alg), alg.inverse(v));
    r.associator_route = dist(lhs, via_assoc);
    const PhiAlgebra deformed(sigma(v, alg.structure()));
    r.sigma_route = dist(lhs, deformed.mul(a, b));
    return r;
}

double cube_law_residual(const Octonion& v, const PhiAlgebra& alg) {
    const Octonion v3 = alg.power(v, 3);
    const AltTensor lhs = sigma(v3, alg.structure());
    const AltTensor rhs = pullback(ad_matrix(alg.inverse(v), alg), alg.structure().phi);
    return max_abs_diff(lhs, rhs);
}

double isometry_residual(const Octonion& v, const PhiAlgebra& alg) {
    const G2Structure t = metric_from_3form(sigma(v, alg.structure()));
    return max_abs_mat(t.g.g() - alg.structure().g.g());
}

const char* reading_name(CompositionReading r) {
    switch (r) {
        case CompositionReading::Plain: return "UV";
        case CompositionReading::Deformed: return "U o_V V";
        case CompositionReading::Reversed: return "VU";
    }
    return "?";
}

double composition_residual(const Octonion& u, const Octonion& v, CompositionReading reading, const PhiAlgebra& alg) {
    const G2Structure inner = metric_from_3form(sigma(v, alg.structure()));
    const AltTensor lhs = sigma(u, inner);
    Octonion w;
    switch (reading) {
        case CompositionReading::Plain: w = alg.mul(u, v); break;
        case CompositionReading::Deformed: w = deformed_mul(u, v, v, alg); break;
        case CompositionReading::Reversed: w = alg.mul(v, u); break;
    }
    return max_abs_diff(lhs, sigma(w, alg.structure()));
}

const char* adjoint_identity_name(int i) {
    static const char* names[5] = {
        "(VA)(BV^-1) = Ad_V(AB) + [A,B,V^-1](V + conj V)",
        "(AV^-1)(VB) = AB + [A,B,V^-1]V",
        "Ad_V(A)Ad_V(B) = Ad_V(AB) + [A,B,V^-1](V + conj V + V^3/|V|^2)",
        "Ad_V^-1(Ad_V(A)Ad_V(B)) = AB + [A,B,V^-3]V^3",
        "Ad_V^-1(Ad_V(A)Ad_V(B)) = (AV^-3)(V^3B)",
    };
    return names[i];
}

std::array<double, 5> adjoint_identities(const Octonion& v, const Octonion& a, const Octonion& b) {
    const PhiAlgebra& alg = PhiAlgebra::standard();
    const Octonion vi = inverse(v);
    const Octonion v3 = power(v, 3), vm3 = power(v, -3);
    const Octonion ab = a * b;
    const Octonion ada = ad(v, a), adb = ad(v, b);
    const Octonion prod = ada * adb;
    const Octonion assoc = right_associator(a, b, vi, alg);
    std::array<double, 5> r{};
    r[0] = dist((v * a) * (b * vi), ad(v, ab) + assoc * (v + conj(v)));
    r[1] = dist((a * vi) * (v * b), ab + assoc * v);
    r[2] = dist(prod, ad(v, ab) + assoc * (v + conj(v) + v3 / norm2(v)));
    r[3] = dist(ad(vi, prod), ab + right_associator(a, b, vm3, alg) * v3);
    r[4] = dist(ad(vi, prod), (a * vm3) * (v3 * b));
    return r;
}

std::vector<SweepPoint> fixed_product_sweep(const std::vector<double>& thetas, int unit) {
    const PhiAlgebra& alg = PhiAlgebra::standard();
    const AltTensor& p0 = alg.structure().phi;
    std::vector<SweepPoint> out;
    for (double t : thetas) {
        SweepPoint p;
        p.theta = t;
        const Octonion v = std::cos(t) * Octonion::real(1.0) + std::sin(t) * Octonion::unit(unit);
        const Octonion v3 = power(v, 3);
        p.sigma_v = max_abs_diff(sigma(v, alg.structure()), p0);
        p.sigma_v_cubed = max_abs_diff(sigma(v3, alg.structure()), p0);
        p.v_cubed_real = v3.im().norm() <= 1e-12;
        out.push_back(p);
    }
    return out;
}

}  // namespace g2lab
