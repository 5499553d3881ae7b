#include "g2lab/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "g2lab/errors.hpp"

namespace g2lab {

CliffordElement::CliffordElement(int p, int q) : p_(p), q_(q) {
    if (p < 0 || q < 0 || p + q > 8) throw DimensionMismatch("Cl(p,q) needs p, q >= 0 and p + q <= 8");
    c_.assign(std::size_t{1} << (p + q), 0.0);
}

CliffordElement CliffordElement::scalar(int p, int q, double s) {
    CliffordElement e(p, q);
    e.c_[0] = s;
    return e;
}

CliffordElement CliffordElement::generator(int p, int q, int i) {
    CliffordElement e(p, q);
    if (i < 0 || i >= p + q) throw DimensionMismatch("generator index out of range");
    e.c_[std::size_t{1} << i] = 1.0;
    return e;
}

CliffordElement CliffordElement::vector(int p, int q, const VecX& v) {
    CliffordElement e(p, q);
    if (v.size() != p + q) throw DimensionMismatch("vector length must be p + q");
    for (int i = 0; i < p + q; ++i) e.c_[std::size_t{1} << i] = v[i];
    return e;
}

CliffordElement CliffordElement::grade(int k) const {
    CliffordElement out(p_, q_);
    for (std::uint32_t b = 0; b < c_.size(); ++b)
        if (std::popcount(b) == k) out.c_[b] = c_[b];
    return out;
}

namespace {

template <class SignFn>
CliffordElement graded_sign(const CliffordElement& a, SignFn sign) {
    CliffordElement out = a;
    for (std::uint32_t b = 0; b < a.size(); ++b) out[b] *= sign(std::popcount(b));
    return out;
}

}  // namespace

CliffordElement CliffordElement::reversion() const {
    return graded_sign(*this, [](int k) { return (k * (k - 1) / 2) % 2 ? -1.0 : 1.0; });
}

CliffordElement CliffordElement::grade_involution() const {
    return graded_sign(*this, [](int k) { return k % 2 ? -1.0 : 1.0; });
}

CliffordElement CliffordElement::conjugation() const {
    return graded_sign(*this, [](int k) { return (k * (k + 1) / 2) % 2 ? -1.0 : 1.0; });
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& o) {
    if (o.p_ != p_ || o.q_ != q_) throw SignatureMismatch("Clifford signatures differ");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CliffordElement& CliffordElement::operator-=(const CliffordElement& o) {
    if (o.p_ != p_ || o.q_ != q_) throw SignatureMismatch("Clifford signatures differ");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CliffordElement& CliffordElement::operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
}

double blade_sign(int p, int q, std::uint32_t a, std::uint32_t b) {
    // Transpositions needed to move each generator of b past the higher generators of a.
    int swaps = 0;
    for (std::uint32_t t = a >> 1; t != 0; t >>= 1) swaps += std::popcount(t & b);
    double s = swaps % 2 ? -1.0 : 1.0;
    const std::uint32_t negative = ((std::uint32_t{1} << (p + q)) - 1) & ~((std::uint32_t{1} << p) - 1);
    if (std::popcount(a & b & negative) % 2) s = -s;
    return s;
}

CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) {
    if (a.p() != b.p() || a.q() != b.q()) throw SignatureMismatch("Clifford signatures differ");
    CliffordElement out(a.p(), a.q());
    for (std::uint32_t x = 0; x < a.size(); ++x) {
        if (a[x] == 0.0) continue;
        for (std::uint32_t y = 0; y < b.size(); ++y) {
            if (b[y] == 0.0) continue;
            out[x ^ y] += blade_sign(a.p(), a.q(), x, y) * a[x] * b[y];
        }
    }
    return out;
}

CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
CliffordElement operator*(double s, CliffordElement a) { return a *= s; }

double max_abs_diff(const CliffordElement& a, const CliffordElement& b) {
    if (a.p() != b.p() || a.q() != b.q()) throw SignatureMismatch("Clifford signatures differ");
    double m = 0.0;
    for (std::uint32_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double blade_norm(const CliffordElement& a) { return std::abs((a.reversion() * a).scalar_part()); }

double enveloping_relation(const Octonion& a, const Octonion& b, double kappa) {
    const double tol = Tolerances{}.not_imaginary;
    if (std::abs(a.re()) > tol * std::max(1.0, norm(a)) || std::abs(b.re()) > tol * std::max(1.0, norm(b)))
        throw NotImaginary("enveloping relation needs imaginary octonions");
    const Mat8 la = left_matrix(a), lb = left_matrix(b);
    const Mat8 r = la * lb + lb * la + kappa * dot(a, b) * Mat8::Identity();
    return r.cwiseAbs().maxCoeff();
}

Spinor clifford_action(const Octonion& x, const Spinor& eta) { return left_matrix(x) * eta; }

namespace {

Octonion checked_reference(const Spinor& reference) {
    const Octonion xi = Octonion::from_vec(reference);
    const double n2 = norm2(xi);
    if (n2 < Tolerances{}.zero_divisor) throw ZeroReference("reference spinor vanishes");
    return xi / std::sqrt(n2);
}

}  // namespace

Octonion j_map(const Spinor& eta, const Spinor& reference) {
    const Octonion xi = checked_reference(reference);
    return Octonion::from_vec(eta) * conj(xi);
}

Spinor j_inverse(const Octonion& a, const Spinor& reference) {
    const Octonion xi = checked_reference(reference);
    return (a * xi).vec();
}

double spinor_inner(const Spinor& a, const Spinor& b) { return a.dot(b); }

AltTensor spinor_three_form(const Spinor& eta) {
    AltTensor out(7, 3);
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            for (int k = j + 1; k < 7; ++k) {
                const Spinor w = clifford_action(Octonion::unit(i + 1),
                                                 clifford_action(Octonion::unit(j + 1),
                                                                 clifford_action(Octonion::unit(k + 1), eta)));
                out.set_alt({i, j, k}, -eta.dot(w));
            }
    return out;
}

AltTensor sigma_from_spinor(const Octonion& a, const Spinor& zeta) {
    return spinor_three_form(clifford_action(a, zeta));
}

SpinorComposition spinor_composition(const Octonion& u, const Octonion& v, const Spinor& zeta) {
    const Octonion z = checked_reference(zeta);
    const AltTensor lhs = spinor_three_form(clifford_action(u, clifford_action(v, zeta)));
    const Octonion w = (u * z) * (conj(z) * v);
    SpinorComposition r;
    r.base_product = max_abs_diff(lhs, spinor_three_form(clifford_action(w, zeta)));
    r.standard_product = max_abs_diff(lhs, spinor_three_form(clifford_action(u * v, zeta)));
    return r;
}

}  // namespace g2lab
