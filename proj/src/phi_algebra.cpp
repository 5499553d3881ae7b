#include "g2lab/phi_algebra.hpp"

#include <cmath>

namespace g2lab {

PhiAlgebra::PhiAlgebra(G2Structure s) : s_(std::move(s)), cross_(49) {
    if (s_.phi.dim() != 7) throw DimensionMismatch("phi algebra needs a 3-form on R^7");
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            VecX lo(7);
            for (int k = 0; k < 7; ++k) lo[k] = s_.phi({i, j, k});
            cross_[static_cast<std::size_t>(i * 7 + j)] = s_.g.inv() * lo;
        }
}

const PhiAlgebra& PhiAlgebra::standard() {
    static const PhiAlgebra alg(phi0());
    return alg;
}

Octonion PhiAlgebra::mul(const Octonion& a, const Octonion& b) const {
    const Vec7 al = a.im(), be = b.im();
    Vec7 cr = Vec7::Zero();
    for (int i = 0; i < 7; ++i) {
        if (al[i] == 0.0) continue;
        for (int j = 0; j < 7; ++j) cr += (al[i] * be[j]) * cross_[static_cast<std::size_t>(i * 7 + j)];
    }
    const double re = a.re() * b.re() - al.dot(s_.g.g() * be);
    return Octonion::from_parts(re, a.re() * be + b.re() * al + cr);
}

double PhiAlgebra::inner(const Octonion& a, const Octonion& b) const {
    return a.re() * b.re() + a.im().dot(s_.g.g() * b.im());
}

Octonion PhiAlgebra::inverse(const Octonion& a, const Tolerances& tol) const {
    const double n2 = norm2(a);
    if (n2 < tol.zero_divisor) throw ZeroDivisor("inverse of a (near) zero octonion");
    return conj(a) / n2;
}

Octonion PhiAlgebra::associator(const Octonion& a, const Octonion& b, const Octonion& c) const {
    return mul(mul(a, b), c) - mul(a, mul(b, c));
}

Octonion PhiAlgebra::power(const Octonion& b, int k, const Tolerances& tol) const {
    if (k == 0) return Octonion::real(1.0);
    const double n2 = norm2(b);
    if (n2 < tol.zero_divisor) {
        if (k < 0) throw ZeroDivisor("negative power of a (near) zero octonion");
        return Octonion{};
    }
    const Vec7 v = b.im();
    const double vn = std::sqrt(std::max(0.0, v.dot(s_.g.g() * v)));
    const double theta = std::atan2(vn, b.re());
    const double scale = std::pow(std::sqrt(n2), k);
    Vec7 im = Vec7::Zero();
    if (vn > 0.0) im = (scale * std::sin(k * theta) / vn) * v;
    return Octonion::from_parts(scale * std::cos(k * theta), im);
}

}  // namespace g2lab
