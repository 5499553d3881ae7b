#include "g2lab/octonion.hpp"

#include <algorithm>
#include <cmath>

namespace g2lab {

namespace {

const std::array<std::array<int, 3>, 7> kCycles = {{
    {1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 7, 5}, {3, 7, 4}, {3, 6, 5},
}};

}  // namespace

const std::array<std::array<int, 3>, 7>& fano_cycles() { return kCycles; }

StructureConstants::StructureConstants() {
    for (const auto& t : kCycles) {
        const int a = t[0], b = t[1], c = t[2];
        c3_[a][b][c] = c3_[b][c][a] = c3_[c][a][b] = 1;
        c3_[b][a][c] = c3_[a][c][b] = c3_[c][b][a] = -1;
    }
    for (int i = 0; i < 8; ++i) {
        idx_[0][i] = i; sgn_[0][i] = 1;
        idx_[i][0] = i; sgn_[i][0] = 1;
    }
    for (int i = 1; i < 8; ++i) {
        idx_[i][i] = 0; sgn_[i][i] = -1;
        for (int j = 1; j < 8; ++j) {
            if (i == j) continue;
            for (int k = 1; k < 8; ++k) {
                if (c3_[i][j][k] != 0) { idx_[i][j] = k; sgn_[i][j] = c3_[i][j][k]; }
            }
        }
    }
    // c4 comes from the brute-force associator of basis units.
    for (int i = 1; i < 8; ++i)
        for (int j = 1; j < 8; ++j)
            for (int k = 1; k < 8; ++k) {
                int ij = idx_[i][j], s1 = sgn_[i][j];
                int lhs = idx_[ij][k], sl = s1 * sgn_[ij][k];
                int jk = idx_[j][k], s2 = sgn_[j][k];
                int rhs = idx_[i][jk], sr = s2 * sgn_[i][jk];
                int acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
                acc[lhs] += sl;
                acc[rhs] -= sr;
                for (int l = 1; l < 8; ++l) c4_[i][j][k][l] = acc[l] / 2;
            }
}

const StructureConstants& StructureConstants::get() {
    static const StructureConstants sc;
    return sc;
}

Octonion Octonion::real(double a) {
    Octonion o;
    o.c[0] = a;
    return o;
}

Octonion Octonion::unit(int i) {
    Octonion o;
    o.c[static_cast<std::size_t>(i)] = 1.0;
    return o;
}

Octonion Octonion::from_parts(double re, const Vec7& im) {
    Octonion o;
    o.c[0] = re;
    for (int i = 0; i < 7; ++i) o.c[i + 1] = im[i];
    return o;
}

Octonion Octonion::from_vec(const Vec8& v) {
    Octonion o;
    for (int i = 0; i < 8; ++i) o.c[i] = v[i];
    return o;
}

Vec7 Octonion::im() const {
    Vec7 v;
    for (int i = 0; i < 7; ++i) v[i] = c[i + 1];
    return v;
}

Vec8 Octonion::vec() const {
    Vec8 v;
    for (int i = 0; i < 8; ++i) v[i] = c[i];
    return v;
}

Octonion& Octonion::operator+=(const Octonion& o) {
    for (int i = 0; i < 8; ++i) c[i] += o.c[i];
    return *this;
}

Octonion& Octonion::operator-=(const Octonion& o) {
    for (int i = 0; i < 8; ++i) c[i] -= o.c[i];
    return *this;
}

Octonion& Octonion::operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
}

Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
Octonion operator-(Octonion a) { return a *= -1.0; }
Octonion operator*(double s, Octonion a) { return a *= s; }
Octonion operator*(Octonion a, double s) { return a *= s; }
Octonion operator/(Octonion a, double s) { return a *= 1.0 / s; }

Octonion mul(const Octonion& a, const Octonion& b) {
    const auto& sc = StructureConstants::get();
    Octonion r;
    for (int i = 0; i < 8; ++i) {
        if (a.c[i] == 0.0) continue;
        for (int j = 0; j < 8; ++j)
            r.c[sc.table_index(i, j)] += sc.table_sign(i, j) * a.c[i] * b.c[j];
    }
    return r;
}

Octonion conj(const Octonion& a) {
    Octonion r = -a;
    r.c[0] = a.c[0];
    return r;
}

double dot(const Octonion& a, const Octonion& b) {
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += a.c[i] * b.c[i];
    return s;
}

double norm2(const Octonion& a) { return dot(a, a); }
double norm(const Octonion& a) { return std::sqrt(norm2(a)); }

double max_abs(const Octonion& a) {
    double m = 0.0;
    for (double x : a.c) m = std::max(m, std::abs(x));
    return m;
}

Octonion inverse(const Octonion& a, const Tolerances& tol) {
    const double n2 = norm2(a);
    if (n2 < tol.zero_divisor) throw ZeroDivisor("inverse of a (near) zero octonion");
    return conj(a) / n2;
}

Octonion commutator(const Octonion& a, const Octonion& b) { return mul(a, b) - mul(b, a); }

Octonion associator(const Octonion& a, const Octonion& b, const Octonion& c) {
    return mul(mul(a, b), c) - mul(a, mul(b, c));
}

Octonion cross(const Octonion& a, const Octonion& b) {
    Octonion r = mul(a, b);
    r.c[0] = 0.0;
    return r;
}

Octonion exponential(const Octonion& a, const Tolerances& tol) {
    const double n = norm(a);
    if (std::abs(a.c[0]) > tol.not_imaginary * std::max(n, 1.0))
        throw NotImaginary("exponential expects an imaginary octonion");
    Octonion al = a;
    al.c[0] = 0.0;
    const double x = norm(al);
    double cs, sinc;
    if (x < 1e-6) {
        const double x2 = x * x;
        cs = 1.0 - x2 / 2.0 + x2 * x2 / 24.0;
        sinc = 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    } else {
        cs = std::cos(x);
        sinc = std::sin(x) / x;
    }
    Octonion r = sinc * al;
    r.c[0] = cs;
    return r;
}

Octonion power(const Octonion& b, int k, const Tolerances& tol) {
    if (k == 0) return Octonion::real(1.0);
    const double n2 = norm2(b);
    if (n2 < tol.zero_divisor) {
        if (k < 0) throw ZeroDivisor("negative power of a (near) zero octonion");
        return Octonion{};
    }
    const double n = std::sqrt(n2);
    const Vec7 v = b.im();
    const double vn = v.norm();
    const double theta = std::atan2(vn, b.c[0]);
    const double scale = std::pow(n, k);
    Octonion r;
    r.c[0] = scale * std::cos(k * theta);
    if (vn > 0.0) {
        const double s = scale * std::sin(k * theta) / vn;
        for (int i = 0; i < 7; ++i) r.c[i + 1] = s * v[i];
    }
    return r;
}

Mat8 left_matrix(const Octonion& b) {
    Mat8 m;
    for (int j = 0; j < 8; ++j) m.col(j) = mul(b, Octonion::unit(j)).vec();
    return m;
}

Mat8 right_matrix(const Octonion& b) {
    Mat8 m;
    for (int j = 0; j < 8; ++j) m.col(j) = mul(Octonion::unit(j), b).vec();
    return m;
}

IdentityResiduals identity_residuals(const Octonion& a, const Octonion& b, const Octonion& im_a,
                                     const Octonion& im_b, const Octonion& im_c) {
    IdentityResiduals r;
    const double na = norm(a), nb = norm(b);
    if (na * nb > 0.0) r.norm_multiplicative = std::abs(norm(a * b) - na * nb) / (na * nb);
    r.alternative = std::max(max_abs(associator(a, a, b)), max_abs(associator(a, b, b)));

    const Octonion& A = im_a;
    const Octonion& B = im_b;
    const Octonion& C = im_c;
    const Octonion abc = associator(A, B, C);
    const Octonion one = Octonion::real(1.0);
    r.anticommuting_pair = max_abs(A * (B * C) + B * (A * C) + 2.0 * dot(A, B) * C);
    const double phi = dot(A * B, C);
    r.triple_expansion = max_abs(A * (B * C) -
                                 (-0.5 * abc - phi * one - dot(B, C) * A + dot(A, C) * B - dot(A, B) * C));
    const Octonion ab = cross(A, B);
    r.cross_norm = std::abs(norm2(ab) - norm2(A) * norm2(B) + dot(A, B) * dot(A, B));
    r.double_cross = max_abs(cross(A, cross(B, C)) + dot(A, B) * C - dot(A, C) * B + 0.5 * abc);
    const Octonion cyc = commutator(A, commutator(B, C)) + commutator(B, commutator(C, A)) +
                         commutator(C, commutator(A, B));
    r.jacobi = max_abs(cyc + 6.0 * abc);
    return r;
}

}  // namespace g2lab
