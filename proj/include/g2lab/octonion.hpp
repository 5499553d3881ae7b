#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include "g2lab/errors.hpp"

namespace g2lab {

using Mat8 = Eigen::Matrix<double, 8, 8>;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Vec7 = Eigen::Matrix<double, 7, 1>;

/**
 * @brief Octonion in the basis {1, e1..e7}; c[0] is the real part.
 */
struct Octonion {
    std::array<double, 8> c{};

    constexpr Octonion() = default;
    constexpr explicit Octonion(const std::array<double, 8>& v) : c(v) {}

    static Octonion real(double a);
    static Octonion unit(int i);  // 0 gives 1, 1..7 give e_i
    static Octonion from_parts(double re, const Vec7& im);
    static Octonion from_vec(const Vec8& v);

    double re() const { return c[0]; }
    Vec7 im() const;
    Vec8 vec() const;

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }

    Octonion& operator+=(const Octonion& o);
    Octonion& operator-=(const Octonion& o);
    Octonion& operator*=(double s);
};

Octonion operator+(Octonion a, const Octonion& b);
Octonion operator-(Octonion a, const Octonion& b);
Octonion operator-(Octonion a);
Octonion operator*(double s, Octonion a);
Octonion operator*(Octonion a, double s);
Octonion operator/(Octonion a, double s);

// Product over the fixed multiplication table. Not associative.
Octonion mul(const Octonion& a, const Octonion& b);
inline Octonion operator*(const Octonion& a, const Octonion& b) { return mul(a, b); }

Octonion conj(const Octonion& a);
double dot(const Octonion& a, const Octonion& b);
double norm2(const Octonion& a);
double norm(const Octonion& a);
double max_abs(const Octonion& a);

struct Tolerances {
    double zero_divisor = 1e-24;   // on norm squared
    double not_imaginary = 1e-12;  // relative to norm
};

Octonion inverse(const Octonion& a, const Tolerances& tol = {});

Octonion commutator(const Octonion& a, const Octonion& b);
// (ab)c - a(bc)
Octonion associator(const Octonion& a, const Octonion& b, const Octonion& c);

// Imaginary part of ab; the seven-dimensional cross product.
Octonion cross(const Octonion& a, const Octonion& b);

// cos|a| + a sin|a|/|a| for imaginary a.
Octonion exponential(const Octonion& a, const Tolerances& tol = {});

// Integer power through the polar form; negative k uses the inverse.
Octonion power(const Octonion& b, int k, const Tolerances& tol = {});

// Matrices acting on coefficient vectors: left(b)*x = b x, right(b)*x = x b.
Mat8 left_matrix(const Octonion& b);
Mat8 right_matrix(const Octonion& b);

/**
 * Structure constants derived from the cycle list.
 * c3(i,j,k) is the coefficient of e_k in e_i e_j (indices 1..7).
 * c4(i,j,k,l) is half the coefficient of e_l in the associator of e_i, e_j, e_k.
 */
class StructureConstants {
public:
    static const StructureConstants& get();

    int c3(int i, int j, int k) const { return c3_[i][j][k]; }
    int c4(int i, int j, int k, int l) const { return c4_[i][j][k][l]; }

    // Products e_i e_j = sign * e_index for i, j in 0..7.
    int table_index(int i, int j) const { return idx_[i][j]; }
    int table_sign(int i, int j) const { return sgn_[i][j]; }

private:
    StructureConstants();
    int c3_[8][8][8]{};
    int c4_[8][8][8][8]{};
    int idx_[8][8]{};
    int sgn_[8][8]{};
};

/**
 * @brief Residuals of the standard identities at one sample.
 *
 * Inputs other than a, b for norm/alternativity are taken imaginary.
 * [A,B,C] is the associator (AB)C - A(BC) throughout.
 */
struct IdentityResiduals {
    double norm_multiplicative = 0.0;  // |norm(ab) - norm(a)norm(b)| / (norm(a)norm(b))
    double alternative = 0.0;          // max of |[a,a,b]|, |[a,b,b]|
    double anticommuting_pair = 0.0;   // A(BC) + B(AC) + 2<A,B>C
    double triple_expansion = 0.0;     // A(BC) = -[A,B,C]/2 - phi(A,B,C) - <B,C>A + <A,C>B - <A,B>C
    double cross_norm = 0.0;           // |AxB|^2 - |A|^2|B|^2 + <A,B>^2
    double double_cross = 0.0;         // Ax(BxC) + <A,B>C - <A,C>B + [A,B,C]/2
    double jacobi = 0.0;               // sum_cyc [A,[B,C]] + 6[A,B,C]
};

IdentityResiduals identity_residuals(const Octonion& a, const Octonion& b, const Octonion& im_a,
                                     const Octonion& im_b, const Octonion& im_c);

// The seven oriented triples that define the table.
const std::array<std::array<int, 3>, 7>& fano_cycles();

}  // namespace g2lab
