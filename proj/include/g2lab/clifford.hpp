#pragma once

#include <cstdint>
#include <vector>

#include "g2lab/exterior.hpp"
#include "g2lab/octonion.hpp"

namespace g2lab {

/**
 * @brief Element of Cl(p, q) over blades indexed by bitmask.
 *
 * Generators 0..p-1 square to +1 and p..p+q-1 square to -1.
 */
class CliffordElement {
public:
    CliffordElement(int p, int q);
    static CliffordElement scalar(int p, int q, double s);
    static CliffordElement generator(int p, int q, int i);
    static CliffordElement vector(int p, int q, const VecX& v);

    int p() const { return p_; }
    int q() const { return q_; }
    int dim() const { return p_ + q_; }
    std::size_t size() const { return c_.size(); }

    double& operator[](std::uint32_t blade) { return c_[blade]; }
    double operator[](std::uint32_t blade) const { return c_[blade]; }
    const std::vector<double>& coeffs() const { return c_; }

    CliffordElement grade(int k) const;
    CliffordElement reversion() const;
    CliffordElement grade_involution() const;
    CliffordElement conjugation() const;
    double scalar_part() const { return c_[0]; }

    CliffordElement& operator+=(const CliffordElement& o);
    CliffordElement& operator-=(const CliffordElement& o);
    CliffordElement& operator*=(double s);

private:
    int p_, q_;
    std::vector<double> c_;
};

// Sign of e_a e_b = sign * e_(a xor b), metric factors included.
double blade_sign(int p, int q, std::uint32_t a, std::uint32_t b);

CliffordElement operator*(const CliffordElement& a, const CliffordElement& b);
CliffordElement operator+(CliffordElement a, const CliffordElement& b);
CliffordElement operator-(CliffordElement a, const CliffordElement& b);
CliffordElement operator*(double s, CliffordElement a);
double max_abs_diff(const CliffordElement& a, const CliffordElement& b);

// N(a) = |<reversion(a) a>_0|
double blade_norm(const CliffordElement& a);

// |L_a L_b + L_b L_a + kappa <a, b> I_8|_inf on imaginary octonions.
double enveloping_relation(const Octonion& a, const Octonion& b, double kappa = 2.0);

/**
 * Spinors at a point are octonion coefficient vectors; a vector X acts by
 * left translation, X . eta = L_X eta. The reference spinor xi identifies
 * the spinor module with the octonions via j_xi(A . xi) = A.
 */
using Spinor = Vec8;

Spinor clifford_action(const Octonion& x, const Spinor& eta);
Octonion j_map(const Spinor& eta, const Spinor& reference);
Spinor j_inverse(const Octonion& a, const Spinor& reference);
double spinor_inner(const Spinor& a, const Spinor& b);

// phi_eta(a, b, c) = -<eta, a . (b . (c . eta))> on the basis e_1..e_7.
AltTensor spinor_three_form(const Spinor& eta);

// phi of a . zeta, which should equal sigma_a(phi_zeta).
AltTensor sigma_from_spinor(const Octonion& a, const Spinor& zeta);

/**
 * phi_{U.(V.zeta)} against phi_{W.zeta}. The identity holds when W is the
 * product of the structure phi_zeta, W = (U zeta)(zeta^-1 V); the standard
 * product UV is reported for contrast.
 */
struct SpinorComposition {
    double base_product = 0.0;
    double standard_product = 0.0;
};
SpinorComposition spinor_composition(const Octonion& u, const Octonion& v, const Spinor& zeta);

}  // namespace g2lab
