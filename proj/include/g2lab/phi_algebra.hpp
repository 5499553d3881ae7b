#pragma once

#include "g2lab/g2_linear.hpp"
#include "g2lab/octonion.hpp"

namespace g2lab {

/**
 * @brief Octonion product induced by a G2-structure on a fiber.
 *
 * An octonion is (a, alpha) with alpha a tangent vector in coordinate
 * components. The product is
 *   (a, alpha)(b, beta) = (ab - <alpha, beta>, a beta + b alpha + alpha x beta)
 * with inner product and cross product taken from phi and g_phi. For phi0
 * this coincides with the fixed multiplication table.
 */
class PhiAlgebra {
public:
    explicit PhiAlgebra(G2Structure s);
    explicit PhiAlgebra(const AltTensor& phi) : PhiAlgebra(metric_from_3form(phi)) {}
    static const PhiAlgebra& standard();

    const G2Structure& structure() const { return s_; }

    Octonion mul(const Octonion& a, const Octonion& b) const;
    double inner(const Octonion& a, const Octonion& b) const;
    double norm2(const Octonion& a) const { return inner(a, a); }
    Octonion inverse(const Octonion& a, const Tolerances& tol = {}) const;
    // (ab)c - a(bc)
    Octonion associator(const Octonion& a, const Octonion& b, const Octonion& c) const;
    // Polar form in the subalgebra generated by b.
    Octonion power(const Octonion& b, int k, const Tolerances& tol = {}) const;

private:
    G2Structure s_;
    // cross_[i][j] = e_i x e_j as a vector.
    std::vector<Vec7> cross_;
};

}  // namespace g2lab
