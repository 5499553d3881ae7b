#pragma once

#include <functional>
#include <string>
#include <vector>

#include "g2lab/connection.hpp"
#include "g2lab/g2_linear.hpp"
#include "g2lab/octonion.hpp"

namespace g2lab {

/**
 * @brief A 3-form field on a coordinate box of R^7.
 *
 * The evaluator must be pure; the induced metric, psi and volume come from
 * metric_from_3form at each point.
 */
struct PhiField {
    std::string name;
    Box domain;
    std::function<AltTensor(const VecX&)> phi;

    AltTensor phi_at(const VecX& x) const;
    G2Structure structure(const VecX& x) const;
};

using OctonionField = std::function<Octonion(const VecX&)>;

PhiField constant_field(const AltTensor& phi, double half_width = 1.0);
// phi(x) = sigma_{V(x)}(base(x)).
PhiField sigma_warp_field(const PhiField& base, OctonionField v, std::string name);
// phi(x) = A(x)^* phi0 with A(x) = I + sum_l x^l M_l.
PhiField pullback_warp_field(std::vector<MatX> slopes, double half_width = 1.0);
// Multilinear interpolation of samples on a regular grid.
PhiField grid_field(const PhiField& source, int cells_per_axis);

// V(x) = exp((slope . x) u) for an imaginary unit direction u.
OctonionField exp_line_field(const Vec7& u, const VecX& slope);
OctonionField constant_octonion_field(const Octonion& a);

struct G2Torsion {
    MatX T;                  // T_mn, with nabla_m phi = 2 T_m^q psi_q...
    MatX t1, t0, t7, t14;    // trace, traceless symmetric, and the two skew parts
    double defining_residual = 0.0;  // |nabla_m phi - 2 T_m^q psi_q...|_inf
    double omega7_residual = 0.0;    // largest f or h0 part of split3(nabla_m phi)
    double split_orthogonality = 0.0;  // largest |<part_a, part_b>_g| for a != b
};

G2Torsion g2_torsion(const PhiField& field, const VecX& x, double fd_step = 1e-3);

// Imaginary octonion with vector part T(X)^q = X^m T_m^q.
Octonion torsion_octonion(const G2Torsion& t, const G2Structure& s, const VecX& direction);

// Levi-Civita derivative of an octonion field (real part differentiated as a function).
Octonion levi_civita_derivative(const PhiField& field, const VecX& x, const VecX& direction, const OctonionField& a,
                                double fd_step = 1e-3);
// D_X A = nabla_X A - A T(X), products in the algebra of phi(x).
Octonion octonion_covariant_derivative(const PhiField& field, const VecX& x, const VecX& direction,
                                       const OctonionField& a, double fd_step = 1e-3);

struct CovariantDerivativeChecks {
    double unit_residual = 0.0;             // |D_X 1 + T(X)|
    double quasi_derivation_residual = 0.0;  // |D_X(AB) - (nabla_X A)B - A(D_X B)|
    double metric_residual = 0.0;           // |X<A,B> - <D_X A,B> - <A,D_X B>|
};
CovariantDerivativeChecks covariant_derivative_checks(const PhiField& field, const VecX& x, const VecX& direction,
                                                      const OctonionField& a, const OctonionField& b,
                                                      double fd_step = 1e-3);

struct LeibnizDefect {
    Octonion defect;     // nabla_X(AB) - (nabla_X A)B - A(nabla_X B)
    Octonion predicted;  // -[T(X), A, B] = (T(X)A)B - T(X)(AB)
    double residual = 0.0;
};
// a, b have constant coefficients in the coordinate frame.
LeibnizDefect leibniz_defect(const PhiField& field, const VecX& x, const Octonion& a, const Octonion& b,
                             const VecX& direction, double fd_step = 1e-3);

struct TorsionTransformCheck {
    MatX measured;   // T_mn of the sigma_V warped field
    MatX predicted;  // rows m: -(D_m V) V^-1 on the base field, lowered
    double residual = 0.0;
};
// Unit-norm V only; throws NormDrift when |V| moves by more than 1e-10 on the stencil.
TorsionTransformCheck torsion_transform_check(const PhiField& base, const OctonionField& v, const VecX& x,
                                              double fd_step = 1e-3);

struct ClosednessProbe {
    double dphi_norm = 0.0;
    double dpsi_norm = 0.0;
};
ClosednessProbe closedness_probe(const PhiField& field, const VecX& x, double fd_step = 1e-3);

}  // namespace g2lab
