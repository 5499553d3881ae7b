#pragma once

#include <array>
#include <vector>

#include "g2lab/phi_algebra.hpp"

namespace g2lab {

// V A V^-1.
Octonion ad(const Octonion& v, const Octonion& a, const PhiAlgebra& alg = PhiAlgebra::standard());

// Ad_V on imaginary octonions from the closed index formula; column c is Ad_V(e_c).
MatX ad_matrix(const Octonion& v, const PhiAlgebra& alg = PhiAlgebra::standard());

/**
 * sigma_V(phi) = ((v0^2 - |v|^2) phi - 2 v0 v -| psi + 2 v_flat ^ (v -| phi)) / |V|^2.
 * Same metric as phi, a different octonion product.
 */
AltTensor sigma(const Octonion& v, const G2Structure& s);
AltTensor sigma(const Octonion& v, const AltTensor& phi);

// (AV)(V^-1 B), the product induced by sigma_V(phi).
Octonion deformed_mul(const Octonion& a, const Octonion& b, const Octonion& v,
                      const PhiAlgebra& alg = PhiAlgebra::standard());

/**
 * In the deformation identities below the associator enters as
 * A(BC) - (AB)C, the opposite of the library's associator(). This is the
 * reading under which the closed forms hold.
 */
Octonion right_associator(const Octonion& a, const Octonion& b, const Octonion& c,
                          const PhiAlgebra& alg = PhiAlgebra::standard());

struct DeformedProductCheck {
    double associator_route = 0.0;  // |(AV)(V^-1B) - (AB + [A,B,V]V^-1)|
    double sigma_route = 0.0;       // |(AV)(V^-1B) - A o_{sigma_V(phi)} B|
};
DeformedProductCheck deformed_product_check(const Octonion& a, const Octonion& b, const Octonion& v,
                                            const PhiAlgebra& alg = PhiAlgebra::standard());

// |sigma_{V^3}(phi) - phi(Ad_{V^-1} ., Ad_{V^-1} ., Ad_{V^-1} .)|_inf
double cube_law_residual(const Octonion& v, const PhiAlgebra& alg = PhiAlgebra::standard());

// |g(sigma_V(phi)) - g(phi)|_inf
double isometry_residual(const Octonion& v, const PhiAlgebra& alg = PhiAlgebra::standard());

enum class CompositionReading { Plain, Deformed, Reversed };
const char* reading_name(CompositionReading r);

// |sigma_U(sigma_V(phi)) - sigma_W(phi)| with W = UV, U o_V V or VU.
double composition_residual(const Octonion& u, const Octonion& v, CompositionReading reading,
                            const PhiAlgebra& alg = PhiAlgebra::standard());

// Product laws for Ad_V; entries named by adjoint_identity_name.
std::array<double, 5> adjoint_identities(const Octonion& v, const Octonion& a, const Octonion& b);
const char* adjoint_identity_name(int i);

struct SweepPoint {
    double theta = 0.0;
    double sigma_v = 0.0;        // |sigma_V(phi0) - phi0|
    double sigma_v_cubed = 0.0;  // |sigma_{V^3}(phi0) - phi0|
    bool v_cubed_real = false;
};
// V = cos(theta) + sin(theta) u for a fixed imaginary unit u.
std::vector<SweepPoint> fixed_product_sweep(const std::vector<double>& thetas, int unit = 1);

}  // namespace g2lab
