#pragma once

#include <array>

#include "g2lab/exterior.hpp"
#include "g2lab/rng.hpp"

namespace g2lab {

// Model forms on R^7 built from the octonion structure constants.
AltTensor phi0();
AltTensor psi0();
AltTensor vol0();

/**
 * @brief A positive 3-form with everything it determines pointwise.
 */
struct G2Structure {
    AltTensor phi;
    AltTensor psi;
    AltTensor vol;
    Metric g;
    int orientation = 1;
};

// B_ij = coefficient of e^{1..7} in (e_i -| phi) ^ (e_j -| phi) ^ phi.
MatX phi_bilinear(const AltTensor& phi);

// Throws NotPositive unless B is definite after fixing its overall sign.
G2Structure metric_from_3form(const AltTensor& phi);

struct MembershipReport {
    double phi_residual = 0.0;     // |T*phi0 - phi0|_inf
    double metric_residual = 0.0;  // |T^T T - I|_inf
    double det_residual = 0.0;     // |det T - 1|
};

MembershipReport g2_membership(const MatX& t);
bool is_g2_element(const MatX& t, double tol = 1e-10);

// Columns h1, h2, h1 x h2, h4, h1 x h4, h2 x h4, h4 x (h1 x h2).
MatX g2_from_triple(const VecX& h1, const VecX& h2, const VecX& h4, double tol = 1e-10);

struct Triple {
    VecX h1, h2, h4;
};
// Uniform on S^6 x S^5 x S^3 as in the dimension count of G2.
Triple random_admissible_triple(CounterRng& rng);

// Random element of GL(n)+ with singular values in [1, max_cond].
MatX random_conditioned(CounterRng& rng, int n, double max_cond = 10.0);

// sharp(phi(x, y, .)).
VecX cross(const VecX& x, const VecX& y, const AltTensor& phi, const Metric& g);
VecX cross(const VecX& x, const VecX& y);

/**
 * Residuals of the six contraction identities relating phi, psi and g,
 * in order: phi.phi (one index), phi.phi (two), phi.psi (one), phi.psi
 * (two), psi.psi (two), psi.psi (three).
 */
std::array<double, 6> contraction_residuals(const G2Structure& s);

// Residuals for the norm, wedge and hodge identities of 1-forms against phi, psi.
struct IdentityPack {
    std::array<double, 12> residual{};
    static const char* name(int i);
};
IdentityPack identity_pack(const G2Structure& s, const VecX& alpha, const VecX& x);

// max-abs of (X -| phi)^(X -| phi)^phi - 6|X|^2 vol.
double cross_norm_volume_residual(const G2Structure& s, const VecX& x);

// Ordered basis of 2-forms (a<b) and of 3-forms (a<b<c).
int two_form_dim();
VecX pack2(const AltTensor& beta);
AltTensor unpack2(const VecX& v);
VecX pack3(const AltTensor& eta);
AltTensor unpack3(const VecX& v);

// R(beta) = *(phi ^ beta).
AltTensor r_operator(const AltTensor& beta, const G2Structure& s);
// The 21x21 matrix of R on packed components.
MatX r_operator_matrix(const G2Structure& s);
// -1/2 psi_abcd beta^cd, the index form of R.
AltTensor r_index_form(const AltTensor& beta, const G2Structure& s);

struct FormSplit2 {
    AltTensor beta7;
    AltTensor beta14;
};
FormSplit2 split2(const AltTensor& beta, const G2Structure& s);

// Infinitesimal pullback action of the endomorphism A^l_i = a_im g^ml.
AltTensor map_F(const MatX& a, const G2Structure& s);

struct FormSplit3 {
    double f = 0.0;
    VecX x;
    MatX h0;  // traceless with respect to g
    AltTensor part1, part7, part27;
};
FormSplit3 split3(const AltTensor& eta, const G2Structure& s);

}  // namespace g2lab
