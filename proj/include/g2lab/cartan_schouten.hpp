#pragma once

#include <string>
#include <vector>

#include "g2lab/connection.hpp"

namespace g2lab {

// c_ijk and c_ijkl as dense 7^3 / 7^4 arrays with 0-based indices (orthonormal frame).
const std::vector<double>& octonion_c3();
const std::vector<double>& octonion_c4();

/**
 * @brief One member of the parallelizing-frame family on S^7.
 *
 * alpha = k c (first fundamental tensor), torsion S = -alpha, curvature in
 * closed form from S. Indices are frame indices, all lowered.
 */
struct CsFamilyPoint {
    double alpha_param = 0.0;
    double k = 0.0;
    std::vector<double> S;  // S_ijk
    std::vector<double> R;  // R_ijkl
};

// Scale of the loop's first fundamental tensor: 2 alpha = (1 - 2a) c.
double cs_default_k(double alpha_param);

// R_ijkl = 4a(1-a) S_ij^m S_klm - 4a(2-3a) S_[ij^m S_kl]m
CsFamilyPoint cs_tensors(double alpha_param, double k_scale);
inline CsFamilyPoint cs_tensors(double alpha_param) { return cs_tensors(alpha_param, cs_default_k(alpha_param)); }

// Alternation over all four slots.
std::vector<double> alternate4(const std::vector<double>& t);

struct SelfDualityReport {
    double k = 0.0;
    double eps_alpha = 0.0;    // |eps k alpha - 6 beta|
    double eps_beta = 0.0;     // |eps beta - 24 k alpha|
    double alpha_alpha = 0.0;  // |alpha_ijm alpha^ijn - 6 k^2 delta|
    double beta_beta = 0.0;    // |beta_mijk beta^nijk - 24 k^4 delta|
    double beta_beta_printed = 0.0;  // same contraction against 24 k^2 delta
    double alpha_cubed = 0.0;  // |alpha^j_im alpha^k_jn alpha^i_kp - 3 k^2 alpha_mnp|
    int eps_beta_sign = 0;     // sign s with eps beta = s 24 k alpha
};

// alpha = k c^3, beta = k^2 c^4, eps the 7-dimensional Levi-Civita symbol.
SelfDualityReport self_duality_suite(double k);

// Second fundamental tensor of the family loop v^a u v^(1-a) from its expansion.
std::vector<double> cs_loop_beta(double alpha_param);
// Closed form: -4 beta = 4a(1-a) c^i_jm c^m_kl + 4(1 - 3a + 3a^2) c^i_m[j c^m_kl]
std::vector<double> cs_loop_beta_closed(double alpha_param);
// The combination a(1-a) c c + (1 + 3a + 3a^2) c c[...] read as -4 beta.
std::vector<double> cs_loop_beta_printed(double alpha_param);

// lambda, mu, nu of the family loop from the same expansion (lambda = (1-2a)c/2).
struct CsExpansion {
    std::vector<double> lambda, mu, nu;
};
CsExpansion cs_expansion(double alpha_param);

struct CsChartInfo {
    double solve_residual = 0.0;  // least-squares residual of the jet equations
};

/**
 * Seven-dimensional chart with Gamma(x) = Gamma0 + A x in normal coordinates
 * at the origin. Gamma0 is antisymmetric with 2 alpha = (1 - 2a) c, and A is
 * chosen so that straight lines are geodesics and the loop's second
 * fundamental tensor equals cs_loop_beta(a).
 */
ConnectionChart cs_chart(double alpha_param, CsChartInfo* info = nullptr);

}  // namespace g2lab
