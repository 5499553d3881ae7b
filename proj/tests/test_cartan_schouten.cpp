#include <doctest.h>

#include <cmath>

#include "g2lab/cartan_schouten.hpp"
#include "oracles.hpp"

using namespace g2lab;

namespace {

constexpr int N = 7;

std::size_t i3(int i, int j, int k) { return static_cast<std::size_t>((i * N + j) * N + k); }
std::size_t i4(int i, int j, int k, int l) { return static_cast<std::size_t>(((i * N + j) * N + k) * N + l); }

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double w = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]));
    return w;
}

VecX twice_log(const Octonion& q) {
    const Vec7 im = q.im();
    const double s = im.norm();
    if (s == 0.0) return VecX::Zero(7);
    return VecX(2.0 * std::atan2(s, q.re()) / s * im);
}

Octonion half_exp(const VecX& u, double t) {
    return oracle::exp_series(Octonion::from_parts(0.0, Vec7(0.5 * t * u)));
}

}  // namespace

TEST_CASE("structure constants match the hand-built table") {
    const auto t = oracle::basis_table();
    const auto& c3 = octonion_c3();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                const auto [idx, sgn] = t[i + 1][j + 1];
                const double expect = (i != j && idx == k + 1) ? sgn : 0.0;
                CHECK(c3[i3(i, j, k)] == expect);
            }
    // [e_i, e_j, e_k] = 2 c_ijkl e_l with the library associator.
    const auto& c4 = octonion_c4();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                const Octonion a = oracle::mul(oracle::mul(Octonion::unit(i + 1), Octonion::unit(j + 1)), Octonion::unit(k + 1)) -
                                   oracle::mul(Octonion::unit(i + 1), oracle::mul(Octonion::unit(j + 1), Octonion::unit(k + 1)));
                for (int l = 0; l < N; ++l) CHECK(a[static_cast<std::size_t>(l + 1)] == 2.0 * c4[i4(i, j, k, l)]);
            }
    CHECK(max_diff(alternate4(c4), c4) == 0.0);
}

TEST_CASE("family tensors at special parameters") {
    const CsFamilyPoint a0 = cs_tensors(0.0);
    for (double r : a0.R) CHECK(std::abs(r) <= 1e-14);
    CHECK(std::abs(a0.k - 0.5) <= 1e-15);
    const CsFamilyPoint half = cs_tensors(0.5);
    for (double s : half.S) CHECK(s == 0.0);
    // At a = 1 the curvature is totally antisymmetric.
    const CsFamilyPoint a1 = cs_tensors(1.0);
    CHECK(max_diff(alternate4(a1.R), a1.R) <= 1e-14);
    double big = 0.0;
    for (double r : a1.R) big = std::max(big, std::abs(r));
    CHECK(big > 0.1);
    // Generic a: pair antisymmetry only.
    const CsFamilyPoint q = cs_tensors(0.25);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    CHECK(std::abs(q.R[i4(i, j, k, l)] + q.R[i4(j, i, k, l)]) <= 1e-14);
                    CHECK(std::abs(q.R[i4(i, j, k, l)] + q.R[i4(i, j, l, k)]) <= 1e-14);
                }
    CHECK(max_diff(alternate4(q.R), q.R) > 1e-3);
}

TEST_CASE("self-duality constants") {
    for (double k : {1.0, 2.0, 0.5}) {
        const SelfDualityReport s = self_duality_suite(k);
        CHECK(s.eps_alpha <= 1e-12);
        CHECK(s.eps_beta <= 1e-12);
        CHECK(s.alpha_alpha <= 1e-12);
        CHECK(s.beta_beta <= 1e-12);
        CHECK(s.alpha_cubed <= 1e-12);
        CHECK(s.eps_beta_sign == -1);
    }
    // The 24 k^2 normalization coincides with 24 k^4 only at k = 1.
    CHECK(self_duality_suite(1.0).beta_beta_printed <= 1e-12);
    CHECK(std::abs(self_duality_suite(2.0).beta_beta_printed - 288.0) <= 1e-9);
}

TEST_CASE("second fundamental tensor of the family loop") {
    for (double a : {0.0, 0.25, 0.5, 0.7, 1.0}) CHECK(max_diff(cs_loop_beta(a), cs_loop_beta_closed(a)) <= 1e-12);
    // The (1 + 3a + 3a^2) combination agrees only at a = 0.
    CHECK(max_diff(cs_loop_beta(0.0), cs_loop_beta_printed(0.0)) > 0.1);
    CHECK(max_diff(cs_loop_beta(0.7), cs_loop_beta_printed(0.7)) > 0.1);
}

TEST_CASE("loop expansion against the octonion product") {
    const double a = 0.7;
    const ProductFn prod = [a](const VecX& u, const VecX& w) {
        return twice_log(oracle::mul(oracle::mul(half_exp(w, a), half_exp(u, 1.0)), half_exp(w, 1.0 - a)));
    };
    const LoopExpansionReport fit = fit_product_expansion(prod, 7, 0.02, true);
    const CsExpansion ex = cs_expansion(a);
    CHECK(max_diff(fit.lambda, ex.lambda) <= 1e-8);
    CHECK(max_diff(fit.mu, ex.mu) <= 1e-8);
    CHECK(max_diff(fit.nu, ex.nu) <= 1e-8);
    CHECK(max_diff(fit.beta, cs_loop_beta(a)) <= 1e-8);
    // Twice the first fundamental tensor is (1 - 2a) c.
    const auto& c3 = octonion_c3();
    for (std::size_t q = 0; q < c3.size(); ++q) CHECK(std::abs(2.0 * fit.alpha[q] - (1.0 - 2.0 * a) * c3[q]) <= 1e-8);
}

TEST_CASE("chart realizing the family loop") {
    CsChartInfo info;
    const ConnectionChart c = cs_chart(0.25, &info);
    CHECK(info.solve_residual <= 1e-12);
    CHECK(c.dim() == 7);
    const LoopExpansionReport fit = fit_fundamental_tensors(c, VecX::Zero(7));
    const auto& c3 = octonion_c3();
    double worst = 0.0;
    for (std::size_t q = 0; q < c3.size(); ++q) worst = std::max(worst, std::abs(fit.alpha[q] - cs_default_k(0.25) * c3[q]));
    CHECK(worst <= 1e-6);
}
