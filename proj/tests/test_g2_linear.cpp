#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "g2lab/g2_linear.hpp"
#include "g2lab/rng.hpp"

using namespace g2lab;

namespace {

VecX gaussian(CounterRng& r, int n) {
    VecX v(n);
    for (int i = 0; i < n; ++i) v[i] = r.normal();
    return v;
}

VecX unit(int i) {
    VecX v = VecX::Zero(7);
    v[i] = 1.0;
    return v;
}

AltTensor random_form(CounterRng& r, int k) {
    AltTensor a(7, k);
    for (const auto& idx : combinations(7, k)) a.set_alt(idx.data(), r.normal());
    return a;
}

double max_abs_mat(const MatX& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("metric of the model form") {
    const G2Structure s = metric_from_3form(phi0());
    CHECK(max_abs_mat(s.g.g() - MatX::Identity(7, 7)) <= 1e-13);
    CHECK(max_abs_diff(s.psi, psi0()) <= 1e-13);
    CHECK(max_abs_diff(s.vol, vol0()) <= 1e-13);
    CHECK(std::abs(form_norm2(s.phi, s.g) - 7.0) <= 1e-13);
}

TEST_CASE("metric scales as c^(2/3) and transforms by congruence") {
    const G2Structure s = metric_from_3form(3.0 * phi0());
    CHECK(max_abs_mat(s.g.g() - std::pow(3.0, 2.0 / 3.0) * MatX::Identity(7, 7)) <= 1e-12);
    CounterRng r(1, "g2-cong", 0);
    for (int t = 0; t < 10; ++t) {
        const MatX a = random_conditioned(r, 7, 10.0);
        const G2Structure sa = metric_from_3form(pullback(a, phi0()));
        // g_{A*phi}(x, y) = g0(Ax, Ay)
        const MatX expect = a.transpose() * a;
        CHECK(max_abs_mat(sa.g.g() - expect) <= 1e-10 * max_abs_mat(expect));
        CHECK(std::abs(form_norm2(sa.phi, sa.g) - 7.0) <= 1e-10);
    }
}

TEST_CASE("non-positive forms are rejected") {
    AltTensor bad(7, 3);
    bad.set_alt({0, 1, 2}, 1.0);
    CHECK_THROWS_AS(metric_from_3form(bad), NotPositive);
}

TEST_CASE("G2 membership") {
    CHECK(is_g2_element(MatX::Identity(7, 7)));
    MatX flip = MatX::Identity(7, 7);
    flip(0, 0) = -1.0;
    CHECK_FALSE(is_g2_element(flip));
    CHECK(max_abs_mat(g2_from_triple(unit(0), unit(1), unit(3)) - MatX::Identity(7, 7)) <= 1e-15);
    const MatX swapped = g2_from_triple(unit(1), unit(0), unit(3));
    CHECK(is_g2_element(swapped));
    CHECK(max_abs_mat(swapped - MatX::Identity(7, 7)) > 0.5);
    CounterRng r(2, "g2-triple", 0);
    for (int t = 0; t < 50; ++t) {
        const Triple tr = random_admissible_triple(r);
        const MatX g = g2_from_triple(tr.h1, tr.h2, tr.h4);
        CHECK(is_g2_element(g));
        CHECK(std::abs(g.determinant() - 1.0) <= 1e-10);
    }
    CHECK_THROWS_AS(g2_from_triple(unit(0), unit(1), unit(2)), BadTriple);
    CHECK_THROWS_AS(g2_from_triple(unit(0), 2.0 * unit(1), unit(3)), BadTriple);
}

TEST_CASE("cross product") {
    CHECK((cross(unit(0), unit(1)) - unit(2)).norm() <= 1e-15);
    CounterRng r(3, "g2-cross", 0);
    const VecX x = gaussian(r, 7), y = gaussian(r, 7);
    CHECK(cross(x, x).norm() <= 1e-14);
    const VecX c = cross(x, y);
    CHECK(std::abs(c.squaredNorm() - (x.squaredNorm() * y.squaredNorm() - std::pow(x.dot(y), 2))) <= 1e-12);
    CHECK(std::abs(c.dot(x)) <= 1e-13);
    const MatX a = random_conditioned(r, 7, 5.0);
    const G2Structure s = metric_from_3form(pullback(a, phi0()));
    const VecX cg = cross(x, y, s.phi, s.g);
    CHECK(std::abs(cg.dot(s.g.g() * y)) <= 1e-10 * std::max(1.0, cg.norm() * y.norm()));
}

TEST_CASE("contraction identities hold for the induced pair") {
    for (double r : contraction_residuals(metric_from_3form(phi0()))) CHECK(r <= 1e-12);
    CounterRng rng(4, "g2-contr", 0);
    for (int t = 0; t < 20; ++t) {
        const MatX a = random_conditioned(rng, 7, 10.0);
        for (double r : contraction_residuals(metric_from_3form(pullback(a, phi0())))) CHECK(r <= 1e-10);
    }
    // A perturbed, non-model form is still positive; the identities are about (phi, g_phi).
    const AltTensor pert = phi0() + 0.1 * random_form(rng, 3);
    for (double r : contraction_residuals(metric_from_3form(pert))) CHECK(r <= 1e-10);
}

TEST_CASE("one-form identity pack and the volume identity") {
    const G2Structure s = metric_from_3form(phi0());
    CounterRng r(5, "g2-pack", 0);
    for (int t = 0; t < 10; ++t) {
        const IdentityPack p = identity_pack(s, gaussian(r, 7), gaussian(r, 7));
        for (int i = 0; i < 12; ++i) CHECK_MESSAGE(p.residual[static_cast<std::size_t>(i)] <= 1e-11, IdentityPack::name(i));
    }
    const G2Structure sa = metric_from_3form(pullback(random_conditioned(r, 7, 5.0), phi0()));
    CHECK(cross_norm_volume_residual(sa, gaussian(r, 7)) <= 1e-10);
}

TEST_CASE("R operator spectrum and the 2-form split") {
    const G2Structure s = metric_from_3form(phi0());
    Eigen::SelfAdjointEigenSolver<MatX> es(r_operator_matrix(s));
    const VecX ev = es.eigenvalues();
    for (int i = 0; i < 21; ++i) CHECK(std::abs(ev[i] - (i < 14 ? -1.0 : 2.0)) <= 1e-10);
    // R^2 = 2 + R
    const MatX m = r_operator_matrix(s);
    CHECK(max_abs_mat(m * m - 2.0 * MatX::Identity(21, 21) - m) <= 1e-12);
    CounterRng r(6, "g2-split2", 0);
    const VecX x = gaussian(r, 7);
    const FormSplit2 sx = split2(interior(x, s.phi), s);
    CHECK(sx.beta14.max_abs() <= 1e-13);
    const AltTensor beta = random_form(r, 2);
    const FormSplit2 sp = split2(beta, s);
    CHECK(max_abs_diff(sp.beta7 + sp.beta14, beta) <= 1e-13);
    CHECK(std::abs(form_inner(sp.beta7, sp.beta14, s.g)) <= 1e-12);
    // beta14 contracted into phi vanishes.
    double worst = 0.0;
    for (int k = 0; k < 7; ++k) {
        double acc = 0.0;
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) acc += sp.beta14({i, j}) * s.phi({i, j, k});
        worst = std::max(worst, std::abs(acc));
    }
    CHECK(worst <= 1e-12);
    // Projector ranks.
    const MatX p7 = (m + MatX::Identity(21, 21)) / 3.0, p14 = (2.0 * MatX::Identity(21, 21) - m) / 3.0;
    CHECK(Eigen::FullPivLU<MatX>(p7).rank() == 7);
    CHECK(Eigen::FullPivLU<MatX>(p14).rank() == 14);
    CHECK(max_abs_mat(p7 * p7 - p7) <= 1e-12);
    CHECK(max_abs_mat(p7 * p14) <= 1e-12);
    // The index form with a positive sign reproduces R.
    CHECK(max_abs_diff(r_index_form(beta, s), -1.0 * r_operator(beta, s)) <= 1e-13);
}

TEST_CASE("map F") {
    const G2Structure s = metric_from_3form(phi0());
    CHECK(max_abs_diff(map_F(s.g.g(), s), 3.0 * phi0()) <= 1e-13);
    CounterRng r(7, "g2-F", 0);
    const FormSplit2 sp = split2(random_form(r, 2), s);
    MatX b14(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) b14(i, j) = sp.beta14({i, j});
    CHECK(map_F(b14, s).max_abs() <= 1e-12);
    // Finite-difference oracle on a non-model structure.
    const G2Structure sa = metric_from_3form(pullback(random_conditioned(r, 7, 3.0), phi0()));
    MatX a(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) a(i, j) = r.normal();
    const MatX gen = (a * sa.g.inv()).transpose();
    const double h = 1e-5;
    const MatX ep = (h * gen).exp(), em = (-h * gen).exp();
    const AltTensor fd = (1.0 / (2.0 * h)) * (pullback(ep, sa.phi) - pullback(em, sa.phi));
    CHECK(max_abs_diff(fd, map_F(a, sa)) <= 1e-8 * std::max(1.0, fd.max_abs()));
}

TEST_CASE("3-form split") {
    const G2Structure s = metric_from_3form(phi0());
    const FormSplit3 sp = split3(phi0(), s);
    CHECK(std::abs(sp.f - 1.0) <= 1e-12);
    CHECK(sp.x.norm() <= 1e-12);
    CHECK(max_abs_mat(sp.h0) <= 1e-12);
    const FormSplit3 s5 = split3(interior(unit(4), psi0()), s);
    CHECK(std::abs(s5.f) <= 1e-12);
    CHECK((s5.x - unit(4)).norm() <= 1e-12);
    CHECK(max_abs_mat(s5.h0) <= 1e-12);
    CounterRng r(8, "g2-split3", 0);
    const G2Structure sa = metric_from_3form(pullback(random_conditioned(r, 7, 3.0), phi0()));
    const AltTensor eta = random_form(r, 3);
    const FormSplit3 se = split3(eta, sa);
    CHECK(max_abs_diff(se.part1 + se.part7 + se.part27, eta) <= 1e-10);
    CHECK(std::abs(form_inner(se.part1, se.part7, sa.g)) <= 1e-10);
    CHECK(std::abs(form_inner(se.part1, se.part27, sa.g)) <= 1e-10);
    CHECK(std::abs(form_inner(se.part7, se.part27, sa.g)) <= 1e-10);
    // Splitting a part returns that part.
    CHECK(max_abs_diff(split3(se.part27, sa).part27, se.part27) <= 1e-10);
    CHECK(max_abs_diff(split3(se.part7, sa).part7, se.part7) <= 1e-10);
}
