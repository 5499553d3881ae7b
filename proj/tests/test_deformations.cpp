#include <doctest.h>

#include <cmath>

#include "g2lab/deformations.hpp"
#include "oracles.hpp"

using namespace g2lab;

TEST_CASE("Ad_V basics") {
    CounterRng r(11, "def-ad", 0);
    const Octonion a = oracle::random_octonion(r);
    CHECK(max_abs(ad(Octonion::real(1.0), a) - a) <= 1e-15);
    const Octonion v = oracle::random_octonion(r);
    CHECK(max_abs(ad(3.5 * v, a) - ad(v, a)) <= 1e-12);
    // V A V^-1 from the oracle table, then compared with the index formula.
    const Octonion vinv = conj(v) / norm2(v);
    const MatX m = ad_matrix(v);
    for (int c = 1; c <= 7; ++c) {
        const Octonion e = Octonion::unit(c);
        const Octonion direct = oracle::mul(oracle::mul(v, e), vinv);
        CHECK(max_abs(ad(v, e) - direct) <= 1e-12);
        for (int i = 0; i < 7; ++i) CHECK(std::abs(m(i, c - 1) - direct[static_cast<std::size_t>(i + 1)]) <= 1e-12);
    }
    CHECK((m.transpose() * m - MatX::Identity(7, 7)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(m.determinant() - 1.0) <= 1e-12);
}

TEST_CASE("sigma keeps the metric") {
    CHECK(max_abs_diff(sigma(Octonion::real(1.0), phi0()), phi0()) <= 1e-15);
    CHECK(max_abs_diff(sigma(Octonion::real(-2.0), phi0()), phi0()) <= 1e-14);
    const G2Structure s = metric_from_3form(sigma(Octonion::unit(1), phi0()));
    CHECK((s.g.g() - MatX::Identity(7, 7)).cwiseAbs().maxCoeff() <= 1e-13);
    CounterRng r(12, "def-iso", 0);
    for (int t = 0; t < 20; ++t) CHECK(isometry_residual(oracle::random_octonion(r)) <= 1e-10);
    // A pure imaginary unit changes the form.
    CHECK(max_abs_diff(sigma(Octonion::unit(1), phi0()), phi0()) > 0.5);
}

TEST_CASE("deformed product") {
    CounterRng r(13, "def-mul", 0);
    for (int t = 0; t < 20; ++t) {
        const Octonion a = oracle::random_octonion(r), b = oracle::random_octonion(r), v = oracle::random_octonion(r);
        const Octonion expect = oracle::mul(oracle::mul(a, v), oracle::mul(conj(v) / norm2(v), b));
        CHECK(max_abs(deformed_mul(a, b, v) - expect) <= 1e-12);
        const DeformedProductCheck c = deformed_product_check(a, b, v);
        CHECK(c.associator_route <= 1e-12);
        CHECK(c.sigma_route <= 1e-12);
        // Real V gives back the product; so does (uv)(v^-1 v).
        CHECK(max_abs(deformed_mul(a, b, Octonion::real(2.0)) - a * b) <= 1e-12);
        CHECK(max_abs(deformed_mul(a, v, v) - a * v) <= 1e-12);
    }
}

TEST_CASE("right associator is the negated library associator") {
    CounterRng r(14, "def-rassoc", 0);
    const Octonion a = oracle::random_octonion(r), b = oracle::random_octonion(r), c = oracle::random_octonion(r);
    CHECK(max_abs(right_associator(a, b, c) + associator(a, b, c)) <= 1e-13);
}

TEST_CASE("cube law and adjoint identities") {
    CounterRng r(15, "def-cube", 0);
    for (int t = 0; t < 20; ++t) {
        const Octonion v = oracle::random_octonion(r);
        CHECK(cube_law_residual(v) <= 1e-10);
        const auto adj = adjoint_identities(v, oracle::random_octonion(r), oracle::random_octonion(r));
        for (int i = 0; i < 5; ++i) CHECK_MESSAGE(adj[static_cast<std::size_t>(i)] <= 1e-12, adjoint_identity_name(i));
    }
    // Norm 2 exercises the normalisation by |V|^2.
    Octonion v = oracle::random_unit(r);
    CHECK(cube_law_residual(2.0 * v) <= 1e-10);
}

TEST_CASE("composition readings") {
    CounterRng r(16, "def-comp", 0);
    double reversed = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Octonion u = oracle::random_unit(r), v = oracle::random_unit(r);
        CHECK(composition_residual(u, v, CompositionReading::Plain) <= 1e-10);
        CHECK(composition_residual(u, v, CompositionReading::Deformed) <= 1e-10);
        reversed = std::max(reversed, composition_residual(u, v, CompositionReading::Reversed));
    }
    CHECK(reversed > 1e-3);
}

TEST_CASE("fixed product sweep") {
    const double pi = std::acos(-1.0);
    const auto pts = fixed_product_sweep({pi / 3.0, 2.0 * pi / 3.0, pi / 2.0, pi / 5.0});
    REQUIRE(pts.size() == 4);
    for (std::size_t i = 0; i < 2; ++i) {
        // V^3 real: sigma_{V^3} fixes phi0 while sigma_V moves it.
        CHECK(pts[i].v_cubed_real);
        CHECK(pts[i].sigma_v_cubed <= 1e-12);
        CHECK(pts[i].sigma_v > 0.1);
    }
    for (std::size_t i = 2; i < 4; ++i) {
        CHECK_FALSE(pts[i].v_cubed_real);
        CHECK(pts[i].sigma_v_cubed > 0.1);
    }
}
