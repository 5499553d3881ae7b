#include <doctest.h>

#include <cmath>

#include "g2lab/octonion.hpp"
#include "oracles.hpp"

using namespace g2lab;

namespace {

Octonion e(int i) { return Octonion::unit(i); }

bool near(const Octonion& a, const Octonion& b, double tol) { return max_abs(a - b) <= tol; }

}  // namespace

TEST_CASE("basis products follow the cycle list") {
    CHECK(near(e(1) * e(2), e(3), 0.0));
    CHECK(near(e(4) * e(4), Octonion::real(-1.0), 0.0));
    CHECK(near(e(2) * e(1), -e(3), 0.0));
    const auto& sc = StructureConstants::get();
    CHECK(sc.table_index(1, 2) == 3);
    CHECK(sc.table_sign(1, 2) == 1);
    CHECK(sc.table_sign(2, 1) == -1);
}

TEST_CASE("product agrees with the hand-built table") {
    CounterRng r(1, "oct-table", 0);
    for (int t = 0; t < 50; ++t) {
        const Octonion a = oracle::random_octonion(r), b = oracle::random_octonion(r);
        CHECK(near(a * b, oracle::mul(a, b), 1e-14));
    }
}

TEST_CASE("unit, conjugate and norm") {
    CounterRng r(1, "oct-basic", 0);
    const Octonion a = oracle::random_octonion(r), b = oracle::random_octonion(r);
    CHECK(near(Octonion::real(1.0) * a, a, 0.0));
    CHECK(near(conj(Octonion::real(1.0)), Octonion::real(1.0), 0.0));
    CHECK(near(conj(e(5)), -e(5), 0.0));
    CHECK(near(conj(3.0 * e(0) + 2.0 * e(1)), 3.0 * e(0) - 2.0 * e(1), 0.0));
    CHECK(near(conj(conj(a)), a, 0.0));
    CHECK(near(conj(a * b), conj(b) * conj(a), 1e-13));
    CHECK(near(a * conj(a), Octonion::real(norm2(a)), 1e-13));
}

TEST_CASE("inverse") {
    CHECK(near(inverse(e(1)), -e(1), 0.0));
    CHECK(near(inverse(Octonion::real(2.0)), Octonion::real(0.5), 0.0));
    CounterRng r(1, "oct-inv", 0);
    const Octonion u = oracle::random_unit(r);
    CHECK(near(u * inverse(u), Octonion::real(1.0), 1e-14));
    CHECK_THROWS_AS(inverse(Octonion::real(1e-13)), ZeroDivisor);
}

TEST_CASE("commutator and associator on the basis") {
    CHECK(near(commutator(e(1), e(2)), 2.0 * e(3), 0.0));
    CHECK(near(associator(e(1), e(2), e(3)), Octonion{}, 0.0));
    // Resolved with the hand-built table: (e1 e2) e4 - e1 (e2 e4) = -2 e7.
    const Octonion oracle_assoc = oracle::mul(oracle::mul(e(1), e(2)), e(4)) - oracle::mul(e(1), oracle::mul(e(2), e(4)));
    CHECK(near(oracle_assoc, -2.0 * e(7), 0.0));
    CHECK(near(associator(e(1), e(2), e(4)), -2.0 * e(7), 0.0));
}

TEST_CASE("associator is alternating and imaginary on imaginaries") {
    CounterRng r(2, "oct-assoc", 0);
    const Octonion a = oracle::random_imaginary(r), b = oracle::random_imaginary(r), c = oracle::random_imaginary(r);
    const Octonion abc = associator(a, b, c);
    CHECK(near(associator(b, a, c), -1.0 * abc, 1e-13));
    CHECK(near(associator(a, c, b), -1.0 * abc, 1e-13));
    CHECK(std::abs(abc.re()) <= 1e-13);
    CHECK(std::abs(commutator(a, b).re()) <= 1e-13);
}

TEST_CASE("structure constants") {
    const auto& sc = StructureConstants::get();
    const int c4_cycles[7][4] = {{4, 5, 6, 7}, {2, 3, 4, 5}, {2, 3, 6, 7}, {1, 3, 5, 7},
                                 {1, 3, 6, 4}, {1, 2, 6, 5}, {1, 2, 7, 4}};
    for (const auto& q : c4_cycles) CHECK(sc.c4(q[0], q[1], q[2], q[3]) == 1);
    for (const auto& c : fano_cycles()) CHECK(sc.c3(c[0], c[1], c[2]) == 1);
    int nonzero = 0;
    for (int i = 1; i <= 7; ++i)
        for (int j = 1; j <= 7; ++j)
            for (int k = 1; k <= 7; ++k) {
                CHECK(sc.c3(i, j, k) == -sc.c3(j, i, k));
                CHECK(sc.c3(i, j, k) == -sc.c3(i, k, j));
                nonzero += sc.c3(i, j, k) != 0;
            }
    CHECK(nonzero == 42);
}

TEST_CASE("exponential") {
    CHECK(near(exponential(Octonion{}), Octonion::real(1.0), 0.0));
    CHECK(near(exponential(M_PI * e(1)), Octonion::real(-1.0), 1e-15));
    CHECK(near(exponential(M_PI / 2 * e(3)), e(3), 1e-15));
    CounterRng r(3, "oct-exp", 0);
    const Octonion a = 0.7 * oracle::random_imaginary(r);
    CHECK(near(exponential(a), oracle::exp_series(a), 1e-13));
    // Small-argument branch against the series.
    const Octonion tiny = 1e-7 * e(2) + 3e-8 * e(6);
    CHECK(near(exponential(tiny), oracle::exp_series(tiny, 6), 1e-18));
    CHECK_THROWS_AS(exponential(Octonion::real(0.5) + e(1)), NotImaginary);
}

TEST_CASE("power") {
    CHECK(near(power(e(1), 2), Octonion::real(-1.0), 1e-15));
    CounterRng r(4, "oct-pow", 0);
    const Octonion a = oracle::random_octonion(r);
    CHECK(near(power(a, 1), a, 1e-14));
    const Octonion u = oracle::random_unit(r);
    CHECK(near(power(u, 3), (u * u) * u, 1e-13));
    CHECK(near(power(a, -2) * (a * a), Octonion::real(1.0), 1e-13));
    CHECK_THROWS_AS(power(Octonion{}, -1), ZeroDivisor);
}

TEST_CASE("translation matrices") {
    CHECK((left_matrix(Octonion::real(1.0)) - Mat8::Identity()).cwiseAbs().maxCoeff() == 0.0);
    const Vec8 l12 = left_matrix(e(1)) * e(2).vec();
    CHECK((l12 - e(3).vec()).cwiseAbs().maxCoeff() == 0.0);
    CounterRng r(5, "oct-mat", 0);
    const Octonion a = oracle::random_octonion(r), b = oracle::random_octonion(r), c = oracle::random_octonion(r);
    CHECK(near(Octonion::from_vec(right_matrix(b) * a.vec()), a * b, 1e-13));
    const double lhs = (left_matrix(b) * a.vec()).dot(c.vec());
    const double rhs = a.vec().dot(left_matrix(conj(b)) * c.vec());
    CHECK(std::abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("identity pack on random draws") {
    for (std::uint64_t t = 0; t < 200; ++t) {
        CounterRng r(6, "oct-pack", t);
        const Octonion a = oracle::random_octonion(r), b = oracle::random_octonion(r);
        const Octonion A = oracle::random_imaginary(r), B = oracle::random_imaginary(r), C = oracle::random_imaginary(r);
        const IdentityResiduals id = identity_residuals(a, b, A, B, C);
        CHECK(id.norm_multiplicative <= 1e-12);
        CHECK(id.alternative <= 1e-13);
        CHECK(id.anticommuting_pair <= 1e-12);
        CHECK(id.triple_expansion <= 1e-12);
        CHECK(id.cross_norm <= 1e-12);
        CHECK(id.double_cross <= 1e-12);
        CHECK(id.jacobi <= 1e-12);
    }
}

TEST_CASE("associator sign matters in the triple expansion") {
    // With [A,B,C] read as A(BC) - (AB)C the expansion fails.
    CounterRng r(7, "oct-sign", 0);
    const Octonion A = oracle::random_imaginary(r), B = oracle::random_imaginary(r), C = oracle::random_imaginary(r);
    const Octonion flipped = -1.0 * associator(A, B, C);
    const Octonion rhs = -0.5 * flipped - dot(A * B, C) * Octonion::real(1.0) - dot(B, C) * A + dot(A, C) * B -
                         dot(A, B) * C;
    CHECK(max_abs(A * (B * C) - rhs) > 0.1);
}
