#include <doctest.h>

#include <cmath>

#include "g2lab/exterior.hpp"
#include "g2lab/g2_linear.hpp"
#include "g2lab/rng.hpp"

using namespace g2lab;

namespace {

AltTensor random_form(CounterRng& r, int n, int k) {
    AltTensor a(n, k);
    for (const auto& idx : combinations(n, k)) a.set_alt(idx.data(), r.normal());
    if (k == 0) a.raw(0) = r.normal();
    return a;
}

Metric random_metric(CounterRng& r, int n) {
    const MatX a = random_conditioned(r, n, 3.0);
    return Metric(a.transpose() * a);
}

// The model forms typed in from their elementary expansions (1-based labels).
AltTensor typed_phi0() {
    AltTensor p(7, 3);
    const int t[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}};
    const double s[7] = {1, 1, 1, 1, -1, -1, -1};
    for (int i = 0; i < 7; ++i) p.set_alt({t[i][0] - 1, t[i][1] - 1, t[i][2] - 1}, s[i]);
    return p;
}

AltTensor typed_psi0() {
    AltTensor p(7, 4);
    const int t[7][4] = {{4, 5, 6, 7}, {2, 3, 6, 7}, {2, 3, 4, 5}, {1, 3, 5, 7}, {1, 3, 4, 6}, {1, 2, 5, 6}, {1, 2, 4, 7}};
    const double s[7] = {1, 1, 1, 1, -1, -1, -1};
    for (int i = 0; i < 7; ++i) p.set_alt({t[i][0] - 1, t[i][1] - 1, t[i][2] - 1, t[i][3] - 1}, s[i]);
    return p;
}

}  // namespace

TEST_CASE("components are antisymmetric and antisymmetrization is a projection") {
    AltTensor a(4, 2);
    a.set_alt({1, 2}, 1.0);
    CHECK(a({1, 2}) == 1.0);
    CHECK(a({2, 1}) == -1.0);
    CounterRng r(1, "ext-proj", 0);
    std::vector<double> raw(64);
    for (double& x : raw) x = r.normal();
    AltTensor once = AltTensor::from_dense(4, 3, raw);
    AltTensor twice = once;
    twice.antisymmetrize();
    // Equal up to the rounding of the averaging.
    CHECK(max_abs_diff(once, twice) <= 1e-15);
}

TEST_CASE("model forms match their elementary expansions") {
    CHECK(max_abs_diff(phi0(), typed_phi0()) == 0.0);
    CHECK(max_abs_diff(psi0(), typed_psi0()) == 0.0);
}

TEST_CASE("wedge") {
    const AltTensor dx1 = AltTensor::elementary(3, {0}), dx2 = AltTensor::elementary(3, {1});
    const AltTensor w = wedge(dx1, dx2);
    CHECK(w({0, 1}) == 1.0);
    CHECK(w({1, 0}) == -1.0);
    CHECK(max_abs_diff(wedge(phi0(), psi0()), 7.0 * vol0()) <= 1e-13);
    CounterRng r(2, "ext-wedge", 0);
    const AltTensor odd = random_form(r, 6, 3);
    CHECK(wedge(odd, odd).max_abs() <= 1e-13);
    CHECK_THROWS_AS(wedge(random_form(r, 5, 3), random_form(r, 5, 3)), DegreeOverflow);
}

TEST_CASE("wedge is associative and graded commutative") {
    CounterRng r(3, "ext-assoc", 0);
    for (int t = 0; t < 10; ++t) {
        const AltTensor a = random_form(r, 7, 2), b = random_form(r, 7, 1), c = random_form(r, 7, 3);
        const AltTensor l = wedge(wedge(a, b), c), rr = wedge(a, wedge(b, c));
        CHECK(max_abs_diff(l, rr) <= 1e-12 * std::max(1.0, l.max_abs()));
        CHECK(max_abs_diff(wedge(b, c), -1.0 * wedge(c, b)) <= 1e-13);
        CHECK(max_abs_diff(wedge(a, c), wedge(c, a)) <= 1e-13);
    }
}

TEST_CASE("interior product") {
    VecX e1 = VecX::Zero(3);
    e1[0] = 1.0;
    const AltTensor dx12 = wedge(AltTensor::elementary(3, {0}), AltTensor::elementary(3, {1}));
    CHECK(max_abs_diff(interior(e1, dx12), AltTensor::elementary(3, {1})) == 0.0);
    VecX f1 = VecX::Zero(7);
    f1[0] = 1.0;
    AltTensor expect(7, 2);
    expect.set_alt({1, 2}, 1.0);
    expect.set_alt({3, 4}, 1.0);
    expect.set_alt({5, 6}, 1.0);
    CHECK(max_abs_diff(interior(f1, phi0()), expect) == 0.0);
    CounterRng r(4, "ext-int", 0);
    VecX x(7);
    for (int i = 0; i < 7; ++i) x[i] = r.normal();
    CHECK(interior(x, interior(x, random_form(r, 7, 4))).max_abs() <= 1e-13);
    CHECK_THROWS_AS(interior(x, AltTensor::scalar(7, 1.0)), DegreeUnderflow);
}

TEST_CASE("hodge star and inner product") {
    const Metric id = Metric::identity(7);
    CHECK(max_abs_diff(hodge(phi0(), id), psi0()) <= 1e-14);
    CHECK(std::abs(form_inner(phi0(), phi0(), id) - 7.0) <= 1e-13);
    CHECK(std::abs(form_norm2(psi0(), id) - 7.0) <= 1e-13);
    CHECK(max_abs_diff(hodge(AltTensor::scalar(7, 1.0), id), vol0()) == 0.0);
    CounterRng r(5, "ext-hodge", 0);
    for (int k = 0; k <= 7; ++k) {
        const Metric g = random_metric(r, 7);
        const AltTensor a = random_form(r, 7, k), b = random_form(r, 7, k);
        const double sign = (k * (7 - k)) % 2 ? -1.0 : 1.0;
        CHECK(max_abs_diff(hodge(hodge(a, g), g), sign * a) <= 1e-10 * std::max(1.0, a.max_abs()));
        const AltTensor lhs = wedge(a, hodge(b, g));
        const AltTensor rhs = form_inner(a, b, g) * volume_form(g);
        CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * std::max(1.0, lhs.max_abs()));
    }
}

TEST_CASE("inner product of 1-forms is the Gram determinant in degree 2") {
    CounterRng r(6, "ext-gram", 0);
    const Metric g = random_metric(r, 5);
    VecX a(5), b(5), c(5), d(5);
    for (int i = 0; i < 5; ++i) {
        a[i] = r.normal();
        b[i] = r.normal();
        c[i] = r.normal();
        d[i] = r.normal();
    }
    const MatX gi = g.inv();
    const double gram = a.dot(gi * c) * b.dot(gi * d) - a.dot(gi * d) * b.dot(gi * c);
    const double ip = form_inner(wedge(AltTensor::from_covector(a), AltTensor::from_covector(b)),
                                 wedge(AltTensor::from_covector(c), AltTensor::from_covector(d)), g);
    CHECK(std::abs(ip - gram) <= 1e-12 * std::max(1.0, std::abs(gram)));
}

TEST_CASE("musical isomorphisms") {
    const Metric id = Metric::identity(3);
    VecX e1 = VecX::Zero(3);
    e1[0] = 1.0;
    CHECK((flat(e1, id) - e1).norm() == 0.0);
    CounterRng r(7, "ext-flat", 0);
    const Metric g = random_metric(r, 6);
    VecX x(6), w(6), v(6);
    for (int i = 0; i < 6; ++i) {
        x[i] = r.normal();
        w[i] = r.normal();
        v[i] = r.normal();
    }
    CHECK((sharp(flat(x, g), g) - x).cwiseAbs().maxCoeff() <= 1e-12);
    const double lhs = sharp(w, g).dot(g.g() * sharp(v, g));
    CHECK(std::abs(lhs - w.dot(g.inv() * v)) <= 1e-12 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("interior and hodge commute up to sign") {
    VecX e1 = VecX::Zero(3);
    e1[0] = 1.0;
    const AltTensor dx12 = wedge(AltTensor::elementary(3, {0}), AltTensor::elementary(3, {1}));
    CHECK(interior_hodge_residual(e1, dx12, Metric::identity(3)) == 0.0);
    CounterRng r(8, "ext-l213", 0);
    for (int t = 0; t < 5; ++t) {
        const Metric g = random_metric(r, 7);
        VecX x(7);
        for (int i = 0; i < 7; ++i) x[i] = r.normal();
        CHECK(interior_hodge_residual(x, random_form(r, 7, 3), g) <= 1e-12);
        // X -| vol = *(X_flat)
        const double s = max_abs_diff(interior(x, volume_form(g)), hodge(AltTensor::from_covector(flat(x, g)), g));
        CHECK(s <= 1e-12);
    }
}

TEST_CASE("volume form scales with the metric") {
    CounterRng r(9, "ext-vol", 0);
    const Metric g = random_metric(r, 7);
    const double c = 2.5;
    const AltTensor v1 = volume_form(Metric(c * g.g())), v0 = volume_form(g);
    CHECK(max_abs_diff(v1, std::pow(c, 3.5) * v0) <= 1e-12 * v1.max_abs());
}
