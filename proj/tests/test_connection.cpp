#include <doctest.h>

#include <cmath>

#include "g2lab/cartan_schouten.hpp"
#include "g2lab/connection.hpp"
#include "g2lab/errors.hpp"
#include "g2lab/registry.hpp"

using namespace g2lab;

namespace {

VecX v2(double a, double b) {
    VecX v(2);
    v << a, b;
    return v;
}

VecX v3(double a, double b, double c) {
    VecX v(3);
    v << a, b, c;
    return v;
}

double max_abs_v(const VecX& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("Levi-Civita symbols of the round sphere") {
    const double th = 0.9;
    const auto g = levi_civita([](const VecX& x) {
        MatX m = MatX::Zero(2, 2);
        m(0, 0) = 1.0;
        m(1, 1) = std::pow(std::sin(x[0]), 2);
        return m;
    }, v2(th, 0.3));
    CHECK(std::abs(g[idx3(2, 0, 1, 1)] + std::sin(th) * std::cos(th)) <= 1e-9);
    CHECK(std::abs(g[idx3(2, 1, 0, 1)] - 1.0 / std::tan(th)) <= 1e-9);
    CHECK(std::abs(g[idx3(2, 1, 1, 0)] - 1.0 / std::tan(th)) <= 1e-9);
    CHECK(std::abs(g[idx3(2, 0, 0, 0)]) <= 1e-9);
    // The analytic chart agrees.
    const auto a = sphere2_chart().gamma(v2(th, 0.3));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - g[i]) <= 1e-9);
}

TEST_CASE("Levi-Civita symbols of a conformally flat metric") {
    // g = exp(2f) delta: Gamma^i_jk = delta^i_j f_k + delta^i_k f_j - delta_jk f_i.
    auto f = [](const VecX& x) { return 0.3 * x[0] + 0.2 * x[1] * x[2]; };
    const VecX x = v3(0.1, -0.4, 0.7);
    const VecX df = v3(0.3, 0.2 * x[2], 0.2 * x[1]);
    const auto g = levi_civita([&](const VecX& p) { return MatX(std::exp(2.0 * f(p)) * MatX::Identity(3, 3)); }, x);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const double expect = (i == j) * df[k] + (i == k) * df[j] - (j == k) * df[i];
                CHECK(std::abs(g[idx3(3, i, j, k)] - expect) <= 1e-9);
            }
}

TEST_CASE("domain guard") {
    const ConnectionChart c = flat_chart(2, 1.0);
    CHECK_THROWS_AS(c.gamma(v2(1.5, 0.0)), LeftDomain);
    CHECK_NOTHROW(c.gamma(v2(0.5, 0.0)));
}

TEST_CASE("geodesics") {
    const ConnectionChart flat = flat_chart(3);
    const VecX x0 = v3(0.1, 0.2, 0.3), v0 = v3(1.0, -2.0, 0.5);
    const GeodesicPath p = integrate_geodesic(flat, x0, v0, 1.0, 0.01);
    CHECK(max_abs_v(p.x.back() - (x0 + v0)) <= 1e-13);
    // The equator is a great circle.
    const ConnectionChart s2 = sphere2_chart();
    const GeodesicPath eq = integrate_geodesic(s2, v2(M_PI / 2, 0.0), v2(0.0, 1.0), 1.0, 0.01);
    CHECK(max_abs_v(eq.x.back() - v2(M_PI / 2, 1.0)) <= 1e-12);
    // exp agrees with the integrated path, and exp_e(v) traced at t = 2 is exp_e(2v).
    const VecX e = v2(1.0, 0.2), v = v2(0.1, -0.2);
    const GeodesicPath q = integrate_geodesic(s2, e, v, 2.0, 1e-3);
    CHECK(max_abs_v(exp_map(s2, e, 2.0 * v) - q.x.back()) <= 1e-9);
}

TEST_CASE("geodesic integrator is fourth order") {
    const ConnectionChart s2 = sphere2_chart();
    const VecX e = v2(1.0, 0.2), v = v2(0.4, 0.7);
    const VecX ref = integrate_geodesic(s2, e, v, 1.0, 1e-4).x.back();
    const double e1 = max_abs_v(integrate_geodesic(s2, e, v, 1.0, 0.1).x.back() - ref);
    const double e2 = max_abs_v(integrate_geodesic(s2, e, v, 1.0, 0.05).x.back() - ref);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
}

TEST_CASE("exp inverse round trip") {
    const ConnectionChart w = make_chart("warped3");
    const VecX e = v3(0.1, -0.2, 0.15);
    for (const VecX& v : {v3(0.05, 0.02, -0.07), v3(-0.1, 0.0, 0.03), v3(0.0, 0.08, 0.05)}) {
        const VecX y = exp_map(w, e, v);
        CHECK(max_abs_v(exp_inverse(w, e, y) - v) <= 1e-9);
    }
}

TEST_CASE("parallel transport") {
    // Holonomy of a latitude circle is a rotation by 2 pi (1 - cos theta).
    const ConnectionChart s2 = sphere2_chart();
    const double th = 0.7;
    Curve c = [th](double t, VecX& x, VecX& dx) {
        x = v2(th, t);
        dx = v2(0.0, 1.0);
    };
    const VecX w = transport_along_curve(s2, c, v2(1.0, 0.0), 0.0, 2.0 * M_PI, 2000);
    const double angle = std::atan2(std::sin(th) * w[1], w[0]);
    CHECK(std::abs(std::remainder(angle - 2.0 * M_PI * (1.0 - std::cos(th)), 2.0 * M_PI)) <= 1e-6);
    // Transport along a geodesic preserves the metric length.
    const GeodesicPath p = integrate_geodesic(s2, v2(1.0, 0.0), v2(0.3, 0.5), 1.0, 1e-3);
    const VecX w0 = v2(0.2, 0.9);
    const VecX w1 = parallel_transport(s2, p, w0);
    auto len2 = [](const VecX& x, const VecX& u) { return u[0] * u[0] + std::pow(std::sin(x[0]) * u[1], 2); };
    CHECK(std::abs(len2(p.x.back(), w1) - len2(p.x.front(), w0)) <= 1e-10);
    // The two slot conventions agree for symmetric Christoffel symbols only.
    CHECK(max_abs_v(parallel_transport(s2, p, w0, TransportConvention::VelocityFirst) - w1) <= 1e-12);
    const ConnectionChart t = make_chart("contorsion3");
    const GeodesicPath pt = integrate_geodesic(t, v3(0, 0, 0), v3(0.3, 0.1, -0.2), 1.0, 1e-3);
    const VecX u0 = v3(0.0, 1.0, 0.0);
    CHECK(max_abs_v(parallel_transport(t, pt, u0) - parallel_transport(t, pt, u0, TransportConvention::VelocityFirst)) >
          1e-3);
}

TEST_CASE("geodesic loop of flat space") {
    const ConnectionChart flat = flat_chart(3);
    const VecX e = v3(0.1, 0.1, 0.1), x = v3(0.3, -0.2, 0.4), y = v3(-0.1, 0.5, 0.2), z = v3(0.2, 0.2, -0.3);
    const VecX xy = loop_product(flat, e, x, y);
    CHECK(max_abs_v(xy - (x + y - e)) <= 1e-10);
    CHECK(max_abs_v(xy - loop_product(flat, e, y, x)) <= 1e-10);
    CHECK(max_abs_v(loop_product(flat, e, xy, z) - loop_product(flat, e, x, loop_product(flat, e, y, z))) <= 1e-10);
}

TEST_CASE("geodesic loop of the sphere") {
    const ConnectionChart s2 = sphere2_chart();
    const VecX e = v2(1.2, 0.0), x = v2(1.3, 0.15), y = v2(1.1, 0.2);
    CHECK(max_abs_v(loop_product(s2, e, e, y) - y) <= 1e-10);
    CHECK(max_abs_v(loop_product(s2, e, x, e) - x) <= 1e-10);
    CHECK(max_abs_v(loop_product(s2, e, x, y) - loop_product(s2, e, y, x)) > 1e-4);
}

TEST_CASE("fundamental tensors") {
    const LoopExpansionReport flat = fit_fundamental_tensors(flat_chart(3), v3(0, 0, 0));
    CHECK(max_abs_vec(flat.alpha) <= 1e-9);
    CHECK(max_abs_vec(flat.beta) <= 1e-6);
    const LoopExpansionReport s2 = fit_fundamental_tensors(sphere2_chart(), v2(1.0, 0.0));
    CHECK(s2.alpha_antisymmetry <= 1e-9);
    // Torsion free: alpha vanishes.
    CHECK(max_abs_vec(s2.alpha) <= 1e-6);
    // A product given in closed form: z = u + w + [u, w] on so(3) ~ R^3 has alpha = 1/2 bracket.
    ProductFn prod = [](const VecX& u, const VecX& w) { return VecX(u + w + 0.5 * u.head<3>().cross(w.head<3>())); };
    const LoopExpansionReport br = fit_product_expansion(prod, 3, 1e-2, true);
    CHECK(std::abs(br.alpha[idx3(3, 2, 0, 1)] - 0.5) <= 1e-9);
    CHECK(std::abs(br.alpha[idx3(3, 2, 1, 0)] + 0.5) <= 1e-9);
}

TEST_CASE("curvature data") {
    const CurvatureData flat = curvature_data(flat_chart(3), v3(0.1, 0.2, 0.3));
    CHECK(max_abs_vec(flat.torsion) == 0.0);
    CHECK(max_abs_vec(flat.curvature) <= 1e-12);
    const double th = 1.1;
    const CurvatureData s2 = curvature_data(sphere2_chart(), v2(th, 0.0));
    CHECK(max_abs_vec(s2.torsion) <= 1e-12);
    CHECK(std::abs(s2.curvature[idx4(2, 0, 1, 0, 1)] - std::pow(std::sin(th), 2)) <= 1e-6);
    CHECK(std::abs(s2.curvature[idx4(2, 1, 0, 0, 1)] + 1.0) <= 1e-6);
    CHECK(s2.metric_compatibility <= 1e-6);
    const CurvatureData ct = curvature_data(make_chart("contorsion3"), v3(0.2, -0.1, 0.3));
    REQUIRE(ct.contorsion.size() == ct.torsion.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < ct.torsion.size(); ++i) worst = std::max(worst, std::abs(ct.torsion[i] + 2.0 * ct.contorsion[i]));
    CHECK(worst <= 1e-8);
    CHECK(max_abs_vec(ct.torsion) > 0.1);
    CHECK(ct.metric_compatibility <= 1e-6);
}

TEST_CASE("a constant shift contributes its skew part as torsion") {
    std::vector<double> k(27, 0.0);
    k[idx3(3, 0, 1, 2)] = 0.5;
    const CurvatureData cd = curvature_data(shifted_chart(flat_chart(3), k, "shift"), v3(0, 0, 0));
    CHECK(std::abs(std::abs(cd.torsion[idx3(3, 0, 1, 2)]) - 0.5) <= 1e-12);
    CHECK(std::abs(cd.torsion[idx3(3, 0, 1, 2)] + cd.torsion[idx3(3, 0, 2, 1)]) <= 1e-12);
}

TEST_CASE("grid chart interpolates the source") {
    const ConnectionChart s = make_chart("warped3");
    const ConnectionChart g = grid_chart(s, 40);
    const VecX x = v3(0.113, -0.271, 0.352);
    const auto a = s.gamma(x), b = g.gamma(x);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    CHECK(worst <= 1e-2);
    CHECK(worst > 0.0);
}

TEST_CASE("Akivis relations on a parallelizing connection") {
    const ConnectionChart cs = cs_chart(0.0);
    const AkivisReport rep = akivis_check(cs, VecX::Zero(7), {1e-2});
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].torsion_residual <= 1e-6);
    CHECK(rep.rows[0].alpha_norm > 0.1);
}
