#include "g2lab/registry.hpp"

#include <cmath>

#include <json.hpp>

#include "g2lab/cartan_schouten.hpp"
#include "g2lab/errors.hpp"
#include "g2lab/g2_linear.hpp"
#include "g2lab/rng.hpp"

namespace g2lab {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
    try {
        json j = json::parse(text);
        if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
            throw BadConfig("definition must be an object with a string \"kind\"");
        return j;
    } catch (const json::exception& e) {
        throw BadConfig(std::string("invalid JSON definition: ") + e.what());
    }
}

template <class T>
T param(const json& j, const char* key, T fallback) {
    if (!j.contains("params") || !j["params"].contains(key)) return fallback;
    try {
        return j["params"][key].get<T>();
    } catch (const json::exception&) {
        throw BadConfig(std::string("bad value for param ") + key);
    }
}

// Returns false when no domain is given.
bool read_domain(const json& j, int n, Box& out) {
    if (!j.contains("domain")) return false;
    const json& d = j["domain"];
    if (d.is_number()) {
        const double hw = d.get<double>();
        if (!(hw > 0.0)) throw BadConfig("domain half width must be positive");
        out = Box::cube(n, hw);
        return true;
    }
    if (!d.is_array() || static_cast<int>(d.size()) != n) throw BadConfig("domain must list one [lo, hi] per axis");
    out = Box{VecX(n), VecX(n)};
    for (int i = 0; i < n; ++i) {
        const json& p = d[static_cast<std::size_t>(i)];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw BadConfig("domain entries must be [lo, hi]");
        out.lo[i] = p[0].get<double>();
        out.hi[i] = p[1].get<double>();
        if (!(out.lo[i] < out.hi[i])) throw BadConfig("domain needs lo < hi");
    }
    return true;
}

ConnectionChart with_domain(const ConnectionChart& c, const Box& box) {
    const ConnectionChart base = c;
    ConnectionChart::MetricFn metric;
    if (base.has_metric()) metric = [base](const VecX& x) { return base.metric(x); };
    return ConnectionChart(
        base.name(), base.dim(), [base](const VecX& x, double* out) { base.gamma_into(x, out); }, box, metric,
        base.normal_radius());
}

ConnectionChart warped3_chart() { return levi_civita_chart("warped3", 3, warped3_metric, Box::cube(3, 1.0)); }

// warped3 plus S^i_jk = scale g^im eps_mjk; the lowered shift is totally
// antisymmetric, so the connection stays metric and keeps its geodesics.
ConnectionChart contorsion3_chart(double scale) {
    const ConnectionChart base = warped3_chart();
    auto gamma = [base, scale](const VecX& x, double* out) {
        base.gamma_into(x, out);
        const MatX ginv = warped3_metric(x).inverse();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int m = 0; m < 3; ++m)
                        if (m != j && j != k && m != k)
                            out[idx3(3, i, j, k)] += scale * ginv(i, m) * permutation_sign({m, j, k});
    };
    return ConnectionChart("contorsion3", 3, gamma, base.domain(), warped3_metric);
}

std::vector<MatX> random_slopes(double scale, std::uint64_t seed) {
    std::vector<MatX> s;
    for (int l = 0; l < 7; ++l) {
        CounterRng rng(seed, "pullback_warp", static_cast<std::uint64_t>(l));
        MatX m(7, 7);
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) m(i, j) = scale * rng.normal();
        s.push_back(m);
    }
    return s;
}

PhiField field_from_object(const json& j) {
    const std::string kind = j["kind"].get<std::string>();
    PhiField f;
    if (kind == "constant") {
        f = constant_field(phi0(), param(j, "half_width", 1.0));
    } else if (kind == "pullback_warp") {
        const double scale = param(j, "scale", 0.05);
        const auto seed = param<std::uint64_t>(j, "seed", 7);
        f = pullback_warp_field(random_slopes(scale, seed), param(j, "half_width", 0.5));
    } else if (kind == "sigma_warp") {
        const double theta = param(j, "theta", 0.1);
        const int unit = param(j, "unit", 1);
        if (unit < 1 || unit > 7) throw BadConfig("sigma_warp unit must be in 1..7");
        PhiField base = constant_field(phi0(), 1.0);
        if (j.contains("params") && j["params"].contains("base")) {
            const json& b = j["params"]["base"];
            if (!b.is_object() || !b.contains("kind")) throw BadConfig("sigma_warp base must be a field definition");
            base = field_from_object(b);
        }
        Vec7 u = Vec7::Zero();
        u[unit - 1] = 1.0;
        VecX slope = VecX::Zero(7);
        slope[0] = theta;
        f = sigma_warp_field(base, exp_line_field(u, slope), "sigma_warp");
        f.domain = base.domain;
    } else {
        throw BadConfig("unknown field kind: " + kind);
    }
    Box box;
    if (read_domain(j, 7, box)) f.domain = box;
    return f;
}

std::vector<CatalogEntry> build_chart_catalog() {
    return {
        {"flat3", "flat", "Euclidean R^3, zero Christoffel symbols", R"({"kind":"flat","params":{"n":3}})"},
        {"sphere2", "sphere2", "round unit sphere in colatitude/longitude", R"({"kind":"sphere2"})"},
        {"warped3", "warped3", "Levi-Civita connection of a generic 3D metric (torsion free)",
         R"({"kind":"warped3"})"},
        {"contorsion3", "contorsion3", "warped3 plus a totally antisymmetric contorsion 0.2 eps (lowered)",
         R"({"kind":"contorsion3","params":{"scale":0.2}})"},
        {"cartan_schouten0", "cartan_schouten", "7D loop jet of the S^7 family, a = 0",
         R"({"kind":"cartan_schouten","params":{"a":0.0}})"},
        {"cartan_schouten_quarter", "cartan_schouten", "7D loop jet of the S^7 family, a = 1/4",
         R"({"kind":"cartan_schouten","params":{"a":0.25}})"},
    };
}

std::vector<CatalogEntry> build_field_catalog() {
    return {
        {"constant", "constant", "phi0 everywhere (torsion free)", R"({"kind":"constant"})"},
        {"sigma_warp", "sigma_warp", "sigma_V(phi0) with V = exp(0.1 x^1 e1)",
         R"({"kind":"sigma_warp","params":{"theta":0.1,"unit":1}})"},
        {"pullback_warp", "pullback_warp", "A(x)^* phi0 with A = I + sum x^l M_l, |M| ~ 0.05",
         R"({"kind":"pullback_warp","params":{"scale":0.05,"seed":7}})"},
        {"sigma_on_pullback", "sigma_warp", "sigma warp of the pullback warp (torsionful base)",
         R"({"kind":"sigma_warp","params":{"theta":0.1,"unit":1,"base":{"kind":"pullback_warp"}}})"},
    };
}

}  // namespace

MatX warped3_metric(const VecX& x) {
    MatX g(3, 3);
    g << 1 + 0.5 * x[1] * x[1] + 0.3 * std::sin(x[2]), 0.2 * x[0] * x[2], 0.1 * x[1],  //
        0.2 * x[0] * x[2], 1 + 0.4 * x[0] * x[0] * x[0] + 0.3 * x[2], 0.25 * x[0] * x[1],  //
        0.1 * x[1], 0.25 * x[0] * x[1], 1 + 0.3 * x[0] * x[1] + 0.2 * x[2] * x[2] * x[1];
    return g;
}

ConnectionChart chart_from_json(std::string_view text) {
    const json j = parse(text);
    const std::string kind = j["kind"].get<std::string>();
    ConnectionChart c = [&]() {
        if (kind == "flat") {
            const int n = param(j, "n", 3);
            if (n < 1 || n > 8) throw BadConfig("flat chart dimension must be in 1..8");
            return flat_chart(n, param(j, "half_width", 10.0));
        }
        if (kind == "sphere2") return sphere2_chart();
        if (kind == "warped3") return warped3_chart();
        if (kind == "contorsion3") return contorsion3_chart(param(j, "scale", 0.2));
        if (kind == "cartan_schouten") return cs_chart(param(j, "a", 0.0));
        throw BadConfig("unknown chart kind: " + kind);
    }();
    Box box;
    if (read_domain(j, c.dim(), box)) return with_domain(c, box);
    return c;
}

PhiField field_from_json(std::string_view text) { return field_from_object(parse(text)); }

const std::vector<CatalogEntry>& chart_catalog() {
    static const std::vector<CatalogEntry> c = build_chart_catalog();
    return c;
}

const std::vector<CatalogEntry>& field_catalog() {
    static const std::vector<CatalogEntry> c = build_field_catalog();
    return c;
}

ConnectionChart make_chart(const std::string& name) {
    for (const auto& e : chart_catalog())
        if (e.name == name) return chart_from_json(e.json);
    throw BadConfig("unknown chart: " + name);
}

PhiField make_field(const std::string& name) {
    for (const auto& e : field_catalog())
        if (e.name == name) {
            PhiField f = field_from_json(e.json);
            f.name = name;
            return f;
        }
    throw BadConfig("unknown field: " + name);
}

}  // namespace g2lab
