#pragma once

#include <functional>
#include <string>
#include <vector>

#include "g2lab/exterior.hpp"

namespace g2lab {

// Flat index helpers; gamma(i, j, k) is Gamma^i_jk with nabla_{d_j} d_k = Gamma^i_jk d_i.
inline std::size_t idx3(int n, int i, int j, int k) { return static_cast<std::size_t>((i * n + j) * n + k); }
inline std::size_t idx4(int n, int i, int j, int k, int l) {
    return static_cast<std::size_t>(((i * n + j) * n + k) * n + l);
}

struct Box {
    VecX lo, hi;
    static Box cube(int n, double half_width, const VecX& center = VecX());
    bool contains(const VecX& x, double margin = 0.0) const;
};

/**
 * @brief Christoffel symbols as a field over an axis-aligned coordinate box.
 *
 * The evaluator must be pure and reentrant. An optional metric field is
 * carried for Levi-Civita comparisons and contorsion.
 */
class ConnectionChart {
public:
    using GammaFn = std::function<void(const VecX&, double*)>;
    using MetricFn = std::function<MatX(const VecX&)>;

    ConnectionChart(std::string name, int n, GammaFn gamma, Box domain, MetricFn metric = nullptr,
                    double normal_radius = 0.5);

    const std::string& name() const { return name_; }
    int dim() const { return n_; }
    const Box& domain() const { return domain_; }
    double normal_radius() const { return normal_radius_; }
    bool has_metric() const { return static_cast<bool>(metric_); }

    // Throws LeftDomain outside the box.
    std::vector<double> gamma(const VecX& x) const;
    void gamma_into(const VecX& x, double* out) const;
    MatX metric(const VecX& x) const;

private:
    std::string name_;
    int n_;
    GammaFn gamma_;
    Box domain_;
    MetricFn metric_;
    double normal_radius_;
};

ConnectionChart flat_chart(int n, double half_width = 10.0);
// Round sphere in (colatitude, longitude).
ConnectionChart sphere2_chart();
// Levi-Civita connection of a metric field, differentiated numerically.
ConnectionChart levi_civita_chart(std::string name, int n, ConnectionChart::MetricFn metric, Box domain,
                                  double fd_step = 1e-5);
// Adds a constant tensor k^i_jk to every Christoffel symbol.
ConnectionChart shifted_chart(const ConnectionChart& base, std::vector<double> shift, std::string name);
// Samples the source on a regular grid and interpolates multilinearly.
ConnectionChart grid_chart(const ConnectionChart& source, int cells_per_axis);

// Christoffel symbols of the torsion-free metric connection of g at x.
std::vector<double> levi_civita(const ConnectionChart::MetricFn& metric, const VecX& x, double fd_step = 1e-5);

// Which slot of Gamma the transported vector occupies.
enum class TransportConvention {
    VectorFirst,    // dX^i/ds = -Gamma^i_jk X^j dgamma^k/ds
    VelocityFirst,  // dX^i/ds = -Gamma^i_jk dgamma^j/ds X^k
};

struct OdeSettings {
    // Steps are sized by coordinate displacement: N = max(min_steps, ceil(|v| / h_ode)).
    double h_ode = 1e-3;
    int min_steps = 8;
    TransportConvention convention = TransportConvention::VectorFirst;
};

struct NewtonSettings {
    double fd_step = 1e-6;
    double tol = 1e-11;
    int max_iter = 50;
};

struct LoopSettings {
    OdeSettings ode;
    NewtonSettings newton;
};

struct GeodesicPath {
    VecX x0, v0;
    double h = 0.0;
    std::vector<double> t;
    std::vector<VecX> x, v;
};

// Fixed-step classical RK4 in the time variable.
GeodesicPath integrate_geodesic(const ConnectionChart& chart, const VecX& x0, const VecX& v0, double t_end, double h);

// Transport of w0 along the geodesic that generated the path, with the same steps.
VecX parallel_transport(const ConnectionChart& chart, const GeodesicPath& path, const VecX& w0,
                        TransportConvention conv = TransportConvention::VectorFirst);

// Transport along a prescribed curve c(t) with velocity dc(t).
using Curve = std::function<void(double t, VecX& x, VecX& dx)>;
VecX transport_along_curve(const ConnectionChart& chart, const Curve& curve, const VecX& w0, double t0, double t1,
                           int steps, TransportConvention conv = TransportConvention::VectorFirst);

VecX exp_map(const ConnectionChart& chart, const VecX& e, const VecX& v, const OdeSettings& ode = {});
// Damped Newton shooting from the initial guess y - e.
VecX exp_inverse(const ConnectionChart& chart, const VecX& e, const VecX& y, const LoopSettings& s = {});

// exp_y(transport_{e->y}(exp_e^-1(x))).
VecX loop_product(const ConnectionChart& chart, const VecX& e, const VecX& x, const VecX& y,
                  const LoopSettings& s = {});

struct FitSettings {
    double h = 1e-2;
    bool richardson = true;     // combine scales h and h/2
    bool normal_coords = false;  // evaluate the product in exp_e coordinates
    LoopSettings loop;
};

struct LoopExpansionReport {
    int n = 0;
    double h = 0.0;
    bool richardson = false;
    bool normal_coords = false;
    std::vector<double> lambda, mu, nu;  // lambda^i_jk, mu^i_jkl (x x y), nu^i_jkl (x y y)
    std::vector<double> alpha, beta;  // beta = 2(nu - mu + lambda lambda - lambda lambda)
    double alpha_antisymmetry = 0.0;
    double jacobi_residual = 0.0;  // |beta^i_[jkl] - 4 alpha^m_[jk alpha^i_l]m|
    std::size_t evaluations = 0;
};

// Product z(u, w) in coordinates centred at the unit (z(u, 0) = u, z(0, w) = w).
using ProductFn = std::function<VecX(const VecX& u, const VecX& w)>;

// Central stencils at scale h for lambda = d2z/dudw, mu = d3z/dudu dw, nu = d3z/du dwdw.
LoopExpansionReport fit_product_expansion(const ProductFn& product, int n, double h, bool richardson = true);

LoopExpansionReport fit_fundamental_tensors(const ConnectionChart& chart, const VecX& e, const FitSettings& s = {});

struct CurvatureData {
    int n = 0;
    std::vector<double> gamma;      // at e
    std::vector<double> torsion;    // T^i_jk
    std::vector<double> curvature;  // R^i_jkl, components of R(d_k, d_l) d_j
    std::vector<double> nabla_torsion;  // [i][j][k][l] = nabla_l T^i_jk
    std::vector<double> contorsion;     // S^i_jk = Gamma_LC - Gamma, empty without a metric
    double metric_compatibility = 0.0;  // |nabla g|_inf when a metric is present
};

CurvatureData curvature_data(const ConnectionChart& chart, const VecX& e, double fd_step = 1e-4);

struct AkivisRow {
    double h = 0.0;
    double torsion_residual = 0.0;    // |2 alpha + T|_inf
    double curvature_residual = 0.0;  // |beta + nabla_k T^i_jl + R^i_jkl|_inf
    double alpha_norm = 0.0;          // |alpha|_inf
    double jacobi_residual = 0.0;
};

struct AkivisReport {
    std::vector<AkivisRow> rows;
    CurvatureData curvature;
};

/**
 * Always fits in normal coordinates at e. With beta normalized as in the fit
 * report, the limits are 2 alpha = -T and beta^i_jkl = -nabla_k T^i_jl - R^i_jkl.
 */
AkivisReport akivis_check(const ConnectionChart& chart, const VecX& e, const std::vector<double>& h_list,
                          FitSettings base = {});

double max_abs_vec(const std::vector<double>& v);

}  // namespace g2lab
