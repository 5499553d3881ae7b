#include "g2lab/connection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <string>

#include "g2lab/errors.hpp"

namespace g2lab {

double max_abs_vec(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Box Box::cube(int n, double half_width, const VecX& center) {
    const VecX c = center.size() == n ? center : VecX::Zero(n);
    return Box{c.array() - half_width, c.array() + half_width};
}

bool Box::contains(const VecX& x, double margin) const {
    if (x.size() != lo.size()) return false;
    for (int i = 0; i < x.size(); ++i)
        if (!(x[i] >= lo[i] + margin && x[i] <= hi[i] - margin)) return false;
    return true;
}

ConnectionChart::ConnectionChart(std::string name, int n, GammaFn gamma, Box domain, MetricFn metric,
                                 double normal_radius)
    : name_(std::move(name)), n_(n), gamma_(std::move(gamma)), domain_(std::move(domain)), metric_(std::move(metric)),
      normal_radius_(normal_radius) {
    if (n < 1 || n > 8) throw DimensionMismatch("chart dimension must be in 1..8");
    if (domain_.lo.size() != n || domain_.hi.size() != n) throw DimensionMismatch("domain box has wrong dimension");
}

void ConnectionChart::gamma_into(const VecX& x, double* out) const {
    if (!domain_.contains(x)) throw LeftDomain("point left the chart domain of " + name_);
    gamma_(x, out);
}

std::vector<double> ConnectionChart::gamma(const VecX& x) const {
    std::vector<double> out(static_cast<std::size_t>(n_ * n_ * n_), 0.0);
    gamma_into(x, out.data());
    return out;
}

MatX ConnectionChart::metric(const VecX& x) const {
    if (!metric_) throw BadConfig("chart " + name_ + " carries no metric");
    if (!domain_.contains(x)) throw LeftDomain("point left the chart domain of " + name_);
    return metric_(x);
}

ConnectionChart flat_chart(int n, double half_width) {
    return ConnectionChart(
        "flat", n, [n](const VecX&, double* out) { std::fill(out, out + n * n * n, 0.0); }, Box::cube(n, half_width),
        [n](const VecX&) { return MatX(MatX::Identity(n, n)); }, half_width);
}

ConnectionChart sphere2_chart() {
    Box dom{VecX(2), VecX(2)};
    dom.lo << 0.05, -10.0;
    dom.hi << M_PI - 0.05, 10.0;
    return ConnectionChart(
        "sphere2", 2,
        [](const VecX& x, double* out) {
            std::fill(out, out + 8, 0.0);
            const double s = std::sin(x[0]), c = std::cos(x[0]);
            out[idx3(2, 0, 1, 1)] = -s * c;     // Gamma^theta_phi phi
            out[idx3(2, 1, 0, 1)] = c / s;      // Gamma^phi_theta phi
            out[idx3(2, 1, 1, 0)] = c / s;
        },
        dom,
        [](const VecX& x) {
            MatX g = MatX::Zero(2, 2);
            g(0, 0) = 1.0;
            g(1, 1) = std::sin(x[0]) * std::sin(x[0]);
            return g;
        },
        0.5);
}

std::vector<double> levi_civita(const ConnectionChart::MetricFn& metric, const VecX& x, double fd_step) {
    const int n = static_cast<int>(x.size());
    const MatX g = metric(x);
    Eigen::LLT<MatX> llt(g);
    if (llt.info() != Eigen::Success) throw SingularMetric("metric is not positive definite");
    const MatX gi = llt.solve(MatX::Identity(n, n));
    std::vector<MatX> dg(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
        VecX xp = x, xm = x;
        xp[l] += fd_step;
        xm[l] -= fd_step;
        dg[static_cast<std::size_t>(l)] = (metric(xp) - metric(xm)) / (2.0 * fd_step);
    }
    std::vector<double> out(static_cast<std::size_t>(n * n * n), 0.0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                for (int l = 0; l < n; ++l)
                    acc += gi(k, l) * (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                                       dg[static_cast<std::size_t>(l)](i, j));
                out[idx3(n, k, i, j)] = 0.5 * acc;
            }
    return out;
}

ConnectionChart levi_civita_chart(std::string name, int n, ConnectionChart::MetricFn metric, Box domain,
                                  double fd_step) {
    auto gamma = [metric, n, fd_step](const VecX& x, double* out) {
        const auto g = levi_civita(metric, x, fd_step);
        std::copy(g.begin(), g.begin() + n * n * n, out);
    };
    return ConnectionChart(std::move(name), n, gamma, std::move(domain), std::move(metric));
}

ConnectionChart shifted_chart(const ConnectionChart& base, std::vector<double> shift, std::string name) {
    const int n = base.dim();
    if (static_cast<int>(shift.size()) != n * n * n) throw DimensionMismatch("shift must have n^3 entries");
    auto gamma = [base, shift, n](const VecX& x, double* out) {
        base.gamma_into(x, out);
        for (int i = 0; i < n * n * n; ++i) out[i] += shift[static_cast<std::size_t>(i)];
    };
    ConnectionChart::MetricFn metric;
    if (base.has_metric()) metric = [base](const VecX& x) { return base.metric(x); };
    return ConnectionChart(std::move(name), n, gamma, base.domain(), metric, base.normal_radius());
}

ConnectionChart grid_chart(const ConnectionChart& source, int cells) {
    const int n = source.dim();
    if (cells < 4) throw BadConfig("grid needs at least 4 cells per axis");
    const int pts = cells + 1;
    const int n3 = n * n * n;
    std::size_t total = 1;
    for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(pts);
    if (total * static_cast<std::size_t>(n3) > 50'000'000) throw BadConfig("grid too large");
    const Box& dom = source.domain();
    const VecX step = (dom.hi - dom.lo) / cells;
    auto samples = std::make_shared<std::vector<double>>(total * static_cast<std::size_t>(n3));
    std::vector<int> ix(static_cast<std::size_t>(n), 0);
    for (std::size_t p = 0; p < total; ++p) {
        std::size_t rem = p;
        VecX x(n);
        for (int a = n - 1; a >= 0; --a) {
            ix[static_cast<std::size_t>(a)] = static_cast<int>(rem % static_cast<std::size_t>(pts));
            rem /= static_cast<std::size_t>(pts);
            x[a] = dom.lo[a] + ix[static_cast<std::size_t>(a)] * step[a];
        }
        // Clamp corner samples into the source box against rounding.
        for (int a = 0; a < n; ++a) x[a] = std::clamp(x[a], dom.lo[a], dom.hi[a]);
        source.gamma_into(x, samples->data() + p * static_cast<std::size_t>(n3));
    }
    auto gamma = [samples, dom, step, cells, pts, n, n3](const VecX& x, double* out) {
        std::vector<int> base(static_cast<std::size_t>(n));
        std::vector<double> frac(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
            const double u = (x[a] - dom.lo[a]) / step[a];
            const int b = std::clamp(static_cast<int>(std::floor(u)), 0, cells - 1);
            base[static_cast<std::size_t>(a)] = b;
            frac[static_cast<std::size_t>(a)] = u - b;
        }
        std::fill(out, out + n3, 0.0);
        for (int corner = 0; corner < (1 << n); ++corner) {
            double w = 1.0;
            std::size_t p = 0;
            for (int a = 0; a < n; ++a) {
                const int bit = (corner >> a) & 1;
                const double f = frac[static_cast<std::size_t>(a)];
                w *= bit ? f : 1.0 - f;
                p = p * static_cast<std::size_t>(pts) + static_cast<std::size_t>(base[static_cast<std::size_t>(a)] + bit);
            }
            if (w == 0.0) continue;
            const double* s = samples->data() + p * static_cast<std::size_t>(n3);
            for (int i = 0; i < n3; ++i) out[i] += w * s[i];
        }
    };
    ConnectionChart::MetricFn metric;
    if (source.has_metric()) metric = [source](const VecX& x) { return source.metric(x); };
    return ConnectionChart(source.name() + "_grid", n, gamma, dom, metric, source.normal_radius());
}

namespace {

// Contractions -Gamma^i_jk a^j b^k.
void contract(int n, const double* g, const VecX& a, const VecX& b, VecX& out) {
    out.setZero(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            if (a[j] == 0.0) continue;
            const double* row = g + idx3(n, i, j, 0);
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += row[k] * b[k];
            acc += a[j] * s;
        }
        out[i] = -acc;
    }
}

// State layout: x, v and optionally a transported vector w.
struct Rhs {
    const ConnectionChart& chart;
    bool with_vector;
    TransportConvention conv;
    mutable std::vector<double> g;

    VecX operator()(const VecX& y) const {
        const int n = chart.dim();
        const VecX x = y.head(n), v = y.segment(n, n);
        chart.gamma_into(x, g.data());
        VecX out(y.size());
        out.head(n) = v;
        VecX acc;
        contract(n, g.data(), v, v, acc);
        out.segment(n, n) = acc;
        if (with_vector) {
            const VecX w = y.segment(2 * n, n);
            if (conv == TransportConvention::VectorFirst) contract(n, g.data(), w, v, acc);
            else contract(n, g.data(), v, w, acc);
            out.segment(2 * n, n) = acc;
        }
        return out;
    }
};

VecX rk4(const Rhs& f, VecX y, double dt, int steps, std::vector<VecX>* trace = nullptr) {
    if (trace) trace->push_back(y);
    for (int s = 0; s < steps; ++s) {
        const VecX k1 = f(y);
        const VecX k2 = f(y + 0.5 * dt * k1);
        const VecX k3 = f(y + 0.5 * dt * k2);
        const VecX k4 = f(y + dt * k3);
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (trace) trace->push_back(y);
    }
    return y;
}

int displacement_steps(const VecX& v, const OdeSettings& ode) {
    const double len = v.norm();
    const int n = static_cast<int>(std::ceil(len / ode.h_ode - 1e-9));
    return std::max(ode.min_steps, n);
}

double inf_norm(const VecX& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

GeodesicPath integrate_geodesic(const ConnectionChart& chart, const VecX& x0, const VecX& v0, double t_end, double h) {
    const int n = chart.dim();
    if (h <= 0.0 || t_end < 0.0) throw BadConfig("geodesic step and end time must be positive");
    const int steps = std::max(1, static_cast<int>(std::ceil(t_end / h - 1e-9)));
    const double dt = t_end / steps;
    Rhs f{chart, false, TransportConvention::VectorFirst, std::vector<double>(static_cast<std::size_t>(n * n * n))};
    VecX y(2 * n);
    y << x0, v0;
    std::vector<VecX> trace;
    rk4(f, y, dt, steps, &trace);
    GeodesicPath p;
    p.x0 = x0;
    p.v0 = v0;
    p.h = dt;
    for (std::size_t s = 0; s < trace.size(); ++s) {
        p.t.push_back(static_cast<double>(s) * dt);
        p.x.push_back(trace[s].head(n));
        p.v.push_back(trace[s].segment(n, n));
    }
    return p;
}

VecX parallel_transport(const ConnectionChart& chart, const GeodesicPath& path, const VecX& w0, TransportConvention conv) {
    const int n = chart.dim();
    const int steps = static_cast<int>(path.t.size()) - 1;
    if (steps < 0) return w0;
    Rhs f{chart, true, conv, std::vector<double>(static_cast<std::size_t>(n * n * n))};
    VecX y(3 * n);
    y << path.x0, path.v0, w0;
    return rk4(f, y, path.h, steps).segment(2 * n, n);
}

VecX transport_along_curve(const ConnectionChart& chart, const Curve& curve, const VecX& w0, double t0, double t1,
                           int steps, TransportConvention conv) {
    const int n = chart.dim();
    std::vector<double> g(static_cast<std::size_t>(n * n * n));
    auto f = [&](double t, const VecX& w) {
        VecX x(n), dx(n), out;
        curve(t, x, dx);
        chart.gamma_into(x, g.data());
        if (conv == TransportConvention::VectorFirst) contract(n, g.data(), w, dx, out);
        else contract(n, g.data(), dx, w, out);
        return out;
    };
    const double dt = (t1 - t0) / steps;
    VecX w = w0;
    for (int s = 0; s < steps; ++s) {
        const double t = t0 + s * dt;
        const VecX k1 = f(t, w);
        const VecX k2 = f(t + 0.5 * dt, w + 0.5 * dt * k1);
        const VecX k3 = f(t + 0.5 * dt, w + 0.5 * dt * k2);
        const VecX k4 = f(t + dt, w + dt * k3);
        w += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return w;
}

VecX exp_map(const ConnectionChart& chart, const VecX& e, const VecX& v, const OdeSettings& ode) {
    const int n = chart.dim();
    const int steps = displacement_steps(v, ode);
    Rhs f{chart, false, ode.convention, std::vector<double>(static_cast<std::size_t>(n * n * n))};
    VecX y(2 * n);
    y << e, v;
    return rk4(f, y, 1.0 / steps, steps).head(n);
}

VecX exp_inverse(const ConnectionChart& chart, const VecX& e, const VecX& y, const LoopSettings& s) {
    const int n = chart.dim();
    VecX v = y - e;
    VecX r = exp_map(chart, e, v, s.ode) - y;
    double rn = inf_norm(r);
    for (int iter = 0; iter < s.newton.max_iter && rn > s.newton.tol; ++iter) {
        MatX jac(n, n);
        const VecX base = r + y;
        for (int j = 0; j < n; ++j) {
            VecX vp = v;
            vp[j] += s.newton.fd_step;
            jac.col(j) = (exp_map(chart, e, vp, s.ode) - base) / s.newton.fd_step;
        }
        const VecX dv = jac.partialPivLu().solve(-r);
        double step = 1.0;
        bool accepted = false;
        for (int k = 0; k < 30; ++k) {
            const VecX vt = v + step * dv;
            const VecX rt = exp_map(chart, e, vt, s.ode) - y;
            const double rtn = inf_norm(rt);
            if (rtn < rn) {
                v = vt;
                r = rt;
                rn = rtn;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    if (rn > s.newton.tol) throw NoConvergence("exp_inverse did not converge (residual " + std::to_string(rn) + ")");
    return v;
}

VecX loop_product(const ConnectionChart& chart, const VecX& e, const VecX& x, const VecX& y, const LoopSettings& s) {
    const int n = chart.dim();
    const VecX v = exp_inverse(chart, e, x, s);
    const VecX w = exp_inverse(chart, e, y, s);
    const int steps = displacement_steps(w, s.ode);
    Rhs f{chart, true, s.ode.convention, std::vector<double>(static_cast<std::size_t>(n * n * n))};
    VecX st(3 * n);
    st << e, w, v;
    const VecX moved = rk4(f, st, 1.0 / steps, steps).segment(2 * n, n);
    return exp_map(chart, y, moved, s.ode);
}

namespace {

// Products on points h*(signed basis sums), cached by their signed indices.
class LoopSampler {
public:
    using Key = std::array<int, 4>;  // u = s(a0) + s(a1), w = s(a2) + s(a3); 0 means absent, +-(i+1)

    LoopSampler(const ProductFn& product, int n, double h) : product_(product), n_(n), h_(h) {}

    const VecX& at(Key key) {
        std::sort(key.begin(), key.begin() + 2);
        std::sort(key.begin() + 2, key.end());
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(key, product_(build(key[0], key[1]), build(key[2], key[3]))).first->second;
    }

    std::size_t size() const { return cache_.size(); }

private:
    VecX build(int a, int b) const {
        VecX v = VecX::Zero(n_);
        for (int c : {a, b})
            if (c != 0) v[std::abs(c) - 1] += (c > 0 ? h_ : -h_);
        return v;
    }

    const ProductFn& product_;
    int n_;
    double h_;
    std::map<Key, VecX> cache_;
};

struct RawFit {
    std::vector<double> lambda, mu, nu;
    std::size_t evaluations = 0;
};

RawFit fit_at(const ProductFn& product, int n, double h) {
    LoopSampler f(product, n, h);
    RawFit r;
    r.lambda.assign(static_cast<std::size_t>(n * n * n), 0.0);
    r.mu.assign(static_cast<std::size_t>(n * n * n * n), 0.0);
    r.nu.assign(static_cast<std::size_t>(n * n * n * n), 0.0);
    auto sg = [](int i, int sign) { return sign * (i + 1); };
    const double h2 = h * h, h3 = h2 * h;

    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            VecX acc = VecX::Zero(n);
            for (int a : {1, -1})
                for (int b : {1, -1}) acc += (a * b) * f.at({sg(j, a), 0, sg(k, b), 0});
            acc /= 4.0 * h2;
            for (int i = 0; i < n; ++i) r.lambda[idx3(n, i, j, k)] = acc[i];
        }

    // mu^i_jkl = d^3 z / dx^j dx^k dy^l, symmetric in jk.
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                VecX acc = VecX::Zero(n);
                if (j == k) {
                    for (int c : {1, -1}) {
                        acc += c * (f.at({sg(j, 1), 0, sg(l, c), 0}) - 2.0 * f.at({0, 0, sg(l, c), 0}) +
                                    f.at({sg(j, -1), 0, sg(l, c), 0}));
                    }
                    acc /= 2.0 * h3;
                } else {
                    for (int a : {1, -1})
                        for (int b : {1, -1})
                            for (int c : {1, -1}) acc += (a * b * c) * f.at({sg(j, a), sg(k, b), sg(l, c), 0});
                    acc /= 8.0 * h3;
                }
                for (int i = 0; i < n; ++i) r.mu[idx4(n, i, j, k, l)] = r.mu[idx4(n, i, k, j, l)] = acc[i];
            }

    // nu^i_jkl = d^3 z / dx^j dy^k dy^l, symmetric in kl.
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = k; l < n; ++l) {
                VecX acc = VecX::Zero(n);
                if (k == l) {
                    for (int a : {1, -1}) {
                        acc += a * (f.at({sg(j, a), 0, sg(k, 1), 0}) - 2.0 * f.at({sg(j, a), 0, 0, 0}) +
                                    f.at({sg(j, a), 0, sg(k, -1), 0}));
                    }
                    acc /= 2.0 * h3;
                } else {
                    for (int a : {1, -1})
                        for (int b : {1, -1})
                            for (int c : {1, -1}) acc += (a * b * c) * f.at({sg(j, a), 0, sg(k, b), sg(l, c)});
                    acc /= 8.0 * h3;
                }
                for (int i = 0; i < n; ++i) r.nu[idx4(n, i, j, k, l)] = r.nu[idx4(n, i, j, l, k)] = acc[i];
            }
    r.evaluations = f.size();
    return r;
}

std::vector<double> richardson(const std::vector<double>& coarse, const std::vector<double>& fine) {
    std::vector<double> out(coarse.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    return out;
}

// Alternation over the last three slots of a (1,3) tensor.
std::vector<double> alt3(int n, const std::vector<double>& t) {
    std::vector<double> out(t.size(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const double v = t[idx4(n, i, j, k, l)] + t[idx4(n, i, k, l, j)] + t[idx4(n, i, l, j, k)] -
                                     t[idx4(n, i, k, j, l)] - t[idx4(n, i, j, l, k)] - t[idx4(n, i, l, k, j)];
                    out[idx4(n, i, j, k, l)] = v / 6.0;
                }
    return out;
}

}  // namespace

LoopExpansionReport fit_product_expansion(const ProductFn& product, int n, double h, bool use_richardson) {
    LoopExpansionReport rep;
    rep.n = n;
    rep.h = h;
    rep.richardson = use_richardson;
    RawFit coarse = fit_at(product, n, h);
    rep.evaluations = coarse.evaluations;
    if (use_richardson) {
        RawFit fine = fit_at(product, n, 0.5 * h);
        rep.evaluations += fine.evaluations;
        rep.lambda = richardson(coarse.lambda, fine.lambda);
        rep.mu = richardson(coarse.mu, fine.mu);
        rep.nu = richardson(coarse.nu, fine.nu);
    } else {
        rep.lambda = std::move(coarse.lambda);
        rep.mu = std::move(coarse.mu);
        rep.nu = std::move(coarse.nu);
    }
    const auto& lam = rep.lambda;
    rep.alpha.assign(lam.size(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                rep.alpha[idx3(n, i, j, k)] = 0.5 * (lam[idx3(n, i, j, k)] - lam[idx3(n, i, k, j)]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                rep.alpha_antisymmetry =
                    std::max(rep.alpha_antisymmetry, std::abs(rep.alpha[idx3(n, i, j, k)] + rep.alpha[idx3(n, i, k, j)]));

    // beta^i_jkl = 2(nu - mu + lambda^m_kl lambda^i_jm - lambda^m_jk lambda^i_ml)
    rep.beta.assign(rep.mu.size(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double q = 0.0;
                    for (int m = 0; m < n; ++m)
                        q += lam[idx3(n, m, k, l)] * lam[idx3(n, i, j, m)] - lam[idx3(n, m, j, k)] * lam[idx3(n, i, m, l)];
                    rep.beta[idx4(n, i, j, k, l)] = 2.0 * (rep.nu[idx4(n, i, j, k, l)] - rep.mu[idx4(n, i, j, k, l)] + q);
                }

    // Generalized Jacobi in this normalization: beta^i_[jkl] = 4 alpha^m_[jk alpha^i_l]m.
    std::vector<double> aa(rep.beta.size(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double q = 0.0;
                    for (int m = 0; m < n; ++m) q += rep.alpha[idx3(n, m, j, k)] * rep.alpha[idx3(n, i, l, m)];
                    aa[idx4(n, i, j, k, l)] = 4.0 * q;
                }
    const auto ab = alt3(n, rep.beta), aaa = alt3(n, aa);
    for (std::size_t q = 0; q < ab.size(); ++q) rep.jacobi_residual = std::max(rep.jacobi_residual, std::abs(ab[q] - aaa[q]));
    return rep;
}

LoopExpansionReport fit_fundamental_tensors(const ConnectionChart& chart, const VecX& e, const FitSettings& s) {
    if (e.size() != chart.dim()) throw DimensionMismatch("base point has wrong dimension");
    ProductFn product;
    if (s.normal_coords) {
        product = [&](const VecX& u, const VecX& w) {
            const VecX x = exp_map(chart, e, u, s.loop.ode);
            const VecX y = exp_map(chart, e, w, s.loop.ode);
            return exp_inverse(chart, e, loop_product(chart, e, x, y, s.loop), s.loop);
        };
    } else {
        product = [&](const VecX& u, const VecX& w) { return VecX(loop_product(chart, e, e + u, e + w, s.loop) - e); };
    }
    LoopExpansionReport rep = fit_product_expansion(product, chart.dim(), s.h, s.richardson);
    rep.normal_coords = s.normal_coords;
    return rep;
}

CurvatureData curvature_data(const ConnectionChart& chart, const VecX& e, double fd_step) {
    const int n = chart.dim();
    CurvatureData c;
    c.n = n;
    c.gamma = chart.gamma(e);
    const auto& g = c.gamma;
    // dg[l][ijk] = d_l Gamma^i_jk
    std::vector<std::vector<double>> dg(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
        VecX xp = e, xm = e;
        xp[l] += fd_step;
        xm[l] -= fd_step;
        const auto gp = chart.gamma(xp), gm = chart.gamma(xm);
        auto& d = dg[static_cast<std::size_t>(l)];
        d.resize(gp.size());
        for (std::size_t q = 0; q < gp.size(); ++q) d[q] = (gp[q] - gm[q]) / (2.0 * fd_step);
    }
    auto G = [&](int i, int j, int k) { return g[idx3(n, i, j, k)]; };
    auto dG = [&](int l, int i, int j, int k) { return dg[static_cast<std::size_t>(l)][idx3(n, i, j, k)]; };

    c.torsion.assign(static_cast<std::size_t>(n * n * n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) c.torsion[idx3(n, i, j, k)] = G(i, j, k) - G(i, k, j);

    c.curvature.assign(static_cast<std::size_t>(n * n * n * n), 0.0);
    c.nabla_torsion.assign(c.curvature.size(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double r = dG(k, i, l, j) - dG(l, i, k, j);
                    for (int m = 0; m < n; ++m) r += G(m, l, j) * G(i, k, m) - G(m, k, j) * G(i, l, m);
                    c.curvature[idx4(n, i, j, k, l)] = r;

                    // nabla_l T^i_jk
                    double t = dG(l, i, j, k) - dG(l, i, k, j);
                    for (int m = 0; m < n; ++m)
                        t += G(i, l, m) * c.torsion[idx3(n, m, j, k)] - G(m, l, j) * c.torsion[idx3(n, i, m, k)] -
                             G(m, l, k) * c.torsion[idx3(n, i, j, m)];
                    c.nabla_torsion[idx4(n, i, j, k, l)] = t;
                }

    if (chart.has_metric()) {
        const std::vector<double> lc = levi_civita([&](const VecX& x) { return chart.metric(x); }, e, 1e-5);
        c.contorsion.assign(lc.size(), 0.0);
        for (std::size_t q = 0; q < lc.size(); ++q) c.contorsion[q] = lc[q] - g[q];
        const MatX gm = chart.metric(e);
        for (int k = 0; k < n; ++k) {
            VecX xp = e, xm = e;
            xp[k] += 1e-5;
            xm[k] -= 1e-5;
            const MatX dgk = (chart.metric(xp) - chart.metric(xm)) / 2e-5;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double v = dgk(i, j);
                    for (int m = 0; m < n; ++m) v -= G(m, k, i) * gm(m, j) + G(m, k, j) * gm(i, m);
                    c.metric_compatibility = std::max(c.metric_compatibility, std::abs(v));
                }
        }
    }
    return c;
}

AkivisReport akivis_check(const ConnectionChart& chart, const VecX& e, const std::vector<double>& h_list, FitSettings base) {
    const int n = chart.dim();
    AkivisReport rep;
    rep.curvature = curvature_data(chart, e);
    const auto& cd = rep.curvature;
    base.normal_coords = true;
    for (double h : h_list) {
        base.h = h;
        const LoopExpansionReport fit = fit_fundamental_tensors(chart, e, base);
        AkivisRow row;
        row.h = h;
        row.alpha_norm = max_abs_vec(fit.alpha);
        row.jacobi_residual = fit.jacobi_residual;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    row.torsion_residual = std::max(
                        row.torsion_residual, std::abs(2.0 * fit.alpha[idx3(n, i, j, k)] + cd.torsion[idx3(n, i, j, k)]));
                    for (int l = 0; l < n; ++l) {
                        const std::size_t q = idx4(n, i, j, k, l);
                        const double target = -cd.nabla_torsion[idx4(n, i, j, l, k)] - cd.curvature[q];
                        row.curvature_residual = std::max(row.curvature_residual, std::abs(fit.beta[q] - target));
                    }
                }
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace g2lab
