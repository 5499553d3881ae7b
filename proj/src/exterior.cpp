#include "g2lab/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace g2lab {

int permutation_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return (inv % 2) ? -1 : 1;
}

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> c(static_cast<std::size_t>(k));
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        out.push_back(c);
        int i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

namespace {

std::size_t ipow(int n, int k) {
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) r *= static_cast<std::size_t>(n);
    return r;
}

// Permutations of 0..k-1 with their signs, cached per k.
using PermTable = std::vector<std::vector<std::pair<std::vector<int>, int>>>;

PermTable build_perms() {
    PermTable t(9);
    for (int k = 0; k <= 8; ++k) {
        std::vector<int> p(static_cast<std::size_t>(k));
        std::iota(p.begin(), p.end(), 0);
        do {
            t[static_cast<std::size_t>(k)].emplace_back(p, permutation_sign(p));
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return t;
}

const std::vector<std::pair<std::vector<int>, int>>& perms(int k) {
    static const PermTable table = build_perms();
    return table[static_cast<std::size_t>(k)];
}

// new_{..i..} = sum_a m(i, a) old_{..a..} on every axis.
AltTensor apply_each_axis(const AltTensor& a, const MatX& m) {
    const int n = a.dim(), k = a.degree();
    std::vector<double> cur = a.comps();
    std::vector<double> nxt(cur.size());
    for (int axis = 0; axis < k; ++axis) {
        const std::size_t stride = ipow(n, k - 1 - axis);
        const std::size_t block = stride * static_cast<std::size_t>(n);
        std::fill(nxt.begin(), nxt.end(), 0.0);
        for (std::size_t base = 0; base < cur.size(); base += block) {
            for (std::size_t s = 0; s < stride; ++s) {
                for (int i = 0; i < n; ++i) {
                    double acc = 0.0;
                    for (int j = 0; j < n; ++j) acc += m(i, j) * cur[base + static_cast<std::size_t>(j) * stride + s];
                    nxt[base + static_cast<std::size_t>(i) * stride + s] = acc;
                }
            }
        }
        std::swap(cur, nxt);
    }
    AltTensor out(n, k);
    for (std::size_t i = 0; i < cur.size(); ++i) out.raw(i) = cur[i];
    return out;
}

}  // namespace

AltTensor::AltTensor(int n, int k) : n_(n), k_(k), comps_(ipow(n, k), 0.0) {
    if (n < 0 || k < 0) throw DimensionMismatch("negative dimension or degree");
    if (k > n) throw DegreeOverflow("degree exceeds fiber dimension");
}

AltTensor AltTensor::from_dense(int n, int k, std::vector<double> comps) {
    AltTensor t(n, k);
    if (comps.size() != t.comps_.size()) throw DimensionMismatch("dense array has wrong size");
    t.comps_ = std::move(comps);
    t.antisymmetrize();
    return t;
}

AltTensor AltTensor::scalar(int n, double value) {
    AltTensor t(n, 0);
    t.comps_[0] = value;
    return t;
}

AltTensor AltTensor::elementary(int n, std::initializer_list<int> idx) {
    AltTensor t(n, static_cast<int>(idx.size()));
    t.set_alt(idx, 1.0);
    return t;
}

AltTensor AltTensor::from_covector(const VecX& w) {
    AltTensor t(static_cast<int>(w.size()), 1);
    for (int i = 0; i < w.size(); ++i) t.comps_[static_cast<std::size_t>(i)] = w[i];
    return t;
}

std::size_t AltTensor::offset(const int* idx) const {
    std::size_t off = 0;
    for (int m = 0; m < k_; ++m) off = off * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx[m]);
    return off;
}

double AltTensor::operator()(std::initializer_list<int> idx) const {
    if (static_cast<int>(idx.size()) != k_) throw DimensionMismatch("index count differs from degree");
    return comps_[offset(idx.begin())];
}

void AltTensor::set_alt(const int* idx, double value) {
    for (int a = 0; a < k_; ++a)
        for (int b = a + 1; b < k_; ++b)
            if (idx[a] == idx[b]) return;
    int buf[8];
    for (const auto& [p, s] : perms(k_)) {
        for (int m = 0; m < k_; ++m) buf[m] = idx[p[static_cast<std::size_t>(m)]];
        comps_[offset(buf)] = s * value;
    }
}

void AltTensor::set_alt(std::initializer_list<int> idx, double value) {
    if (static_cast<int>(idx.size()) != k_) throw DimensionMismatch("index count differs from degree");
    set_alt(idx.begin(), value);
}

AltTensor& AltTensor::operator+=(const AltTensor& o) {
    if (o.n_ != n_ || o.k_ != k_) throw DimensionMismatch("adding tensors of different shape");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
}

AltTensor& AltTensor::operator-=(const AltTensor& o) {
    if (o.n_ != n_ || o.k_ != k_) throw DimensionMismatch("subtracting tensors of different shape");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
}

AltTensor& AltTensor::operator*=(double s) {
    for (auto& x : comps_) x *= s;
    return *this;
}

double AltTensor::max_abs() const {
    double m = 0.0;
    for (double x : comps_) m = std::max(m, std::abs(x));
    return m;
}

void AltTensor::antisymmetrize() {
    std::vector<double> out(comps_.size(), 0.0);
    const auto& ps = perms(k_);
    const double inv_fact = 1.0 / static_cast<double>(ps.size());
    int buf[8];
    std::vector<double> old = comps_;
    for (const auto& c : combinations(n_, k_)) {
        double v = 0.0;
        for (const auto& [p, s] : ps) {
            for (int m = 0; m < k_; ++m) buf[m] = c[static_cast<std::size_t>(p[static_cast<std::size_t>(m)])];
            v += s * old[offset(buf)];
        }
        v *= inv_fact;
        for (const auto& [p, s] : ps) {
            for (int m = 0; m < k_; ++m) buf[m] = c[static_cast<std::size_t>(p[static_cast<std::size_t>(m)])];
            out[offset(buf)] = s * v;
        }
    }
    comps_ = std::move(out);
}

AltTensor operator+(AltTensor a, const AltTensor& b) { return a += b; }
AltTensor operator-(AltTensor a, const AltTensor& b) { return a -= b; }
AltTensor operator*(double s, AltTensor a) { return a *= s; }
AltTensor operator*(AltTensor a, double s) { return a *= s; }

double max_abs_diff(const AltTensor& a, const AltTensor& b) {
    if (a.dim() != b.dim() || a.degree() != b.degree()) throw DimensionMismatch("comparing tensors of different shape");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.raw(i) - b.raw(i)));
    return m;
}

Metric::Metric(const MatX& g) : g_(g) {
    if (g.rows() != g.cols()) throw DimensionMismatch("metric must be square");
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
        throw SingularMetric("metric is not symmetric");
    Eigen::LLT<MatX> llt(g);
    if (llt.info() != Eigen::Success) throw SingularMetric("metric is not positive definite");
    inv_ = llt.solve(MatX::Identity(g.rows(), g.cols()));
    inv_ = 0.5 * (inv_ + inv_.transpose());
    const MatX& l = llt.matrixL();
    double d = 1.0;
    for (int i = 0; i < g.rows(); ++i) d *= l(i, i);
    sqrt_det_ = d;
}

Metric Metric::identity(int n) { return Metric(MatX::Identity(n, n)); }

AltTensor wedge(const AltTensor& a, const AltTensor& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("wedge of forms on different fibers");
    const int n = a.dim(), p = a.degree(), q = b.degree(), k = p + q;
    if (k > n) throw DegreeOverflow("wedge degree exceeds fiber dimension");
    AltTensor out(n, k);
    const auto splits = combinations(k, p);
    std::vector<int> order(static_cast<std::size_t>(k));
    int ia[8], ib[8];
    for (const auto& c : combinations(n, k)) {
        double v = 0.0;
        for (const auto& s : splits) {
            int na = 0, nb = 0;
            std::vector<bool> in(static_cast<std::size_t>(k), false);
            for (int x : s) in[static_cast<std::size_t>(x)] = true;
            for (int m = 0; m < k; ++m) {
                if (in[static_cast<std::size_t>(m)]) { ia[na] = c[static_cast<std::size_t>(m)]; order[static_cast<std::size_t>(na)] = m; ++na; }
            }
            for (int m = 0; m < k; ++m) {
                if (!in[static_cast<std::size_t>(m)]) { ib[nb] = c[static_cast<std::size_t>(m)]; order[static_cast<std::size_t>(p + nb)] = m; ++nb; }
            }
            v += permutation_sign(order) * a.at(ia) * b.at(ib);
        }
        out.set_alt(c.data(), v);
    }
    return out;
}

double wedge_top(const AltTensor& a, const AltTensor& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("wedge of forms on different fibers");
    const int n = a.dim(), p = a.degree(), q = b.degree();
    if (p + q != n) throw DegreeOverflow("wedge_top needs complementary degrees");
    double v = 0.0;
    int ia[8], ib[8];
    std::vector<int> order(static_cast<std::size_t>(n));
    for (const auto& s : combinations(n, p)) {
        std::vector<bool> in(static_cast<std::size_t>(n), false);
        for (int x : s) in[static_cast<std::size_t>(x)] = true;
        int na = 0, nb = 0;
        for (int m = 0; m < n; ++m)
            if (in[static_cast<std::size_t>(m)]) { ia[na] = m; order[static_cast<std::size_t>(na)] = m; ++na; }
        for (int m = 0; m < n; ++m)
            if (!in[static_cast<std::size_t>(m)]) { ib[nb] = m; order[static_cast<std::size_t>(p + nb)] = m; ++nb; }
        v += permutation_sign(order) * a.at(ia) * b.at(ib);
    }
    return v;
}

AltTensor interior(const VecX& x, const AltTensor& a) {
    if (a.degree() < 1) throw DegreeUnderflow("interior product of a scalar");
    if (x.size() != a.dim()) throw DimensionMismatch("vector and form dimensions differ");
    const int n = a.dim();
    AltTensor out(n, a.degree() - 1);
    const std::size_t stride = out.size();
    for (std::size_t j = 0; j < stride; ++j) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += x[i] * a.raw(static_cast<std::size_t>(i) * stride + j);
        out.raw(j) = acc;
    }
    return out;
}

AltTensor raise_all(const AltTensor& a, const Metric& g) {
    if (g.dim() != a.dim()) throw DimensionMismatch("metric and form dimensions differ");
    return apply_each_axis(a, g.inv());
}

AltTensor pullback(const MatX& p, const AltTensor& a) {
    if (p.rows() != a.dim() || p.cols() != a.dim()) throw DimensionMismatch("pullback map has wrong size");
    return apply_each_axis(a, p.transpose());
}

double form_inner(const AltTensor& a, const AltTensor& b, const Metric& g) {
    if (a.degree() != b.degree()) throw DimensionMismatch("inner product of forms of different degree");
    const AltTensor bu = raise_all(b, g);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.raw(i) * bu.raw(i);
    double f = 1.0;
    for (int i = 2; i <= a.degree(); ++i) f *= i;
    return s / f;
}

double form_norm2(const AltTensor& a, const Metric& g) { return form_inner(a, a, g); }

AltTensor hodge(const AltTensor& a, const Metric& g, int orientation) {
    const int n = a.dim(), k = a.degree();
    const AltTensor au = raise_all(a, g);
    AltTensor out(n, n - k);
    const double pref = (orientation >= 0 ? 1.0 : -1.0) * g.sqrt_det();
    std::vector<int> order(static_cast<std::size_t>(n));
    int ii[8];
    for (const auto& jset : combinations(n, n - k)) {
        std::vector<bool> in(static_cast<std::size_t>(n), false);
        for (int x : jset) in[static_cast<std::size_t>(x)] = true;
        int m = 0;
        for (int i = 0; i < n; ++i)
            if (!in[static_cast<std::size_t>(i)]) { ii[m] = i; order[static_cast<std::size_t>(m)] = i; ++m; }
        for (int x : jset) order[static_cast<std::size_t>(m++)] = x;
        out.set_alt(jset.data(), pref * permutation_sign(order) * au.at(ii));
    }
    return out;
}

AltTensor volume_form(const Metric& g, int orientation) {
    const int n = g.dim();
    AltTensor v(n, n);
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    v.set_alt(idx.data(), (orientation >= 0 ? 1.0 : -1.0) * g.sqrt_det());
    return v;
}

VecX flat(const VecX& x, const Metric& g) { return g.g() * x; }
VecX sharp(const VecX& w, const Metric& g) { return g.inv() * w; }

double interior_hodge_residual(const VecX& x, const AltTensor& a, const Metric& g) {
    const int k = a.degree();
    const AltTensor lhs = hodge(interior(x, a), g);
    AltTensor rhs = wedge(AltTensor::from_covector(flat(x, g)), hodge(a, g));
    if ((k + 1) % 2 != 0) rhs *= -1.0;
    return max_abs_diff(lhs, rhs);
}

}  // namespace g2lab
