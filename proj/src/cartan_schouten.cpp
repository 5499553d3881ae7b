#include "g2lab/cartan_schouten.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <memory>

#include "g2lab/errors.hpp"
#include "g2lab/octonion.hpp"

namespace g2lab {

namespace {

constexpr int N = 7;

std::size_t i3(int i, int j, int k) { return idx3(N, i, j, k); }
std::size_t i4(int i, int j, int k, int l) { return idx4(N, i, j, k, l); }

// Sign of the permutation of 0..6 given by p, or 0 on a repeat.
int eps7(const std::array<int, 7>& p) {
    int seen = 0;
    for (int v : p) {
        if (seen & (1 << v)) return 0;
        seen |= 1 << v;
    }
    int inv = 0;
    for (int a = 0; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b)
            if (p[static_cast<std::size_t>(a)] > p[static_cast<std::size_t>(b)]) ++inv;
    return inv % 2 ? -1 : 1;
}

// X^i_jkl = c^i_jm c^m_kl
std::vector<double> cc_chain() {
    const auto& c = octonion_c3();
    std::vector<double> out(static_cast<std::size_t>(N * N * N * N), 0.0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < N; ++m) s += c[i3(i, j, m)] * c[i3(m, k, l)];
                    out[i4(i, j, k, l)] = s;
                }
    return out;
}

// c^i_m[j c^m_kl], alternated over j, k, l.
std::vector<double> cc_alternated() {
    const auto& c = octonion_c3();
    std::vector<double> x(static_cast<std::size_t>(N * N * N * N), 0.0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < N; ++m) s += c[i3(i, m, j)] * c[i3(m, k, l)];
                    x[i4(i, j, k, l)] = s;
                }
    std::vector<double> out(x.size(), 0.0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l)
                    out[i4(i, j, k, l)] = (x[i4(i, j, k, l)] + x[i4(i, k, l, j)] + x[i4(i, l, j, k)] - x[i4(i, k, j, l)] -
                                           x[i4(i, j, l, k)] - x[i4(i, l, k, j)]) /
                                          6.0;
    return out;
}

}  // namespace

const std::vector<double>& octonion_c3() {
    static const std::vector<double> c = [] {
        const auto& sc = StructureConstants::get();
        std::vector<double> v(static_cast<std::size_t>(N * N * N));
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                for (int k = 0; k < N; ++k) v[i3(i, j, k)] = sc.c3(i + 1, j + 1, k + 1);
        return v;
    }();
    return c;
}

const std::vector<double>& octonion_c4() {
    static const std::vector<double> c = [] {
        const auto& sc = StructureConstants::get();
        std::vector<double> v(static_cast<std::size_t>(N * N * N * N));
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                for (int k = 0; k < N; ++k)
                    for (int l = 0; l < N; ++l) v[i4(i, j, k, l)] = sc.c4(i + 1, j + 1, k + 1, l + 1);
        return v;
    }();
    return c;
}

double cs_default_k(double alpha_param) { return 0.5 * (1.0 - 2.0 * alpha_param); }

std::vector<double> alternate4(const std::vector<double>& t) {
    static const auto perms = [] {
        std::vector<std::pair<std::array<int, 4>, int>> out;
        std::array<int, 4> p{0, 1, 2, 3};
        do {
            int inv = 0;
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b)
                    if (p[static_cast<std::size_t>(a)] > p[static_cast<std::size_t>(b)]) ++inv;
            out.emplace_back(p, inv % 2 ? -1 : 1);
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }();
    std::vector<double> out(t.size(), 0.0);
    std::array<int, 4> ix{};
    for (ix[0] = 0; ix[0] < N; ++ix[0])
        for (ix[1] = 0; ix[1] < N; ++ix[1])
            for (ix[2] = 0; ix[2] < N; ++ix[2])
                for (ix[3] = 0; ix[3] < N; ++ix[3]) {
                    double s = 0.0;
                    for (const auto& [p, sg] : perms)
                        s += sg * t[i4(ix[static_cast<std::size_t>(p[0])], ix[static_cast<std::size_t>(p[1])],
                                       ix[static_cast<std::size_t>(p[2])], ix[static_cast<std::size_t>(p[3])])];
                    out[i4(ix[0], ix[1], ix[2], ix[3])] = s / 24.0;
                }
    return out;
}

CsFamilyPoint cs_tensors(double a, double k) {
    CsFamilyPoint p;
    p.alpha_param = a;
    p.k = k;
    const auto& c = octonion_c3();
    p.S.resize(c.size());
    for (std::size_t q = 0; q < c.size(); ++q) p.S[q] = -k * c[q];
    std::vector<double> ss(static_cast<std::size_t>(N * N * N * N), 0.0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k2 = 0; k2 < N; ++k2)
                for (int l = 0; l < N; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < N; ++m) s += p.S[i3(i, j, m)] * p.S[i3(k2, l, m)];
                    ss[i4(i, j, k2, l)] = s;
                }
    const auto alt = alternate4(ss);
    p.R.resize(ss.size());
    for (std::size_t q = 0; q < ss.size(); ++q) p.R[q] = 4.0 * a * (1.0 - a) * ss[q] - 4.0 * a * (2.0 - 3.0 * a) * alt[q];
    return p;
}

SelfDualityReport self_duality_suite(double k) {
    if (k == 0.0) throw BadConfig("self-duality suite needs k != 0");
    SelfDualityReport r;
    r.k = k;
    const auto& c3 = octonion_c3();
    const auto& c4 = octonion_c4();
    std::vector<double> al(c3.size()), be(c4.size());
    for (std::size_t q = 0; q < c3.size(); ++q) al[q] = k * c3[q];
    for (std::size_t q = 0; q < c4.size(); ++q) be[q] = k * k * c4[q];

    // eps^{npqlijk} k alpha_ijk = 6 beta^{npql}
    for (int n = 0; n < N; ++n)
        for (int p = 0; p < N; ++p)
            for (int q = 0; q < N; ++q)
                for (int l = 0; l < N; ++l) {
                    double s = 0.0;
                    for (int i = 0; i < N; ++i)
                        for (int j = 0; j < N; ++j)
                            for (int m = 0; m < N; ++m) {
                                const int e = eps7({n, p, q, l, i, j, m});
                                if (e) s += e * k * al[i3(i, j, m)];
                            }
                    r.eps_alpha = std::max(r.eps_alpha, std::abs(s - 6.0 * be[i4(n, p, q, l)]));
                }

    // eps^{npqlijk} beta_ijkl = s 24 k alpha^npq; the sign is measured.
    std::vector<double> eb(c3.size(), 0.0);
    for (int n = 0; n < N; ++n)
        for (int p = 0; p < N; ++p)
            for (int q = 0; q < N; ++q) {
                double s = 0.0;
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j)
                        for (int m = 0; m < N; ++m)
                            for (int l = 0; l < N; ++l) {
                                const int e = eps7({n, p, q, l, i, j, m});
                                if (e) s += e * be[i4(i, j, m, l)];
                            }
                eb[i3(n, p, q)] = s;
            }
    double dot = 0.0;
    for (std::size_t q = 0; q < eb.size(); ++q) dot += eb[q] * al[q];
    r.eps_beta_sign = dot >= 0.0 ? 1 : -1;
    for (std::size_t q = 0; q < eb.size(); ++q)
        r.eps_beta = std::max(r.eps_beta, std::abs(eb[q] - r.eps_beta_sign * 24.0 * k * al[q]));

    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n) {
            double aa = 0.0, bb = 0.0;
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    aa += al[i3(i, j, m)] * al[i3(i, j, n)];
                    for (int l = 0; l < N; ++l) bb += be[i4(m, i, j, l)] * be[i4(n, i, j, l)];
                }
            const double d = m == n ? 1.0 : 0.0;
            r.alpha_alpha = std::max(r.alpha_alpha, std::abs(aa - 6.0 * k * k * d));
            r.beta_beta = std::max(r.beta_beta, std::abs(bb - 24.0 * std::pow(k, 4) * d));
            r.beta_beta_printed = std::max(r.beta_beta_printed, std::abs(bb - 24.0 * k * k * d));
        }

    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            for (int p = 0; p < N; ++p) {
                double s = 0.0;
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j)
                        for (int kk = 0; kk < N; ++kk) s += al[i3(j, i, m)] * al[i3(kk, j, n)] * al[i3(i, kk, p)];
                r.alpha_cubed = std::max(r.alpha_cubed, std::abs(s - 3.0 * k * k * al[i3(m, n, p)]));
            }
    return r;
}

CsExpansion cs_expansion(double a) {
    const auto& c = octonion_c3();
    CsExpansion e;
    e.lambda.resize(c.size());
    for (std::size_t q = 0; q < c.size(); ++q) e.lambda[q] = 0.5 * (1.0 - 2.0 * a) * c[q];
    const auto x = cc_chain();
    const double nu_scale = (1.0 - 6.0 * a + 6.0 * a * a) / 6.0;
    e.mu.assign(x.size(), 0.0);
    e.nu.assign(x.size(), 0.0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    // mu: u^j u^k v^l with coefficient c^i_jm c^m_kl / 12; nu: u^j v^k v^l from c^i_km c^m_lj.
                    e.mu[i4(i, j, k, l)] = (x[i4(i, j, k, l)] + x[i4(i, k, j, l)]) / 12.0;
                    e.nu[i4(i, j, k, l)] = nu_scale * 0.5 * (x[i4(i, k, l, j)] + x[i4(i, l, k, j)]);
                }
    return e;
}

std::vector<double> cs_loop_beta(double a) {
    const CsExpansion e = cs_expansion(a);
    const auto& lam = e.lambda;
    std::vector<double> b(e.mu.size(), 0.0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    double q = 0.0;
                    for (int m = 0; m < N; ++m) q += lam[i3(m, k, l)] * lam[i3(i, j, m)] - lam[i3(m, j, k)] * lam[i3(i, m, l)];
                    b[i4(i, j, k, l)] = 2.0 * (e.nu[i4(i, j, k, l)] - e.mu[i4(i, j, k, l)] + q);
                }
    return b;
}

std::vector<double> cs_loop_beta_closed(double a) {
    const auto x = cc_chain(), y = cc_alternated();
    std::vector<double> b(x.size());
    for (std::size_t q = 0; q < x.size(); ++q)
        b[q] = -(a * (1.0 - a) * x[q] + (1.0 - 3.0 * a + 3.0 * a * a) * y[q]);
    return b;
}

std::vector<double> cs_loop_beta_printed(double a) {
    const auto x = cc_chain(), y = cc_alternated();
    std::vector<double> b(x.size());
    for (std::size_t q = 0; q < x.size(); ++q) b[q] = -0.25 * (a * (1.0 - a) * x[q] + (1.0 + 3.0 * a + 3.0 * a * a) * y[q]);
    return b;
}

ConnectionChart cs_chart(double a, CsChartInfo* info) {
    const auto& c = octonion_c3();
    std::vector<double> g0(c.size()), t(c.size());
    for (std::size_t q = 0; q < c.size(); ++q) {
        g0[q] = -0.5 * (1.0 - 2.0 * a) * c[q];
        t[q] = 2.0 * g0[q];
    }
    const auto beta = cs_loop_beta(a);

    // Unknowns A^i_jkl = d_l Gamma^i_jk, one block of 343 per i.
    auto col = [](int j, int k, int l) { return (j * N + k) * N + l; };
    std::vector<std::array<int, 3>> sym_rows;
    for (int j = 0; j < N; ++j)
        for (int k = j; k < N; ++k)
            for (int l = k; l < N; ++l) sym_rows.push_back({j, k, l});
    const int rows = static_cast<int>(sym_rows.size()) + N * N * N;
    auto A = std::make_shared<std::vector<double>>(static_cast<std::size_t>(N * N * N * N), 0.0);
    double residual = 0.0;
    for (int i = 0; i < N; ++i) {
        MatX M = MatX::Zero(rows, N * N * N);
        VecX rhs = VecX::Zero(rows);
        int r = 0;
        for (const auto& s : sym_rows) {
            std::array<int, 3> p = s;
            do M(r, col(p[0], p[1], p[2])) += 1.0;
            while (std::next_permutation(p.begin(), p.end()));
            ++r;
        }
        // beta^i_jkl = -nabla_k T^i_jl - R^i_jkl, linear part -A^i_jlk + A^i_kjl.
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) {
                    M(r, col(j, l, k)) -= 1.0;
                    M(r, col(k, j, l)) += 1.0;
                    double q = 0.0;
                    for (int m = 0; m < N; ++m) {
                        q += g0[i3(i, k, m)] * t[i3(m, j, l)] - g0[i3(m, k, j)] * t[i3(i, m, l)] -
                             g0[i3(m, k, l)] * t[i3(i, j, m)];
                        q += g0[i3(m, l, j)] * g0[i3(i, k, m)] - g0[i3(m, k, j)] * g0[i3(i, l, m)];
                    }
                    rhs[r] = beta[i4(i, j, k, l)] + q;
                    ++r;
                }
        const VecX sol = M.completeOrthogonalDecomposition().solve(rhs);
        residual = std::max(residual, (M * sol - rhs).cwiseAbs().maxCoeff());
        for (int q = 0; q < N * N * N; ++q) (*A)[static_cast<std::size_t>(i * N * N * N + q)] = sol[q];
    }
    if (info) info->solve_residual = residual;

    auto gamma = [g0, A](const VecX& x, double* out) {
        for (int q = 0; q < N * N * N; ++q) {
            double v = g0[static_cast<std::size_t>(q)];
            const double* row = A->data() + static_cast<std::size_t>(q) * N;
            for (int l = 0; l < N; ++l) v += row[l] * x[l];
            out[q] = v;
        }
    };
    char name[48];
    std::snprintf(name, sizeof name, "cartan_schouten(%g)", a);
    return ConnectionChart(name, N, gamma, Box::cube(N, 1.0), nullptr, 0.5);
}

}  // namespace g2lab
