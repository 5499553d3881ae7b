#pragma once
// Independent reference implementations used to pin down expected values.

#include <array>
#include <cmath>

#include "g2lab/octonion.hpp"
#include "g2lab/rng.hpp"

namespace oracle {

// Product of basis elements straight from the seven cycles, written out by hand.
inline std::array<std::array<std::pair<int, int>, 8>, 8> basis_table() {
    const int cyc[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 7, 5}, {3, 7, 4}, {3, 6, 5}};
    std::array<std::array<std::pair<int, int>, 8>, 8> t{};
    for (int i = 0; i < 8; ++i) {
        t[0][i] = {i, 1};
        t[i][0] = {i, 1};
    }
    for (int i = 1; i < 8; ++i) t[i][i] = {0, -1};
    for (const auto& c : cyc)
        for (int r = 0; r < 3; ++r) {
            const int a = c[r], b = c[(r + 1) % 3], d = c[(r + 2) % 3];
            t[a][b] = {d, 1};
            t[b][a] = {d, -1};
        }
    return t;
}

inline g2lab::Octonion mul(const g2lab::Octonion& x, const g2lab::Octonion& y) {
    static const auto t = basis_table();
    g2lab::Octonion z;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) z.c[static_cast<std::size_t>(t[i][j].first)] += t[i][j].second * x.c[i] * y.c[j];
    return z;
}

// Truncated power series of exp.
inline g2lab::Octonion exp_series(const g2lab::Octonion& a, int terms = 40) {
    g2lab::Octonion sum = g2lab::Octonion::real(1.0), term = g2lab::Octonion::real(1.0);
    for (int n = 1; n < terms; ++n) {
        term = oracle::mul(term, a) / static_cast<double>(n);
        sum += term;
    }
    return sum;
}

inline g2lab::Octonion random_octonion(g2lab::CounterRng& r) {
    g2lab::Octonion a;
    for (double& c : a.c) c = r.normal();
    return a;
}

inline g2lab::Octonion random_imaginary(g2lab::CounterRng& r) {
    g2lab::Octonion a = random_octonion(r);
    a.c[0] = 0.0;
    return a;
}

inline g2lab::Octonion random_unit(g2lab::CounterRng& r) {
    const g2lab::Octonion a = random_octonion(r);
    return a / g2lab::norm(a);
}

}  // namespace oracle
