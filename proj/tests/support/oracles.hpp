#pragma once

// Test-only oracles, deliberately independent of the library's computation
// paths: a dense textbook elimination over Z/p, a fraction-free integer
// elimination (rank over Q), and a brute-force Koszul assembly for the Fermat
// instance built from scratch on lexicographic subsets and naive substitution.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "syzygy/field.hpp"
#include "syzygy/sparse.hpp"

namespace oracle {

using boost::multiprecision::cpp_int;

// --- dense rank over Z/p, straight from the textbook ---

inline std::uint64_t dense_rank_mod(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p) {
    if (m.empty() || m[0].empty()) return 0;
    const std::size_t nr = m.size(), nc = m[0].size();
    syzygy::FieldCtx ctx(p);
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t piv = r;
        while (piv < nr && m[piv][c] % p == 0) ++piv;
        if (piv == nr) continue;
        std::swap(m[r], m[piv]);
        std::uint64_t inv = ctx.inv(m[r][c] % p);
        for (std::size_t j = c; j < nc; ++j) m[r][j] = ctx.mul(m[r][j] % p, inv);
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r) continue;
            std::uint64_t f = m[i][c] % p;
            if (f == 0) continue;
            for (std::size_t j = c; j < nc; ++j)
                m[i][j] = ctx.sub(m[i][j] % p, ctx.mul(f, m[r][j]));
        }
        ++r;
    }
    return r;
}

// --- rank over Q via Bareiss fraction-free elimination ---

inline std::uint64_t rational_rank(std::vector<std::vector<cpp_int>> m) {
    if (m.empty() || m[0].empty()) return 0;
    const std::size_t nr = m.size(), nc = m[0].size();
    cpp_int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t piv = r;
        while (piv < nr && m[piv][c] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < nr; ++i) {
            for (std::size_t j = c + 1; j < nc; ++j)
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) / prev; // exact
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

// --- brute-force Fermat Koszul differentials over Z ---

struct Mon {
    int a, b, c;
    bool operator<(const Mon& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    bool operator==(const Mon& o) const { return a == o.a && b == o.b && c == o.c; }
};

inline std::vector<Mon> mons(int d) {
    std::vector<Mon> out;
    for (int a = 0; a <= d; ++a)
        for (int b = 0; a + b <= d; ++b) out.push_back({a, b, d - a - b});
    return out;
}

// B_q for the Fermat curve x^{k+1}+y^{k+1}+z^{k+1} over Z: basis is the
// degree-q(k-1) monomials with x-exponent <= k; reduction substitutes
// x^{k+1} -> -(y^{k+1} + z^{k+1}) until no term violates the bound.
struct ZSection {
    int k, q;
    bool curve_mode;
    std::vector<Mon> basis;
    std::map<Mon, int> pos;

    ZSection(int k_, int q_, bool curve) : k(k_), q(q_), curve_mode(curve) {
        for (const Mon& m : mons(q * (k - 1)))
            if (!curve || m.a <= k) basis.push_back(m);
        for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = static_cast<int>(i);
    }

    std::map<Mon, long long> reduce(const Mon& m) const {
        std::map<Mon, long long> work{{m, 1}};
        if (!curve_mode) return work;
        while (true) {
            auto it = std::find_if(work.begin(), work.end(),
                                   [&](const auto& kv) { return kv.first.a > k && kv.second != 0; });
            if (it == work.end()) break;
            Mon t = it->first;
            long long coef = it->second;
            work.erase(it);
            work[{t.a - k - 1, t.b + k + 1, t.c}] -= coef;
            work[{t.a - k - 1, t.b, t.c + k + 1}] -= coef;
        }
        return work;
    }
};

inline void lex_subsets(int n, int p, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == p) {
        out.push_back(cur);
        return;
    }
    int start = cur.empty() ? 0 : cur.back() + 1;
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        lex_subsets(n, p, cur, out);
        cur.pop_back();
    }
}

// Dense integer matrix of delta_{p,q} for the Fermat instance. Uses its own
// subset order (lex) and basis conventions; ranks are basis-independent.
inline std::vector<std::vector<cpp_int>> z_differential(int k, int p, int q, bool curve_mode) {
    std::vector<Mon> v = mons(k - 1);
    const int n = static_cast<int>(v.size());
    ZSection bq(k, q, curve_mode), bq1(k, q + 1, curve_mode);
    if (p < 1 || p > n)
        return {};
    std::vector<std::vector<int>> subs, subs1;
    std::vector<int> cur;
    lex_subsets(n, p, cur, subs);
    lex_subsets(n, p - 1, cur, subs1);
    std::map<std::vector<int>, int> sub1_pos;
    for (std::size_t i = 0; i < subs1.size(); ++i) sub1_pos[subs1[i]] = static_cast<int>(i);

    const std::size_t nrows = subs1.size() * bq1.basis.size();
    const std::size_t ncols = subs.size() * bq.basis.size();
    std::vector<std::vector<cpp_int>> m(nrows, std::vector<cpp_int>(ncols, 0));
    for (std::size_t si = 0; si < subs.size(); ++si) {
        for (std::size_t bi = 0; bi < bq.basis.size(); ++bi) {
            const std::size_t col = si * bq.basis.size() + bi;
            for (int j = 0; j < p; ++j) {
                std::vector<int> rest = subs[si];
                rest.erase(rest.begin() + j);
                const std::size_t row0 = sub1_pos[rest] * bq1.basis.size();
                const Mon& g = v[subs[si][j]];
                const Mon& s = bq.basis[bi];
                Mon prod{g.a + s.a, g.b + s.b, g.c + s.c};
                const long long sign = (j % 2 == 0) ? 1 : -1;
                for (const auto& [mm, coef] : bq1.reduce(prod)) {
                    if (coef == 0) continue;
                    m[row0 + bq1.pos.at(mm)][col] += sign * coef;
                }
            }
        }
    }
    return m;
}

// dim K_{p,q} over Q for the Fermat instance, entirely through the oracle path.
inline std::uint64_t z_koszul_dim(int k, int p, int q, bool curve_mode) {
    std::vector<Mon> v = mons(k - 1);
    const int n = static_cast<int>(v.size());
    ZSection bq(k, q, curve_mode);
    auto binom = [](std::uint64_t nn, std::uint64_t kk) {
        if (kk > nn) return std::uint64_t(0);
        std::uint64_t r = 1;
        for (std::uint64_t i = 1; i <= kk; ++i) r = r * (nn - kk + i) / i;
        return r;
    };
    const std::uint64_t mid = binom(n, p) * bq.basis.size();
    const std::uint64_t rank_out = rational_rank(z_differential(k, p, q, curve_mode));
    const std::uint64_t rank_in =
        q >= 1 ? rational_rank(z_differential(k, p + 1, q - 1, curve_mode)) : 0;
    return mid - rank_out - rank_in;
}

// --- seeded random sparse matrices for rank property tests ---

struct RandomMatrix {
    syzygy::SparseMatrix sparse;
    std::vector<std::vector<std::uint64_t>> dense;
};

inline RandomMatrix random_matrix(std::uint64_t seed, std::uint32_t nr, std::uint32_t nc,
                                  double density, std::uint64_t p) {
    std::mt19937_64 rng(seed);
    const std::uint64_t threshold =
        static_cast<std::uint64_t>(density * 18446744073709551615.0);
    std::vector<syzygy::Triplet> ts;
    std::vector<std::vector<std::uint64_t>> dense(nr, std::vector<std::uint64_t>(nc, 0));
    for (std::uint32_t i = 0; i < nr; ++i)
        for (std::uint32_t j = 0; j < nc; ++j)
            if (rng() < threshold) {
                std::uint64_t v = rng() % p;
                if (v == 0) continue;
                dense[i][j] = v;
                ts.push_back({i, j, v});
            }
    return {syzygy::SparseMatrix::from_triplets(nr, nc, ts), std::move(dense)};
}

} // namespace oracle
