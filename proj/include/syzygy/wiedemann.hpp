#pragma once

#include <cstdint>
#include <future>
#include <random>
#include <vector>

#include "syzygy/field.hpp"
#include "syzygy/sparse.hpp"

namespace syzygy {

struct WiedemannResult {
    std::uint64_t rank = 0;
    bool certified = false; // always false: probabilistic lower bound
};

namespace detail {

// Berlekamp-Massey over Z/p: shortest LFSR generating seq. Returns the
// connection polynomial C with C[0] = 1 and length L = deg.
struct BmResult {
    std::vector<FieldElem> c;
    std::uint64_t deg = 0;
};

inline BmResult berlekamp_massey(const std::vector<FieldElem>& seq, const FieldCtx& ctx) {
    std::vector<FieldElem> C{1}, B{1};
    std::uint64_t L = 0, m = 1;
    FieldElem b = 1;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        FieldElem d = seq[n];
        for (std::uint64_t i = 1; i <= L && i <= n; ++i)
            if (i < C.size()) d = ctx.add(d, ctx.mul(C[i], seq[n - i]));
        if (d == 0) {
            ++m;
        } else if (2 * L <= n) {
            std::vector<FieldElem> T = C;
            FieldElem coef = ctx.mul(d, ctx.inv(b));
            if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
            for (std::size_t i = 0; i < B.size(); ++i)
                C[i + m] = ctx.sub(C[i + m], ctx.mul(coef, B[i]));
            L = n + 1 - L;
            B = std::move(T);
            b = d;
            m = 1;
        } else {
            FieldElem coef = ctx.mul(d, ctx.inv(b));
            if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
            for (std::size_t i = 0; i < B.size(); ++i)
                C[i + m] = ctx.sub(C[i + m], ctx.mul(coef, B[i]));
            ++m;
        }
    }
    C.resize(L + 1, 0);
    return {std::move(C), L};
}

// One Wiedemann pass: estimate rank from the minimal generating polynomial of
// W = D2 A^T D1^2 A D2 (or the row-sided analogue when nrows < ncols).
inline std::uint64_t wiedemann_pass(const SparseMatrix& a, const SparseMatrix& at,
                                    const FieldCtx& ctx, std::uint64_t pass_seed) {
    const bool col_side = a.ncols() <= a.nrows();
    const std::size_t n = col_side ? a.ncols() : a.nrows(); // dim of W
    const std::size_t m = col_side ? a.nrows() : a.ncols();

    std::mt19937_64 rng(pass_seed);
    auto nonzero = [&]() { return 1 + ctx.reduce(rng()) % (ctx.modulus() - 1); };
    auto any = [&]() { return ctx.reduce(rng()); };

    std::vector<FieldElem> d_outer(n), d_inner_sq(m), u(n), w(n);
    for (auto& x : d_outer) x = nonzero();
    for (auto& x : d_inner_sq) {
        FieldElem d = nonzero();
        x = ctx.mul(d, d);
    }
    for (auto& x : u) x = any();
    for (auto& x : w) x = any();

    const SparseMatrix& fwd = col_side ? a : at;
    const SparseMatrix& bwd = col_side ? at : a;

    std::vector<FieldElem> t1(n), t2(m), t3(n), seq(2 * n);
    for (std::size_t step = 0; step < seq.size(); ++step) {
        FieldElem dot = 0;
        for (std::size_t i = 0; i < n; ++i) dot = ctx.add(dot, ctx.mul(u[i], w[i]));
        seq[step] = dot;
        if (step + 1 == seq.size()) break;
        for (std::size_t i = 0; i < n; ++i) t1[i] = ctx.mul(d_outer[i], w[i]);
        matvec_into(fwd, t1, t2, ctx);
        for (std::size_t i = 0; i < m; ++i) t2[i] = ctx.mul(d_inner_sq[i], t2[i]);
        matvec_into(bwd, t2, t3, ctx);
        for (std::size_t i = 0; i < n; ++i) w[i] = ctx.mul(d_outer[i], t3[i]);
    }

    BmResult bm = berlekamp_massey(seq, ctx);
    if (bm.deg == 0) return 0;
    // reversal x^L C(1/x) is the minimal polynomial estimate; a zero constant
    // term C[L] means one factor of x, which does not count toward rank
    std::uint64_t est = bm.c[bm.deg] != 0 ? bm.deg : bm.deg - 1;
    return std::min<std::uint64_t>(est, std::min(a.nrows(), a.ncols()));
}

} // namespace detail

// Probabilistic black-box rank: never exceeds the true rank, equals it with
// high probability. Preconditions with random diagonals on both sides, takes
// the minimal-polynomial degree of the squared preconditioned operator, and
// keeps the max of two seeded passes. Deterministic given (M, seed).
inline WiedemannResult rank_wiedemann(const SparseMatrix& m, const FieldCtx& ctx,
                                      std::uint64_t seed, unsigned threads = 1) {
    if (m.nnz() == 0) return {0, false};
    SparseMatrix at = m.transpose();
    const std::uint64_t s1 = seed * 0x9e3779b97f4a7c15ULL + 1;
    const std::uint64_t s2 = seed * 0x9e3779b97f4a7c15ULL + 2;
    std::uint64_t r1, r2;
    if (threads >= 2) {
        auto f1 = std::async(std::launch::async,
                             [&] { return detail::wiedemann_pass(m, at, ctx, s1); });
        r2 = detail::wiedemann_pass(m, at, ctx, s2);
        r1 = f1.get();
    } else {
        r1 = detail::wiedemann_pass(m, at, ctx, s1);
        r2 = detail::wiedemann_pass(m, at, ctx, s2);
    }
    return {std::max(r1, r2), false};
}

} // namespace syzygy
