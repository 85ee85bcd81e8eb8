#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "syzygy/field.hpp"
#include "syzygy/monomial.hpp"

namespace syzygy {

// Homogeneous form F of degree k+1 in x, y, z cutting out the plane curve C.
// Terms are kept grlex-descending with nonzero canonical coefficients.
struct CurveForm {
    int k = 0; // curve degree is k+1
    std::vector<std::pair<Monomial, FieldElem>> terms;

    int degree() const { return k + 1; }

    void validate() const {
        if (terms.empty()) throw InvalidForm("curve form is zero");
        for (const auto& [m, c] : terms) {
            if (m.degree() != k + 1)
                throw InvalidForm("curve form is not homogeneous of degree " + std::to_string(k + 1));
            if (c == 0) throw InvalidForm("curve form holds an explicit zero coefficient");
        }
    }
};

// x^{k+1} + y^{k+1} + z^{k+1}; smooth whenever the characteristic does not
// divide k+1.
inline CurveForm fermat_form(int k) {
    CurveForm f;
    f.k = k;
    f.terms = {{{k + 1, 0, 0}, 1}, {{0, k + 1, 0}, 1}, {{0, 0, k + 1}, 1}};
    return f;
}

// Dense form with uniform random coefficients; deterministic in the seed.
inline CurveForm random_form(int k, std::uint64_t seed, const FieldCtx& ctx) {
    std::mt19937_64 rng(seed);
    CurveForm f;
    f.k = k;
    for (int attempt = 0; attempt < 64; ++attempt) {
        f.terms.clear();
        for (const Monomial& m : monomials_of_degree(k + 1)) {
            FieldElem c = ctx.reduce(rng());
            if (c != 0) f.terms.push_back({m, c});
        }
        if (!f.terms.empty()) return f;
    }
    throw InvalidForm("random curve form came out zero"); // p >= 2 makes this unreachable in practice
}

// Curve file format: first line "k <k>", then one term per line
// "<a> <b> <c> <coeff>" with a+b+c = k+1. Blank lines and '#' comments are
// skipped; repeated monomials accumulate. Coefficients are reduced mod p.
inline CurveForm form_from_file(const std::string& path, int expected_k, const FieldCtx& ctx) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open curve file: " + path);
    std::string line;
    int k = -1;
    std::vector<FieldElem> coeff; // indexed by monomial_index within degree k+1
    std::vector<Monomial> mons;
    while (std::getline(in, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (k < 0) {
            long long kv;
            if (first != "k" || !(ls >> kv) || kv < 1)
                throw ParseError("curve file must start with a line 'k <k>'");
            k = static_cast<int>(kv);
            if (expected_k > 0 && k != expected_k)
                throw ParseError("curve file has k=" + std::to_string(k) + ", expected k=" +
                                 std::to_string(expected_k));
            mons = monomials_of_degree(k + 1);
            coeff.assign(mons.size(), 0);
            continue;
        }
        long long a, b, c, v;
        std::istringstream ts(line);
        if (!(ts >> a >> b >> c >> v))
            throw ParseError("malformed curve term line: '" + line + "'");
        if (a < 0 || b < 0 || c < 0 || a + b + c != k + 1)
            throw ParseError("curve term exponents must be nonnegative and sum to k+1: '" + line + "'");
        Monomial m{static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)};
        std::size_t idx = monomial_index(m);
        coeff[idx] = ctx.add(coeff[idx], ctx.reduce_signed(v));
    }
    if (k < 0) throw ParseError("curve file is empty");
    CurveForm f;
    f.k = k;
    for (std::size_t i = 0; i < mons.size(); ++i)
        if (coeff[i] != 0) f.terms.push_back({mons[i], coeff[i]});
    f.validate();
    return f;
}

inline FieldElem eval_form(const CurveForm& f, const FieldCtx& ctx,
                           FieldElem x, FieldElem y, FieldElem z) {
    FieldElem acc = 0;
    for (const auto& [m, c] : f.terms) {
        FieldElem t = ctx.mul(ctx.mul(ctx.pow(x, m.a), ctx.pow(y, m.b)), ctx.pow(z, m.c));
        acc = ctx.add(acc, ctx.mul(c, t));
    }
    return acc;
}

// dF/dx etc. as coefficient rules on the exponent triple.
inline CurveForm partial_derivative(const CurveForm& f, int var, const FieldCtx& ctx) {
    CurveForm g;
    g.k = f.k - 1; // degree drops by one
    for (const auto& [m, c] : f.terms) {
        Monomial d = m;
        int e = var == 0 ? m.a : var == 1 ? m.b : m.c;
        if (e == 0) continue;
        (var == 0 ? d.a : var == 1 ? d.b : d.c) -= 1;
        FieldElem cd = ctx.mul(c, ctx.reduce(static_cast<std::uint64_t>(e)));
        if (cd != 0) g.terms.push_back({d, cd});
    }
    return g;
}

// Exhaustive scan of P^2(F_p) for points where F and all partials vanish.
// Heuristic only: finds singular points with coordinates in the prime field,
// says nothing about the algebraic closure. Feasible for small p.
inline std::optional<std::array<FieldElem, 3>>
find_singular_point(const CurveForm& f, const FieldCtx& ctx) {
    const FieldElem p = ctx.modulus();
    CurveForm fx = partial_derivative(f, 0, ctx);
    CurveForm fy = partial_derivative(f, 1, ctx);
    CurveForm fz = partial_derivative(f, 2, ctx);
    auto singular_at = [&](FieldElem x, FieldElem y, FieldElem z) {
        return eval_form(f, ctx, x, y, z) == 0 && eval_form(fx, ctx, x, y, z) == 0 &&
               eval_form(fy, ctx, x, y, z) == 0 && eval_form(fz, ctx, x, y, z) == 0;
    };
    // representatives (1:y:z), (0:1:z), (0:0:1)
    for (FieldElem y = 0; y < p; ++y)
        for (FieldElem z = 0; z < p; ++z)
            if (singular_at(1, y, z)) return std::array<FieldElem, 3>{1, y, z};
    for (FieldElem z = 0; z < p; ++z)
        if (singular_at(0, 1, z)) return std::array<FieldElem, 3>{0, 1, z};
    if (singular_at(0, 0, 1)) return std::array<FieldElem, 3>{0, 0, 1};
    return std::nullopt;
}

} // namespace syzygy
