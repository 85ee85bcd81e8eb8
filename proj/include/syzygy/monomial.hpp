#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "syzygy/errors.hpp"

namespace syzygy {

// Monomial x^a y^b z^c. Ordering is graded-lexicographic with x > y > z
// throughout the library; within a fixed degree this is plain lex-descending
// on (a, b, c).
struct Monomial {
    int a = 0, b = 0, c = 0;

    int degree() const { return a + b + c; }

    Monomial operator*(const Monomial& o) const { return {a + o.a, b + o.b, c + o.c}; }

    bool operator==(const Monomial& o) const = default;

    // grlex, larger first when sorting descending
    bool grlex_less(const Monomial& o) const {
        if (degree() != o.degree()) return degree() < o.degree();
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }

    std::string str() const {
        if (degree() == 0) return "1";
        std::string s;
        auto var = [&](char v, int e) {
            if (e == 0) return;
            if (!s.empty()) s += '*';
            s += v;
            if (e > 1) s += '^' + std::to_string(e);
        };
        var('x', a);
        var('y', b);
        var('z', c);
        return s;
    }
};

// All C(d+2, 2) monomials of degree d, grlex-descending (x^d first, z^d last).
inline std::vector<Monomial> monomials_of_degree(int d) {
    if (d < 0) throw DegreeMismatch("monomials_of_degree: negative degree");
    std::vector<Monomial> out;
    out.reserve(static_cast<std::size_t>(d + 2) * (d + 1) / 2);
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b)
            out.push_back({a, b, d - a - b});
    return out;
}

// Position of m inside monomials_of_degree(m.degree()), in O(1).
inline std::size_t monomial_index(const Monomial& m) {
    int d = m.degree();
    int t = d - m.a;
    return static_cast<std::size_t>(t) * (t + 1) / 2 + static_cast<std::size_t>(t - m.b);
}

} // namespace syzygy
