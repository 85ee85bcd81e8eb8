#pragma once

#include <cstdint>
#include <array>

#include "syzygy/errors.hpp"

namespace syzygy {

using u128 = unsigned __int128;

// Canonical residue in [0, p). Plain value type; the owning FieldCtx knows p.
using FieldElem = std::uint64_t;

inline constexpr std::uint64_t default_prime = 2147483647; // 2^31 - 1
inline constexpr std::uint64_t max_modulus = std::uint64_t(1) << 62;

namespace detail {

inline std::uint64_t mulmod_u128(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % p);
}

inline std::uint64_t powmod_u128(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod_u128(r, a, p);
        a = mulmod_u128(a, a, p);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for n < 2^64 (the 12-witness set is known exact
// up to 3.3 * 10^24).
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u128(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u128(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace detail

// Arithmetic context for Z/p. Immutable after construction; every operation is
// pure, so contexts may be shared freely across threads.
//
// For p < 2^31 products are reduced with a single-word Barrett step (two
// multiplies, no division); larger moduli fall back to 128-bit remainder.
class FieldCtx {
public:
    FieldCtx() : FieldCtx(default_prime) {}

    explicit FieldCtx(std::uint64_t p) : p_(p) {
        if (p >= max_modulus)
            throw ModulusTooLarge("modulus " + std::to_string(p) + " >= 2^62");
        if (!detail::is_prime_u64(p))
            throw CompositeModulus("modulus " + std::to_string(p) + " is not prime");
        small_ = p < (std::uint64_t(1) << 31);
        barrett_ = small_ ? static_cast<std::uint64_t>(((u128(1)) << 64) / p) : 0;
    }

    std::uint64_t modulus() const { return p_; }

    FieldElem reduce(std::uint64_t x) const { return x % p_; }

    // Canonical residue of a (possibly negative) signed integer.
    FieldElem reduce_signed(long long x) const {
        long long m = static_cast<long long>(p_);
        long long r = x % m;
        if (r < 0) r += m;
        return static_cast<FieldElem>(r);
    }

    FieldElem add(FieldElem a, FieldElem b) const {
        std::uint64_t s = a + b; // no overflow: a, b < 2^62
        return s >= p_ ? s - p_ : s;
    }

    FieldElem sub(FieldElem a, FieldElem b) const {
        return a >= b ? a - b : a + p_ - b;
    }

    FieldElem neg(FieldElem a) const { return a == 0 ? 0 : p_ - a; }

    FieldElem mul(FieldElem a, FieldElem b) const {
        if (small_) {
            std::uint64_t t = a * b; // exact: a, b < 2^31
            std::uint64_t q = static_cast<std::uint64_t>(
                (static_cast<u128>(t) * barrett_) >> 64);
            std::uint64_t r = t - q * p_;
            while (r >= p_) r -= p_;
            return r;
        }
        return detail::mulmod_u128(a, b, p_);
    }

    FieldElem pow(FieldElem a, std::uint64_t e) const {
        FieldElem r = 1 % p_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    // Extended Euclid; p prime, so every nonzero element is invertible.
    FieldElem inv(FieldElem a) const {
        if (a == 0) throw DivisionByZero("inverse of 0 mod " + std::to_string(p_));
        long long t = 0, nt = 1;
        long long r = static_cast<long long>(p_), nr = static_cast<long long>(a);
        while (nr != 0) {
            long long q = r / nr;
            long long tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        return t < 0 ? static_cast<FieldElem>(t + static_cast<long long>(p_))
                     : static_cast<FieldElem>(t);
    }

    bool operator==(const FieldCtx& o) const { return p_ == o.p_; }
    bool operator!=(const FieldCtx& o) const { return p_ != o.p_; }

private:
    std::uint64_t p_;
    std::uint64_t barrett_;
    bool small_;
};

inline FieldCtx make_field(std::uint64_t p) { return FieldCtx(p); }

} // namespace syzygy
