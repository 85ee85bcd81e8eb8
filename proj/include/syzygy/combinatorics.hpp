#pragma once

#include <cstdint>
#include <vector>

#include "syzygy/errors.hpp"

namespace syzygy {

using u128 = unsigned __int128;

// Exact C(n, k); throws ResourceCap once the value would leave the uint64
// range we index with (any such dimension is far beyond the tool's scope).
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    u128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i; // exact: r is C(n-k+i, i) at each step
        if (r > (u128(1) << 63))
            throw ResourceCap("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                              ") exceeds 2^63");
    }
    return static_cast<std::uint64_t>(r);
}

// Colexicographic bijection between {0, ..., C(n,p)-1} and strictly increasing
// p-subsets of {0, ..., n-1}:  rank(S) = sum_j C(s_j, j+1)  for S = {s_0 < ... < s_{p-1}}.
//
// Colex keeps rank/unrank O(p) table lookups, with no global ordering tables;
// that matters once strata like C(15,10) = 3003 show up.
class CombIndexer {
public:
    CombIndexer(unsigned n, unsigned p) : n_(n), p_(p) {
        if (p > n)
            throw IndexOutOfRange("CombIndexer: p=" + std::to_string(p) +
                                  " exceeds n=" + std::to_string(n));
        // table_[i][j] = C(i, j) for i <= n, j <= p
        table_.assign(n + 1, std::vector<std::uint64_t>(p + 1, 0));
        for (unsigned i = 0; i <= n; ++i) {
            table_[i][0] = 1;
            for (unsigned j = 1; j <= p && j <= i; ++j)
                table_[i][j] = (i == j) ? 1 : table_[i - 1][j - 1] + table_[i - 1][j];
        }
        count_ = table_[n][p];
    }

    unsigned n() const { return n_; }
    unsigned p() const { return p_; }
    std::uint64_t count() const { return count_; }

    std::uint64_t rank(const std::vector<unsigned>& subset) const {
        if (subset.size() != p_)
            throw IndexOutOfRange("CombIndexer::rank: subset size mismatch");
        std::uint64_t r = 0;
        unsigned prev = 0;
        for (unsigned j = 0; j < p_; ++j) {
            unsigned s = subset[j];
            if (s >= n_ || (j > 0 && s <= prev))
                throw IndexOutOfRange("CombIndexer::rank: indices must be strictly increasing in [0,n)");
            r += table_[s][j + 1];
            prev = s;
        }
        return r;
    }

    std::vector<unsigned> unrank(std::uint64_t r) const {
        if (r >= count_)
            throw IndexOutOfRange("CombIndexer::unrank: rank out of range");
        std::vector<unsigned> subset(p_);
        unsigned c = n_ == 0 ? 0 : n_ - 1;
        for (unsigned j = p_; j >= 1; --j) {
            // largest c with C(c, j) <= r; stops at latest when C(j-1, j) = 0
            while (table_[c][j] > r) --c;
            subset[j - 1] = c;
            r -= table_[c][j];
            if (c > 0) --c;
        }
        return subset;
    }

private:
    unsigned n_, p_;
    std::uint64_t count_;
    std::vector<std::vector<std::uint64_t>> table_;
};

} // namespace syzygy
