#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "syzygy/field.hpp"
#include "syzygy/sparse.hpp"

namespace syzygy {

// Sparse Gaussian elimination over Z/p with Markowitz pivot selection:
// minimize the fill estimate (r-1)(c-1) over live entries, ties broken by
// lowest row then lowest column index. Deterministic for a given matrix.
//
// Koszul differentials arrive ultra-sparse (about 1.1 entries per generator-
// section pair on the Fermat curve), so fill is the only scaling risk and the
// Markowitz estimate is worth its scan cost.
class SparseElimination {
public:
    SparseElimination(const SparseMatrix& m, const FieldCtx& ctx) : ctx_(ctx) {
        nrows_ = m.nrows();
        ncols_ = m.ncols();
        rows_.resize(nrows_);
        col_count_.assign(ncols_, 0);
        col_rows_.resize(ncols_);
        for (std::uint32_t i = 0; i < nrows_; ++i) {
            auto cs = m.row_cols(i);
            auto vs = m.row_vals(i);
            rows_[i].reserve(cs.size());
            for (std::size_t k = 0; k < cs.size(); ++k) {
                rows_[i].push_back({cs[k], vs[k]});
                ++col_count_[cs[k]];
                col_rows_[cs[k]].push_back(i);
            }
        }
        row_live_.assign(nrows_, true);
    }

    // Forward elimination; returns the rank.
    std::uint64_t run() {
        while (true) {
            auto [r, c] = select_pivot();
            if (r == kNone) break;
            eliminate(r, c);
        }
        return pivots_.size();
    }

    // Basis of the right kernel as dense vectors, available after run().
    // Back-substitutes the recorded pivot rows into reduced row echelon form;
    // each free column then yields one kernel vector.
    std::vector<std::vector<FieldElem>> kernel_basis() {
        std::vector<int> pivot_of_col(ncols_, -1);
        for (std::size_t t = 0; t < pivots_.size(); ++t)
            pivot_of_col[pivots_[t].col] = static_cast<int>(t);

        // normalize pivot rows
        for (auto& pv : pivots_) {
            FieldElem inv = ctx_.inv(value_at(pv.row, pv.col));
            for (auto& e : rows_[pv.row]) e.val = ctx_.mul(e.val, inv);
        }
        // reverse chronological back-substitution: row of pivot s can only
        // contain pivot columns eliminated after s
        for (std::size_t s = pivots_.size(); s-- > 0;) {
            auto& row = rows_[pivots_[s].row];
            bool again = true;
            while (again) {
                again = false;
                for (const auto& e : row) {
                    if (e.col == pivots_[s].col) continue;
                    int t = pivot_of_col[e.col];
                    if (t < 0) continue;
                    axpy_into(row, e.val, rows_[pivots_[t].row]);
                    again = true;
                    break;
                }
            }
        }
        std::vector<std::vector<FieldElem>> basis;
        for (std::uint32_t f = 0; f < ncols_; ++f) {
            if (pivot_of_col[f] >= 0) continue;
            std::vector<FieldElem> x(ncols_, 0);
            x[f] = 1;
            for (const auto& pv : pivots_) {
                FieldElem a = value_at(pv.row, f);
                if (a != 0) x[pv.col] = ctx_.neg(a);
            }
            basis.push_back(std::move(x));
        }
        return basis;
    }

private:
    struct Entry {
        std::uint32_t col;
        FieldElem val;
    };
    struct Pivot {
        std::uint32_t row;
        std::uint32_t col;
    };
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    FieldElem value_at(std::uint32_t r, std::uint32_t c) const {
        const auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, std::uint32_t col) { return e.col < col; });
        return (it != row.end() && it->col == c) ? it->val : 0;
    }

    // row -= f * other; no live-count bookkeeping (used after run())
    void axpy_into(std::vector<Entry>& row, FieldElem f, const std::vector<Entry>& other) {
        scratch_.clear();
        auto a = row.begin();
        auto b = other.begin();
        while (a != row.end() || b != other.end()) {
            if (b == other.end() || (a != row.end() && a->col < b->col)) {
                scratch_.push_back(*a++);
            } else if (a == row.end() || b->col < a->col) {
                FieldElem nv = ctx_.neg(ctx_.mul(f, b->val));
                if (nv != 0) scratch_.push_back({b->col, nv});
                ++b;
            } else {
                FieldElem nv = ctx_.sub(a->val, ctx_.mul(f, b->val));
                if (nv != 0) scratch_.push_back({a->col, nv});
                ++a;
                ++b;
            }
        }
        row = scratch_;
    }

    std::pair<std::uint32_t, std::uint32_t> select_pivot() const {
        std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
        std::uint32_t br = kNone, bc = kNone;
        for (std::uint32_t i = 0; i < nrows_; ++i) {
            if (!row_live_[i] || rows_[i].empty()) continue;
            std::uint64_t r = rows_[i].size();
            for (const Entry& e : rows_[i]) {
                std::uint64_t cost = (r - 1) * (col_count_[e.col] - 1);
                if (cost < best) {
                    best = cost;
                    br = i;
                    bc = e.col;
                    if (best == 0) return {br, bc}; // nothing beats 0; later entries lose ties
                }
            }
        }
        return {br, bc};
    }

    void eliminate(std::uint32_t pr, std::uint32_t pc) {
        pivots_.push_back({pr, pc});
        row_live_[pr] = false;
        for (const Entry& e : rows_[pr]) --col_count_[e.col];

        FieldElem pv = value_at(pr, pc);
        FieldElem inv = ctx_.inv(pv);

        auto& cand = col_rows_[pc];
        std::vector<std::uint32_t> affected;
        affected.reserve(cand.size());
        for (std::uint32_t r : cand)
            if (row_live_[r] && value_at(r, pc) != 0) affected.push_back(r);
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
        cand.clear();
        cand.shrink_to_fit();

        const auto& prow = rows_[pr];
        for (std::uint32_t r : affected) {
            FieldElem f = ctx_.mul(value_at(r, pc), inv);
            scratch_.clear();
            auto a = rows_[r].begin();
            auto b = prow.begin();
            while (a != rows_[r].end() || b != prow.end()) {
                if (b == prow.end() || (a != rows_[r].end() && a->col < b->col)) {
                    scratch_.push_back(*a++);
                } else if (a == rows_[r].end() || b->col < a->col) {
                    FieldElem nv = ctx_.neg(ctx_.mul(f, b->val));
                    if (nv != 0) {
                        scratch_.push_back({b->col, nv});
                        ++col_count_[b->col];
                        col_rows_[b->col].push_back(r);
                    }
                    ++b;
                } else {
                    FieldElem nv = ctx_.sub(a->val, ctx_.mul(f, b->val));
                    if (nv != 0)
                        scratch_.push_back({a->col, nv});
                    else
                        --col_count_[a->col];
                    ++a;
                    ++b;
                }
            }
            rows_[r] = scratch_;
        }
    }

    FieldCtx ctx_;
    std::uint32_t nrows_ = 0, ncols_ = 0;
    std::vector<std::vector<Entry>> rows_;
    std::vector<bool> row_live_;
    std::vector<std::uint32_t> col_count_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::vector<Pivot> pivots_;
    mutable std::vector<Entry> scratch_;
};

// Exact rank over Z/p. Deterministic given M.
inline std::uint64_t rank_elimination(const SparseMatrix& m, const FieldCtx& ctx) {
    if (m.nnz() == 0) return 0;
    SparseElimination e(m, ctx);
    return e.run();
}

// Dense basis of { x : M x = 0 }.
inline std::vector<std::vector<FieldElem>> kernel_basis(const SparseMatrix& m,
                                                        const FieldCtx& ctx) {
    SparseElimination e(m, ctx);
    e.run();
    return e.kernel_basis();
}

} // namespace syzygy
