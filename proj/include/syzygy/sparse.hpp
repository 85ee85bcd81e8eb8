#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "syzygy/errors.hpp"
#include "syzygy/field.hpp"

namespace syzygy {

struct Triplet {
    std::uint32_t row;
    std::uint32_t col;
    FieldElem val;
};

// Row-sparse matrix over Z/p: per-row entries sorted by column, no explicit
// zeros, no duplicate columns. Immutable once built.
class SparseMatrix {
public:
    SparseMatrix() = default;

    SparseMatrix(std::uint32_t nrows, std::uint32_t ncols) : nrows_(nrows), ncols_(ncols) {
        row_ptr_.assign(nrows + 1, 0);
    }

    // Counting sort by row; triplets must already be column-ordered within
    // each row (assembly emits them that way) and duplicate-free.
    static SparseMatrix from_triplets(std::uint32_t nrows, std::uint32_t ncols,
                                      const std::vector<Triplet>& ts) {
        SparseMatrix m(nrows, ncols);
        for (const Triplet& t : ts) {
            if (t.row >= nrows || t.col >= ncols)
                throw DimensionMismatch("from_triplets: entry outside matrix shape");
            if (t.val != 0) ++m.row_ptr_[t.row + 1];
        }
        for (std::uint32_t i = 0; i < nrows; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
        m.col_.resize(m.row_ptr_[nrows]);
        m.val_.resize(m.row_ptr_[nrows]);
        std::vector<std::size_t> fill(m.row_ptr_.begin(), m.row_ptr_.end() - 1);
        for (const Triplet& t : ts) {
            if (t.val == 0) continue;
            std::size_t at = fill[t.row]++;
            m.col_[at] = t.col;
            m.val_[at] = t.val;
        }
        for (std::uint32_t i = 0; i < nrows; ++i) {
            auto b = m.col_.begin() + m.row_ptr_[i], e = m.col_.begin() + m.row_ptr_[i + 1];
            if (!std::is_sorted(b, e) || std::adjacent_find(b, e) != e)
                m.sort_row(i);
        }
        return m;
    }

    std::uint32_t nrows() const { return nrows_; }
    std::uint32_t ncols() const { return ncols_; }
    std::size_t nnz() const { return col_.size(); }

    std::span<const std::uint32_t> row_cols(std::uint32_t i) const {
        return {col_.data() + row_ptr_[i], col_.data() + row_ptr_[i + 1]};
    }
    std::span<const FieldElem> row_vals(std::uint32_t i) const {
        return {val_.data() + row_ptr_[i], val_.data() + row_ptr_[i + 1]};
    }

    SparseMatrix transpose() const {
        std::vector<Triplet> ts;
        ts.reserve(nnz());
        for (std::uint32_t i = 0; i < nrows_; ++i) {
            auto cs = row_cols(i);
            auto vs = row_vals(i);
            for (std::size_t k = 0; k < cs.size(); ++k) ts.push_back({cs[k], i, vs[k]});
        }
        return from_triplets(ncols_, nrows_, ts);
    }

private:
    void sort_row(std::uint32_t i) {
        std::vector<std::pair<std::uint32_t, FieldElem>> tmp;
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            tmp.push_back({col_[k], val_[k]});
        std::sort(tmp.begin(), tmp.end());
        for (std::size_t k = 0; k + 1 < tmp.size(); ++k)
            if (tmp[k].first == tmp[k + 1].first)
                throw DimensionMismatch("duplicate column within a row");
        for (std::size_t k = 0; k < tmp.size(); ++k) {
            col_[row_ptr_[i] + k] = tmp[k].first;
            val_[row_ptr_[i] + k] = tmp[k].second;
        }
    }

    std::uint32_t nrows_ = 0, ncols_ = 0;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::uint32_t> col_;
    std::vector<FieldElem> val_;
};

inline void matvec_into(const SparseMatrix& m, std::span<const FieldElem> v,
                        std::vector<FieldElem>& y, const FieldCtx& ctx) {
    if (v.size() != m.ncols())
        throw DimensionMismatch("matvec: vector length != ncols");
    y.resize(m.nrows()); // every entry is overwritten below
    for (std::uint32_t i = 0; i < m.nrows(); ++i) {
        auto cs = m.row_cols(i);
        auto vs = m.row_vals(i);
        FieldElem acc = 0;
        for (std::size_t k = 0; k < cs.size(); ++k)
            acc = ctx.add(acc, ctx.mul(vs[k], v[cs[k]]));
        y[i] = acc;
    }
}

inline std::vector<FieldElem> matvec(const SparseMatrix& m, std::span<const FieldElem> v,
                                     const FieldCtx& ctx) {
    std::vector<FieldElem> y;
    matvec_into(m, v, y, ctx);
    return y;
}

inline std::vector<FieldElem> matvec_transpose(const SparseMatrix& m, std::span<const FieldElem> v,
                                               const FieldCtx& ctx) {
    if (v.size() != m.nrows())
        throw DimensionMismatch("matvec_transpose: vector length != nrows");
    std::vector<FieldElem> y(m.ncols(), 0);
    for (std::uint32_t i = 0; i < m.nrows(); ++i) {
        if (v[i] == 0) continue;
        auto cs = m.row_cols(i);
        auto vs = m.row_vals(i);
        for (std::size_t k = 0; k < cs.size(); ++k)
            y[cs[k]] = ctx.add(y[cs[k]], ctx.mul(vs[k], v[i]));
    }
    return y;
}

// Text format, bit-exact: "<nrows> <ncols> <modulus>" on the first line, one
// "<i> <j> <v>" entry per line with 1-based indices, terminated by "0 0 0".
struct MatrixFile {
    SparseMatrix matrix;
    std::uint64_t modulus;
};

inline MatrixFile read_matrix_text(std::istream& in) {
    long long nr, nc;
    std::uint64_t mod;
    if (!(in >> nr >> nc >> mod) || nr < 0 || nc < 0)
        throw ParseError("matrix file: bad header (expected '<nrows> <ncols> <modulus>')");
    FieldCtx ctx(mod); // validates primality and size
    std::vector<Triplet> ts;
    while (true) {
        long long i, j, v;
        if (!(in >> i >> j >> v))
            throw ParseError("matrix file: truncated before '0 0 0' terminator");
        if (i == 0 && j == 0 && v == 0) break;
        if (i < 1 || i > nr || j < 1 || j > nc)
            throw ParseError("matrix file: entry (" + std::to_string(i) + "," + std::to_string(j) +
                             ") outside " + std::to_string(nr) + "x" + std::to_string(nc));
        FieldElem cv = ctx.reduce_signed(v);
        ts.push_back({static_cast<std::uint32_t>(i - 1), static_cast<std::uint32_t>(j - 1), cv});
    }
    // repeated entries accumulate
    std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Triplet> merged;
    for (const Triplet& t : ts) {
        if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col)
            merged.back().val = ctx.add(merged.back().val, t.val);
        else
            merged.push_back(t);
    }
    return {SparseMatrix::from_triplets(static_cast<std::uint32_t>(nr),
                                        static_cast<std::uint32_t>(nc), merged),
            mod};
}

inline void write_matrix_text(std::ostream& out, const SparseMatrix& m, std::uint64_t modulus) {
    out << m.nrows() << ' ' << m.ncols() << ' ' << modulus << '\n';
    for (std::uint32_t i = 0; i < m.nrows(); ++i) {
        auto cs = m.row_cols(i);
        auto vs = m.row_vals(i);
        for (std::size_t k = 0; k < cs.size(); ++k)
            out << (i + 1) << ' ' << (cs[k] + 1) << ' ' << vs[k] << '\n';
    }
    out << "0 0 0\n";
}

} // namespace syzygy
