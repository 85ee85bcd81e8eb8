#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syzygy/combinatorics.hpp"
#include "syzygy/elimination.hpp"
#include "syzygy/section_space.hpp"
#include "syzygy/sparse.hpp"
#include "syzygy/wiedemann.hpp"

namespace syzygy {

enum class RankMethod { elimination, wiedemann };

inline const char* to_string(RankMethod m) {
    return m == RankMethod::elimination ? "elimination" : "wiedemann";
}

// Memory/size gate checked before any differential is assembled. The hard cap
// (overridable through SYZYGY_MEM_BUDGET, in bytes) refuses hopeless
// instances; the soft cap additionally keeps sparse elimination from wandering
// into multi-GiB working sets unless explicitly forced.
struct ResourceBudget {
    std::uint64_t max_nnz = std::uint64_t(1) << 31;
    std::uint64_t max_bytes = std::uint64_t(16) << 30;
    std::uint64_t soft_elim_bytes = std::uint64_t(2) << 30;
    bool force_elim = false;

    static ResourceBudget from_env() {
        ResourceBudget b;
        if (const char* env = std::getenv("SYZYGY_MEM_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) b.max_bytes = v;
        }
        return b;
    }
};

// Section spaces B_0..B_qmax of one mode, sharing the curve and field.
struct SpaceSet {
    SpaceMode mode;
    std::vector<SectionSpace> b;

    const SectionSpace& V() const { return b[1]; } // H^0(C, L) itself
    const FieldCtx& field() const { return b[0].field(); }
};

inline SpaceSet build_spaces(const CurveForm& f, const FieldCtx& ctx, SpaceMode mode, int qmax) {
    SpaceSet s;
    s.mode = mode;
    s.b.reserve(qmax + 1);
    for (int q = 0; q <= qmax; ++q) s.b.push_back(build_section_space(q, f, ctx, mode));
    return s;
}

// Per-(p,q) record: the middle dimension and both differential ranks pin
// dim K_{p,q} = dim_middle - rank_out - rank_in.
struct KoszulReport {
    int p = 0;
    int q = 0;
    SpaceMode side = SpaceMode::curve;
    std::uint64_t dim_middle = 0;
    std::uint64_t rank_out = 0; // rank of delta_{p,q}
    std::uint64_t rank_in = 0;  // rank of delta_{p+1,q-1}
    std::uint64_t dim_k = 0;
    RankMethod method = RankMethod::elimination;
    bool certified = true;
};

namespace detail {

struct DiffShape {
    std::uint64_t rows = 0, cols = 0, nnz_estimate = 0;
};

inline DiffShape differential_shape(int p, int q, const SpaceSet& s) {
    const unsigned n = static_cast<unsigned>(s.V().dim());
    DiffShape d;
    if (p < 1 || p > static_cast<int>(n)) return d;
    d.rows = binomial(n, p - 1) * s.b[q + 1].dim();
    d.cols = binomial(n, p) * s.b[q].dim();
    std::uint64_t maxexp = 1;
    for (std::size_t i = 0; i < s.b[q + 1].ambient_dim(); ++i)
        maxexp = std::max<std::uint64_t>(maxexp, s.b[q + 1].expansion(i).size());
    d.nnz_estimate = d.cols * p * maxexp;
    return d;
}

inline void check_budget(const DiffShape& d, RankMethod method, const ResourceBudget& budget) {
    if (d.nnz_estimate > budget.max_nnz)
        throw ResourceCap("estimated " + std::to_string(d.nnz_estimate) +
                          " nonzeros exceeds the cap of " + std::to_string(budget.max_nnz));
    const std::uint64_t csr_bytes = d.nnz_estimate * 24;
    std::uint64_t work_bytes = csr_bytes;
    if (method == RankMethod::elimination) {
        const std::uint64_t mindim = std::min(d.rows, d.cols);
        work_bytes += mindim * mindim * 8; // dense-equivalent elimination bound
    } else {
        work_bytes += (d.rows + d.cols) * 8 * 8;
    }
    if (work_bytes > budget.max_bytes)
        throw ResourceCap("estimated " + std::to_string(work_bytes) +
                          " bytes exceeds the memory budget of " + std::to_string(budget.max_bytes) +
                          " (set SYZYGY_MEM_BUDGET to raise it)");
    if (method == RankMethod::elimination && work_bytes > budget.soft_elim_bytes &&
        !budget.force_elim)
        throw ResourceCap("elimination working set estimated at " + std::to_string(work_bytes) +
                          " bytes; rerun with --method wiedemann, or force with --force-elim");
}

} // namespace detail

// Koszul differential delta_{p,q}: Lambda^p V (x) B_q -> Lambda^{p-1} V (x) B_{q+1},
//   delta(e_{i1}^...^e_{ip} (x) s) = sum_j (-1)^{j-1} e_{i1}^...^{hat i_j}^...^e_{ip} (x) v_{i_j} s
// with i_1 < ... < i_p. Exterior strata are indexed colexicographically;
// columns are combination-major with the B_q index fastest, so the block
// spanned by one exterior stratum stays contiguous.
//
// basis_perm is a test hook permuting the order of the V basis; every dim K
// must be invariant under it.
inline SparseMatrix assemble_differential(int p, int q, const SpaceSet& s,
                                          const std::vector<unsigned>* basis_perm = nullptr) {
    const SectionSpace& V = s.V();
    const SectionSpace& Bq = s.b.at(q);
    const SectionSpace& Bq1 = s.b.at(q + 1);
    const unsigned n = static_cast<unsigned>(V.dim());
    if (p < 1 || p > static_cast<int>(n))
        throw DimensionMismatch("assemble_differential: need 1 <= p <= dim V");
    if (basis_perm && basis_perm->size() != n)
        throw DimensionMismatch("assemble_differential: basis permutation has wrong size");

    detail::DiffShape shape = detail::differential_shape(p, q, s);
    if (shape.rows >= (std::uint64_t(1) << 32) || shape.cols >= (std::uint64_t(1) << 32))
        throw ResourceCap("differential shape exceeds 32-bit indexing");

    const std::uint32_t dim_bq = static_cast<std::uint32_t>(Bq.dim());
    const std::uint32_t dim_bq1 = static_cast<std::uint32_t>(Bq1.dim());

    CombIndexer big(n, p);
    CombIndexer small(n, p - 1);

    // multiplication table of V on the pivot basis of B_q, as ambient indices
    // of the product monomials inside B_{q+1}
    std::vector<std::size_t> product_amb(static_cast<std::size_t>(n) * dim_bq);
    for (unsigned g = 0; g < n; ++g) {
        const Monomial& vm = V.pivot_monomials()[basis_perm ? (*basis_perm)[g] : g];
        for (std::uint32_t b = 0; b < dim_bq; ++b)
            product_amb[static_cast<std::size_t>(g) * dim_bq + b] =
                monomial_index(vm * Bq.pivot_monomials()[b]);
    }

    std::vector<Triplet> ts;
    ts.reserve(shape.nnz_estimate);
    const FieldCtx& ctx = s.field();

    std::vector<unsigned> reduced;
    std::vector<std::uint64_t> rank_minus(p);
    for (std::uint64_t t = 0; t < big.count(); ++t) {
        std::vector<unsigned> subset = big.unrank(t);
        for (int j = 0; j < p; ++j) {
            reduced = subset;
            reduced.erase(reduced.begin() + j);
            rank_minus[j] = small.rank(reduced);
        }
        for (std::uint32_t b = 0; b < dim_bq; ++b) {
            const std::uint32_t col = static_cast<std::uint32_t>(t * dim_bq + b);
            for (int j = 0; j < p; ++j) {
                const bool positive = (j % 2 == 0); // (-1)^{j-1} with 1-based j
                const std::size_t amb =
                    product_amb[static_cast<std::size_t>(subset[j]) * dim_bq + b];
                const std::uint32_t row0 =
                    static_cast<std::uint32_t>(rank_minus[j] * dim_bq1);
                for (const auto& [pos, v] : Bq1.expansion(amb))
                    ts.push_back({row0 + pos, col, positive ? v : ctx.neg(v)});
            }
        }
    }
    return SparseMatrix::from_triplets(static_cast<std::uint32_t>(shape.rows),
                                       static_cast<std::uint32_t>(shape.cols), ts);
}

struct RankOptions {
    RankMethod method = RankMethod::elimination;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    ResourceBudget budget;
    const std::vector<unsigned>* basis_perm = nullptr;
};

inline std::uint64_t differential_rank(int p, int q, const SpaceSet& s, const RankOptions& opts) {
    const unsigned n = static_cast<unsigned>(s.V().dim());
    if (p < 1 || p > static_cast<int>(n) || q < 0) return 0;
    if (s.b[q].dim() == 0) return 0;
    detail::check_budget(detail::differential_shape(p, q, s), opts.method, opts.budget);
    SparseMatrix m = assemble_differential(p, q, s, opts.basis_perm);
    if (opts.method == RankMethod::elimination) return rank_elimination(m, s.field());
    return rank_wiedemann(m, s.field(), opts.seed, opts.threads).rank;
}

// dim K_{p,q} = dim(Lambda^p V (x) B_q) - rank delta_{p,q} - rank delta_{p+1,q-1};
// exact with elimination ranks, a probabilistic upper estimate with Wiedemann
// (which can only under-report ranks), flagged by certified = false.
inline KoszulReport kpq_dimension(int p, int q, const SpaceSet& s, const RankOptions& opts) {
    const unsigned n = static_cast<unsigned>(s.V().dim());
    if (p < 0 || q < 0) throw IndexOutOfRange("kpq_dimension: p and q must be >= 0");
    if (static_cast<std::size_t>(q) + 1 >= s.b.size())
        throw DimensionMismatch("kpq_dimension: section spaces not built up to q+1");

    KoszulReport r;
    r.p = p;
    r.q = q;
    r.side = s.mode;
    r.method = opts.method;
    r.certified = opts.method == RankMethod::elimination;
    r.dim_middle = p <= static_cast<int>(n) ? binomial(n, p) * s.b[q].dim() : 0;
    r.rank_out = differential_rank(p, q, s, opts);
    r.rank_in = q >= 1 ? differential_rank(p + 1, q - 1, s, opts) : 0;
    r.dim_k = r.dim_middle - r.rank_out - r.rank_in;
    return r;
}

struct InjectionResult {
    bool injective = false;
    std::uint64_t dim_source = 0;
    std::uint64_t dim_target = 0;
};

namespace detail {

// Incremental echelon over dense vectors; rows normalized to unit lead.
class DenseEchelon {
public:
    explicit DenseEchelon(const FieldCtx& ctx) : ctx_(ctx) {}

    void reduce(std::vector<FieldElem>& v) const {
        for (const auto& [lead, row] : rows_) {
            FieldElem c = v[lead];
            if (c == 0) continue;
            v[lead] = 0;
            for (std::size_t i = lead + 1; i < v.size(); ++i)
                if (row[i] != 0) v[i] = ctx_.sub(v[i], ctx_.mul(c, row[i]));
        }
    }

    // reduces v; if nonzero, normalizes and adds it, returning true
    bool insert(std::vector<FieldElem> v) {
        reduce(v);
        std::size_t lead = 0;
        while (lead < v.size() && v[lead] == 0) ++lead;
        if (lead == v.size()) return false;
        FieldElem inv = ctx_.inv(v[lead]);
        for (auto& x : v) x = ctx_.mul(x, inv);
        rows_.emplace(static_cast<std::uint32_t>(lead), std::move(v));
        return true;
    }

    std::size_t size() const { return rows_.size(); }

private:
    FieldCtx ctx_;
    std::map<std::uint32_t, std::vector<FieldElem>> rows_;
};

} // namespace detail

// The paper's injection K_{p,1}(P^2, O(k-1)) -> K_{p,1}(C, L), checked
// directly: take kernel representatives of the Veronese middle cohomology,
// push them through the quotient projection B_q(ver) -> B_q(curve) block by
// block, and test that the images stay independent modulo the curve-side
// image of delta_{p+1,0}.
inline InjectionResult injection_check(int p, const SpaceSet& ver, const SpaceSet& cur,
                                       const RankOptions& opts,
                                       const KoszulReport* cur_report = nullptr) {
    const FieldCtx& ctx = ver.field();
    const unsigned n = static_cast<unsigned>(ver.V().dim());
    if (p < 1 || p > static_cast<int>(n))
        throw IndexOutOfRange("injection_check: need 1 <= p <= dim V");
    if (cur.V().dim() != ver.V().dim())
        throw DimensionMismatch("injection_check: V differs between modes");

    RankOptions exact = opts;
    exact.method = RankMethod::elimination; // the check itself is exact

    detail::check_budget(detail::differential_shape(p, 1, ver), RankMethod::elimination,
                         exact.budget);
    // kernel of the outgoing Veronese differential
    SparseMatrix d_out = assemble_differential(p, 1, ver, exact.basis_perm);
    std::vector<std::vector<FieldElem>> kern = kernel_basis(d_out, ctx);

    // Veronese-side image echelon
    detail::DenseEchelon ver_ech(ctx);
    if (p + 1 <= static_cast<int>(n)) {
        SparseMatrix d_in_t = assemble_differential(p + 1, 0, ver, exact.basis_perm).transpose();
        for (std::uint32_t i = 0; i < d_in_t.nrows(); ++i) {
            std::vector<FieldElem> colv(d_in_t.ncols(), 0);
            auto cs = d_in_t.row_cols(i);
            auto vs = d_in_t.row_vals(i);
            for (std::size_t k2 = 0; k2 < cs.size(); ++k2) colv[cs[k2]] = vs[k2];
            ver_ech.insert(std::move(colv));
        }
    }

    // representatives of ker/im on the Veronese side: kernel vectors that stay
    // independent of the image span (insert reduces its own copy)
    std::vector<std::vector<FieldElem>> reps;
    for (auto& kv : kern)
        if (ver_ech.insert(kv)) reps.push_back(kv);

    InjectionResult res;
    res.dim_source = reps.size();

    // curve-side image echelon
    detail::DenseEchelon cur_ech(ctx);
    const std::uint64_t blocks = binomial(n, p);
    const std::size_t bdim_ver = ver.b[1].dim();
    const std::size_t bdim_cur = cur.b[1].dim();
    if (p + 1 <= static_cast<int>(n)) {
        SparseMatrix d_in_t = assemble_differential(p + 1, 0, cur, exact.basis_perm).transpose();
        for (std::uint32_t i = 0; i < d_in_t.nrows(); ++i) {
            std::vector<FieldElem> colv(d_in_t.ncols(), 0);
            auto cs = d_in_t.row_cols(i);
            auto vs = d_in_t.row_vals(i);
            for (std::size_t k2 = 0; k2 < cs.size(); ++k2) colv[cs[k2]] = vs[k2];
            cur_ech.insert(std::move(colv));
        }
    }

    // push representatives through the blockwise quotient projection and test
    // independence modulo the curve-side image
    res.injective = true;
    for (const auto& rep : reps) {
        std::vector<FieldElem> pushed(blocks * bdim_cur, 0);
        std::vector<FieldElem> ambient(ver.b[1].ambient_dim(), 0);
        for (std::uint64_t t = 0; t < blocks; ++t) {
            // veronese pivots are exactly the ambient monomials
            for (std::size_t i = 0; i < bdim_ver; ++i) ambient[i] = rep[t * bdim_ver + i];
            std::vector<FieldElem> nf = normal_form(ambient, cur.b[1]);
            for (std::size_t i = 0; i < bdim_cur; ++i) pushed[t * bdim_cur + i] = nf[i];
        }
        if (!cur_ech.insert(std::move(pushed))) res.injective = false;
    }

    if (cur_report && cur_report->certified) {
        res.dim_target = cur_report->dim_k;
    } else {
        res.dim_target = kpq_dimension(p, 1, cur, exact).dim_k;
    }
    return res;
}

} // namespace syzygy
