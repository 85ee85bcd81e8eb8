#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "syzygy/combinatorics.hpp"
#include "syzygy/curve.hpp"
#include "syzygy/field.hpp"
#include "syzygy/monomial.hpp"

namespace syzygy {

enum class SpaceMode { curve, veronese };

inline const char* to_string(SpaceMode m) { return m == SpaceMode::curve ? "curve" : "veronese"; }

// Graded piece B_q = H^0(C, qL), modeled as S_{q(k-1)} / F * S_{q(k-1)-(k+1)}.
// The twisted restriction sequence 0 -> O(-2) -> O(k-1) -> O_C(L) -> 0 (and its
// q-th twists) identifies the quotient with the section space; surjectivity of
// S_{q(k-1)} -> H^0(C, qL) holds because H^1 of line bundles on the plane
// vanishes. In veronese mode there is no quotient: B_q = S_{q(k-1)} models
// H^0(P^2, O(q(k-1))).
//
// Basis: the "pivot" monomials, i.e. ambient monomials that are not the grlex
// leading monomial of any row of the reduced row echelon basis of F * S_e.
// Every eliminated monomial carries a reduction row expressing it over pivots.
class SectionSpace {
public:
    SectionSpace() = default;

    int q() const { return q_; }
    int k() const { return k_; }
    SpaceMode mode() const { return mode_; }
    int ambient_degree() const { return ambient_degree_; }
    const FieldCtx& field() const { return ctx_; }

    std::size_t ambient_dim() const { return ambient_.size(); }
    std::size_t dim() const { return pivots_.size(); }

    const std::vector<Monomial>& ambient_monomials() const { return ambient_; }
    const std::vector<Monomial>& pivot_monomials() const { return pivots_; }

    // pivot position of an ambient monomial, or -1 if it was eliminated
    int pivot_pos(std::size_t ambient_idx) const { return pivot_pos_[ambient_idx]; }

    // Expansion of an ambient monomial over the pivot basis: a single unit
    // entry for pivots, the reduction tail for eliminated monomials.
    std::span<const std::pair<std::uint32_t, FieldElem>> expansion(std::size_t ambient_idx) const {
        const auto& r = rows_[ambient_idx];
        return {r.data(), r.size()};
    }

    std::span<const std::pair<std::uint32_t, FieldElem>> expansion(const Monomial& m) const {
        if (m.degree() != ambient_degree_)
            throw DegreeMismatch("expansion: monomial degree " + std::to_string(m.degree()) +
                                 " != ambient degree " + std::to_string(ambient_degree_));
        return expansion(monomial_index(m));
    }

    bool has_reduction() const { return reduced_count_ > 0; }
    std::size_t reduced_count() const { return reduced_count_; }

    friend SectionSpace build_section_space(int q, const CurveForm& F, const FieldCtx& ctx,
                                            SpaceMode mode);

private:
    int q_ = 0;
    int k_ = 0;
    SpaceMode mode_ = SpaceMode::curve;
    int ambient_degree_ = 0;
    FieldCtx ctx_;
    std::vector<Monomial> ambient_; // grlex descending
    std::vector<Monomial> pivots_;  // grlex descending subset of ambient_
    std::vector<int> pivot_pos_;    // ambient idx -> pivot idx, or -1
    // per ambient monomial: expansion over pivot indices (unit row for pivots)
    std::vector<std::vector<std::pair<std::uint32_t, FieldElem>>> rows_;
    std::size_t reduced_count_ = 0;
};

// Row-reduces the image of multiplication by F out of S_{q(k-1)} and selects
// the complementary monomial basis. Pivot rule: eliminate the grlex-largest
// monomial of each reduced row, which keeps Fermat reduction tails at two
// terms.
inline SectionSpace build_section_space(int q, const CurveForm& F, const FieldCtx& ctx,
                                        SpaceMode mode) {
    if (q < 0) throw DegreeMismatch("build_section_space: q must be >= 0");
    F.validate();

    SectionSpace s;
    s.q_ = q;
    s.k_ = F.k;
    s.mode_ = mode;
    s.ambient_degree_ = q * (F.k - 1);
    s.ctx_ = ctx;
    s.ambient_ = monomials_of_degree(s.ambient_degree_);

    const std::size_t D = s.ambient_.size();
    const int src_degree = s.ambient_degree_ - (F.k + 1);

    // echelon_[lead ambient idx] = dense tail over ambient indices > lead,
    // normalized to lead coefficient 1 and fully back-substituted
    std::vector<std::vector<std::pair<std::uint32_t, FieldElem>>> echelon(D);
    std::vector<bool> is_lead(D, false);

    if (mode == SpaceMode::curve && src_degree >= 0) {
        std::vector<FieldElem> work(D);
        for (const Monomial& n : monomials_of_degree(src_degree)) {
            std::fill(work.begin(), work.end(), 0);
            for (const auto& [fm, fc] : F.terms) {
                std::size_t idx = monomial_index(fm * n);
                work[idx] = ctx.add(work[idx], fc);
            }
            // one ascending pass fully reduces: echelon tails carry no leads
            for (std::uint32_t j = 0; j < D; ++j) {
                if (work[j] == 0 || !is_lead[j]) continue;
                FieldElem c = work[j];
                work[j] = 0;
                for (const auto& [jj, v] : echelon[j])
                    work[jj] = ctx.sub(work[jj], ctx.mul(c, v));
            }
            std::uint32_t lead = 0;
            while (lead < D && work[lead] == 0) ++lead;
            if (lead == D)
                throw InvalidForm("multiplication by F is not injective (zero form?)");
            FieldElem inv = ctx.inv(work[lead]);
            std::vector<std::pair<std::uint32_t, FieldElem>> row;
            for (std::uint32_t j = lead + 1; j < D; ++j)
                if (work[j] != 0) row.push_back({j, ctx.mul(inv, work[j])});
            // back-substitute the new lead out of earlier rows
            for (std::uint32_t l = 0; l < D; ++l) {
                if (!is_lead[l]) continue;
                auto& er = echelon[l];
                FieldElem c = 0;
                for (const auto& [j, v] : er)
                    if (j == lead) { c = v; break; }
                if (c == 0) continue;
                std::fill(work.begin(), work.end(), 0);
                for (const auto& [j, v] : er) work[j] = v;
                work[lead] = 0;
                for (const auto& [j, v] : row)
                    work[j] = ctx.sub(work[j], ctx.mul(c, v));
                er.clear();
                for (std::uint32_t j = l + 1; j < D; ++j)
                    if (work[j] != 0) er.push_back({j, work[j]});
            }
            echelon[lead] = std::move(row);
            is_lead[lead] = true;
        }
    }

    // pivot basis = ambient monomials that never became a lead
    s.pivot_pos_.assign(D, -1);
    for (std::size_t i = 0; i < D; ++i) {
        if (!is_lead[i]) {
            s.pivot_pos_[i] = static_cast<int>(s.pivots_.size());
            s.pivots_.push_back(s.ambient_[i]);
        }
    }
    s.rows_.assign(D, {});
    for (std::size_t i = 0; i < D; ++i) {
        if (!is_lead[i]) {
            s.rows_[i] = {{static_cast<std::uint32_t>(s.pivot_pos_[i]), 1}};
        } else {
            // lead = -tail; tails are pivot-supported after back-substitution
            auto& out = s.rows_[i];
            out.reserve(echelon[i].size());
            for (const auto& [j, v] : echelon[i])
                out.push_back({static_cast<std::uint32_t>(s.pivot_pos_[j]), ctx.neg(v)});
            ++s.reduced_count_;
        }
    }

    // dimension must match the exact-sequence count
    const std::uint64_t expect =
        binomial(s.ambient_degree_ + 2, 2) -
        (mode == SpaceMode::curve && src_degree >= 0 ? binomial(src_degree + 2, 2) : 0);
    if (s.dim() != expect)
        throw DimensionMismatch("section space dimension " + std::to_string(s.dim()) +
                                " != expected " + std::to_string(expect));
    return s;
}

// Image of an ambient coefficient vector under the quotient map S_d -> B_q,
// written over the pivot basis. Linear, idempotent on pivot-supported vectors,
// kills F * S_e exactly.
inline std::vector<FieldElem> normal_form(std::span<const FieldElem> v, const SectionSpace& space) {
    if (v.size() != space.ambient_dim())
        throw DegreeMismatch("normal_form: vector length " + std::to_string(v.size()) +
                             " != ambient dimension " + std::to_string(space.ambient_dim()));
    const FieldCtx& ctx = space.field();
    std::vector<FieldElem> out(space.dim(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (const auto& [j, c] : space.expansion(i))
            out[j] = ctx.add(out[j], ctx.mul(v[i], c));
    }
    return out;
}

// v_m * b in B_{q+1}, where m is a degree-(k-1) generator monomial and b
// indexes the pivot basis of B_q: a single monomial in veronese mode, a short
// reduction tail in curve mode.
inline std::vector<std::pair<std::uint32_t, FieldElem>>
mul_into(const Monomial& m, std::size_t b, const SectionSpace& from, const SectionSpace& into) {
    if (m.degree() != from.k() - 1)
        throw DegreeMismatch("mul_into: generator degree must be k-1");
    if (into.ambient_degree() != from.ambient_degree() + m.degree() || into.mode() != from.mode())
        throw DimensionMismatch("mul_into: target space is not B_{q+1} of the same mode");
    if (b >= from.dim()) throw IndexOutOfRange("mul_into: basis index out of range");
    auto span = into.expansion(m * from.pivot_monomials()[b]);
    return {span.begin(), span.end()};
}

} // namespace syzygy
