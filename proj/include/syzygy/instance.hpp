#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "syzygy/curve.hpp"
#include "syzygy/field.hpp"
#include "syzygy/koszul.hpp"

namespace syzygy {

enum class Smoothness { certified_fermat, unverified };

inline const char* to_string(Smoothness s) {
    return s == Smoothness::certified_fermat ? "certified-fermat" : "unverified";
}

// How the defining form is chosen: "fermat", "random:<seed>", "file:<path>".
struct CurveSpec {
    enum class Kind { fermat, random, file } kind = Kind::fermat;
    std::uint64_t seed = 0;
    std::string path;
    std::string descriptor = "fermat";

    static CurveSpec parse(const std::string& s) {
        CurveSpec c;
        c.descriptor = s;
        if (s == "fermat") {
            c.kind = Kind::fermat;
        } else if (s.rfind("random:", 0) == 0) {
            c.kind = Kind::random;
            try {
                c.seed = std::stoull(s.substr(7));
            } catch (const std::exception&) {
                throw ParseError("bad curve spec '" + s + "': expected random:<seed>");
            }
        } else if (s.rfind("file:", 0) == 0) {
            c.kind = Kind::file;
            c.path = s.substr(5);
            if (c.path.empty()) throw ParseError("bad curve spec '" + s + "': empty path");
        } else {
            throw ParseError("bad curve spec '" + s + "' (fermat | random:<seed> | file:<path>)");
        }
        return c;
    }
};

// The paper's construction for one k: a plane curve of degree k+1 with L cut
// out by degree-(k-1) forms, so that
//   g = k(k-1)/2,   deg L = (k-1)(k+1) = 2g + k - 1,   h^0(C, L) = C(k+1, 2).
struct Instance {
    int k = 0;
    FieldCtx ctx;
    CurveForm curve;
    std::string curve_descriptor;
    std::uint64_t g = 0;
    std::uint64_t deg_l = 0;
    std::uint64_t h0 = 0;
    Smoothness smoothness = Smoothness::unverified;
};

inline Instance build_instance(int k, const FieldCtx& ctx, const CurveSpec& spec) {
    if (k < 3) throw BadK("k must be >= 3 (got " + std::to_string(k) + ")");

    Instance inst;
    inst.k = k;
    inst.ctx = ctx;
    inst.curve_descriptor = spec.descriptor;

    switch (spec.kind) {
    case CurveSpec::Kind::fermat:
        if (static_cast<std::uint64_t>(k + 1) % ctx.modulus() == 0)
            throw CharDividesDegree("characteristic " + std::to_string(ctx.modulus()) +
                                    " divides k+1 = " + std::to_string(k + 1) +
                                    "; the Fermat curve is singular there");
        inst.curve = fermat_form(k);
        inst.smoothness = Smoothness::certified_fermat;
        break;
    case CurveSpec::Kind::random:
        inst.curve = random_form(k, spec.seed, ctx);
        inst.smoothness = Smoothness::unverified;
        break;
    case CurveSpec::Kind::file:
        inst.curve = form_from_file(spec.path, k, ctx);
        inst.smoothness = Smoothness::unverified;
        break;
    }
    inst.curve.validate();

    // the three closed-form identities, each computed two ways
    const std::uint64_t ku = static_cast<std::uint64_t>(k);
    inst.g = ku * (ku - 1) / 2;
    inst.deg_l = (ku - 1) * (ku + 1);
    if (inst.deg_l != 2 * inst.g + ku - 1)
        throw DimensionMismatch("deg L identity failed: (k-1)(k+1) != 2g+k-1");
    inst.h0 = binomial(ku + 1, 2);
    if (inst.h0 != binomial(ku - 1 + 2, 2)) // = dim S_{k-1}
        throw DimensionMismatch("h^0 identity failed: C(k+1,2) != dim S_{k-1}");
    return inst;
}

// Timing breakdown per pipeline stage, milliseconds.
using StageTimings = std::vector<std::pair<std::string, std::int64_t>>;

// Everything `verify` reports: both legs of the computation at the critical
// position p = h0 - k, the failed conjectural bound, and (optionally) the
// explicit injection check.
struct VerificationReport {
    Instance instance;
    KoszulReport veronese;
    KoszulReport curve;
    std::optional<InjectionResult> injection;
    bool theorem_holds = false;
    bool veronese_le_curve = false;
    std::uint64_t violation_index = 0;   // h0 - k
    std::uint64_t conjectural_bound = 0; // h0 - k - 1
    RankMethod method = RankMethod::elimination;
    bool certified = false;
    StageTimings timings;
};

namespace detail {

class StageClock {
public:
    explicit StageClock(StageTimings& out) : out_(out) {}
    template <class F> auto time(const std::string& name, F&& f) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = f();
        auto t1 = std::chrono::steady_clock::now();
        out_.push_back({name, std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()});
        return r;
    }

private:
    StageTimings& out_;
};

} // namespace detail

// Computes dim K_{h0-k,1} on the Veronese surface and on the curve, checks
// the theorem's non-vanishing, and certifies only when both ranks came from
// deterministic elimination.
inline VerificationReport verify_theorem(const Instance& inst, const RankOptions& opts,
                                         bool with_injection) {
    VerificationReport rep;
    rep.instance = inst;
    rep.method = opts.method;
    rep.violation_index = inst.h0 - static_cast<std::uint64_t>(inst.k);
    rep.conjectural_bound = rep.violation_index - 1;
    const int p = static_cast<int>(rep.violation_index);

    detail::StageClock clock(rep.timings);
    SpaceSet ver = clock.time("build_veronese", [&] {
        return build_spaces(inst.curve, inst.ctx, SpaceMode::veronese, 2);
    });
    SpaceSet cur = clock.time("build_curve", [&] {
        return build_spaces(inst.curve, inst.ctx, SpaceMode::curve, 2);
    });
    if (ver.V().dim() != inst.h0)
        throw DimensionMismatch("h^0 identity failed against the section space");

    // the injection check is exact; gate its budget before the rank stages so
    // an infeasible request fails fast
    if (with_injection)
        detail::check_budget(detail::differential_shape(p, 1, ver), RankMethod::elimination,
                             opts.budget);

    rep.veronese = clock.time("veronese_rank", [&] { return kpq_dimension(p, 1, ver, opts); });
    rep.curve = clock.time("curve_rank", [&] { return kpq_dimension(p, 1, cur, opts); });

    rep.certified = rep.veronese.certified && rep.curve.certified;
    rep.theorem_holds = rep.curve.dim_k >= 1;
    rep.veronese_le_curve = rep.veronese.dim_k <= rep.curve.dim_k;

    if (with_injection) {
        rep.injection = clock.time("injection", [&] {
            return injection_check(p, ver, cur, opts, &rep.curve);
        });
    }
    return rep;
}

struct RowEntry {
    KoszulReport report;
    bool conjecture_predicts_zero = false;
};

// One row of the gonality table: dim K_{i,1}(C, L) for i in [i_from, i_to],
// annotated with where the conjectured equivalence predicts vanishing
// (outside 1 <= i <= h0 - k - 1).
inline std::vector<RowEntry> gonality_row(const Instance& inst, int i_from, int i_to,
                                          const RankOptions& opts, StageTimings* timings = nullptr) {
    if (i_from < 0 || i_from > i_to || static_cast<std::uint64_t>(i_to) > inst.h0)
        throw IndexOutOfRange("row range must satisfy 0 <= from <= to <= h0");
    StageTimings local;
    detail::StageClock clock(timings ? *timings : local);
    SpaceSet cur = clock.time("build_curve", [&] {
        return build_spaces(inst.curve, inst.ctx, SpaceMode::curve, 2);
    });
    const std::uint64_t bound = inst.h0 - static_cast<std::uint64_t>(inst.k) - 1;
    std::vector<RowEntry> rows;
    for (int i = i_from; i <= i_to; ++i) {
        RowEntry e;
        e.report = clock.time("K_" + std::to_string(i) + "_1",
                              [&] { return kpq_dimension(i, 1, cur, opts); });
        e.conjecture_predicts_zero = i < 1 || static_cast<std::uint64_t>(i) > bound;
        rows.push_back(std::move(e));
    }
    return rows;
}

// Full K_{p,q} table over 0 <= q <= qmax, 0 <= p <= pmax for one side.
inline std::vector<KoszulReport> betti_table(const Instance& inst, SpaceMode side, int qmax,
                                             int pmax, const RankOptions& opts,
                                             StageTimings* timings = nullptr) {
    if (qmax < 0 || qmax > 2) throw IndexOutOfRange("qmax must be in 0..2");
    if (pmax < 0 || static_cast<std::uint64_t>(pmax) > inst.h0)
        throw IndexOutOfRange("pmax must be in 0..h0");
    StageTimings local;
    detail::StageClock clock(timings ? *timings : local);
    SpaceSet s = clock.time("build_spaces", [&] {
        return build_spaces(inst.curve, inst.ctx, side, qmax + 1);
    });
    std::vector<KoszulReport> out;
    for (int q = 0; q <= qmax; ++q)
        for (int p = 0; p <= pmax; ++p)
            out.push_back(clock.time("K_" + std::to_string(p) + "_" + std::to_string(q),
                                     [&] { return kpq_dimension(p, q, s, opts); }));
    return out;
}

} // namespace syzygy
