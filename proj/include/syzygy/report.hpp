#pragma once

#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "syzygy/instance.hpp"

namespace syzygy {

inline constexpr const char* report_schema_version = "1";

// Machine-readable report. Serialization is deterministic: fixed key order,
// exact integers, and no volatile fields unless timings are asked for
// explicitly (they vary run to run and would break the byte-identity
// contract).
struct ReportDocument {
    std::string command; // canonical echo, execution-only flags excluded
    std::uint64_t prime = 0;
    int k = 0;
    std::string curve;
    std::uint64_t g = 0, deg_l = 0, h0 = 0;
    std::string smoothness;

    struct Entry {
        KoszulReport rep;
        bool has_conjecture_flag = false;
        bool conjecture_predicts_zero = false;
    };
    std::vector<Entry> entries;

    bool has_theorem = false;
    bool theorem_holds = false;
    std::uint64_t violation_index = 0;
    std::uint64_t conjectural_bound = 0;
    bool certified = false;
    std::string method;

    bool has_injection = false;
    InjectionResult injection;

    StageTimings timings;
    bool include_timings = false;
};

inline nlohmann::ordered_json to_json(const ReportDocument& d) {
    nlohmann::ordered_json j;
    j["schema_version"] = report_schema_version;
    j["command"] = d.command;
    j["prime"] = d.prime;
    j["k"] = d.k;
    j["curve"] = d.curve;
    j["instance"] = {{"g", d.g}, {"deg_L", d.deg_l}, {"h0", d.h0}, {"smoothness", d.smoothness}};
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : d.entries) {
        nlohmann::ordered_json je;
        je["p"] = e.rep.p;
        je["q"] = e.rep.q;
        je["side"] = to_string(e.rep.side);
        je["dim_middle"] = e.rep.dim_middle;
        je["rank_out"] = e.rep.rank_out;
        je["rank_in"] = e.rep.rank_in;
        je["dim_K"] = e.rep.dim_k;
        je["method"] = to_string(e.rep.method);
        je["certified"] = e.rep.certified;
        if (e.has_conjecture_flag) je["conjecture_predicts_zero"] = e.conjecture_predicts_zero;
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    if (d.has_theorem) {
        j["theorem_holds"] = d.theorem_holds;
        j["violation_index"] = d.violation_index;
        j["conjectural_bound"] = d.conjectural_bound;
        j["method"] = d.method;
        j["certified"] = d.certified;
        if (d.has_injection) {
            j["injection"] = {{"injective", d.injection.injective},
                              {"dim_source", d.injection.dim_source},
                              {"dim_target", d.injection.dim_target}};
        } else {
            j["injection"] = nullptr;
        }
    }
    if (d.include_timings) {
        nlohmann::ordered_json t;
        for (const auto& [name, ms] : d.timings) t[name] = ms;
        j["timings_ms"] = std::move(t);
    }
    return j;
}

inline void print_table(std::ostream& os, const ReportDocument& d) {
    os << "syzygy " << d.command << "\n";
    os << "prime " << d.prime << ", curve " << d.curve << " (smoothness: " << d.smoothness
       << ")\n";
    os << "instance: k=" << d.k << "  g=" << d.g << "  deg_L=" << d.deg_l << " (= 2g+k-1)  h0="
       << d.h0 << "\n";
    const bool flag = !d.entries.empty() && d.entries.front().has_conjecture_flag;
    os << std::setw(4) << "p" << std::setw(3) << "q" << "  " << std::left << std::setw(9)
       << "side" << std::right << std::setw(12) << "dim_middle" << std::setw(10) << "rank_out"
       << std::setw(9) << "rank_in" << std::setw(8) << "dim_K" << "  " << std::left
       << std::setw(12) << "method" << std::right << std::setw(10) << "certified";
    if (flag) os << std::setw(19) << "conjecture_zero";
    os << "\n";
    for (const auto& e : d.entries) {
        os << std::setw(4) << e.rep.p << std::setw(3) << e.rep.q << "  " << std::left
           << std::setw(9) << to_string(e.rep.side) << std::right << std::setw(12)
           << e.rep.dim_middle << std::setw(10) << e.rep.rank_out << std::setw(9) << e.rep.rank_in
           << std::setw(8) << e.rep.dim_k << "  " << std::left << std::setw(12)
           << to_string(e.rep.method) << std::right << std::setw(10)
           << (e.rep.certified ? "yes" : "no");
        if (e.has_conjecture_flag) os << std::setw(19) << (e.conjecture_predicts_zero ? "yes" : "no");
        os << "\n";
    }
    if (d.has_theorem) {
        os << "theorem_holds: " << (d.theorem_holds ? "yes" : "no") << "  (K_{" << d.violation_index
           << ",1}(C,L) nonzero required; violation index " << d.violation_index
           << " > conjectural bound " << d.conjectural_bound << ")\n";
        os << "certified: " << (d.certified ? "yes (deterministic elimination)" : "no (probabilistic)")
           << "\n";
        os << "assumed, not computed: gonality(C) = k; L very ample (degree argument)\n";
        if (d.has_injection) {
            os << "injection: " << (d.injection.injective ? "injective" : "NOT injective")
               << "  dim_source=" << d.injection.dim_source
               << "  dim_target=" << d.injection.dim_target << "\n";
        }
    }
    if (!d.timings.empty()) {
        os << "timings_ms:";
        for (const auto& [name, ms] : d.timings) os << ' ' << name << '=' << ms;
        os << "\n";
    }
}

} // namespace syzygy
