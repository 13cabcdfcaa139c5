#include "shiftlab/report.hpp"

#include <sstream>

namespace shiftlab {

json to_json(const RepHistogram& h) {
    json pairs = json::array();
    for (const auto& [x, c] : h.counts) pairs.push_back({x.str(), c});
    return json{{"op", to_string(h.source_op)},
                {"total_pairs", h.total_pairs},
                {"counts", std::move(pairs)}};
}

json to_json(const VerificationReport& r) {
    json flags = json::object();
    for (const auto& [name, ok] : r.flags) flags[name] = ok;
    json j{{"theorem_id", r.theorem_id},
           {"lhs", r.lhs},
           {"rhs", r.rhs},
           {"ratio", static_cast<double>(r.ratio)},
           {"flags", std::move(flags)}};
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (!r.sub_reports.empty()) {
        json subs = json::array();
        for (const auto& s : r.sub_reports) subs.push_back(to_json(s));
        j["sub_reports"] = std::move(subs);
    }
    return j;
}

json to_json(const TraceStep& s) {
    json j{{"name", s.name},
           {"kind", s.kind},
           {"lhs", static_cast<double>(s.lhs)},
           {"rhs", static_cast<double>(s.rhs)},
           {"ratio", static_cast<double>(s.ratio)},
           {"holds", s.holds}};
    if (s.log_power) j["log_power"] = s.log_power;
    return j;
}

json to_json(const ProofTrace& t) {
    json quantities = json::object();
    for (const auto& [name, value] : t.quantities) {
        if (quantities.contains(name)) continue; // repeated notes keep first
        quantities[name] = value;
    }
    json steps = json::array();
    for (const auto& s : t.steps) steps.push_back(to_json(s));
    return json{{"quantities", std::move(quantities)}, {"steps", std::move(steps)}};
}

json to_json(const PopularityDecomposition& d, const RefineResult* refine) {
    json j{{"P", d.P.str()},
           {"A_prime", d.A_prime.str()},
           {"threshold_P", static_cast<double>(d.threshold_P)},
           {"threshold_A", static_cast<double>(d.threshold_A)},
           {"covered_pairs", d.covered_pairs},
           {"uncovered_pairs", d.uncovered_pairs}};
    if (refine) {
        json trace = json::array();
        for (auto e : refine->energy_trace) trace.push_back(static_cast<double>(e));
        j["refine"] = json{{"A1", refine->A1.str()},
                           {"iterations", refine->iterations},
                           {"guaranteed", refine->guaranteed},
                           {"energy_trace", std::move(trace)}};
    }
    return j;
}

json to_json(const SearchRecord& r) {
    return json{{"objective", to_string(r.objective)},
                {"set", r.set_descr},
                {"set_size", r.set_size},
                {"raw_size", r.raw_size},
                {"value", r.value},
                {"seed", r.seed},
                {"generator", r.generator}};
}

std::string trace_to_csv(const std::string& instance, const ProofTrace& t) {
    std::ostringstream out;
    for (const auto& s : t.steps) {
        out << '"' << instance << "\",\"" << s.name << "\"," << s.kind << ','
            << static_cast<double>(s.lhs) << ',' << static_cast<double>(s.rhs) << ','
            << static_cast<double>(s.ratio) << ',' << (s.holds ? 1 : 0) << ','
            << s.log_power << '\n';
    }
    return out.str();
}

std::string search_record_csv_row(std::uint64_t p, const SearchRecord& r) {
    std::ostringstream out;
    out << to_string(r.objective) << ',' << p << ',' << r.set_size << ",\""
        << r.set_descr << "\"," << r.value << ',' << r.seed << '\n';
    return out.str();
}

} // namespace shiftlab
