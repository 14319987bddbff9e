#pragma once

/**
 * JSON serialization for congruence reports.  Key order is fixed and integers
 * that may exceed 64 bits (residue witnesses) are emitted as decimal strings,
 * so the same report always serializes to the same bytes.
 */

#include "congruences.hpp"

#include <json.hpp>

#include <string>

namespace congruence_lab {

inline nlohmann::ordered_json report_to_json(const CongruenceReport& rep) {
    nlohmann::ordered_json j;
    j["kind"] = rep.kind;
    if (!rep.label.empty()) j["label"] = rep.label;
    if (rep.p != 0) j["p"] = rep.p;
    j["exponent"] = rep.exponent;
    nlohmann::ordered_json range = nlohmann::ordered_json::object();
    for (const auto& [key, value] : rep.range) range[key] = value;
    j["range"] = range;
    j["checked"] = rep.checked_count;
    j["violation_count"] = rep.violation_count;
    nlohmann::ordered_json violations = nlohmann::ordered_json::array();
    for (const auto& v : rep.violations) {
        nlohmann::ordered_json jv;
        jv["witness"] = v.witness;
        jv["lhs"] = v.lhs.str();
        jv["rhs"] = v.rhs.str();
        violations.push_back(jv);
    }
    j["violations"] = violations;
    j["verdict"] = rep.holds() ? "holds on range" : "violations found";
    return j;
}

/// Reports rendered as a fixed-width text table, one row per report.
inline std::string reports_to_table(const std::vector<CongruenceReport>& reps) {
    std::string out = "kind              label    p      exponent checked      violations verdict\n";
    for (const auto& rep : reps) {
        auto pad = [](std::string s, std::size_t w) {
            if (s.size() < w) s.append(w - s.size(), ' ');
            return s + " ";
        };
        out += pad(rep.kind, 17);
        out += pad(rep.label.empty() ? "-" : rep.label, 8);
        out += pad(rep.p == 0 ? "-" : std::to_string(rep.p), 6);
        out += pad(std::to_string(rep.exponent), 8);
        out += pad(std::to_string(rep.checked_count), 12);
        out += pad(std::to_string(rep.violation_count), 10);
        out += rep.holds() ? "holds on range" : "violations found";
        out += "\n";
    }
    return out;
}

}  // namespace congruence_lab
