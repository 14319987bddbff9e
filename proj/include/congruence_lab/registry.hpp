#pragma once

/**
 * Sequence registry: the 15 sporadic parameter sets as data, a JSON loader,
 * and load-time validation (integrality window + a Lucas spot check) so a
 * wrong parameter set can never enter a sweep.
 */

#include "sequences.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace congruence_lab {

struct RegistryValidationFailure : std::runtime_error {
    explicit RegistryValidationFailure(const std::string& what) : std::runtime_error(what) {}
};

/// The shipped registry (same records as data/sporadic.json).
inline const char* default_registry_json() {
    return R"JSON({
  "sequences": [
    {"label": "A", "family": "two_term_quadratic", "a": 7, "b": 2, "c": -8,
     "lambda_exponent": 3, "provenance": "literature", "source_note": "Zagier sporadic A"},
    {"label": "B", "family": "two_term_quadratic", "a": 9, "b": 3, "c": 27,
     "lambda_exponent": 2, "provenance": "literature", "source_note": "Zagier sporadic B"},
    {"label": "C", "family": "two_term_quadratic", "a": 10, "b": 3, "c": 9,
     "lambda_exponent": 2, "provenance": "literature", "source_note": "Zagier sporadic C"},
    {"label": "D", "family": "two_term_quadratic", "a": 11, "b": 3, "c": -1,
     "lambda_exponent": 3, "provenance": "paper", "source_note": "Apery-like, zeta(2) numbers"},
    {"label": "E", "family": "two_term_quadratic", "a": 12, "b": 4, "c": 32,
     "lambda_exponent": 2, "provenance": "literature", "source_note": "Zagier sporadic E"},
    {"label": "F", "family": "two_term_quadratic", "a": 17, "b": 6, "c": 72,
     "lambda_exponent": 2, "provenance": "paper", "source_note": "Zagier sporadic F"},
    {"label": "alpha", "family": "three_term_cubic", "a": 10, "b": 4, "c": 64, "d": 0,
     "lambda_exponent": 3, "provenance": "literature", "source_note": "Almkvist-Zudilin sporadic (alpha), Domb numbers"},
    {"label": "gamma", "family": "three_term_cubic", "a": 17, "b": 5, "c": 1, "d": 0,
     "lambda_exponent": 3, "provenance": "paper", "source_note": "Apery numbers, zeta(3)"},
    {"label": "delta", "family": "three_term_cubic", "a": 7, "b": 3, "c": 81, "d": 0,
     "lambda_exponent": 3, "provenance": "paper", "source_note": "Almkvist-Zudilin numbers"},
    {"label": "epsilon", "family": "three_term_cubic", "a": 12, "b": 4, "c": 16, "d": 0,
     "lambda_exponent": 3, "provenance": "literature", "source_note": "Almkvist-Zudilin sporadic (epsilon)"},
    {"label": "zeta", "family": "three_term_cubic", "a": 9, "b": 3, "c": -27, "d": 0,
     "lambda_exponent": 3, "provenance": "literature", "source_note": "Almkvist-Zudilin sporadic (zeta)"},
    {"label": "eta", "family": "three_term_cubic", "a": 11, "b": 5, "c": 125, "d": 0,
     "lambda_exponent": 3, "provenance": "literature", "source_note": "Almkvist-Zudilin sporadic (eta)"},
    {"label": "s7", "family": "three_term_cubic", "a": 13, "b": 4, "c": -27, "d": 3,
     "lambda_exponent": 3, "provenance": "literature", "source_note": "Cooper sporadic s7"},
    {"label": "s10", "family": "three_term_cubic", "a": 6, "b": 2, "c": -64, "d": 4,
     "lambda_exponent": 3, "provenance": "literature", "source_note": "Cooper sporadic s10"},
    {"label": "s18", "family": "three_term_cubic", "a": 14, "b": 6, "c": 192, "d": -12,
     "lambda_exponent": 2, "provenance": "literature", "source_note": "Cooper sporadic s18"}
  ]
})JSON";
}

namespace detail {

inline void validate_spec_values(const SequenceSpec& spec) {
    // integrality window, then a Lucas spot check at p = 5
    std::vector<ExactInt> A;
    try {
        A = eval_sequence(spec, 100);
    } catch (const NonIntegralStep& e) {
        throw RegistryValidationFailure(std::string("registry: ") + e.what());
    }
    constexpr long long p = 5;
    for (long long n = 1; n <= 100 / p; ++n) {
        for (long long k = 0; k < p && p * n + k <= 100; ++k) {
            const ExactInt lhs = mod_reduce(A[static_cast<std::size_t>(p * n + k)], p);
            const ExactInt rhs = mod_reduce(A[static_cast<std::size_t>(k)] * A[static_cast<std::size_t>(n)], p);
            if (lhs != rhs) {
                throw RegistryValidationFailure("registry: " + spec.label +
                                                " fails the Lucas check at p=5, n=" + std::to_string(n) +
                                                ", k=" + std::to_string(k));
            }
        }
    }
}

}  // namespace detail

/// Parse and validate a registry document.  Throws RegistryValidationFailure
/// on any structural or arithmetic problem, naming the offending label.
inline std::vector<SequenceSpec> load_registry_from_string(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw RegistryValidationFailure(std::string("registry: parse error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("sequences") || !doc["sequences"].is_array()) {
        throw RegistryValidationFailure("registry: expected top-level object with a \"sequences\" array");
    }

    std::vector<SequenceSpec> specs;
    for (const auto& rec : doc["sequences"]) {
        SequenceSpec spec;
        try {
            spec.label = rec.at("label").get<std::string>();
            const std::string family = rec.at("family").get<std::string>();
            if (family == "two_term_quadratic") {
                spec.rec.family = Family::two_term_quadratic;
            } else if (family == "three_term_cubic") {
                spec.rec.family = Family::three_term_cubic;
            } else {
                throw RegistryValidationFailure("registry: " + spec.label + ": unknown family \"" + family + "\"");
            }
            spec.rec.a = rec.at("a").get<long long>();
            spec.rec.b = rec.at("b").get<long long>();
            spec.rec.c = rec.at("c").get<long long>();
            if (spec.rec.family == Family::three_term_cubic) {
                spec.rec.d = rec.at("d").get<long long>();
            } else {
                if (rec.contains("d")) {
                    throw RegistryValidationFailure("registry: " + spec.label + ": d is not a quadratic-family field");
                }
                spec.rec.d = 0;
            }
            spec.lambda_exponent = rec.at("lambda_exponent").get<int>();
            if (spec.lambda_exponent != 2 && spec.lambda_exponent != 3) {
                throw RegistryValidationFailure("registry: " + spec.label + ": lambda_exponent must be 2 or 3");
            }
            const std::string prov = rec.at("provenance").get<std::string>();
            if (prov == "paper") {
                spec.provenance = Provenance::paper;
            } else if (prov == "literature") {
                spec.provenance = Provenance::literature;
            } else {
                throw RegistryValidationFailure("registry: " + spec.label + ": unknown provenance \"" + prov + "\"");
            }
            spec.source_note = rec.value("source_note", std::string());
        } catch (const nlohmann::json::exception& e) {
            throw RegistryValidationFailure(std::string("registry: malformed record: ") + e.what());
        }

        // closed forms and ct polynomials are code-level attachments by label
        if (spec.label == "gamma") spec.closed_form = ClosedForm::apery_gamma;
        if (spec.label == "F") spec.closed_form = ClosedForm::zagier_F;
        if (spec.label == "delta") spec.closed_form = ClosedForm::az_delta;
        if (spec.label == "D") spec.closed_form = ClosedForm::zagier_D;
        if (spec.label == "F") spec.ct_poly = CtPoly::lambda_F;
        if (spec.label == "delta") spec.ct_poly = CtPoly::lambda_delta;

        specs.push_back(std::move(spec));
    }

    if (specs.size() != 15) {
        throw RegistryValidationFailure("registry: expected 15 sequences, found " + std::to_string(specs.size()));
    }
    for (std::size_t i = 0; i < specs.size(); ++i) {
        for (std::size_t j = i + 1; j < specs.size(); ++j) {
            if (specs[i].label == specs[j].label) {
                throw RegistryValidationFailure("registry: duplicate label " + specs[i].label);
            }
        }
    }
    for (const auto& spec : specs) detail::validate_spec_values(spec);
    return specs;
}

inline std::vector<SequenceSpec> load_registry_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RegistryValidationFailure("registry: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_registry_from_string(buf.str());
}

/**
 * Registry used by the tools: an explicit path wins, then the
 * CONGRUENCE_LAB_REGISTRY environment variable, then the embedded default.
 */
inline std::vector<SequenceSpec> load_registry(const std::string& explicit_path = "") {
    if (!explicit_path.empty()) return load_registry_from_file(explicit_path);
    if (const char* env = std::getenv("CONGRUENCE_LAB_REGISTRY"); env && *env) {
        return load_registry_from_file(env);
    }
    return load_registry_from_string(default_registry_json());
}

inline const SequenceSpec& find_sequence(const std::vector<SequenceSpec>& specs, const std::string& label) {
    for (const auto& spec : specs) {
        if (spec.label == label) return spec;
    }
    throw DomainError("unknown sequence label: " + label);
}

}  // namespace congruence_lab
