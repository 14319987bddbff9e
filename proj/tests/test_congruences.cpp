#include <congruence_lab/congruences.hpp>
#include <congruence_lab/registry.hpp>
#include <congruence_lab/report_json.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

using namespace congruence_lab;

namespace {

const std::vector<SequenceSpec>& specs() {
    static const std::vector<SequenceSpec> s = load_registry();
    return s;
}

const std::vector<ExactInt>& gamma_values() {
    static const std::vector<ExactInt> v = eval_sequence(find_sequence(specs(), "gamma"), 1000);
    return v;
}

bool has_range_note(const CongruenceReport& rep, const std::string& key, const std::string& value) {
    for (const auto& [k, v] : rep.range) {
        if (k == key && v == value) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("Lucas pair and digit forms hold for sampled sequences") {
    for (const std::string label : {"gamma", "B", "s7", "F"}) {
        const auto& spec = find_sequence(specs(), label);
        const auto A = eval_sequence(spec, 400);
        for (const std::uint64_t p : {2, 3, 5, 7, 11}) {
            const auto rep = check_lucas(label, A, p, 400);
            INFO(label << " p = " << p);
            CHECK(rep.holds());
            CHECK(rep.exponent == 1);
            CHECK(rep.checked_count > 0);
        }
    }
}

TEST_CASE("Lucas checker pins violations to witnesses") {
    auto A = gamma_values();
    A[7] += 1;  // 7 = 5*1 + 2, digits (1,2) base 5
    const auto rep = check_lucas("gamma", A, 5, 30);
    REQUIRE(rep.violation_count == 2);
    CHECK(rep.violations[0].witness == std::vector<long long>{1, 2});  // pair form
    CHECK(rep.violations[1].witness == std::vector<long long>{7});     // digit form
    CHECK(rep.violations[0].lhs == mod_reduce(A[7], 5));
    CHECK(rep.violations[0].rhs == mod_reduce(A[2] * A[1], 5));
}

TEST_CASE("Lucas checker flags vacuous pair ranges") {
    const auto rep = check_lucas("gamma", gamma_values(), 7, 5);
    CHECK(has_range_note(rep, "empty_range", "true"));
    CHECK(rep.holds());  // single-digit product form is reflexively true
}

TEST_CASE("violation lists are capped but counted in full") {
    auto A = gamma_values();
    for (std::size_t i = 1; i < A.size(); ++i) A[i] += 1;
    const auto rep = check_lucas("gamma", A, 3, 1000);
    CHECK(rep.violation_count > 100);
    CHECK(rep.violations.size() == CongruenceReport::violation_cap);
}

TEST_CASE("checkers validate their inputs") {
    const auto& A = gamma_values();
    CHECK_THROWS_AS(check_lucas("gamma", A, 4, 100), DomainError);                        // composite p
    CHECK_THROWS_AS(check_lucas("gamma", A, 5, 2000), DomainError);                       // bound > values
    CHECK_THROWS_AS(check_gessel_lucas(find_sequence(specs(), "gamma"), A, 2, 100), DomainError);
    CHECK_THROWS_AS(check_supercongruence("gamma", A, 5, 0, 2, 100), DomainError);        // r < 1
    CHECK_THROWS_AS(check_supercongruence("gamma", A, 5, 1, 4, 100), DomainError);        // bad lambda
    CHECK_THROWS_AS(check_supercongruence("gamma", A, 3, 1, 3, 100), DomainError);        // lambda 3 needs p >= 5
    CHECK_THROWS_AS(check_dwork("gamma", A, 9, 1, 100), DomainError);
    CHECK_THROWS_AS(check_dwork("gamma", A, 3, 0, 100), DomainError);
    CHECK_THROWS_AS(build_p2_scheme(find_sequence(specs(), "gamma"), 2), DomainError);
    CHECK_THROWS_AS(check_summand(UCase::F, 6, 1), DomainError);
    CHECK_THROWS_AS(check_jacobsthal(6, 1, 1, 1, 1), DomainError);
    CHECK_THROWS_AS(check_jacobsthal(5, 0, 1, 1, 1), DomainError);
    CHECK_THROWS_AS(check_jacobsthal(5, 1, 1, 0, 1), DomainError);
}

TEST_CASE("mod p^2 refinement with the formal derivative") {
    for (const std::string label : {"gamma", "D", "alpha", "s18"}) {
        const auto& spec = find_sequence(specs(), label);
        const auto A = eval_sequence(spec, 300);
        for (const std::uint64_t p : {3, 5, 7}) {
            INFO(label << " p = " << p);
            CHECK(check_gessel_lucas(spec, A, p, 300).holds());
        }
    }
}

TEST_CASE("mod p^2 refinement detects corrupted values") {
    const auto& spec = find_sequence(specs(), "gamma");
    auto A = eval_sequence(spec, 100);
    A[50] += 5;  // invisible mod 5, visible mod 25; 50 = 5*10 + 0
    CHECK(check_lucas("gamma", A, 5, 100).holds());
    const auto rep = check_gessel_lucas(spec, A, 5, 100);
    REQUIRE_FALSE(rep.holds());
    CHECK(rep.violations[0].witness == std::vector<long long>{10, 0});
}

TEST_CASE("supercongruence sweeps") {
    const auto& A = gamma_values();
    CHECK(check_supercongruence("gamma", A, 5, 1, 3, 1000).holds());
    CHECK(check_supercongruence("gamma", A, 5, 2, 3, 1000).holds());
    CHECK(check_supercongruence("gamma", A, 3, 1, 2, 1000).holds());
    CHECK(check_supercongruence("gamma", A, 3, 2, 2, 1000).holds());
    const auto rep = check_supercongruence("gamma", A, 7, 1, 3, 1000);
    CHECK(rep.exponent == 3);
    CHECK(rep.holds());
}

TEST_CASE("lambda = 3 genuinely fails for a lambda = 2 sequence") {
    const auto& spec = find_sequence(specs(), "B");
    const auto A = eval_sequence(spec, 200);
    const auto rep = check_supercongruence("B", A, 5, 1, 3, 200);
    REQUIRE_FALSE(rep.holds());
    CHECK(rep.violations[0].witness == std::vector<long long>{1});
    CHECK(rep.violations[0].lhs == 78);  // B(5) = -297 mod 125
    CHECK(rep.violations[0].rhs == 3);   // B(1) = 3
    CHECK(check_supercongruence("B", A, 5, 1, 2, 200).holds());
}

TEST_CASE("documented mod 4 exceptions") {
    // A(2n) = A(n) mod 4 fails for exactly three of the fifteen sequences.
    for (const auto& spec : specs()) {
        const auto A = eval_sequence(spec, 100);
        const bool expected_violation = spec.label == "B" || spec.label == "delta" || spec.label == "eta";
        const auto rep = check_supercongruence(spec.label, A, 2, 1, 2, 100);
        INFO("label " << spec.label);
        CHECK(rep.holds() == !expected_violation);
    }
}

TEST_CASE("Jacobsthal single evaluations") {
    CHECK(check_jacobsthal(5, 1, 1, 2, 1));   // 252/2 = 126 = 1 mod 125
    CHECK(check_jacobsthal(7, 2, 1, 3, 2));
    CHECK(check_jacobsthal(3, 2, 2, 4, 2));
    CHECK(check_jacobsthal(2, 2, 1, 1, 1));   // ratio 3 = -1 mod 4, sign (-1)^{b(a-b)} = -1
    CHECK(check_jacobsthal(2, 3, 2, 3, 1));
    CHECK_THROWS_AS(check_jacobsthal(3, 1, 2, 1, 1), DegenerateBinomial);  // binom(3,9) = 0
}

TEST_CASE("Jacobsthal sweeps hold for every prime class") {
    for (const std::uint64_t p : {2, 3, 5, 7}) {
        const auto rep = jacobsthal_sweep(p, 2, 2, 6);
        INFO("p = " << p);
        CHECK(rep.holds());
        CHECK(rep.checked_count > 0);
    }
    // r < s reaches vanishing binomials; they are skipped and counted
    const auto rep = jacobsthal_sweep(3, 1, 2, 3);
    bool found = false;
    for (const auto& [k, v] : rep.range) found = found || (k == "degenerate" && v != "0");
    CHECK(found);
}

TEST_CASE("Cooper vanishing at p - 1") {
    for (const std::string label : {"s7", "s10", "s18"}) {
        const auto& spec = find_sequence(specs(), label);
        const auto rep = cooper_sweep(spec, 50);
        INFO("label " << label);
        CHECK(rep.holds());
        CHECK(rep.checked_count == 15);  // primes up to 50
        CHECK(check_cooper_vanishing(spec, 47));
    }
    CHECK_THROWS_AS(check_cooper_vanishing(find_sequence(specs(), "gamma"), 5), WrongFamily);
    CHECK_THROWS_AS(check_cooper_vanishing(find_sequence(specs(), "B"), 5), WrongFamily);
    // the d = 0 sequences genuinely do not vanish there
    CHECK(mod_reduce(gamma_values()[4], 5) != 0);
}

TEST_CASE("Dwork product congruence") {
    const auto& A = gamma_values();
    CHECK(check_dwork("gamma", A, 3, 1, 500).holds());
    CHECK(check_dwork("gamma", A, 5, 1, 500).holds());
    for (const std::string label : {"F", "delta"}) {
        const auto B = eval_sequence(find_sequence(specs(), label), 600);
        for (const std::uint64_t p : {3, 5}) {
            INFO(label << " p = " << p);
            CHECK(check_dwork(label, B, p, 2, 600).holds());
        }
    }
    auto corrupted = eval_sequence(find_sequence(specs(), "gamma"), 100);
    corrupted[9] += 1;
    CHECK_FALSE(check_dwork("gamma", corrupted, 3, 1, 100).holds());
}

TEST_CASE("Dwork at r = 1 agrees with Lucas on shared ranges") {
    for (const std::string label : {"gamma", "B", "s10"}) {
        const auto A = eval_sequence(find_sequence(specs(), label), 300);
        for (const std::uint64_t p : {2, 3, 5}) {
            INFO(label << " p = " << p);
            CHECK(check_dwork(label, A, p, 1, 300).holds() == check_lucas(label, A, p, 300).holds());
        }
    }
}

TEST_CASE("two-state scheme matrices") {
    const auto& gamma = find_sequence(specs(), "gamma");
    const auto scheme = build_p2_scheme(gamma, 5);
    REQUIRE(scheme.M.size() == 5);
    // M(0) encodes A(pn) = A(n) and pn A(pn) = p n A(n) mod p^2
    CHECK(scheme.M[0][0][0] == 1);
    CHECK(scheme.M[0][0][1] == 0);
    CHECK(scheme.M[0][1][0] == 0);
    CHECK(scheme.M[0][1][1] == 5);
    // A(1) = 5, A'(1) = 12: first row (5, 60) = (5, 10) mod 25,
    // second row (5, 5 * 17) = (5, 10) mod 25
    CHECK(scheme.M[1][0][0] == 5);
    CHECK(scheme.M[1][0][1] == 10);
    CHECK(scheme.M[1][1][0] == 5);
    CHECK(scheme.M[1][1][1] == 10);
}

TEST_CASE("scheme verification sweeps") {
    for (const std::string label : {"gamma", "D", "zeta"}) {
        const auto& spec = find_sequence(specs(), label);
        const auto A = eval_sequence(spec, 400);
        for (const std::uint64_t p : {3, 5, 7}) {
            const auto scheme = build_p2_scheme(spec, p);
            INFO(label << " p = " << p);
            CHECK(verify_scheme(scheme, A, 400).holds());
            CHECK(scheme_reduces_to_lucas(scheme, A));
        }
    }
}

TEST_CASE("scheme verification catches corrupted values") {
    const auto& spec = find_sequence(specs(), "gamma");
    const auto scheme = build_p2_scheme(spec, 3);
    auto A = eval_sequence(spec, 20);
    A[11] += 1;  // 11 = 3*3 + 2
    const auto rep = verify_scheme(scheme, A, 20);
    REQUIRE(rep.violation_count == 2);  // both state components move
    CHECK(rep.violations[0].witness == std::vector<long long>{3, 2, 0});
    CHECK(rep.violations[1].witness == std::vector<long long>{3, 2, 1});
}

TEST_CASE("per-summand congruence at desk scale") {
    const auto f3 = check_summand(UCase::F, 3, 1);
    CHECK(f3.holds());
    CHECK(f3.checked_count == 1975);  // |U_F(3)|
    const auto d3 = check_summand(UCase::delta, 3, 1);
    CHECK(d3.holds());
    CHECK(d3.checked_count == 138);   // |U_delta(3)|
    const auto d5 = check_summand(UCase::delta, 5, 1);
    CHECK(d5.holds());
    CHECK(d5.checked_count == 819);   // |U_delta(5)|
}

TEST_CASE("reports serialize deterministically") {
    auto A = gamma_values();
    A[7] += 1;
    const auto rep = check_lucas("gamma", A, 5, 30);
    const auto j = report_to_json(rep);
    CHECK(j["kind"] == "lucas");
    CHECK(j["label"] == "gamma");
    CHECK(j["p"] == 5);
    CHECK(j["exponent"] == 1);
    CHECK(j["range"]["bound"] == "30");
    CHECK(j["violations"].size() == 2);
    CHECK(j["violations"][0]["witness"] == nlohmann::ordered_json::array({1, 2}));
    CHECK(j["violations"][0]["lhs"].is_string());
    CHECK(j["verdict"] == "violations found");
    CHECK(report_to_json(rep).dump() == j.dump());

    const auto clean = report_to_json(check_lucas("gamma", gamma_values(), 5, 30));
    CHECK(clean["verdict"] == "holds on range");
    CHECK(clean["violations"].empty());

    const std::string table = reports_to_table({rep});
    CHECK(table.find("violations found") != std::string::npos);
    CHECK(table.find("lucas") != std::string::npos);
}
