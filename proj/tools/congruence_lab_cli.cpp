// Command-line front end: compute sequence values and formal derivatives,
// run congruence verification sweeps, cross-check independent representations,
// and emit deterministic JSON or table reports.
//
// Exit codes: 0 success (or expected failure observed under --expect-fail),
// 1 violations found (or missing under --expect-fail), 2 configuration error.

#include <congruence_lab/congruence_lab.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace congruence_lab;
using nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

std::string rational_str(const ExactRational& q) {
    const ExactInt num = boost::multiprecision::numerator(q);
    const ExactInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + out_path);
    f << text;
}

std::string reports_to_text(const std::vector<CongruenceReport>& reports, const std::string& format) {
    if (format == "table") return reports_to_table(reports);
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return arr.dump(2) + "\n";
}

int finish_verify(const std::vector<CongruenceReport>& reports, const std::string& format,
                  const std::string& out_path, bool expect_fail) {
    emit(reports_to_text(reports, format), out_path);
    bool any_violation = false;
    for (const auto& r : reports) any_violation = any_violation || !r.holds();
    const bool ok = expect_fail ? any_violation : !any_violation;
    return ok ? 0 : 1;
}

std::vector<std::uint64_t> checked_primes(std::vector<std::uint64_t> primes) {
    if (primes.empty()) throw ConfigError("at least one prime is required (--p)");
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (const std::uint64_t p : primes) {
        if (!is_prime(p)) throw ConfigError("not a prime: " + std::to_string(p));
    }
    return primes;
}

/// Registry order, filtered to the requested labels (empty or --all = all).
std::vector<SequenceSpec> select_specs(const std::vector<SequenceSpec>& specs,
                                       const std::vector<std::string>& labels, bool all) {
    if (all || labels.empty()) return specs;
    std::vector<SequenceSpec> out;
    for (const auto& label : labels) out.push_back(find_sequence(specs, label));
    return out;
}

ExactInt closed_form_value(ClosedForm form, long long n) {
    switch (form) {
        case ClosedForm::apery_gamma: return apery_sum(n);
        case ClosedForm::zagier_F: return zagier_F_sum(n);
        case ClosedForm::az_delta: return az_delta_sum(n);
        case ClosedForm::zagier_D: return zagier_D_sum(n);
    }
    throw ConfigError("unknown closed form");
}

const char* closed_form_name(ClosedForm form) {
    switch (form) {
        case ClosedForm::apery_gamma: return "binomial_sum_apery";
        case ClosedForm::zagier_F: return "binomial_sum_zagier_F";
        case ClosedForm::az_delta: return "binomial_sum_az_delta";
        case ClosedForm::zagier_D: return "binomial_sum_zagier_D";
    }
    return "unknown";
}

int run_compute(const std::string& registry_path, const std::string& label, long long n,
                bool derivative, const std::string& format, const std::string& out_path) {
    if (n < 0) throw ConfigError("--n must be >= 0");
    const auto specs = load_registry(registry_path);
    const SequenceSpec& spec = find_sequence(specs, label);
    std::vector<std::string> values;
    if (derivative) {
        for (const auto& q : eval_derivative(spec, n)) values.push_back(rational_str(q));
    } else {
        for (const auto& a : eval_sequence(spec, n)) values.push_back(a.str());
    }
    if (format == "table") {
        std::string text;
        for (const auto& v : values) text += v + "\n";
        emit(text, out_path);
    } else {
        ordered_json j;
        j["label"] = spec.label;
        j["derivative"] = derivative;
        j["n"] = n;
        j["values"] = values;
        emit(j.dump(2) + "\n", out_path);
    }
    return 0;
}

int run_crosscheck(const std::string& registry_path, const std::vector<std::string>& labels, bool all,
                   long long bound, const std::string& format, const std::string& out_path) {
    if (bound < 1) throw ConfigError("--bound must be >= 1");
    const auto specs = select_specs(load_registry(registry_path), labels, all);
    const long long ct_bound = std::min<long long>(bound, 12);
    const long long usum_bound = std::min<long long>(bound, 6);

    ordered_json arr = ordered_json::array();
    std::string table = "label    representation           n_max agree\n";
    bool all_agree = true;
    for (const auto& spec : specs) {
        const std::vector<ExactInt> A = eval_sequence(spec, bound);
        ordered_json checks = ordered_json::array();
        auto run_check = [&](const std::string& name, long long n_max, auto&& value_at) {
            ordered_json c;
            c["representation"] = name;
            c["n_max"] = n_max;
            bool agree = true;
            for (long long k = 0; k <= n_max; ++k) {
                const ExactInt other = value_at(k);
                if (other != A[static_cast<std::size_t>(k)]) {
                    agree = false;
                    all_agree = false;
                    ordered_json d;
                    d["n"] = k;
                    d["recurrence"] = A[static_cast<std::size_t>(k)].str();
                    d["other"] = other.str();
                    c["first_disagreement"] = d;
                    break;
                }
            }
            c["agree"] = agree;
            checks.push_back(c);
            auto pad = [](std::string s, std::size_t w) {
                if (s.size() < w) s.append(w - s.size(), ' ');
                return s + " ";
            };
            table += pad(spec.label, 8) + pad(name, 24) + pad(std::to_string(n_max), 5) +
                     (agree ? "yes" : "no") + "\n";
        };
        if (spec.closed_form) {
            run_check(closed_form_name(*spec.closed_form), bound,
                      [&](long long k) { return closed_form_value(*spec.closed_form, k); });
        }
        if (spec.ct_poly) {
            const LaurentPoly& P = *spec.ct_poly == CtPoly::lambda_F ? lambda_F() : lambda_delta();
            run_check("constant_term", ct_bound,
                      [&](long long k) { return constant_term(P, k, nullptr, true); });
            const UCase ucase = *spec.ct_poly == CtPoly::lambda_F ? UCase::F : UCase::delta;
            run_check("multiple_sum_U", usum_bound, [&](long long k) { return gorodetsky_sum(ucase, k); });
        }
        ordered_json entry;
        entry["label"] = spec.label;
        entry["checks"] = checks;
        arr.push_back(entry);
    }
    emit(format == "table" ? table : arr.dump(2) + "\n", out_path);
    return all_agree ? 0 : 1;
}

int run_report(const std::string& registry_path, const std::vector<std::string>& labels, bool all,
               const std::string& format, const std::string& out_path) {
    const auto specs = select_specs(load_registry(registry_path), labels, all);
    std::vector<CongruenceReport> reports;
    for (const auto& spec : specs) {
        const long long bound = 300;
        const std::vector<ExactInt> A = eval_sequence(spec, bound);
        for (const std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) reports.push_back(check_lucas(spec.label, A, p, bound));
        for (const std::uint64_t p : {3ull, 5ull, 7ull}) reports.push_back(check_gessel_lucas(spec, A, p, bound));
        for (const std::uint64_t p : {3ull, 5ull, 7ull}) {
            const int lambda = p >= 5 ? spec.lambda_exponent : 2;
            reports.push_back(check_supercongruence(spec.label, A, p, 1, lambda, bound));
        }
        for (const std::uint64_t p : {3ull, 5ull}) {
            reports.push_back(verify_scheme(build_p2_scheme(spec, p), A, 200));
            reports.push_back(check_dwork(spec.label, A, p, 1, 200));
        }
        if (spec.rec.family == Family::three_term_cubic && spec.rec.d != 0) {
            reports.push_back(cooper_sweep(spec, 50));
        }
    }
    for (const std::uint64_t p : {2ull, 3ull, 5ull}) reports.push_back(jacobsthal_sweep(p, 2, 2, 5));
    reports.push_back(check_summand(UCase::F, 3, 1));
    reports.push_back(check_summand(UCase::delta, 3, 1));
    emit(reports_to_text(reports, format), out_path);
    bool any_violation = false;
    for (const auto& r : reports) any_violation = any_violation || !r.holds();
    return any_violation ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sporadic sequence congruence laboratory"};
    app.require_subcommand(1);

    std::string registry_path;
    std::vector<std::string> labels;
    bool all = false;
    std::vector<std::uint64_t> primes;
    long long bound = 500;
    long long cooper_bound = 50;
    long long cross_bound = 50;
    long long compute_n = 10;
    long long jac_n = 6;
    long long summand_n = 2;
    int r = 1;
    int lambda = 0;  // 0 = per-sequence default
    bool derivative = false;
    bool expect_fail = false;
    std::string format = "json";
    std::string out_path;
    int rc = 0;

    const auto format_check = CLI::IsMember({"json", "table"});
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--registry", registry_path, "Registry JSON path (overrides CONGRUENCE_LAB_REGISTRY)");
        cmd->add_option("--format", format, "Output format")->check(format_check);
        cmd->add_option("--out", out_path, "Write output to this file instead of stdout");
    };
    auto add_selection = [&](CLI::App* cmd) {
        cmd->add_option("--seq", labels, "Sequence label(s)")->delimiter(',');
        cmd->add_flag("--all", all, "All registry sequences");
    };
    auto add_sweep = [&](CLI::App* cmd) {
        cmd->add_option("--p", primes, "Prime(s), comma separated")->delimiter(',');
        cmd->add_option("--bound", bound, "Sweep bound")->capture_default_str();
        cmd->add_flag("--expect-fail", expect_fail, "Succeed iff a violation is found");
    };

    auto* compute = app.add_subcommand("compute", "Print A(0..N) or A'(0..N) for one sequence");
    {
        compute->add_option("--seq", labels, "Sequence label")->required();
        compute->add_option("--n", compute_n, "Largest index N")->capture_default_str();
        compute->add_flag("--derivative", derivative, "Print the formal derivative instead");
        add_common(compute);
        compute->callback([&] {
            if (labels.size() != 1) throw ConfigError("compute takes exactly one --seq label");
            rc = run_compute(registry_path, labels.front(), compute_n, derivative, format, out_path);
        });
    }

    auto* verify = app.add_subcommand("verify", "Run a congruence verification sweep");
    verify->require_subcommand(1);

    auto* lucas = verify->add_subcommand("lucas", "A(pn+k) = A(k)A(n) mod p, plus the digit-product form");
    add_selection(lucas);
    add_sweep(lucas);
    add_common(lucas);
    lucas->callback([&] {
        const auto specs = select_specs(load_registry(registry_path), labels, all);
        const auto ps = checked_primes(primes);
        if (bound < 1) throw ConfigError("--bound must be >= 1");
        std::vector<CongruenceReport> reports;
        for (const auto& spec : specs) {
            const auto A = eval_sequence(spec, bound);
            for (const auto p : ps) reports.push_back(check_lucas(spec.label, A, p, bound));
        }
        rc = finish_verify(reports, format, out_path, expect_fail);
    });

    auto* gl = verify->add_subcommand("gessel-lucas", "A(pn+k) = A(k)A(n) + pnA'(k)A(n) mod p^2");
    add_selection(gl);
    add_sweep(gl);
    add_common(gl);
    gl->callback([&] {
        const auto specs = select_specs(load_registry(registry_path), labels, all);
        const auto ps = checked_primes(primes);
        if (bound < 1) throw ConfigError("--bound must be >= 1");
        std::vector<CongruenceReport> reports;
        for (const auto& spec : specs) {
            const auto A = eval_sequence(spec, bound);
            for (const auto p : ps) reports.push_back(check_gessel_lucas(spec, A, p, bound));
        }
        rc = finish_verify(reports, format, out_path, expect_fail);
    });

    auto* super = verify->add_subcommand("super", "A(p^r n) = A(p^(r-1) n) mod p^(lambda r)");
    add_selection(super);
    add_sweep(super);
    super->add_option("--r", r, "Power of p scaling the index")->capture_default_str();
    super->add_option("--lambda", lambda, "Modulus exponent per step (default: registry value, 2 when p < 5)");
    add_common(super);
    super->callback([&] {
        const auto specs = select_specs(load_registry(registry_path), labels, all);
        const auto ps = checked_primes(primes);
        if (bound < 1) throw ConfigError("--bound must be >= 1");
        std::vector<CongruenceReport> reports;
        for (const auto& spec : specs) {
            const auto A = eval_sequence(spec, bound);
            for (const auto p : ps) {
                const int lam = lambda != 0 ? lambda : (p >= 5 ? spec.lambda_exponent : 2);
                reports.push_back(check_supercongruence(spec.label, A, p, r, lam, bound));
            }
        }
        rc = finish_verify(reports, format, out_path, expect_fail);
    });

    auto* jac = verify->add_subcommand("jacobsthal", "Binomial ratio congruence, exhaustive over r, s, n, k");
    jac->add_option("--p", primes, "Prime(s), comma separated")->delimiter(',');
    jac->add_option("--r", r, "Max value for both r and s")->capture_default_str();
    jac->add_option("--n", jac_n, "Max n (k runs over 1..n)")->capture_default_str();
    jac->add_flag("--expect-fail", expect_fail, "Succeed iff a violation is found");
    add_common(jac);
    jac->callback([&] {
        const auto ps = checked_primes(primes);
        if (r < 1 || jac_n < 1) throw ConfigError("--r and --n must be >= 1");
        std::vector<CongruenceReport> reports;
        for (const auto p : ps) reports.push_back(jacobsthal_sweep(p, r, r, jac_n));
        rc = finish_verify(reports, format, out_path, expect_fail);
    });

    auto* cooper = verify->add_subcommand("cooper", "A(p-1) = 0 mod p for the d != 0 sequences");
    add_selection(cooper);
    cooper->add_option("--bound", cooper_bound, "Check all primes p <= bound")->capture_default_str();
    cooper->add_flag("--expect-fail", expect_fail, "Succeed iff a violation is found");
    add_common(cooper);
    cooper->callback([&] {
        if (cooper_bound < 2) throw ConfigError("--bound must be >= 2");
        auto specs = select_specs(load_registry(registry_path), labels, all);
        if (labels.empty()) {
            std::erase_if(specs, [](const SequenceSpec& s) {
                return s.rec.family != Family::three_term_cubic || s.rec.d == 0;
            });
        }
        std::vector<CongruenceReport> reports;
        for (const auto& spec : specs) reports.push_back(cooper_sweep(spec, static_cast<std::uint64_t>(cooper_bound)));
        rc = finish_verify(reports, format, out_path, expect_fail);
    });

    auto* dwork = verify->add_subcommand("dwork", "A(p^r m+n)A(floor(n/p)) = A(p^(r-1) m+floor(n/p))A(n) mod p^r");
    add_selection(dwork);
    add_sweep(dwork);
    dwork->add_option("--r", r, "Modulus exponent")->capture_default_str();
    add_common(dwork);
    dwork->callback([&] {
        const auto specs = select_specs(load_registry(registry_path), labels, all);
        const auto ps = checked_primes(primes);
        if (bound < 1) throw ConfigError("--bound must be >= 1");
        std::vector<CongruenceReport> reports;
        for (const auto& spec : specs) {
            const auto A = eval_sequence(spec, bound);
            for (const auto p : ps) reports.push_back(check_dwork(spec.label, A, p, r, bound));
        }
        rc = finish_verify(reports, format, out_path, expect_fail);
    });

    auto* scheme = verify->add_subcommand("scheme", "Two-state digit scheme v(pn+k) = M(k) v(n) mod p^2");
    add_selection(scheme);
    add_sweep(scheme);
    add_common(scheme);
    scheme->callback([&] {
        const auto specs = select_specs(load_registry(registry_path), labels, all);
        const auto ps = checked_primes(primes);
        if (bound < 1) throw ConfigError("--bound must be >= 1");
        std::vector<CongruenceReport> reports;
        for (const auto& spec : specs) {
            const auto A = eval_sequence(spec, bound);
            for (const auto p : ps) {
                const PSchemeP2 sch = build_p2_scheme(spec, p);
                CongruenceReport rep = verify_scheme(sch, A, bound);
                rep.note_range("lucas_reduction", scheme_reduces_to_lucas(sch, A) ? "consistent" : "inconsistent");
                reports.push_back(std::move(rep));
            }
        }
        rc = finish_verify(reports, format, out_path, expect_fail);
    });

    auto* summand = verify->add_subcommand("summand", "B(k) = B(k/p) mod p^2 for every k in U(pn)");
    summand->add_option("--seq", labels, "Case label: F, delta")->delimiter(',');
    summand->add_flag("--all", all, "Both cases");
    summand->add_option("--p", primes, "Prime(s), comma separated")->delimiter(',');
    summand->add_option("--n", summand_n, "Check n = 1..N")->capture_default_str();
    summand->add_flag("--expect-fail", expect_fail, "Succeed iff a violation is found");
    add_common(summand);
    summand->callback([&] {
        const auto ps = checked_primes(primes);
        if (summand_n < 1) throw ConfigError("--n must be >= 1");
        std::vector<UCase> cases;
        if (all || labels.empty()) {
            cases = {UCase::F, UCase::delta};
        } else {
            for (const auto& label : labels) {
                if (label == "F") cases.push_back(UCase::F);
                else if (label == "delta") cases.push_back(UCase::delta);
                else throw ConfigError("no multiple-sum representation for label: " + label);
            }
        }
        std::vector<CongruenceReport> reports;
        for (const auto ucase : cases)
            for (const auto p : ps)
                for (long long n = 1; n <= summand_n; ++n) reports.push_back(check_summand(ucase, p, n));
        rc = finish_verify(reports, format, out_path, expect_fail);
    });

    auto* crosscheck = app.add_subcommand("crosscheck", "Compare all representations of each sequence");
    add_selection(crosscheck);
    crosscheck->add_option("--bound", cross_bound,
                           "Recurrence/closed-form bound (constant terms capped at 12, multiple sums at 6)")
        ->capture_default_str();
    add_common(crosscheck);
    crosscheck->callback([&] { rc = run_crosscheck(registry_path, labels, all, cross_bound, format, out_path); });

    auto* report = app.add_subcommand("report", "Run the standard verification battery");
    add_selection(report);
    add_common(report);
    report->callback([&] { rc = run_report(registry_path, labels, all, format, out_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
