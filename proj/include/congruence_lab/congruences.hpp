#pragma once

/**
 * Congruence checkers over precomputed value lists: Lucas (pair and digit
 * forms), the mod-p^2 refinement with the formal derivative, supercongruences
 * A(p^r n) = A(p^{r-1} n) mod p^{lambda r}, the Jacobsthal binomial-ratio
 * congruence, Cooper vanishing A(p-1) = 0 mod p for the d != 0 sequences,
 * Dwork's product congruence, the per-summand congruence over U(p n), and
 * the explicit two-state scheme mod p^2 with its verifier.
 *
 * Checkers never prove anything; they sweep a finite range exhaustively and
 * report violations (capped per report) with witnesses.
 */

#include "binomial_sums.hpp"
#include "exact.hpp"
#include "sequences.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace congruence_lab {

struct DegenerateBinomial : std::domain_error {
    explicit DegenerateBinomial(const std::string& what) : std::domain_error(what) {}
};

struct WrongFamily : std::invalid_argument {
    explicit WrongFamily(const std::string& what) : std::invalid_argument(what) {}
};

struct Violation {
    std::vector<long long> witness;
    ExactInt lhs, rhs;
};

struct CongruenceReport {
    static constexpr std::size_t violation_cap = 100;

    std::string kind;
    std::string label;  // empty when the check is not tied to a sequence
    std::uint64_t p = 0;
    int exponent = 0;   // modulus exponent actually used
    std::vector<std::pair<std::string, std::string>> range;
    std::vector<Violation> violations;       // first violation_cap witnesses
    std::uint64_t violation_count = 0;       // uncapped
    std::uint64_t checked_count = 0;

    bool holds() const { return violation_count == 0; }

    void add_violation(std::vector<long long> witness, ExactInt lhs, ExactInt rhs) {
        ++violation_count;
        if (violations.size() < violation_cap) {
            violations.push_back({std::move(witness), std::move(lhs), std::move(rhs)});
        }
    }

    void note_range(const std::string& key, const std::string& value) { range.emplace_back(key, value); }
};

/**
 * A(pn+k) = A(k) A(n) mod p for all n >= 1, 0 <= k < p with pn+k <= bound,
 * plus the base-p digit product form A(m) = prod_i A(m_i) mod p for m <= bound.
 */
inline CongruenceReport check_lucas(const std::string& label, const std::vector<ExactInt>& A,
                                    std::uint64_t p, long long bound) {
    if (!is_prime(p)) throw DomainError("check_lucas: p must be prime");
    if (bound >= static_cast<long long>(A.size())) throw DomainError("check_lucas: values shorter than bound");
    CongruenceReport rep;
    rep.kind = "lucas";
    rep.label = label;
    rep.p = p;
    rep.exponent = 1;
    rep.note_range("bound", std::to_string(bound));

    const long long pp = static_cast<long long>(p);
    std::uint64_t pair_checks = 0;
    for (long long n = 1; pp * n <= bound; ++n) {
        for (long long k = 0; k < pp && pp * n + k <= bound; ++k) {
            ++pair_checks;
            const ExactInt lhs = mod_reduce(A[static_cast<std::size_t>(pp * n + k)], pp);
            const ExactInt rhs = mod_reduce(A[static_cast<std::size_t>(k)] * A[static_cast<std::size_t>(n)], pp);
            if (lhs != rhs) rep.add_violation({n, k}, lhs, rhs);
        }
    }
    for (long long m = 0; m <= bound; ++m) {
        ExactInt prod = 1;
        for (long long rest = m; rest > 0; rest /= pp) {
            prod *= A[static_cast<std::size_t>(rest % pp)];
        }
        const ExactInt lhs = mod_reduce(A[static_cast<std::size_t>(m)], pp);
        const ExactInt rhs = mod_reduce(prod, pp);
        if (lhs != rhs) rep.add_violation({m}, lhs, rhs);
    }
    rep.checked_count = pair_checks + static_cast<std::uint64_t>(bound + 1);
    rep.note_range("pair_checks", std::to_string(pair_checks));
    rep.note_range("digit_checks", std::to_string(bound + 1));
    if (pair_checks == 0) rep.note_range("empty_range", "true");
    return rep;
}

/**
 * A(pn+k) = A(k) A(n) + p n A'(k) A(n) mod p^2 for n >= 1, 0 <= k < p,
 * pn+k <= bound.  Requires the derivative values A'(k), k < p, to be
 * p-integral; a pole propagates as NotPIntegral.
 */
inline CongruenceReport check_gessel_lucas(const SequenceSpec& spec, const std::vector<ExactInt>& A,
                                           std::uint64_t p, long long bound) {
    if (!is_prime(p) || p < 3) throw DomainError("check_gessel_lucas: p must be an odd prime");
    if (bound >= static_cast<long long>(A.size())) throw DomainError("check_gessel_lucas: values shorter than bound");
    CongruenceReport rep;
    rep.kind = "gessel_lucas";
    rep.label = spec.label;
    rep.p = p;
    rep.exponent = 2;
    rep.note_range("bound", std::to_string(bound));

    const long long pp = static_cast<long long>(p);
    const ExactInt p2 = ExactInt(p) * p;
    const PrimePower mod_p2(p, 2);
    const std::vector<ExactRational> D = eval_derivative(spec, pp - 1);
    std::vector<ExactInt> dk(static_cast<std::size_t>(pp));
    for (long long k = 0; k < pp; ++k) dk[static_cast<std::size_t>(k)] = mod_reduce_rational(D[static_cast<std::size_t>(k)], mod_p2);

    for (long long n = 1; pp * n <= bound; ++n) {
        for (long long k = 0; k < pp && pp * n + k <= bound; ++k) {
            ++rep.checked_count;
            const ExactInt& An = A[static_cast<std::size_t>(n)];
            const ExactInt lhs = mod_reduce(A[static_cast<std::size_t>(pp * n + k)], p2);
            const ExactInt rhs =
                mod_reduce(A[static_cast<std::size_t>(k)] * An + pp * n * dk[static_cast<std::size_t>(k)] * An, p2);
            if (lhs != rhs) rep.add_violation({n, k}, lhs, rhs);
        }
    }
    if (rep.checked_count == 0) rep.note_range("empty_range", "true");
    return rep;
}

/**
 * A(p^r n) = A(p^{r-1} n) mod p^{lambda r} for all n >= 1 with p^r n <= bound.
 * lambda = 3 requires p >= 5; lambda = 2 runs at any prime (p = 2 is the
 * documented expected-failure probe, not a theorem).
 */
inline CongruenceReport check_supercongruence(const std::string& label, const std::vector<ExactInt>& A,
                                              std::uint64_t p, int r, int lambda, long long bound) {
    if (!is_prime(p)) throw DomainError("check_supercongruence: p must be prime");
    if (r < 1) throw DomainError("check_supercongruence: r must be >= 1");
    if (lambda != 2 && lambda != 3) throw DomainError("check_supercongruence: lambda must be 2 or 3");
    if (lambda == 3 && p < 5) throw DomainError("check_supercongruence: lambda = 3 requires p >= 5");
    if (bound >= static_cast<long long>(A.size())) throw DomainError("check_supercongruence: values shorter than bound");
    CongruenceReport rep;
    rep.kind = "supercongruence";
    rep.label = label;
    rep.p = p;
    rep.exponent = lambda * r;
    rep.note_range("bound", std::to_string(bound));
    rep.note_range("r", std::to_string(r));
    rep.note_range("lambda", std::to_string(lambda));

    ExactInt mod = 1;
    for (int i = 0; i < lambda * r; ++i) mod *= p;
    long long pr = 1, prm1 = 1;
    for (int i = 0; i < r; ++i) pr *= static_cast<long long>(p);
    for (int i = 0; i < r - 1; ++i) prm1 *= static_cast<long long>(p);

    for (long long n = 1; pr * n <= bound; ++n) {
        ++rep.checked_count;
        const ExactInt lhs = mod_reduce(A[static_cast<std::size_t>(pr * n)], mod);
        const ExactInt rhs = mod_reduce(A[static_cast<std::size_t>(prm1 * n)], mod);
        if (lhs != rhs) rep.add_violation({n}, lhs, rhs);
    }
    if (rep.checked_count == 0) rep.note_range("empty_range", "true");
    return rep;
}

/**
 * Jacobsthal's binomial-ratio congruence for u = binom(p^r n, p^s k) against
 * v = binom(p^{r-1} n, p^{s-1} k), evaluated as a p-adic unit comparison:
 * equal valuations and unit(u)/unit(v) congruent to the expected residue
 * mod p^e, where e = r+s+min(r,s) for p >= 5, e-1 for p = 3, e-2 for p = 2.
 * For p = 2 the classical congruence carries the sign (-1)^{b(a-b)} with
 * a = 2^{r-1} n, b = 2^{s-1} k (the plain ratio is -1 mod 4 whenever that
 * exponent is odd, e.g. binom(4,2)/binom(2,1) = 3); odd primes expect +1.
 * Throws DegenerateBinomial when the binomials vanish (u = 0 iff v = 0).
 */
inline bool check_jacobsthal(std::uint64_t p, int r, int s, long long n, long long k) {
    if (!is_prime(p)) throw DomainError("check_jacobsthal: p must be prime");
    if (r < 1 || s < 1) throw DomainError("check_jacobsthal: r and s must be >= 1");
    if (n < 1 || k < 1) throw DomainError("check_jacobsthal: n and k must be >= 1");
    long long pr = 1, ps = 1;
    for (int i = 0; i < r; ++i) pr *= static_cast<long long>(p);
    for (int i = 0; i < s; ++i) ps *= static_cast<long long>(p);

    const ExactInt u = binomial(pr * n, ps * k);
    const ExactInt v = binomial((pr / static_cast<long long>(p)) * n, (ps / static_cast<long long>(p)) * k);
    if (u == 0 || v == 0) {
        throw DegenerateBinomial("check_jacobsthal: vanishing binomial at p^s k > p^r n");
    }

    int e = r + s + std::min(r, s);
    if (p == 3) e -= 1;
    if (p == 2) e -= 2;
    if (e <= 0) return pval(u, p) == pval(v, p);

    const unsigned nu = pval(u, p);
    if (nu != pval(v, p)) return false;

    ExactInt mod = 1;
    for (int i = 0; i < e; ++i) mod *= p;
    ExactInt uu = u, vv = v;
    for (unsigned i = 0; i < nu; ++i) {
        uu /= p;
        vv /= p;
    }
    ExactInt expected = 1;
    if (p == 2) {
        const long long a = (pr / 2) * n;
        const long long b = (ps / 2) * k;
        if (((b % 2) * ((a - b) % 2)) % 2 != 0) expected = mod - 1;
    }
    return mod_reduce(uu * mod_inverse(vv, mod), mod) == expected;
}

/// Exhaustive Jacobsthal sweep over r,s in [1,rmax] x [1,smax], 1 <= k <= n <= nmax.
inline CongruenceReport jacobsthal_sweep(std::uint64_t p, int rmax, int smax, long long nmax) {
    CongruenceReport rep;
    rep.kind = "jacobsthal";
    rep.p = p;
    rep.exponent = 0;  // varies per (r,s); recorded in the range notes
    rep.note_range("r_max", std::to_string(rmax));
    rep.note_range("s_max", std::to_string(smax));
    rep.note_range("n_max", std::to_string(nmax));
    std::uint64_t degenerate = 0;
    for (int r = 1; r <= rmax; ++r)
        for (int s = 1; s <= smax; ++s)
            for (long long n = 1; n <= nmax; ++n)
                for (long long k = 1; k <= n; ++k) {
                    try {
                        ++rep.checked_count;
                        if (!check_jacobsthal(p, r, s, n, k)) {
                            rep.add_violation({r, s, n, k}, 0, 1);
                        }
                    } catch (const DegenerateBinomial&) {
                        --rep.checked_count;
                        ++degenerate;
                    }
                }
    rep.note_range("degenerate", std::to_string(degenerate));
    return rep;
}

/// A(p-1) = 0 mod p; defined only for the d != 0 (Cooper) sequences.
inline bool check_cooper_vanishing(const SequenceSpec& spec, std::uint64_t p) {
    if (spec.rec.family != Family::three_term_cubic || spec.rec.d == 0) {
        throw WrongFamily("check_cooper_vanishing: requires a three-term cubic with d != 0");
    }
    if (!is_prime(p)) throw DomainError("check_cooper_vanishing: p must be prime");
    const std::vector<ExactInt> A = eval_sequence(spec, static_cast<long long>(p) - 1);
    return mod_reduce(A.back(), p) == 0;
}

/// Cooper vanishing swept over every prime p <= pmax.
inline CongruenceReport cooper_sweep(const SequenceSpec& spec, std::uint64_t pmax) {
    CongruenceReport rep;
    rep.kind = "cooper_vanishing";
    rep.label = spec.label;
    rep.exponent = 1;
    rep.note_range("p_max", std::to_string(pmax));
    const std::vector<ExactInt> A = eval_sequence(spec, static_cast<long long>(pmax));
    for (std::uint64_t p = 2; p <= pmax; ++p) {
        if (!is_prime(p)) continue;
        if (spec.rec.family != Family::three_term_cubic || spec.rec.d == 0) {
            throw WrongFamily("cooper_sweep: requires a three-term cubic with d != 0");
        }
        ++rep.checked_count;
        const ExactInt lhs = mod_reduce(A[static_cast<std::size_t>(p - 1)], p);
        if (lhs != 0) rep.add_violation({static_cast<long long>(p)}, lhs, 0);
    }
    return rep;
}

/**
 * Dwork's product congruence
 *   A(p^r m + n) A(floor(n/p)) = A(p^{r-1} m + floor(n/p)) A(n) mod p^r
 * for all m >= 0, n >= 0 with p^r m + n <= bound.
 */
inline CongruenceReport check_dwork(const std::string& label, const std::vector<ExactInt>& A,
                                    std::uint64_t p, int r, long long bound) {
    if (!is_prime(p)) throw DomainError("check_dwork: p must be prime");
    if (r < 1) throw DomainError("check_dwork: r must be >= 1");
    if (bound >= static_cast<long long>(A.size())) throw DomainError("check_dwork: values shorter than bound");
    CongruenceReport rep;
    rep.kind = "dwork";
    rep.label = label;
    rep.p = p;
    rep.exponent = r;
    rep.note_range("bound", std::to_string(bound));
    rep.note_range("r", std::to_string(r));

    const long long pp = static_cast<long long>(p);
    long long pr = 1;
    for (int i = 0; i < r; ++i) pr *= pp;
    ExactInt mod = pr;

    for (long long m = 0; pr * m <= bound; ++m) {
        for (long long n = 0; pr * m + n <= bound; ++n) {
            ++rep.checked_count;
            const long long nf = n / pp;
            const ExactInt lhs = mod_reduce(A[static_cast<std::size_t>(pr * m + n)] * A[static_cast<std::size_t>(nf)], mod);
            const ExactInt rhs =
                mod_reduce(A[static_cast<std::size_t>((pr / pp) * m + nf)] * A[static_cast<std::size_t>(n)], mod);
            if (lhs != rhs) rep.add_violation({m, n}, lhs, rhs);
        }
    }
    return rep;
}

/**
 * Two-state scheme mod p^2 on the state v(n) = (A(n), n A(n)):
 *   v(pn+k) = M(k) v(n) mod p^2,
 *   M(k) = [[A(k), p A'(k)], [k A(k), p (A(k) + k A'(k))]].
 * The second row is (pn+k) times the first-row congruence expanded mod p^2,
 * which forces the factor p in M_22; consequently M(0) = [[1,0],[0,p]] and
 * every M(k) reduces mod p to the Lucas matrix carried in the first column.
 */
struct PSchemeP2 {
    std::uint64_t p = 0;
    std::string label;
    std::vector<std::array<std::array<long long, 2>, 2>> M;  // M[k], entries in [0, p^2)
};

inline PSchemeP2 build_p2_scheme(const SequenceSpec& spec, std::uint64_t p) {
    if (!is_prime(p) || p < 3) throw DomainError("build_p2_scheme: p must be an odd prime");
    const long long pp = static_cast<long long>(p);
    const long long p2 = pp * pp;
    const PrimePower mod_p2(p, 2);
    const std::vector<ExactInt> A = eval_sequence(spec, pp - 1);
    const std::vector<ExactRational> D = eval_derivative(spec, pp - 1);

    PSchemeP2 scheme;
    scheme.p = p;
    scheme.label = spec.label;
    scheme.M.resize(static_cast<std::size_t>(p));
    for (long long k = 0; k < pp; ++k) {
        const long long ak = static_cast<long long>(mod_reduce(A[static_cast<std::size_t>(k)], p2));
        const long long dk = static_cast<long long>(mod_reduce_rational(D[static_cast<std::size_t>(k)], mod_p2));
        auto& M = scheme.M[static_cast<std::size_t>(k)];
        M[0][0] = ak;
        M[0][1] = pp * dk % p2;
        M[1][0] = k * ak % p2;
        M[1][1] = pp * ((ak + k * dk) % p2) % p2;
    }
    return scheme;
}

/// v(pn+k) = M(k) v(n) mod p^2 componentwise; witness records (n, k, row).
inline CongruenceReport verify_scheme(const PSchemeP2& scheme, const std::vector<ExactInt>& A, long long bound) {
    if (bound >= static_cast<long long>(A.size())) throw DomainError("verify_scheme: values shorter than bound");
    CongruenceReport rep;
    rep.kind = "scheme";
    rep.label = scheme.label;
    rep.p = scheme.p;
    rep.exponent = 2;
    rep.note_range("bound", std::to_string(bound));

    const long long pp = static_cast<long long>(scheme.p);
    const ExactInt p2 = ExactInt(pp) * pp;
    for (long long n = 1; pp * n <= bound; ++n) {
        const ExactInt v0 = mod_reduce(A[static_cast<std::size_t>(n)], p2);
        const ExactInt v1 = mod_reduce(n * A[static_cast<std::size_t>(n)], p2);
        for (long long k = 0; k < pp && pp * n + k <= bound; ++k) {
            ++rep.checked_count;
            const auto& M = scheme.M[static_cast<std::size_t>(k)];
            const ExactInt w0 = mod_reduce(A[static_cast<std::size_t>(pp * n + k)], p2);
            const ExactInt w1 = mod_reduce((pp * n + k) * A[static_cast<std::size_t>(pp * n + k)], p2);
            const ExactInt m0 = mod_reduce(M[0][0] * v0 + M[0][1] * v1, p2);
            const ExactInt m1 = mod_reduce(M[1][0] * v0 + M[1][1] * v1, p2);
            if (w0 != m0) rep.add_violation({n, k, 0}, w0, m0);
            if (w1 != m1) rep.add_violation({n, k, 1}, w1, m1);
        }
    }
    if (rep.checked_count == 0) rep.note_range("empty_range", "true");
    return rep;
}

/// Mod-p reduction of every M(k) is the Lucas matrix in the first column:
/// [[A(k), 0], [k A(k), 0]].
inline bool scheme_reduces_to_lucas(const PSchemeP2& scheme, const std::vector<ExactInt>& A) {
    const long long pp = static_cast<long long>(scheme.p);
    for (long long k = 0; k < pp; ++k) {
        const auto& M = scheme.M[static_cast<std::size_t>(k)];
        const long long ak = static_cast<long long>(mod_reduce(A[static_cast<std::size_t>(k)], pp));
        if (M[0][0] % pp != ak) return false;
        if (M[0][1] % pp != 0) return false;
        if (M[1][0] % pp != k * ak % pp) return false;
        if (M[1][1] % pp != 0) return false;
    }
    return true;
}

/**
 * Per-summand congruence over U(p n): B(k) = B(k/p) mod p^2 for every
 * k in U(pn), where B(k/p) = 0 unless every component of k is divisible
 * by p.  Residues travel through the uint64 fast path (row size pn <= 67).
 */
inline CongruenceReport check_summand(UCase ucase, std::uint64_t p, long long n) {
    if (!is_prime(p)) throw DomainError("check_summand: p must be prime");
    const long long pp = static_cast<long long>(p);
    const std::uint64_t p2 = p * p;
    CongruenceReport rep;
    rep.kind = "summand";
    rep.label = ucase == UCase::F ? "F" : "delta";
    rep.p = p;
    rep.exponent = 2;
    rep.note_range("n", std::to_string(n));
    rep.note_range("set", "U(" + std::to_string(pp * n) + ")");

    const int arity = u_arity(ucase);
    enumerate_U(ucase, pp * n, [&](const IndexTuple& t) {
        ++rep.checked_count;
        const std::uint64_t lhs = summand_B_mod(ucase, t, pp * n, p2);
        std::uint64_t rhs = 0;
        bool divisible = true;
        for (int i = 0; i < arity; ++i) {
            if (t.comp[static_cast<std::size_t>(i)] % pp != 0) {
                divisible = false;
                break;
            }
        }
        if (divisible) {
            IndexTuple tp;
            tp.arity = t.arity;
            for (int i = 0; i < arity; ++i) tp.comp[static_cast<std::size_t>(i)] = t.comp[static_cast<std::size_t>(i)] / static_cast<int>(pp);
            rhs = summand_B_mod(ucase, tp, n, p2);
        }
        if (lhs != rhs) {
            std::vector<long long> witness(t.comp.begin(), t.comp.begin() + arity);
            rep.add_violation(std::move(witness), lhs, rhs);
        }
    });
    return rep;
}

}  // namespace congruence_lab
