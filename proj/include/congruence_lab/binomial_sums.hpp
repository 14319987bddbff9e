#pragma once

/**
 * Closed binomial-sum representations of the four classical sequences and
 * the two multiple-multinomial-sum representations over constraint sets U(n),
 * including the signed per-summand values B(k).
 *
 * U(n), F case (15 components, rows a,b,c,d,e of length 3):
 *   every row sums to n and a_i + b_i + c_i + d_i + 2 e_i = 2n for i = 1,2,3;
 *   B(k) = (-1)^{a1+b2+c3} prod_{rows} multinomial(n; row).
 * U(n), delta case (12 components, rows a,b,c,d):
 *   every row sums to n and b1+c1+d1 = n, a1+b2+d2 = n, a2+b3+c2 = n;
 *   B(k) = (-1)^{a2+b1+d3} prod_{rows} multinomial(n; row).
 */

#include "exact.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace congruence_lab {

struct NotInU : std::invalid_argument {
    explicit NotInU(const std::string& what) : std::invalid_argument(what) {}
};

/// sum_k binom(n,k)^2 binom(n+k,k)^2
inline ExactInt apery_sum(long long n) {
    ExactInt s = 0;
    for (long long k = 0; k <= n; ++k) {
        const ExactInt t = binomial(n, k) * binomial(n + k, k);
        s += t * t;
    }
    return s;
}

/// sum_k binom(n,k)^2 binom(n+k,k)
inline ExactInt zagier_D_sum(long long n) {
    ExactInt s = 0;
    for (long long k = 0; k <= n; ++k) {
        s += binomial(n, k) * binomial(n, k) * binomial(n + k, k);
    }
    return s;
}

/// sum_k (-1)^k 8^{n-k} binom(n,k) sum_l binom(k,l)^3
inline ExactInt zagier_F_sum(long long n) {
    ExactInt s = 0;
    for (long long k = 0; k <= n; ++k) {
        ExactInt inner = 0;
        for (long long l = 0; l <= k; ++l) {
            const ExactInt b = binomial(k, l);
            inner += b * b * b;
        }
        ExactInt pw = 1;
        for (long long i = 0; i < n - k; ++i) pw *= 8;
        const ExactInt term = pw * binomial(n, k) * inner;
        s += (k % 2 == 0) ? term : -term;
    }
    return s;
}

/// sum_k (-1)^k 3^{n-3k} binom(n,3k) binom(n+k,n) (3k)!/k!^3
inline ExactInt az_delta_sum(long long n) {
    ExactInt s = 0;
    for (long long k = 0; 3 * k <= n; ++k) {
        ExactInt pw = 1;
        for (long long i = 0; i < n - 3 * k; ++i) pw *= 3;
        const ExactInt term = pw * binomial(n, 3 * k) * binomial(n + k, n) * multinomial(3 * k, {k, k, k});
        s += (k % 2 == 0) ? term : -term;
    }
    return s;
}

enum class UCase { F, delta };

/// A lattice point of U(n); layout a1,a2,a3,b1,..,e3 (F) or a1,..,d3 (delta).
struct IndexTuple {
    std::array<int, 15> comp{};
    int arity = 0;  // 15 for the F case, 12 for the delta case
};

inline int u_arity(UCase ucase) { return ucase == UCase::F ? 15 : 12; }

/// Membership test against the defining row/column constraints.
inline bool in_U(UCase ucase, const IndexTuple& k, long long n) {
    if (k.arity != u_arity(ucase)) return false;
    const int rows = ucase == UCase::F ? 5 : 4;
    for (int r = 0; r < rows; ++r) {
        long long sum = 0;
        for (int i = 0; i < 3; ++i) {
            const int v = k.comp[static_cast<std::size_t>(3 * r + i)];
            if (v < 0) return false;
            sum += v;
        }
        if (sum != n) return false;
    }
    const auto& c = k.comp;
    if (ucase == UCase::F) {
        for (int i = 0; i < 3; ++i) {
            if (c[static_cast<std::size_t>(i)] + c[static_cast<std::size_t>(3 + i)] + c[static_cast<std::size_t>(6 + i)] +
                    c[static_cast<std::size_t>(9 + i)] + 2 * c[static_cast<std::size_t>(12 + i)] !=
                2 * n)
                return false;
        }
        return true;
    }
    return c[3] + c[6] + c[9] == n &&   // b1 + c1 + d1
           c[0] + c[4] + c[10] == n &&  // a1 + b2 + d2
           c[1] + c[5] + c[7] == n;     // a2 + b3 + c2
}

/**
 * Visits every member of U(n) exactly once, in lexicographic order of the
 * free coordinates.  Dependent coordinates are derived rather than filtered:
 * F case derives the e row from the column sums, delta case derives the d row.
 */
template <class Visitor>
inline void enumerate_U(UCase ucase, long long n, Visitor&& visit) {
    const int nn = static_cast<int>(n);
    if (ucase == UCase::F) {
        IndexTuple t;
        t.arity = 15;
        auto& c = t.comp;
        for (int a1 = 0; a1 <= nn; ++a1)
            for (int a2 = 0; a2 + a1 <= nn; ++a2) {
                c[0] = a1; c[1] = a2; c[2] = nn - a1 - a2;
                for (int b1 = 0; b1 <= nn; ++b1)
                    for (int b2 = 0; b2 + b1 <= nn; ++b2) {
                        c[3] = b1; c[4] = b2; c[5] = nn - b1 - b2;
                        for (int c1 = 0; c1 <= nn; ++c1)
                            for (int c2 = 0; c2 + c1 <= nn; ++c2) {
                                c[6] = c1; c[7] = c2; c[8] = nn - c1 - c2;
                                for (int d1 = 0; d1 <= nn; ++d1) {
                                    const int r1 = 2 * nn - a1 - b1 - c1 - d1;
                                    if (r1 < 0) break;
                                    if (r1 % 2) continue;
                                    const int e1 = r1 / 2;
                                    for (int d2 = 0; d2 + d1 <= nn; ++d2) {
                                        const int r2 = 2 * nn - a2 - b2 - c2 - d2;
                                        if (r2 < 0) break;
                                        if (r2 % 2) continue;
                                        const int e2 = r2 / 2;
                                        if (e1 + e2 > nn) continue;
                                        const int d3 = nn - d1 - d2;
                                        const int r3 = 2 * nn - c[2] - c[5] - c[8] - d3;
                                        if (r3 < 0 || r3 % 2) continue;
                                        // the e row then sums to n automatically
                                        c[9] = d1; c[10] = d2; c[11] = d3;
                                        c[12] = e1; c[13] = e2; c[14] = r3 / 2;
                                        visit(static_cast<const IndexTuple&>(t));
                                    }
                                }
                            }
                    }
            }
        return;
    }
    IndexTuple t;
    t.arity = 12;
    auto& c = t.comp;
    for (int a1 = 0; a1 <= nn; ++a1)
        for (int a2 = 0; a2 + a1 <= nn; ++a2) {
            c[0] = a1; c[1] = a2; c[2] = nn - a1 - a2;
            for (int b1 = 0; b1 <= nn; ++b1)
                for (int b2 = 0; b2 + b1 <= nn; ++b2) {
                    const int d2 = nn - a1 - b2;
                    if (d2 < 0) continue;
                    c[3] = b1; c[4] = b2; c[5] = nn - b1 - b2;
                    const int c2 = nn - a2 - c[5];  // forced by a2 + b3 + c2 = n
                    if (c2 < 0) continue;
                    for (int c1 = 0; c1 + c2 <= nn; ++c1) {
                        const int d1 = nn - b1 - c1;
                        if (d1 < 0) break;
                        const int d3 = nn - d1 - d2;
                        if (d3 < 0) continue;
                        c[6] = c1; c[7] = c2; c[8] = nn - c1 - c2;
                        c[9] = d1; c[10] = d2; c[11] = d3;
                        visit(static_cast<const IndexTuple&>(t));
                    }
                }
        }
}

inline std::vector<IndexTuple> enumerate_U_list(UCase ucase, long long n) {
    std::vector<IndexTuple> out;
    enumerate_U(ucase, n, [&](const IndexTuple& t) { out.push_back(t); });
    return out;
}

namespace detail {

inline int summand_sign_parity(UCase ucase, const IndexTuple& k) {
    const auto& c = k.comp;
    return ucase == UCase::F ? c[0] + c[4] + c[8]   // a1 + b2 + c3
                             : c[1] + c[3] + c[11]; // a2 + b1 + d3
}

}  // namespace detail

/// Exact signed multinomial product B(k).  Throws NotInU if k is not in U(n).
inline ExactInt summand_B(UCase ucase, const IndexTuple& k, long long n) {
    if (!in_U(ucase, k, n)) throw NotInU("summand_B: index tuple not in U(n)");
    const int rows = ucase == UCase::F ? 5 : 4;
    ExactInt v = 1;
    for (int r = 0; r < rows; ++r) {
        v *= multinomial(n, {k.comp[static_cast<std::size_t>(3 * r)], k.comp[static_cast<std::size_t>(3 * r + 1)],
                             k.comp[static_cast<std::size_t>(3 * r + 2)]});
    }
    return detail::summand_sign_parity(ucase, k) % 2 == 0 ? v : -v;
}

/// sum over U(n) of B(k); equals the closed binomial sums for F and delta.
inline ExactInt gorodetsky_sum(UCase ucase, long long n) {
    ExactInt s = 0;
    enumerate_U(ucase, n, [&](const IndexTuple& t) { s += summand_B(ucase, t, n); });
    return s;
}

namespace detail {

/// Pascal table in uint64, rows 0..67 (the last row that fits without overflow).
inline const std::vector<std::vector<std::uint64_t>>& pascal_u64() {
    static const std::vector<std::vector<std::uint64_t>> table = [] {
        std::vector<std::vector<std::uint64_t>> t(68);
        for (std::size_t i = 0; i < t.size(); ++i) {
            t[i].assign(i + 1, 1);
            for (std::size_t j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
        }
        return t;
    }();
    return table;
}

inline std::uint64_t multinomial_row_mod(long long n, int p1, int p2, std::uint64_t mod) {
    // multinomial(n; p1, p2, n-p1-p2) reduced mod `mod`; n <= 67 guaranteed by callers
    const auto& pt = pascal_u64();
    const std::uint64_t m1 = pt[static_cast<std::size_t>(n)][static_cast<std::size_t>(p1)] % mod;
    const std::uint64_t m2 = pt[static_cast<std::size_t>(n - p1)][static_cast<std::size_t>(p2)] % mod;
    return (m1 * m2) % mod;
}

}  // namespace detail

/**
 * B(k) mod `mod` without big-integer products; valid whenever n <= 67.
 * Used by the per-summand congruence sweeps, where U(pn) is large but the
 * residue is all that matters.  Returns a value in [0, mod).
 */
inline std::uint64_t summand_B_mod(UCase ucase, const IndexTuple& k, long long n, std::uint64_t mod) {
    if (n > 67) throw DomainError("summand_B_mod: row size exceeds the uint64 table");
    const int rows = ucase == UCase::F ? 5 : 4;
    std::uint64_t v = 1 % mod;
    for (int r = 0; r < rows; ++r) {
        v = (v * detail::multinomial_row_mod(n, k.comp[static_cast<std::size_t>(3 * r)],
                                             k.comp[static_cast<std::size_t>(3 * r + 1)], mod)) %
            mod;
    }
    if (detail::summand_sign_parity(ucase, k) % 2 != 0) v = (mod - v) % mod;
    return v;
}

}  // namespace congruence_lab
