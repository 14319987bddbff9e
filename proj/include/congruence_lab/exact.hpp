#pragma once

/**
 * Exact arithmetic substrate: arbitrary-precision integers and rationals,
 * p-adic valuation, modular reduction of p-integral rationals, primality,
 * and binomial/multinomial coefficients.
 *
 * Everything here is exact; no floating point anywhere.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace congruence_lab {

using ExactInt = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

struct ZeroValuation : std::domain_error {
    ZeroValuation() : std::domain_error("p-adic valuation of zero is undefined") {}
};

struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

struct PartitionMismatch : std::invalid_argument {
    explicit PartitionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NotPIntegral : std::domain_error {
    explicit NotPIntegral(const std::string& what) : std::domain_error(what) {}
};

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic Miller–Rabin, exact for all n < 2^64.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

/// A prime-power modulus p^e with e >= 1.
struct PrimePower {
    std::uint64_t p;
    unsigned exponent;

    PrimePower(std::uint64_t prime, unsigned e) : p(prime), exponent(e) {
        if (!is_prime(prime)) throw DomainError("PrimePower: " + std::to_string(prime) + " is not prime");
        if (e < 1) throw DomainError("PrimePower: exponent must be >= 1");
    }

    ExactInt modulus() const {
        ExactInt m = 1;
        for (unsigned i = 0; i < exponent; ++i) m *= p;
        return m;
    }
};

/// Largest e with p^e | x.  Throws ZeroValuation for x = 0.
inline unsigned pval(const ExactInt& x, std::uint64_t p) {
    if (x == 0) throw ZeroValuation();
    ExactInt v = abs(x);
    unsigned e = 0;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    return e;
}

namespace detail {

inline ExactInt binomial_direct(long long n, long long k) {
    if (k > n - k) k = n - k;
    ExactInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact: r is binomial(n-k+i, i) after this step
    }
    return r;
}

struct BinomialMemo {
    std::mutex mu;
    std::unordered_map<std::uint64_t, ExactInt> table;
    static constexpr std::size_t cap = 1u << 20;
};

inline BinomialMemo& binomial_memo() {
    static BinomialMemo memo;
    return memo;
}

}  // namespace detail

/**
 * Binomial coefficient.  Returns 0 for k < 0 or k > n (n >= 0); n < 0 is a
 * DomainError (negative upper entries are out of scope).  Small arguments are
 * memoized behind a mutex, with the table capped to bound memory.
 */
inline ExactInt binomial(long long n, long long k) {
    if (n < 0) throw DomainError("binomial: negative upper entry " + std::to_string(n));
    if (k < 0 || k > n) return 0;
    if (k == 0 || k == n) return 1;
    if (n <= 0xFFFF) {
        const std::uint64_t key = (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(k);
        auto& memo = detail::binomial_memo();
        std::lock_guard<std::mutex> lock(memo.mu);
        auto it = memo.table.find(key);
        if (it != memo.table.end()) return it->second;
        ExactInt r = detail::binomial_direct(n, k);
        if (memo.table.size() < detail::BinomialMemo::cap) memo.table.emplace(key, r);
        return r;
    }
    return detail::binomial_direct(n, k);
}

/// n! / (parts_0! ... parts_m!) with sum(parts) = n enforced.
inline ExactInt multinomial(long long n, const std::vector<long long>& parts) {
    long long total = 0;
    for (long long part : parts) {
        if (part < 0) throw PartitionMismatch("multinomial: negative part");
        total += part;
    }
    if (total != n) {
        throw PartitionMismatch("multinomial: parts sum to " + std::to_string(total) +
                                ", expected " + std::to_string(n));
    }
    ExactInt r = 1;
    long long rest = n;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        r *= binomial(rest, parts[i]);
        rest -= parts[i];
    }
    return r;
}

/// x mod m, normalized into [0, m).
inline ExactInt mod_reduce(const ExactInt& x, const ExactInt& m) {
    ExactInt r = x % m;
    if (r < 0) r += m;
    return r;
}

namespace detail {

inline ExactInt egcd(const ExactInt& a, const ExactInt& b, ExactInt& x, ExactInt& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    ExactInt x1, y1;
    ExactInt g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace detail

/// Inverse of a mod m (gcd(a, m) = 1 required).
inline ExactInt mod_inverse(const ExactInt& a, const ExactInt& m) {
    ExactInt x, y;
    ExactInt g = detail::egcd(mod_reduce(a, m), m, x, y);
    if (g != 1) throw DomainError("mod_inverse: argument not invertible");
    return mod_reduce(x, m);
}

/**
 * Reduce a rational q = num/den modulo p^e: num * den^{-1} mod p^e.
 * Throws NotPIntegral when p | den (the rational has a pole at p).
 */
inline ExactInt mod_reduce_rational(const ExactRational& q, const PrimePower& m) {
    const ExactInt num = numerator(q);
    const ExactInt den = denominator(q);
    if (den % m.p == 0) {
        throw NotPIntegral("mod_reduce_rational: denominator divisible by p = " + std::to_string(m.p));
    }
    const ExactInt mod = m.modulus();
    return mod_reduce(mod_reduce(num, mod) * mod_inverse(den, mod), mod);
}

}  // namespace congruence_lab
