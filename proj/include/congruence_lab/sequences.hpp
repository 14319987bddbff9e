#pragma once

/**
 * The 15 sporadic sequences: recurrence families in normalized form
 * sum_{j=0}^{2} c_j(n) A(n-j) = 0, the sequence evaluator, the formal
 * derivative A'(n), harmonic numbers, the two harmonic-sum closed forms,
 * and the theta-operator log-solution check on truncated series.
 */

#include "exact.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace congruence_lab {

struct NonIntegralStep : std::runtime_error {
    explicit NonIntegralStep(const std::string& what) : std::runtime_error(what) {}
};

/// Polynomial in the Euler operator theta (equivalently, in the index n),
/// coefficients[i] multiplying theta^i.  Just enough algebra to build the
/// normalized recurrence coefficients from (a,b,c,d) without hand-expansion.
struct ThetaPoly {
    std::vector<ExactInt> coeff;

    static ThetaPoly constant(const ExactInt& v) { return {{v}}; }
    static ThetaPoly theta() { return {{0, 1}}; }

    ThetaPoly operator+(const ThetaPoly& o) const {
        ThetaPoly r;
        r.coeff.resize(std::max(coeff.size(), o.coeff.size()), 0);
        for (std::size_t i = 0; i < coeff.size(); ++i) r.coeff[i] += coeff[i];
        for (std::size_t i = 0; i < o.coeff.size(); ++i) r.coeff[i] += o.coeff[i];
        r.trim();
        return r;
    }
    ThetaPoly operator-(const ThetaPoly& o) const { return *this + o * ExactInt(-1); }
    ThetaPoly operator*(const ThetaPoly& o) const {
        if (coeff.empty() || o.coeff.empty()) return {{}};
        ThetaPoly r;
        r.coeff.assign(coeff.size() + o.coeff.size() - 1, 0);
        for (std::size_t i = 0; i < coeff.size(); ++i)
            for (std::size_t j = 0; j < o.coeff.size(); ++j)
                r.coeff[i + j] += coeff[i] * o.coeff[j];
        r.trim();
        return r;
    }
    ThetaPoly operator*(const ExactInt& v) const {
        ThetaPoly r = *this;
        for (auto& x : r.coeff) x *= v;
        r.trim();
        return r;
    }

    ThetaPoly derivative() const {
        ThetaPoly r;
        for (std::size_t i = 1; i < coeff.size(); ++i) r.coeff.push_back(coeff[i] * ExactInt(i));
        return r;
    }

    ExactInt operator()(const ExactInt& n) const {
        ExactInt v = 0;
        for (std::size_t i = coeff.size(); i-- > 0;) v = v * n + coeff[i];
        return v;
    }

    void trim() {
        while (!coeff.empty() && coeff.back() == 0) coeff.pop_back();
    }
};

enum class Family { two_term_quadratic, three_term_cubic };

/**
 * One of the two three-term recurrence shapes:
 *   two_term_quadratic: (n+1)^2 A(n+1) = (a n^2 + a n + b) A(n) - c n^2 A(n-1)
 *   three_term_cubic:   (n+1)^3 A(n+1) = (2n+1)(a n^2 + a n + b) A(n) - n (c n^2 + d) A(n-1)
 * normalized to c0(n) A(n) + c1(n) A(n-1) + c2(n) A(n-2) = 0 with
 * c0(n) = n^lambda.
 */
struct Recurrence {
    Family family;
    ExactInt a, b, c, d;  // d only meaningful for three_term_cubic

    int order_lambda() const { return family == Family::two_term_quadratic ? 2 : 3; }

    /// Normalized coefficient polynomials {c0, c1, c2} in the index.
    std::array<ThetaPoly, 3> coeff_polys() const {
        const ThetaPoly t = ThetaPoly::theta();
        const ThetaPoly one = ThetaPoly::constant(1);
        const ThetaPoly quad = (t * t - t) * a + ThetaPoly::constant(b);  // a(n^2-n)+b
        if (family == Family::two_term_quadratic) {
            return {t * t, quad * ExactInt(-1), (t - one) * (t - one) * c};
        }
        const ThetaPoly tm1 = t - one;
        return {t * t * t,
                (t * ExactInt(2) - one) * quad * ExactInt(-1),
                tm1 * (tm1 * tm1 * c + ThetaPoly::constant(d))};
    }
};

enum class ClosedForm { apery_gamma, zagier_F, az_delta, zagier_D };
enum class CtPoly { lambda_F, lambda_delta };
enum class Provenance { paper, literature };

struct SequenceSpec {
    std::string label;
    Recurrence rec;
    int lambda_exponent = 3;  // supercongruence exponent class, 2 or 3
    std::optional<ClosedForm> closed_form;
    std::optional<CtPoly> ct_poly;
    Provenance provenance = Provenance::literature;
    std::string source_note;
};

/// A(0..N) by the recurrence, A(-1) = 0, A(0) = 1; every division by n^lambda
/// must be exact, otherwise the parameters are not one of the sporadic sets.
inline std::vector<ExactInt> eval_sequence(const SequenceSpec& spec, long long N) {
    const auto cp = spec.rec.coeff_polys();
    std::vector<ExactInt> A;
    A.reserve(static_cast<std::size_t>(N) + 1);
    A.push_back(1);
    for (long long m = 1; m <= N; ++m) {
        ExactInt s = cp[1](m) * A[static_cast<std::size_t>(m - 1)];
        if (m >= 2) s += cp[2](m) * A[static_cast<std::size_t>(m - 2)];
        ExactInt q, r;
        divide_qr(-s, cp[0](m), q, r);
        if (r != 0) {
            throw NonIntegralStep(spec.label + ": non-integral value at n = " + std::to_string(m));
        }
        A.push_back(q);
    }
    return A;
}

/**
 * Formal derivative A'(0..N): the solution of
 *   sum_j c_j(n) A'(n-j) + sum_j c_j'(n) A(n-j) = 0,  A'(j) = 0 for j <= 0,
 * with c_j' the ordinary polynomial derivative.  Values are exact rationals.
 */
inline std::vector<ExactRational> eval_derivative(const SequenceSpec& spec, long long N) {
    const auto cp = spec.rec.coeff_polys();
    const std::array<ThetaPoly, 3> cpd = {cp[0].derivative(), cp[1].derivative(), cp[2].derivative()};
    const std::vector<ExactInt> A = eval_sequence(spec, N);
    std::vector<ExactRational> D;
    D.reserve(static_cast<std::size_t>(N) + 1);
    D.push_back(0);
    for (long long m = 1; m <= N; ++m) {
        ExactRational s = D[static_cast<std::size_t>(m - 1)] * cp[1](m);
        if (m >= 2) s += D[static_cast<std::size_t>(m - 2)] * cp[2](m);
        ExactRational t = ExactRational(cpd[0](m)) * A[static_cast<std::size_t>(m)] +
                          ExactRational(cpd[1](m)) * A[static_cast<std::size_t>(m - 1)];
        if (m >= 2) t += ExactRational(cpd[2](m)) * A[static_cast<std::size_t>(m - 2)];
        D.push_back(-(s + t) / cp[0](m));
    }
    return D;
}

/// H_n = 1 + 1/2 + ... + 1/n, H_0 = 0.
inline ExactRational harmonic(long long n) {
    ExactRational h = 0;
    for (long long i = 1; i <= n; ++i) h += ExactRational(1, i);
    return h;
}

/// 5 * sum_k binom(n,k)^2 binom(n+k,k) (H_n - H_k).
inline ExactRational derivative_closed_form_D(long long n) {
    const ExactRational Hn = harmonic(n);
    ExactRational s = 0;
    ExactRational Hk = 0;
    for (long long k = 0; k <= n; ++k) {
        if (k > 0) Hk += ExactRational(1, k);
        const ExactInt w = binomial(n, k) * binomial(n, k) * binomial(n + k, k);
        s += ExactRational(w) * (Hn - Hk);
    }
    return s * 5;
}

/// 2 * sum_k binom(n,k)^2 binom(n+k,k)^2 (H_{n+k} - H_{n-k}).
inline ExactRational derivative_closed_form_gamma(long long n) {
    std::vector<ExactRational> H(static_cast<std::size_t>(2 * n) + 1);
    H[0] = 0;
    for (long long i = 1; i <= 2 * n; ++i) H[static_cast<std::size_t>(i)] = H[static_cast<std::size_t>(i - 1)] + ExactRational(1, i);
    ExactRational s = 0;
    for (long long k = 0; k <= n; ++k) {
        const ExactInt w = binomial(n, k) * binomial(n, k) * binomial(n + k, k) * binomial(n + k, k);
        s += ExactRational(w) * (H[static_cast<std::size_t>(n + k)] - H[static_cast<std::size_t>(n - k)]);
    }
    return s * 2;
}

/**
 * Checks, on truncated series F = sum A(n) x^n and G = sum A'(n) x^n, that
 *   sum_j [ c_j(theta) x^j G + c_j'(theta) x^j F ] = 0
 * holds coefficient-wise through order N - 2 (the recurrence order window),
 * where theta(x^n) = n x^n so a theta-polynomial acts on a series by
 * multiplying the n-th coefficient by its value at n.
 */
inline bool ode_log_check(const SequenceSpec& spec, long long N) {
    if (N < 1) throw DomainError("ode_log_check: N must be >= 1");
    const auto cp = spec.rec.coeff_polys();
    const std::array<ThetaPoly, 3> cpd = {cp[0].derivative(), cp[1].derivative(), cp[2].derivative()};
    const std::vector<ExactInt> Av = eval_sequence(spec, N);
    const std::vector<ExactRational> G = eval_derivative(spec, N);
    const std::vector<ExactRational> F(Av.begin(), Av.end());

    const auto apply_shifted = [N](const ThetaPoly& q, const std::vector<ExactRational>& S, long long j) {
        // coefficients of c(theta) x^j S: order m picks up q(m) * S[m - j]
        std::vector<ExactRational> out(static_cast<std::size_t>(N) + 1, 0);
        for (long long m = j; m <= N; ++m)
            out[static_cast<std::size_t>(m)] = S[static_cast<std::size_t>(m - j)] * q(m);
        return out;
    };

    std::vector<ExactRational> total(static_cast<std::size_t>(N) + 1, 0);
    for (long long j = 0; j <= 2; ++j) {
        const auto tg = apply_shifted(cp[static_cast<std::size_t>(j)], G, j);
        const auto tf = apply_shifted(cpd[static_cast<std::size_t>(j)], F, j);
        for (long long m = 0; m <= N; ++m) {
            total[static_cast<std::size_t>(m)] += tg[static_cast<std::size_t>(m)] + tf[static_cast<std::size_t>(m)];
        }
    }
    for (long long m = 0; m <= N - 2; ++m) {
        if (total[static_cast<std::size_t>(m)] != 0) return false;
    }
    return true;
}

}  // namespace congruence_lab
