#pragma once

/**
 * Sparse integer Laurent polynomials in 2 or 3 variables, multiplication,
 * constant-term extraction ct[P^n Q], and the two built-in constraint
 * polynomials whose constant-term powers reproduce the F and delta sequences:
 *
 *   Lambda_F(x,y)   = (x-y+1)(y-x+1)(x+y-1)(x+y+1)(x^2+y^2+1) / (xy)^2
 *   Lambda_d(x,y,z) = (x+y-1)(x+z+1)(y-x+z)(y-z+1) / (xyz)
 */

#include "exact.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace congruence_lab {

struct ArityMismatch : std::invalid_argument {
    explicit ArityMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Exponent vector of fixed small arity; components are signed.
struct ExpVec {
    std::array<std::int16_t, 3> e{};
    std::uint8_t arity = 0;

    bool operator==(const ExpVec& o) const { return arity == o.arity && e == o.e; }
    bool operator<(const ExpVec& o) const { return e < o.e; }
};

struct ExpVecHash {
    std::size_t operator()(const ExpVec& v) const {
        std::uint64_t k = v.arity;
        for (int i = 0; i < 3; ++i) k = (k << 17) ^ static_cast<std::uint16_t>(v.e[static_cast<std::size_t>(i)]);
        return std::hash<std::uint64_t>()(k * 0x9E3779B97F4A7C15ull);
    }
};

class LaurentPoly {
  public:
    using TermMap = std::unordered_map<ExpVec, ExactInt, ExpVecHash>;

    explicit LaurentPoly(int arity) : arity_(arity) {
        if (arity < 1 || arity > 3) throw ArityMismatch("LaurentPoly: arity must be 1..3");
    }

    static LaurentPoly one(int arity) {
        LaurentPoly p(arity);
        p.add_term({}, 1);
        return p;
    }

    int arity() const { return arity_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    /// Adds coeff * x^e, pruning the term if it cancels to zero.
    void add_term(const std::array<int, 3>& e, const ExactInt& coeff) {
        if (coeff == 0) return;
        ExpVec v = make_exp(e);
        auto it = terms_.find(v);
        if (it == terms_.end()) {
            terms_.emplace(v, coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    ExactInt coefficient(const std::array<int, 3>& e) const {
        auto it = terms_.find(make_exp(e));
        return it == terms_.end() ? ExactInt(0) : it->second;
    }

    ExactInt constant_coefficient() const { return coefficient({0, 0, 0}); }

    /// Divides every term by the monomial x^shift (an exponent translation).
    LaurentPoly shifted(const std::array<int, 3>& shift) const {
        LaurentPoly r(arity_);
        for (const auto& [e, c] : terms_) {
            std::array<int, 3> ne{};
            for (int i = 0; i < arity_; ++i) ne[static_cast<std::size_t>(i)] = e.e[static_cast<std::size_t>(i)] - shift[static_cast<std::size_t>(i)];
            r.add_term(ne, c);
        }
        return r;
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        require_same_arity(o);
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.terms_) {
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                r.terms_.emplace(e, c);
            } else {
                it->second += c;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
        return r;
    }

    LaurentPoly operator*(const LaurentPoly& o) const {
        require_same_arity(o);
        LaurentPoly r(arity_);
        for (const auto& [e1, c1] : terms_) {
            for (const auto& [e2, c2] : o.terms_) {
                ExpVec e = e1;
                for (int i = 0; i < arity_; ++i) e.e[static_cast<std::size_t>(i)] = static_cast<std::int16_t>(e.e[static_cast<std::size_t>(i)] + e2.e[static_cast<std::size_t>(i)]);
                auto it = r.terms_.find(e);
                if (it == r.terms_.end()) {
                    r.terms_.emplace(e, c1 * c2);
                } else {
                    it->second += c1 * c2;
                    if (it->second == 0) r.terms_.erase(it);
                }
            }
        }
        return r;
    }

    /// Per-coordinate [min, max] exponent ranges of the support.
    void support_box(std::array<int, 3>& lo, std::array<int, 3>& hi) const {
        lo.fill(0);
        hi.fill(0);
        bool first = true;
        for (const auto& [e, c] : terms_) {
            (void)c;
            for (int i = 0; i < arity_; ++i) {
                const int x = e.e[static_cast<std::size_t>(i)];
                const auto idx = static_cast<std::size_t>(i);
                lo[idx] = first ? x : std::min(lo[idx], x);
                hi[idx] = first ? x : std::max(hi[idx], x);
            }
            first = false;
        }
    }

    /// Lines "e1 e2 [e3] coefficient", sorted lexicographically by exponent.
    std::string dump() const {
        std::vector<std::pair<ExpVec, ExactInt>> sorted(terms_.begin(), terms_.end());
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::ostringstream out;
        for (const auto& [e, c] : sorted) {
            for (int i = 0; i < arity_; ++i) out << e.e[static_cast<std::size_t>(i)] << ' ';
            out << c << '\n';
        }
        return out.str();
    }

  private:
    ExpVec make_exp(const std::array<int, 3>& e) const {
        ExpVec v;
        v.arity = static_cast<std::uint8_t>(arity_);
        for (int i = 0; i < arity_; ++i) v.e[static_cast<std::size_t>(i)] = static_cast<std::int16_t>(e[static_cast<std::size_t>(i)]);
        return v;
    }

    void require_same_arity(const LaurentPoly& o) const {
        if (arity_ != o.arity_) throw ArityMismatch("LaurentPoly: arity mismatch");
    }

    int arity_;
    TermMap terms_;
};

inline LaurentPoly lp_mul(const LaurentPoly& P, const LaurentPoly& Q) { return P * Q; }

namespace detail {

inline LaurentPoly linear2(int cx, int cy, int c1) {
    LaurentPoly p(2);
    p.add_term({1, 0, 0}, cx);
    p.add_term({0, 1, 0}, cy);
    p.add_term({0, 0, 0}, c1);
    return p;
}

inline LaurentPoly linear3(int cx, int cy, int cz, int c1) {
    LaurentPoly p(3);
    p.add_term({1, 0, 0}, cx);
    p.add_term({0, 1, 0}, cy);
    p.add_term({0, 0, 1}, cz);
    p.add_term({0, 0, 0}, c1);
    return p;
}

}  // namespace detail

/// Lambda_F, expanded once from its factored form.
inline const LaurentPoly& lambda_F() {
    static const LaurentPoly poly = [] {
        LaurentPoly quad(2);
        quad.add_term({2, 0, 0}, 1);
        quad.add_term({0, 2, 0}, 1);
        quad.add_term({0, 0, 0}, 1);
        const LaurentPoly num = detail::linear2(1, -1, 1) * detail::linear2(-1, 1, 1) *
                                detail::linear2(1, 1, -1) * detail::linear2(1, 1, 1) * quad;
        return num.shifted({2, 2, 0});
    }();
    return poly;
}

/// Lambda_delta, expanded once from its factored form.
inline const LaurentPoly& lambda_delta() {
    static const LaurentPoly poly = [] {
        const LaurentPoly num = detail::linear3(1, 1, 0, -1) * detail::linear3(1, 0, 1, 1) *
                                detail::linear3(-1, 1, 1, 0) * detail::linear3(0, 1, -1, 1);
        return num.shifted({1, 1, 1});
    }();
    return poly;
}

/**
 * Coefficient of the zero exponent vector in P^n * Q, by repeated
 * multiplication.  With `truncate` set, terms that can no longer reach
 * exponent zero within the remaining multiplications are dropped after each
 * step; off by default and tested equal to the plain path.
 */
inline ExactInt constant_term(const LaurentPoly& P, long long n, const LaurentPoly* Q = nullptr,
                              bool truncate = false) {
    if (Q && Q->arity() != P.arity()) throw ArityMismatch("constant_term: arity mismatch");
    LaurentPoly acc = Q ? *Q : LaurentPoly::one(P.arity());

    std::array<int, 3> lo{}, hi{};
    P.support_box(lo, hi);

    for (long long step = 0; step < n; ++step) {
        acc = acc * P;
        if (!truncate) continue;
        const long long remaining = n - step - 1;
        LaurentPoly pruned(acc.arity());
        for (const auto& [e, c] : acc.terms()) {
            bool reachable = true;
            for (int i = 0; i < acc.arity(); ++i) {
                const long long x = e.e[static_cast<std::size_t>(i)];
                if (x + remaining * lo[static_cast<std::size_t>(i)] > 0 || x + remaining * hi[static_cast<std::size_t>(i)] < 0) {
                    reachable = false;
                    break;
                }
            }
            if (reachable) {
                std::array<int, 3> ee{};
                for (int i = 0; i < acc.arity(); ++i) ee[static_cast<std::size_t>(i)] = e.e[static_cast<std::size_t>(i)];
                pruned.add_term(ee, c);
            }
        }
        acc = std::move(pruned);
    }
    return acc.constant_coefficient();
}

}  // namespace congruence_lab
