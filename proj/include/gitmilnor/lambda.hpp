#pragma once

#include <algorithm>
#include <compare>
#include <vector>

#include "gitmilnor/polynomial.hpp"

namespace gitmilnor {

/// One-parameter subgroup of SL(n) acting diagonally with integer weights
/// summing to zero. The all-zero vector is allowed; it induces the pure
/// tie-break order, which doubles as the library's reference column order.
class OnePS {
  public:
    explicit OnePS(std::vector<long long> w) : w_(std::move(w)) {
        long long s = 0;
        for (long long x : w_) s += x;
        if (s != 0) throw Error("one-parameter subgroup weights must sum to zero");
        if (w_.empty()) throw DimensionMismatch("one-parameter subgroup needs at least one weight");
    }

    static OnePS zero(int n) { return OnePS(std::vector<long long>(static_cast<std::size_t>(n), 0)); }

    int size() const { return static_cast<int>(w_.size()); }
    long long operator[](int i) const { return w_[static_cast<std::size_t>(i)]; }
    const std::vector<long long>& weights() const { return w_; }

    bool is_sorted() const { return std::is_sorted(w_.begin(), w_.end()); }
    bool is_zero() const {
        return std::all_of(w_.begin(), w_.end(), [](long long x) { return x == 0; });
    }

    friend bool operator==(const OnePS&, const OnePS&) = default;

  private:
    std::vector<long long> w_;
};

inline long long weight(const OnePS& lambda, const Monomial& m) {
    if (lambda.size() != m.n_vars()) throw DimensionMismatch("weight: dimension mismatch");
    long long w = 0;
    for (int i = 0; i < m.n_vars(); ++i) w += static_cast<long long>(m[i]) * lambda[i];
    return w;
}

/// Total order on equal-degree monomials: lower weight first; on weight ties
/// the monomial with the larger exponent at the first differing variable is
/// the smaller one.
inline std::strong_ordering lambda_compare(const OnePS& lambda, const Monomial& a, const Monomial& b) {
    if (a.n_vars() != b.n_vars() || a.n_vars() != lambda.size())
        throw DimensionMismatch("lambda_compare: dimension mismatch");
    if (a.degree() != b.degree()) throw DegreeMismatch("lambda_compare: degrees differ");
    long long wa = weight(lambda, a), wb = weight(lambda, b);
    if (wa != wb) return wa <=> wb;
    for (int i = 0; i < a.n_vars(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

/// The smallest exponent vector of F under the lambda order.
inline Monomial initial_monomial(const OnePS& lambda, const Polynomial& f) {
    if (f.is_zero()) throw ZeroPolynomial("initial monomial of the zero polynomial");
    if (!f.is_homogeneous()) throw Error("initial monomial expects a homogeneous form");
    const Monomial* best = nullptr;
    for (const auto& [m, c] : f.terms()) {
        if (!best || lambda_compare(lambda, m, *best) == std::strong_ordering::less) best = &m;
    }
    return *best;
}

inline long long min_support_weight(const OnePS& lambda, const Polynomial& f) {
    if (f.is_zero()) throw ZeroPolynomial("support of the zero polynomial");
    bool first = true;
    long long best = 0;
    for (const auto& [m, c] : f.terms()) {
        long long w = weight(lambda, m);
        if (first || w < best) best = w;
        first = false;
    }
    return best;
}

/// All nonzero weight vectors with ascending entries, sum zero, |w_i| <= bound.
inline std::vector<OnePS> sorted_one_ps_grid(int n, long long bound) {
    std::vector<OnePS> out;
    std::vector<long long> cur(static_cast<std::size_t>(n));
    auto rec = [&](auto&& self, int pos, long long lo, long long partial) -> void {
        if (pos == n - 1) {
            long long last = -partial;
            if (last >= lo && last <= bound) {
                cur[static_cast<std::size_t>(pos)] = last;
                if (last != 0 || cur[0] != 0) out.emplace_back(cur);
            }
            return;
        }
        for (long long v = lo; v <= bound; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, v, partial + v);
        }
    };
    rec(rec, 0, -bound, 0);
    return out;
}

/// Full (unsorted) nonzero integer grid; used by the exhaustive torus oracle.
inline std::vector<OnePS> one_ps_grid(int n, long long bound) {
    std::vector<OnePS> out;
    std::vector<long long> cur(static_cast<std::size_t>(n));
    auto rec = [&](auto&& self, int pos, long long partial) -> void {
        if (pos == n - 1) {
            long long last = -partial;
            if (last < -bound || last > bound) return;
            cur[static_cast<std::size_t>(pos)] = last;
            bool zero = std::all_of(cur.begin(), cur.end(), [](long long x) { return x == 0; });
            if (!zero) out.emplace_back(cur);
            return;
        }
        for (long long v = -bound; v <= bound; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, partial + v);
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace gitmilnor
