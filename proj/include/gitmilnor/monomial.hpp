#pragma once

#include <algorithm>
#include <compare>
#include <vector>

#include "gitmilnor/rational.hpp"

namespace gitmilnor {

/// Exponent vector (a_1,...,a_n) of a monomial x_1^{a_1}...x_n^{a_n}.
/// Variable indices are 0-based throughout the library.
struct Monomial {
    std::vector<int> exp;

    Monomial() = default;
    explicit Monomial(std::vector<int> e) : exp(std::move(e)) {}

    int n_vars() const { return static_cast<int>(exp.size()); }
    int degree() const {
        int s = 0;
        for (int a : exp) s += a;
        return s;
    }
    int operator[](int i) const { return exp[static_cast<std::size_t>(i)]; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.exp.size() != b.exp.size()) throw DimensionMismatch("monomial product: variable counts differ");
    Monomial m = a;
    for (std::size_t i = 0; i < m.exp.size(); ++i) m.exp[i] += b.exp[i];
    return m;
}

/// Graded-lexicographic, largest first. This is the canonical term order used
/// for term maps, printing, and normalization; it is unrelated to the
/// weight orders induced by one-parameter subgroups.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        return std::lexicographical_compare(b.exp.begin(), b.exp.end(), a.exp.begin(), a.exp.end());
    }
};

inline long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// dim Sym^m of an n-dimensional space.
inline long long dim_sym(int n, int m) { return binomial(n + m - 1, m); }

/// All degree-m exponent vectors in n variables, in a fixed generation order.
inline std::vector<Monomial> monomials_of_degree(int n, int m) {
    std::vector<Monomial> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == n - 1) {
            cur[static_cast<std::size_t>(pos)] = left;
            out.emplace_back(cur);
            return;
        }
        for (int a = left; a >= 0; --a) {
            cur[static_cast<std::size_t>(pos)] = a;
            self(self, pos + 1, left - a);
        }
    };
    if (n > 0 && m >= 0) rec(rec, 0, m);
    return out;
}

}  // namespace gitmilnor
