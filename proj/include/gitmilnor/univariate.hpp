#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "gitmilnor/rational.hpp"

namespace gitmilnor {

/// Dense univariate polynomial over the rationals, coefficients low-to-high.
struct UniPoly {
    std::vector<Rational> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    const Rational& lead() const { return c.back(); }

    Rational eval(const Rational& x) const {
        Rational v(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
        return v;
    }

    friend bool operator==(const UniPoly&, const UniPoly&) = default;
};

inline UniPoly uni_derivative(const UniPoly& p) {
    UniPoly d;
    for (std::size_t i = 1; i < p.c.size(); ++i) d.c.push_back(p.c[i] * static_cast<long>(i));
    d.trim();
    return d;
}

inline UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly{};
    UniPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

inline UniPoly operator-(UniPoly a, const UniPoly& b) {
    if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), Rational(0));
    for (std::size_t i = 0; i < b.c.size(); ++i) a.c[i] -= b.c[i];
    a.trim();
    return a;
}

/// Euclidean division; returns {quotient, remainder}.
inline std::pair<UniPoly, UniPoly> uni_divmod(UniPoly a, const UniPoly& b) {
    if (b.is_zero()) throw Error("univariate division by zero");
    UniPoly q;
    if (a.degree() >= b.degree()) q.c.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rational(0));
    while (!a.is_zero() && a.degree() >= b.degree()) {
        int shift = a.degree() - b.degree();
        Rational f = a.lead() / b.lead();
        q.c[static_cast<std::size_t>(shift)] = f;
        for (std::size_t i = 0; i < b.c.size(); ++i) a.c[static_cast<std::size_t>(shift) + i] -= f * b.c[i];
        a.trim();
    }
    q.trim();
    return {q, a};
}

inline UniPoly uni_div_exact(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = uni_divmod(a, b);
    if (!r.is_zero()) throw Error("inexact univariate division");
    return q;
}

/// Monic gcd.
inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = uni_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) {
        Rational inv = 1 / a.lead();
        for (auto& v : a.c) v *= inv;
    }
    return a;
}

/// Yun's squarefree decomposition: p = lead * prod factor_i^multiplicity_i
/// with the factors monic, squarefree and pairwise coprime. Constant factors
/// are dropped.
inline std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& p) {
    std::vector<std::pair<UniPoly, int>> out;
    if (p.is_zero() || p.degree() == 0) return out;
    // w must stay exactly f/g (no rescaling) for z = f'/g - w' to telescope
    UniPoly g = uni_gcd(p, uni_derivative(p));
    UniPoly w = uni_div_exact(p, g);
    UniPoly y = uni_div_exact(uni_derivative(p), g);
    UniPoly z = y - uni_derivative(w);
    int mult = 1;
    while (w.degree() > 0) {
        UniPoly f = uni_gcd(w, z);
        if (f.degree() > 0) out.emplace_back(f, mult);
        w = uni_div_exact(w, f);
        y = uni_div_exact(z, f);
        z = y - uni_derivative(w);
        ++mult;
    }
    return out;
}

/// All rational roots, via the rational root theorem on the integer-cleared
/// polynomial. Intended for the small factors the squarefree step produces.
inline std::vector<Rational> rational_roots(const UniPoly& p) {
    std::vector<Rational> roots;
    if (p.is_zero() || p.degree() == 0) return roots;
    if (p.degree() == 1) {
        roots.push_back(-p.c[0] / p.c[1]);
        return roots;
    }
    std::vector<Rational> coeffs(p.c.begin(), p.c.end());
    auto ints = clear_denominators(coeffs);
    // strip t^k: zero is a root of multiplicity k
    std::size_t low = 0;
    while (low < ints.size() && ints[low] == 0) ++low;
    if (low > 0) roots.push_back(Rational(0));
    if (low + 1 >= ints.size()) return roots;
    long long a0 = std::abs(ints[low]);
    long long an = std::abs(ints.back());
    auto divisors = [](long long v) {
        std::vector<long long> out;
        for (long long d = 1; d * d <= v; ++d)
            if (v % d == 0) {
                out.push_back(d);
                if (d != v / d) out.push_back(v / d);
            }
        return out;
    };
    for (long long num : divisors(a0))
        for (long long den : divisors(an))
            for (int s : {1, -1}) {
                Rational cand = rational(s * num, den);
                if (std::find(roots.begin(), roots.end(), cand) != roots.end()) continue;
                if (sgn(p.eval(cand)) == 0) roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace gitmilnor
