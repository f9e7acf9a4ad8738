#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gitmilnor/milnor.hpp"
#include "gitmilnor/stability.hpp"

namespace gitmilnor {

enum class Family { fermat, random_smooth, random_sparse, binary_catalog, disjoint_sums };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::fermat: return "fermat";
        case Family::random_smooth: return "random-smooth";
        case Family::random_sparse: return "random-sparse";
        case Family::binary_catalog: return "binary-catalog";
        default: return "disjoint-sums";
    }
}

inline Family family_from_string(const std::string& s) {
    if (s == "fermat") return Family::fermat;
    if (s == "random-smooth") return Family::random_smooth;
    if (s == "random-sparse") return Family::random_sparse;
    if (s == "binary-catalog") return Family::binary_catalog;
    if (s == "disjoint-sums") return Family::disjoint_sums;
    throw Error("unknown corpus family '" + s + "'");
}

struct CorpusSpec {
    Family family = Family::random_sparse;
    int n = 2;
    int form_degree = 3;      // degree of the generated forms
    int count = 10;           // ignored by fermat and binary-catalog
    std::uint64_t seed = 1;
    int sparsity_percent = 0;  // chance of keeping each monomial; 0 picks the family default
};

inline Polynomial fermat_form(int n, int degree) {
    Polynomial f(n);
    for (int i = 0; i < n; ++i) {
        Monomial m(std::vector<int>(static_cast<std::size_t>(n), 0));
        m.exp[static_cast<std::size_t>(i)] = degree;
        f.add_term(m, Rational(1));
    }
    return f;
}

namespace detail {

constexpr int kResampleCap = 1000;

/// Nonzero coefficients drawn uniformly from {-3,...,3} \ {0}; each monomial
/// kept with probability keep_percent/100.
inline Polynomial random_form(int n, int degree, std::mt19937_64& rng, int keep_percent = 70) {
    for (int attempt = 0; attempt < kResampleCap; ++attempt) {
        Polynomial f(n);
        for (const auto& m : monomials_of_degree(n, degree)) {
            if (static_cast<int>(rand_below(rng, 100)) >= keep_percent) continue;
            long c = static_cast<long>(rand_below(rng, 6)) - 3;
            if (c >= 0) ++c;  // skip zero
            f.add_term(m, Rational(c));
        }
        if (!f.is_zero()) return f;
    }
    throw Error("resampling cap hit while generating a nonzero form");
}

inline bool has_regular_gradient(const Polynomial& f) {
    std::vector<Polynomial> parts;
    for (int i = 0; i < f.n_vars(); ++i) {
        parts.push_back(partial_derivative(f, i));
        if (parts.back().is_zero()) return false;
    }
    return is_regular_sequence(parts).regular;
}

inline Polynomial random_smooth_form(int n, int degree, std::mt19937_64& rng, int keep_percent = 70) {
    for (int attempt = 0; attempt < kResampleCap; ++attempt) {
        Polynomial f = random_form(n, degree, rng, keep_percent);
        if (has_regular_gradient(f)) return f;
    }
    throw Error("resampling cap hit while generating a smooth form");
}

inline Polynomial embed(const Polynomial& f, int n, int offset) {
    Polynomial out(n);
    for (const auto& [m, c] : f.terms()) {
        Monomial big(std::vector<int>(static_cast<std::size_t>(n), 0));
        for (int i = 0; i < m.n_vars(); ++i) big.exp[static_cast<std::size_t>(offset + i)] = m[i];
        out.add_term(big, c);
    }
    return out;
}

}  // namespace detail

/// All binary forms of the given degree with coefficients in {-2,...,2},
/// deduplicated by rescaling (content and leading sign), in a fixed order.
inline std::vector<Polynomial> binary_catalog(int degree) {
    std::set<std::vector<long long>> canon;
    std::vector<long long> coeffs(static_cast<std::size_t>(degree) + 1, -2);
    for (;;) {
        bool all_zero = true;
        for (long long c : coeffs)
            if (c != 0) all_zero = false;
        if (!all_zero) {
            long long content = 0;
            long long lead_sign = 0;
            for (long long c : coeffs) {
                content = std::gcd(content, c < 0 ? -c : c);
                if (lead_sign == 0 && c != 0) lead_sign = c > 0 ? 1 : -1;
            }
            auto key = coeffs;
            for (auto& c : key) c = c * lead_sign / content;
            canon.insert(std::move(key));
        }
        int i = 0;
        while (i <= degree && coeffs[static_cast<std::size_t>(i)] == 2) coeffs[static_cast<std::size_t>(i++)] = -2;
        if (i > degree) break;
        ++coeffs[static_cast<std::size_t>(i)];
    }
    std::vector<Polynomial> out;
    out.reserve(canon.size());
    for (const auto& key : canon) {
        Polynomial f(2);
        for (int j = 0; j <= degree; ++j) {
            if (key[static_cast<std::size_t>(j)] == 0) continue;
            Monomial m(std::vector<int>{degree - j, j});
            f.add_term(m, Rational(static_cast<long>(key[static_cast<std::size_t>(j)])));
        }
        out.push_back(std::move(f));
    }
    return out;
}

inline std::vector<Polynomial> generate_corpus(const CorpusSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::vector<Polynomial> out;
    switch (spec.family) {
        case Family::fermat:
            out.push_back(fermat_form(spec.n, spec.form_degree));
            break;
        case Family::binary_catalog:
            out = binary_catalog(spec.form_degree);
            break;
        case Family::random_smooth: {
            int keep = spec.sparsity_percent > 0 ? spec.sparsity_percent : 70;
            for (int i = 0; i < spec.count; ++i)
                out.push_back(detail::random_smooth_form(spec.n, spec.form_degree, rng, keep));
            break;
        }
        case Family::random_sparse: {
            int keep = spec.sparsity_percent > 0 ? spec.sparsity_percent : 50;
            for (int i = 0; i < spec.count; ++i)
                out.push_back(detail::random_form(spec.n, spec.form_degree, rng, keep));
            break;
        }
        case Family::disjoint_sums:
            for (int i = 0; i < spec.count; ++i) {
                if (spec.n < 2) throw Error("disjoint sums need at least two variables");
                int r = 1 + static_cast<int>(detail::rand_below(rng, static_cast<std::uint64_t>(spec.n - 1)));
                Polynomial g = detail::random_smooth_form(r, spec.form_degree, rng);
                Polynomial h = detail::random_smooth_form(spec.n - r, spec.form_degree, rng);
                out.push_back(detail::embed(g, spec.n, 0) + detail::embed(h, spec.n, r));
            }
            break;
    }
    return out;
}

/// Random regular sequences of length n in degree d, resampled until regular.
inline std::vector<std::vector<Polynomial>> generate_regular_sequences(int n, int d, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Polynomial>> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        bool done = false;
        for (int attempt = 0; attempt < detail::kResampleCap && !done; ++attempt) {
            std::vector<Polynomial> gens;
            for (int j = 0; j < n; ++j) gens.push_back(detail::random_form(n, d, rng));
            if (is_regular_sequence(gens).regular) {
                out.push_back(std::move(gens));
                done = true;
            }
        }
        if (!done) throw Error("resampling cap hit while generating a regular sequence");
    }
    return out;
}

}  // namespace gitmilnor
