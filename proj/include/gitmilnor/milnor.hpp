#pragma once

#include <optional>
#include <vector>

#include "gitmilnor/linalg.hpp"

namespace gitmilnor {

/// Raised when the span of the first partials has rank below n. When the
/// degeneracy is visible in the given coordinates (some partial is
/// identically zero), `certificate` carries a destabilizing weight vector for
/// the form itself: -(n-1) on a missing variable and 1 elsewhere.
struct DegenerateGradient : Error {
    DegenerateGradient(int rank_, std::optional<OnePS> cert)
        : Error("gradient point is not full-dimensional"), rank(rank_), certificate(std::move(cert)) {}
    int rank;
    std::optional<OnePS> certificate;
};

/// Span of the first partial derivatives of F inside the degree-d piece.
inline GradedSubspace gradient_point(const Polynomial& f) {
    if (f.is_zero() || !f.is_homogeneous() || f.degree() < 2)
        throw Error("gradient point expects a homogeneous form of degree >= 2");
    int n = f.n_vars();
    std::vector<Polynomial> parts;
    parts.reserve(static_cast<std::size_t>(n));
    std::optional<OnePS> cert;
    for (int i = 0; i < n; ++i) {
        parts.push_back(partial_derivative(f, i));
        if (parts.back().is_zero() && !cert) {
            std::vector<long long> w(static_cast<std::size_t>(n), 1);
            w[static_cast<std::size_t>(i)] = -(n - 1);
            cert = OnePS(std::move(w));
        }
    }
    GradedSubspace span(n, f.degree() - 1, parts);
    if (span.rank() < n) throw DegenerateGradient(span.rank(), cert);
    return span;
}

/// Coefficients of (1 + t + ... + t^{d-1})^n, the Hilbert function of an
/// Artinian complete intersection of n degree-d forms.
inline std::vector<long long> expected_hilbert(int n, int d) {
    std::vector<long long> h{1};
    std::vector<long long> block(static_cast<std::size_t>(d), 1);
    for (int i = 0; i < n; ++i) {
        std::vector<long long> next(h.size() + block.size() - 1, 0);
        for (std::size_t a = 0; a < h.size(); ++a)
            for (std::size_t b = 0; b < block.size(); ++b) next[a + b] += h[a];
        h = std::move(next);
    }
    return h;
}

/// dim (S/(g_1,...,g_k))_m for m = 0..m_max.
inline std::vector<long long> hilbert_function(const std::vector<Polynomial>& generators, int m_max) {
    if (generators.empty()) throw Error("hilbert_function needs generators");
    int n = generators.front().n_vars();
    int d = generators.front().homogeneous_degree();
    std::vector<long long> h;
    h.reserve(static_cast<std::size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m) {
        if (m < d) {
            h.push_back(dim_sym(n, m));
        } else {
            GradedSubspace piece = span_of_multiples(generators, m);
            h.push_back(piece.ambient_dim() - piece.rank());
        }
    }
    return h;
}

struct RegularityReport {
    bool regular = false;
    std::vector<long long> hilbert;   // computed through degree n(d-1)+1
    std::vector<long long> expected;  // (1+t+...+t^{d-1})^n, padded with the trailing zero
};

/// n equal-degree forms are a regular sequence iff the quotient vanishes in
/// degree n(d-1)+1; for the gradient of a form this is the smoothness test.
inline RegularityReport is_regular_sequence(const std::vector<Polynomial>& generators) {
    if (generators.empty()) throw Error("is_regular_sequence needs generators");
    int n = generators.front().n_vars();
    if (static_cast<int>(generators.size()) != n)
        throw Error("is_regular_sequence expects exactly n_vars generators");
    int d = generators.front().homogeneous_degree();
    int nu = n * (d - 1);
    RegularityReport rep;
    rep.hilbert = hilbert_function(generators, nu + 1);
    rep.expected = expected_hilbert(n, d);
    rep.expected.resize(static_cast<std::size_t>(nu) + 2, 0);
    rep.regular = rep.hilbert.back() == 0;
    return rep;
}

struct HilbertPoint {
    int m;
    GradedSubspace ideal_piece;
    long long codim;
};

/// The degree-m piece of the ideal together with its codimension. With
/// require_regular (the default) the generators must be a regular sequence.
/// Degrees below the generator degree give the zero piece.
inline HilbertPoint hilbert_point(const std::vector<Polynomial>& generators, int m, bool require_regular = true) {
    if (generators.empty()) throw Error("hilbert_point needs generators");
    if (require_regular && !is_regular_sequence(generators).regular)
        throw NotRegular("generators are not a regular sequence");
    int n = generators.front().n_vars();
    int d = generators.front().homogeneous_degree();
    GradedSubspace piece = m < d ? GradedSubspace(n, m, {}) : span_of_multiples(generators, m);
    long long codim = piece.ambient_dim() - piece.rank();
    return HilbertPoint{m, std::move(piece), codim};
}

enum class Normalization { hessian, monomial };

/// Degree-nu dual form apolar to the codimension-one piece of the ideal,
/// nu = n(d-1). Unique up to scale; the normalization pins the scale.
struct AssociatedForm {
    DualPolynomial dual_form;
    Normalization normalization;
};

namespace detail {

/// Kernel of the polar pairing against (I_W)_nu, from the reference echelon
/// basis: with one non-pivot column m0, every row is (pivot) + alpha * m0, so
/// the annihilating functional is c_{m0} = 1/m0!, c_p = -alpha/p!.
inline DualPolynomial apolar_kernel(const GradedSubspace& ideal_nu) {
    if (ideal_nu.codim() != 1) throw NotRegular("ideal piece does not have codimension one");
    int n = ideal_nu.n_vars();
    OnePS ref = OnePS::zero(n);
    auto cols = detail::sorted_columns(n, ideal_nu.degree(), ref);
    std::vector<Monomial> pivots;
    for (const auto& b : ideal_nu.basis()) pivots.push_back(initial_monomial(ref, b));
    Monomial m0;
    bool found = false;
    for (const auto& c : cols) {
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) {
            if (found) throw MultipleMissing("more than one non-pivot monomial in a codimension-one piece");
            m0 = c;
            found = true;
        }
    }
    if (!found) throw MultipleMissing("no missing monomial in a codimension-one piece");
    auto inv_fact = [](const Monomial& m) -> Rational {
        mpz_class f = 1;
        for (int e : m.exp) f *= factorial(static_cast<unsigned long>(e));
        return Rational(1) / Rational(f);
    };
    DualPolynomial a(n);
    a.add_term(m0, inv_fact(m0));
    for (const auto& b : ideal_nu.basis()) {
        Monomial p = initial_monomial(ref, b);
        Rational alpha = b.coeff(m0);
        if (sgn(alpha) != 0) a.add_term(p, -alpha * inv_fact(p));
    }
    return a;
}

inline DualPolynomial monomial_normalize(DualPolynomial a) {
    Rational lead = a.terms().begin()->second;  // canonical order puts the grlex-first term in front
    return a * (1 / lead);
}

}  // namespace detail

/// Associated form of a regular sequence, scaled so the grlex-first nonzero
/// coefficient is 1.
inline AssociatedForm associated_form(const std::vector<Polynomial>& generators) {
    auto reg = is_regular_sequence(generators);
    if (!reg.regular) throw NotRegular("associated form needs a regular sequence");
    int n = generators.front().n_vars();
    int d = generators.front().homogeneous_degree();
    GradedSubspace ideal_nu = span_of_multiples(generators, n * (d - 1));
    return AssociatedForm{detail::monomial_normalize(detail::apolar_kernel(ideal_nu)), Normalization::monomial};
}

/// Associated form of a smooth form F, scaled to take value 1 on the Hessian
/// polynomial of F.
inline AssociatedForm associated_form(const Polynomial& f) {
    int n = f.n_vars();
    std::vector<Polynomial> gens;
    gens.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) gens.push_back(partial_derivative(f, i));
    auto reg = is_regular_sequence(gens);
    if (!reg.regular) throw NotRegular("form is singular: partials are not a regular sequence");
    int d = f.degree() - 1;
    GradedSubspace ideal_nu = span_of_multiples(gens, n * (d - 1));
    DualPolynomial a = detail::apolar_kernel(ideal_nu);
    Rational on_hessian = polar_pair(a, hessian(f));
    if (sgn(on_hessian) == 0) throw Error("hessian pairs to zero against the apolar kernel");
    return AssociatedForm{a * (1 / on_hessian), Normalization::hessian};
}

struct SocleReport {
    Monomial m0;            // the unique degree-nu monomial missing from the pivot set
    bool dominates;         // m0 >= x_1^{d-1}...x_n^{d-1} in the lambda order
    long long m0_weight;
    long long balanced_weight;
    PivotSet pivots;
};

/// Missing-monomial report for the top graded piece under a sorted weight
/// order, computed from the ordered echelon pivots of (I_W)_nu.
inline SocleReport socle_monomial_report(const GradedSubspace& ideal_nu, int d, const OnePS& lambda) {
    if (!lambda.is_sorted()) throw PreconditionFailed("socle report expects ascending weights");
    if (lambda.size() != ideal_nu.n_vars()) throw DimensionMismatch("weight vector size");
    int n = ideal_nu.n_vars();
    if (ideal_nu.degree() != n * (d - 1)) throw DegreeMismatch("ideal piece is not the socle-degree piece");
    if (ideal_nu.codim() != 1) throw MultipleMissing("socle piece does not have codimension one");
    auto red = reduce_under_order(ideal_nu, lambda);
    auto cols = detail::sorted_columns(n, ideal_nu.degree(), lambda);
    // pivots ascend in the same order as cols; single scan finds the gap
    SocleReport rep;
    std::size_t pi = 0;
    bool found = false;
    for (const auto& c : cols) {
        if (pi < red.pivots.monomials.size() && red.pivots.monomials[pi] == c) {
            ++pi;
            continue;
        }
        if (found) throw MultipleMissing("more than one monomial missing from the pivot set");
        rep.m0 = c;
        found = true;
    }
    if (!found) throw MultipleMissing("no monomial missing from the pivot set");
    Monomial balanced(std::vector<int>(static_cast<std::size_t>(n), d - 1));
    rep.dominates = lambda_compare(lambda, rep.m0, balanced) != std::strong_ordering::less;
    rep.m0_weight = weight(lambda, rep.m0);
    rep.balanced_weight = weight(lambda, balanced);
    rep.pivots = std::move(red.pivots);
    return rep;
}

inline SocleReport socle_monomial_report(const std::vector<Polynomial>& generators, const OnePS& lambda) {
    auto reg = is_regular_sequence(generators);
    if (!reg.regular) throw NotRegular("socle report needs a regular sequence");
    int n = generators.front().n_vars();
    int d = generators.front().homogeneous_degree();
    return socle_monomial_report(span_of_multiples(generators, n * (d - 1)), d, lambda);
}

/// Independent route to the missing monomial: it is the lambda-largest
/// monomial in the support of the annihilating functional, i.e. of the
/// (unnormalized) associated form. Cross-checks the pivot computation.
inline Monomial socle_monomial_via_inverse_system(const DualPolynomial& assoc, const OnePS& lambda) {
    if (assoc.is_zero()) throw ZeroPolynomial("associated form is zero");
    const Monomial* best = nullptr;
    for (const auto& [m, c] : assoc.terms())
        if (!best || lambda_compare(lambda, *best, m) == std::strong_ordering::less) best = &m;
    return *best;
}

}  // namespace gitmilnor
