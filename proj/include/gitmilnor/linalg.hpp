#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "gitmilnor/lambda.hpp"
#include "gitmilnor/polynomial.hpp"

namespace gitmilnor {

/// The k initial monomials of a graded subspace under a weight order,
/// strictly increasing, together with their total weight.
struct PivotSet {
    std::vector<Monomial> monomials;
    long long weight = 0;

    friend bool operator==(const PivotSet&, const PivotSet&) = default;
};

namespace detail {

/// In-place reduced row echelon form with the given column order.
/// Returns the pivot column indices in increasing order.
inline std::vector<int> rref(std::vector<std::vector<Rational>>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (sgn(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(r)]);
        auto& prow = m[static_cast<std::size_t>(r)];
        Rational inv = 1 / prow[static_cast<std::size_t>(c)];
        for (int j = c; j < cols; ++j) prow[static_cast<std::size_t>(j)] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            auto& row = m[static_cast<std::size_t>(i)];
            Rational f = row[static_cast<std::size_t>(c)];
            if (sgn(f) == 0) continue;
            for (int j = c; j < cols; ++j) row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(pivots.size());
    return pivots;
}

inline std::vector<Monomial> sorted_columns(int n_vars, int degree, const OnePS& lambda) {
    auto cols = monomials_of_degree(n_vars, degree);
    std::sort(cols.begin(), cols.end(), [&](const Monomial& a, const Monomial& b) {
        return lambda_compare(lambda, a, b) == std::strong_ordering::less;
    });
    return cols;
}

inline std::vector<std::vector<Rational>> coefficient_matrix(const std::vector<Polynomial>& polys,
                                                             const std::vector<Monomial>& cols) {
    std::map<Monomial, int, GrlexGreater> index;
    for (std::size_t j = 0; j < cols.size(); ++j) index.emplace(cols[j], static_cast<int>(j));
    std::vector<std::vector<Rational>> m;
    m.reserve(polys.size());
    for (const auto& p : polys) {
        std::vector<Rational> row(cols.size(), Rational(0));
        for (const auto& [mon, c] : p.terms()) row[static_cast<std::size_t>(index.at(mon))] = c;
        m.push_back(std::move(row));
    }
    return m;
}

inline std::vector<Polynomial> rows_to_polynomials(int n_vars, const std::vector<std::vector<Rational>>& m,
                                                   const std::vector<Monomial>& cols) {
    std::vector<Polynomial> out;
    out.reserve(m.size());
    for (const auto& row : m) {
        Polynomial p(n_vars);
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (sgn(row[j]) != 0) p.add_term(cols[j], row[j]);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace detail

/// A subspace of the degree-m graded piece of the polynomial ring, stored as
/// a reduced row echelon basis under the reference column order. The stored
/// basis only depends on the row space, so equality of subspaces is equality
/// of the stored data. Rank deficiency relative to a spanning set is allowed
/// and preserved; it is the signal for non-regular sequences downstream.
class GradedSubspace {
  public:
    GradedSubspace(int n_vars, int degree, const std::vector<Polynomial>& spanning)
        : nvars_(n_vars), degree_(degree) {
        std::vector<Polynomial> nonzero;
        for (const auto& p : spanning) {
            if (p.is_zero()) continue;
            if (p.n_vars() != n_vars) throw DimensionMismatch("subspace element has wrong variable count");
            if (!p.is_homogeneous() || p.degree() != degree)
                throw DegreeMismatch("subspace elements must be homogeneous of the stated degree");
            nonzero.push_back(p);
        }
        auto cols = detail::sorted_columns(nvars_, degree_, OnePS::zero(nvars_));
        auto m = detail::coefficient_matrix(nonzero, cols);
        detail::rref(m);
        basis_ = detail::rows_to_polynomials(nvars_, m, cols);
    }

    int n_vars() const { return nvars_; }
    int degree() const { return degree_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    long long ambient_dim() const { return dim_sym(nvars_, degree_); }
    long long codim() const { return ambient_dim() - rank(); }

    /// Reduced echelon basis under the reference order.
    const std::vector<Polynomial>& basis() const { return basis_; }

    /// Membership by reduction against the echelon basis.
    bool contains(const Polynomial& p) const {
        if (p.is_zero()) return true;
        if (p.n_vars() != nvars_ || !p.is_homogeneous() || p.degree() != degree_) return false;
        Polynomial r = p;
        OnePS ref = OnePS::zero(nvars_);
        for (const auto& b : basis_) {
            if (r.is_zero()) return true;
            Monomial pivot = initial_monomial(ref, b);
            Rational c = r.coeff(pivot);
            if (sgn(c) != 0) r -= c * b;
        }
        return r.is_zero();
    }

  private:
    int nvars_;
    int degree_;
    std::vector<Polynomial> basis_;
};

struct LambdaReduction {
    PivotSet pivots;
    std::vector<Polynomial> basis;  // reduced echelon under the lambda order
};

/// Ordered Gaussian elimination: columns ascend under the lambda order, so the
/// pivot columns are exactly the initial monomials of the nonzero elements of
/// W and their total weight is the weight of the cheapest nonzero Pluecker
/// coordinate. Output only depends on the subspace, not its presentation.
inline LambdaReduction reduce_under_order(const GradedSubspace& w, const OnePS& lambda) {
    auto cols = detail::sorted_columns(w.n_vars(), w.degree(), lambda);
    auto m = detail::coefficient_matrix(w.basis(), cols);
    auto pivot_cols = detail::rref(m);
    LambdaReduction out;
    out.pivots.weight = 0;
    for (int c : pivot_cols) {
        out.pivots.monomials.push_back(cols[static_cast<std::size_t>(c)]);
        out.pivots.weight += weight(lambda, cols[static_cast<std::size_t>(c)]);
    }
    out.basis = detail::rows_to_polynomials(w.n_vars(), m, cols);
    return out;
}

/// Hilbert-Mumford weight of W against lambda: positive means lambda
/// destabilizes W, zero means W is strictly semistable for lambda.
inline long long hm_weight(const GradedSubspace& w, const OnePS& lambda) {
    return reduce_under_order(w, lambda).pivots.weight;
}

/// Degree-m piece of the ideal generated by equal-degree forms: the span of
/// all monomial multiples x^a g_i with |a| = m - d.
inline GradedSubspace span_of_multiples(const std::vector<Polynomial>& generators, int m) {
    if (generators.empty()) throw Error("span_of_multiples needs at least one generator");
    int n = generators.front().n_vars();
    int d = -1;
    for (const auto& g : generators) {
        if (g.is_zero()) throw ZeroPolynomial("zero generator");
        if (g.n_vars() != n) throw DimensionMismatch("generators have mixed variable counts");
        if (!g.is_homogeneous()) throw DegreeMismatch("generators must be homogeneous");
        if (d < 0) d = g.degree();
        if (g.degree() != d) throw DegreeMismatch("generators must share one degree");
    }
    if (m < d) throw DegreeMismatch("requested degree is below the generator degree");
    std::vector<Polynomial> products;
    for (const auto& a : monomials_of_degree(n, m - d)) {
        Polynomial xa = Polynomial::term(n, a, Rational(1));
        for (const auto& g : generators) products.push_back(xa * g);
    }
    return GradedSubspace(n, m, products);
}

inline bool subspace_equal(const GradedSubspace& a, const GradedSubspace& b) {
    if (a.n_vars() != b.n_vars() || a.degree() != b.degree())
        throw DimensionMismatch("subspace comparison across different graded pieces");
    return a.basis() == b.basis();
}

}  // namespace gitmilnor
