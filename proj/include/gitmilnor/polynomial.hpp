#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gitmilnor/monomial.hpp"
#include "gitmilnor/qmatrix.hpp"
#include "gitmilnor/rational.hpp"

namespace gitmilnor {

/// Multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a canonical graded-lex (largest first) map with no stored
/// zero coefficients, so equality and iteration order are deterministic. The
/// zero polynomial carries an explicit variable count and an empty term map;
/// its degree is undefined and operations that need a homogeneous degree
/// reject it. Values are immutable in spirit: every operation returns a new
/// polynomial, so sharing across threads is safe.
class Polynomial {
  public:
    using TermMap = std::map<Monomial, Rational, GrlexGreater>;

    explicit Polynomial(int n_vars) : nvars_(n_vars) {
        if (n_vars <= 0) throw DimensionMismatch("polynomial needs a positive variable count");
    }

    static Polynomial term(int n_vars, const Monomial& m, const Rational& c) {
        Polynomial p(n_vars);
        p.add_term(m, c);
        return p;
    }

    int n_vars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Accumulating insert; erases the term if the sum cancels.
    void add_term(const Monomial& m, const Rational& c) {
        if (m.n_vars() != nvars_) throw DimensionMismatch("term has wrong variable count");
        for (int a : m.exp)
            if (a < 0) throw Error("negative exponent");
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    /// Degree of the leading term. Rejects the zero polynomial.
    int degree() const {
        if (terms_.empty()) throw ZeroPolynomial("degree of the zero polynomial is undefined");
        return terms_.begin()->first.degree();
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) return false;
        return true;
    }

    int homogeneous_degree() const {
        if (!is_homogeneous()) throw Error("polynomial is not homogeneous");
        return degree();
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_same_vars(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_same_vars(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Polynomial& operator*=(const Rational& s) {
        if (sgn(s) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_same_vars(b);
        Polynomial r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

  private:
    void check_same_vars(const Polynomial& o) const {
        if (nvars_ != o.nvars_) throw DimensionMismatch("variable counts differ");
    }

    int nvars_;
    TermMap terms_;
};

/// A polynomial read in the dual variables u_i = d/dx_i. Same representation;
/// the interpretation only matters to the polar pairing and to printing.
using DualPolynomial = Polynomial;

inline Polynomial partial_derivative(const Polynomial& f, int var) {
    if (var < 0 || var >= f.n_vars()) throw DimensionMismatch("variable index out of range");
    Polynomial r(f.n_vars());
    for (const auto& [m, c] : f.terms()) {
        int a = m[var];
        if (a == 0) continue;
        Monomial e = m;
        e.exp[static_cast<std::size_t>(var)] = a - 1;
        r.add_term(e, c * a);
    }
    return r;
}

/// Substitute x_i -> sum_j M[i][j] x_j for an arbitrary square matrix M.
inline Polynomial apply_linear(const Polynomial& f, const QMatrix& m) {
    int n = f.n_vars();
    if (m.rows() != n || m.cols() != n) throw DimensionMismatch("substitution matrix shape");
    std::vector<Polynomial> image;
    image.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Polynomial li(n);
        for (int j = 0; j < n; ++j) {
            if (sgn(m.at(i, j)) == 0) continue;
            Monomial xj(std::vector<int>(static_cast<std::size_t>(n), 0));
            xj.exp[static_cast<std::size_t>(j)] = 1;
            li.add_term(xj, m.at(i, j));
        }
        image.push_back(std::move(li));
    }
    // power cache per variable, filled on demand
    std::vector<std::vector<Polynomial>> pow(static_cast<std::size_t>(n));
    auto power = [&](int i, int k) -> const Polynomial& {
        auto& cache = pow[static_cast<std::size_t>(i)];
        if (cache.empty()) {
            Polynomial one(n);
            one.add_term(Monomial(std::vector<int>(static_cast<std::size_t>(n), 0)), Rational(1));
            cache.push_back(std::move(one));
        }
        while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * image[static_cast<std::size_t>(i)]);
        return cache[static_cast<std::size_t>(k)];
    };
    Polynomial r(n);
    for (const auto& [mon, c] : f.terms()) {
        Polynomial t(n);
        t.add_term(Monomial(std::vector<int>(static_cast<std::size_t>(n), 0)), c);
        for (int i = 0; i < n; ++i)
            if (mon[i] > 0) t = t * power(i, mon[i]);
        r += t;
    }
    return r;
}

/// Unit upper-triangular change of coordinates
/// x_i -> x_i + sum_{j>i} c_{ij} x_j. Determinant is 1 by construction.
class UpperTriangularChange {
  public:
    explicit UpperTriangularChange(QMatrix m) : m_(std::move(m)) {
        if (!m_.is_unit_upper_triangular()) throw Error("not a unit upper-triangular matrix");
    }

    static UpperTriangularChange identity(int n) { return UpperTriangularChange(QMatrix::identity(n)); }

    int n_vars() const { return m_.rows(); }
    const QMatrix& matrix() const { return m_; }
    bool is_identity() const { return m_ == QMatrix::identity(m_.rows()); }

    const Rational& coefficient(int i, int j) const {
        if (!(0 <= i && i < j && j < m_.rows())) throw DimensionMismatch("coefficient index must satisfy i < j");
        return m_.at(i, j);
    }
    void set_coefficient(int i, int j, const Rational& c) {
        if (!(0 <= i && i < j && j < m_.rows())) throw DimensionMismatch("coefficient index must satisfy i < j");
        m_.at(i, j) = c;
    }

  private:
    QMatrix m_;
};

/// compose(a, b) is the change with
/// apply_substitution(F, compose(a, b)) == apply_substitution(apply_substitution(F, a), b).
inline UpperTriangularChange compose(const UpperTriangularChange& first, const UpperTriangularChange& second) {
    return UpperTriangularChange(first.matrix() * second.matrix());
}

inline Polynomial apply_substitution(const Polynomial& f, const UpperTriangularChange& t) {
    return apply_linear(f, t.matrix());
}

/// Determinant of a square matrix of polynomials by Laplace expansion.
/// Sizes here are the number of variables, so this stays tiny.
inline Polynomial poly_det(const std::vector<std::vector<Polynomial>>& m, int n_vars) {
    std::size_t n = m.size();
    if (n == 0) {
        Polynomial one(n_vars);
        one.add_term(Monomial(std::vector<int>(static_cast<std::size_t>(n_vars), 0)), Rational(1));
        return one;
    }
    if (n == 1) return m[0][0];
    Polynomial r(n_vars);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<Polynomial>> minor;
        minor.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Polynomial> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        Polynomial cof = m[0][j] * poly_det(minor, n_vars);
        if (j % 2 == 1) cof = -cof;
        r += cof;
    }
    return r;
}

/// Determinant of the matrix of second partials. For a homogeneous form of
/// degree d+1 in n variables the result, when nonzero, is homogeneous of
/// degree n(d-1).
inline Polynomial hessian(const Polynomial& f) {
    if (!f.is_homogeneous()) throw Error("hessian expects a homogeneous form");
    int n = f.n_vars();
    std::vector<Polynomial> firsts;
    firsts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) firsts.push_back(partial_derivative(f, i));
    std::vector<std::vector<Polynomial>> m;
    m.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<Polynomial> row;
        row.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) row.push_back(partial_derivative(firsts[static_cast<std::size_t>(i)], j));
        m.push_back(std::move(row));
    }
    return poly_det(m, n);
}

/// Polar (apolarity) pairing in the differentiation convention: on monomials
/// <u^a, x^b> = a! [a == b], extended bilinearly. Operands must be homogeneous
/// of equal degree; either being zero pairs to zero.
inline Rational polar_pair(const DualPolynomial& a, const Polynomial& f) {
    if (a.n_vars() != f.n_vars()) throw DimensionMismatch("polar pairing: variable counts differ");
    if (a.is_zero() || f.is_zero()) return Rational(0);
    if (!a.is_homogeneous() || !f.is_homogeneous() || a.degree() != f.degree())
        throw DegreeMismatch("polar pairing expects homogeneous operands of equal degree");
    Rational r(0);
    for (const auto& [m, c] : a.terms()) {
        Rational cf = f.coeff(m);
        if (sgn(cf) == 0) continue;
        mpz_class fac = 1;
        for (int e : m.exp) fac *= factorial(static_cast<unsigned long>(e));
        r += c * cf * Rational(fac);
    }
    return r;
}

}  // namespace gitmilnor
