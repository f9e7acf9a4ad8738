#pragma once

#include <vector>

#include "gitmilnor/rational.hpp"

namespace gitmilnor {

/// Small dense matrix over the rationals. Used for coordinate frames,
/// certificates, and minor computations; never for the graded linear algebra
/// (that lives in linalg.hpp with its own column bookkeeping).
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(cols), Rational(0))) {}

    static QMatrix identity(int n) {
        QMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    /// Permutation matrix P with (P x)_i = x_{perm[i]}; substituting variables
    /// through it renames x_i to x_{perm[i]}.
    static QMatrix permutation(const std::vector<int>& perm) {
        QMatrix m(static_cast<int>(perm.size()), static_cast<int>(perm.size()));
        for (std::size_t i = 0; i < perm.size(); ++i) m.at(static_cast<int>(i), perm[i]) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int i, int j) { return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    const Rational& at(int i, int j) const { return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

    QMatrix operator*(const QMatrix& o) const {
        if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape");
        QMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if (sgn(at(i, k)) == 0) continue;
                for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
            }
        return r;
    }

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

    Rational det() const {
        if (rows_ != cols_) throw DimensionMismatch("determinant of non-square matrix");
        auto m = a_;
        Rational d(1);
        int n = rows_;
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (sgn(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return Rational(0);
            if (piv != col) {
                std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(col)]);
                d = -d;
            }
            auto& prow = m[static_cast<std::size_t>(col)];
            d *= prow[static_cast<std::size_t>(col)];
            for (int r = col + 1; r < n; ++r) {
                auto& row = m[static_cast<std::size_t>(r)];
                if (sgn(row[static_cast<std::size_t>(col)]) == 0) continue;
                Rational f = row[static_cast<std::size_t>(col)] / prow[static_cast<std::size_t>(col)];
                for (int j = col; j < n; ++j) row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
            }
        }
        return d;
    }

    bool is_unit_upper_triangular() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                if (i == j && at(i, j) != 1) return false;
                if (i > j && sgn(at(i, j)) != 0) return false;
            }
        return true;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::vector<Rational>> a_;
};

}  // namespace gitmilnor
