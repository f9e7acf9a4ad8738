#pragma once

#include <vector>

#include "gitmilnor/rational.hpp"

namespace gitmilnor::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
    Status status = Status::infeasible;
    std::vector<Rational> x;  // primal solution (original variables)
    std::vector<Rational> y;  // row prices: dual optimum at optimality, Farkas certificate when infeasible
    Rational objective{0};
};

/// Two-phase primal simplex with Bland's rule, exact rational arithmetic.
///
/// Maximizes c.x subject to A x = b, x >= 0. When infeasible, y satisfies
/// y.A <= 0 componentwise with y.b > 0. When optimal, y is the dual solution
/// (y.A >= c on nonbasic structure, y.b == objective). Artificial columns are
/// kept through phase two (barred from entering) so row prices can be read
/// off the final tableau.
inline Result solve_standard(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                             const std::vector<Rational>& c) {
    const int m = static_cast<int>(a.size());
    const int n = m > 0 ? static_cast<int>(a[0].size()) : static_cast<int>(c.size());
    std::vector<bool> flipped(static_cast<std::size_t>(m), false);
    for (int i = 0; i < m; ++i)
        if (sgn(b[static_cast<std::size_t>(i)]) < 0) {
            flipped[static_cast<std::size_t>(i)] = true;
            b[static_cast<std::size_t>(i)] = -b[static_cast<std::size_t>(i)];
            for (auto& v : a[static_cast<std::size_t>(i)]) v = -v;
        }

    const int width = n + m;  // real columns then artificials
    std::vector<std::vector<Rational>> t(static_cast<std::size_t>(m),
                                         std::vector<Rational>(static_cast<std::size_t>(width) + 1, Rational(0)));
    std::vector<int> basis(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        t[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1;
        t[static_cast<std::size_t>(i)][static_cast<std::size_t>(width)] = b[static_cast<std::size_t>(i)];
        basis[static_cast<std::size_t>(i)] = n + i;
    }

    auto pivot = [&](int row, int col) {
        auto& prow = t[static_cast<std::size_t>(row)];
        Rational inv = 1 / prow[static_cast<std::size_t>(col)];
        for (auto& v : prow) v *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            auto& r = t[static_cast<std::size_t>(i)];
            Rational f = r[static_cast<std::size_t>(col)];
            if (sgn(f) == 0) continue;
            for (int j = 0; j <= width; ++j) r[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
        }
        basis[static_cast<std::size_t>(row)] = col;
    };

    // reduced costs r_j = cost_j - sum_i cost_{basis_i} t[i][j], for minimization
    auto reduced_costs = [&](const std::vector<Rational>& cost) {
        std::vector<Rational> r(static_cast<std::size_t>(width) + 1, Rational(0));
        for (int j = 0; j <= width; ++j) {
            Rational v = j < width ? cost[static_cast<std::size_t>(j)] : Rational(0);
            for (int i = 0; i < m; ++i) {
                const Rational& cb = cost[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
                if (sgn(cb) != 0) v -= cb * t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
            r[static_cast<std::size_t>(j)] = v;
        }
        return r;
    };

    // Bland: smallest eligible entering column, smallest basis index on ratio ties.
    auto run = [&](std::vector<Rational>& red, int max_col) -> bool {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < max_col; ++j)
                if (sgn(red[static_cast<std::size_t>(j)]) < 0) {
                    enter = j;
                    break;
                }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int i = 0; i < m; ++i) {
                const Rational& aij = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
                if (sgn(aij) <= 0) continue;
                Rational ratio = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(width)] / aij;
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;  // unbounded direction
            Rational re = red[static_cast<std::size_t>(enter)];
            pivot(leave, enter);
            const auto& prow = t[static_cast<std::size_t>(leave)];  // now normalized
            for (int j = 0; j <= width; ++j) red[static_cast<std::size_t>(j)] -= re * prow[static_cast<std::size_t>(j)];
        }
    };

    Result res;

    // Phase one: minimize the artificial total.
    std::vector<Rational> phase1(static_cast<std::size_t>(width), Rational(0));
    for (int j = n; j < width; ++j) phase1[static_cast<std::size_t>(j)] = 1;
    auto red = reduced_costs(phase1);
    run(red, n);  // artificials never need to re-enter
    Rational infeas(0);
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<std::size_t>(i)] >= n) infeas += t[static_cast<std::size_t>(i)][static_cast<std::size_t>(width)];
    auto row_prices = [&](const std::vector<Rational>& red_row, const Rational& art_cost) {
        std::vector<Rational> y(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            y[static_cast<std::size_t>(i)] = art_cost - red_row[static_cast<std::size_t>(n + i)];
            if (flipped[static_cast<std::size_t>(i)]) y[static_cast<std::size_t>(i)] = -y[static_cast<std::size_t>(i)];
        }
        return y;
    };

    if (sgn(infeas) > 0) {
        res.status = Status::infeasible;
        res.objective = infeas;
        res.y = row_prices(red, Rational(1));
        return res;
    }

    // Degenerate-basis cleanup: artificials still basic sit at zero; pivot them
    // out on any real column so later pivots cannot lift them. An all-zero row
    // is redundant and can keep its artificial (it never changes again).
    for (int i = 0; i < m; ++i) {
        if (basis[static_cast<std::size_t>(i)] < n) continue;
        for (int j = 0; j < n; ++j)
            if (sgn(t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) != 0) {
                pivot(i, j);
                break;
            }
    }

    // Phase two: maximize c.x == minimize (-c).x, artificials barred.
    std::vector<Rational> phase2(static_cast<std::size_t>(width), Rational(0));
    for (int j = 0; j < n; ++j) phase2[static_cast<std::size_t>(j)] = -c[static_cast<std::size_t>(j)];
    red = reduced_costs(phase2);
    if (!run(red, n)) {
        res.status = Status::unbounded;
        return res;
    }

    res.status = Status::optimal;
    res.x.assign(static_cast<std::size_t>(n), Rational(0));
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<std::size_t>(i)] < n)
            res.x[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] =
                t[static_cast<std::size_t>(i)][static_cast<std::size_t>(width)];
    res.objective = 0;
    for (int j = 0; j < n; ++j) res.objective += c[static_cast<std::size_t>(j)] * res.x[static_cast<std::size_t>(j)];
    // maximization duals: y = c_B B^{-1}, read through the artificial columns
    res.y.assign(static_cast<std::size_t>(m), Rational(0));
    for (int i = 0; i < m; ++i) {
        res.y[static_cast<std::size_t>(i)] = red[static_cast<std::size_t>(n + i)];
        if (flipped[static_cast<std::size_t>(i)]) res.y[static_cast<std::size_t>(i)] = -res.y[static_cast<std::size_t>(i)];
    }
    return res;
}

}  // namespace gitmilnor::lp
