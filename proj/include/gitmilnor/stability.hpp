#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "gitmilnor/lambda.hpp"
#include "gitmilnor/linalg.hpp"
#include "gitmilnor/milnor.hpp"
#include "gitmilnor/simplex.hpp"
#include "gitmilnor/univariate.hpp"

namespace gitmilnor {

enum class StabilityStatus { stable, strictly_semistable, unstable, unknown };

inline const char* to_string(StabilityStatus s) {
    switch (s) {
        case StabilityStatus::stable: return "stable";
        case StabilityStatus::strictly_semistable: return "strictly-semistable";
        case StabilityStatus::unstable: return "unstable";
        default: return "unknown";
    }
}

enum class StateSource { form_support, grassmannian_pluecker };

/// Weight characters recentered at the barycenter: every point sums to zero.
/// Torus instability of the underlying object is separation of this set from
/// the origin inside the sum-zero hyperplane.
struct StateSet {
    int n = 0;
    StateSource source = StateSource::form_support;
    std::vector<std::vector<Rational>> points;
};

struct BudgetReport {
    std::uint64_t seed = 0;
    int frames_tried = 0;
};

struct StabilityVerdict {
    StabilityStatus status = StabilityStatus::unknown;
    std::optional<QMatrix> frame;                // coordinate change the certificate lives in
    std::optional<OnePS> lambda;                 // separating (unstable) or supporting (strictly semistable)
    std::vector<Rational> convex_combination;    // writes 0 as a convex combination of state points
    std::optional<BudgetReport> budget;          // search exhaustion evidence for `unknown`
};

struct SearchConfig {
    std::uint64_t seed = 1;
    int frame_budget = 16;
    long long entry_bound = 2;
    enum class Strategy { lp_exact, grid } strategy = Strategy::lp_exact;
    long long lambda_bound = 0;  // 0: derive 2(d+1)n when the grid strategy needs it

    void validate() const {
        if (frame_budget < 0 || entry_bound <= 0 || lambda_bound < 0)
            throw PreconditionFailed("search configuration must have nonnegative budgets");
    }
};

inline Rational state_dot(const OnePS& lambda, const std::vector<Rational>& p) {
    Rational r(0);
    for (std::size_t i = 0; i < p.size(); ++i) r += to_rational(lambda[static_cast<int>(i)]) * p[i];
    return r;
}

inline Rational min_state_dot(const StateSet& s, const OnePS& lambda) {
    bool first = true;
    Rational best(0);
    for (const auto& p : s.points) {
        Rational v = state_dot(lambda, p);
        if (first || v < best) best = v;
        first = false;
    }
    return best;
}

/// Support exponents of F recentered by the barycenter (d+1)/n.
inline StateSet form_state(const Polynomial& f) {
    if (f.is_zero()) throw ZeroPolynomial("state of the zero polynomial");
    if (!f.is_homogeneous()) throw Error("form state expects a homogeneous form");
    int n = f.n_vars();
    Rational center = rational(f.degree(), n);
    StateSet s;
    s.n = n;
    s.source = StateSource::form_support;
    for (const auto& [m, c] : f.terms()) {
        std::vector<Rational> p;
        p.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p.push_back(Rational(m[i]) - center);
        s.points.push_back(std::move(p));
    }
    return s;
}

/// Recentered exponent sums over all monomial k-subsets carrying a nonzero
/// Pluecker coordinate. Exponential in k; guarded by `cap`, with the ordered
/// echelon route (`hm_weight`) as the scalable per-lambda alternative.
inline StateSet grassmannian_state(const GradedSubspace& w, long long cap) {
    int k = w.rank();
    long long total = binomial(w.ambient_dim(), k);
    if (total > cap)
        throw CapExceeded("Pluecker state enumeration exceeds the cap; use hm_weight per lambda instead");
    int n = w.n_vars();
    auto cols = detail::sorted_columns(n, w.degree(), OnePS::zero(n));
    auto mat = detail::coefficient_matrix(w.basis(), cols);
    int ncols = static_cast<int>(cols.size());
    std::vector<int> subset(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = i;
    Rational center = rational(static_cast<long>(k) * w.degree(), n);
    std::set<std::vector<Rational>> seen;
    StateSet s;
    s.n = n;
    s.source = StateSource::grassmannian_pluecker;
    if (k == 0) return s;
    for (;;) {
        QMatrix minor(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                minor.at(i, j) = mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(subset[static_cast<std::size_t>(j)])];
        if (sgn(minor.det()) != 0) {
            std::vector<Rational> p(static_cast<std::size_t>(n), Rational(0));
            for (int j = 0; j < k; ++j) {
                const Monomial& m = cols[static_cast<std::size_t>(subset[static_cast<std::size_t>(j)])];
                for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] += m[i];
            }
            for (auto& v : p) v -= center;
            if (seen.insert(p).second) s.points.push_back(std::move(p));
        }
        int i = k - 1;
        while (i >= 0 && subset[static_cast<std::size_t>(i)] == ncols - k + i) --i;
        if (i < 0) break;
        ++subset[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
    return s;
}

namespace detail {

inline OnePS integerize_direction(std::vector<Rational> v) {
    Rational mean(0);
    for (const auto& x : v) mean += x;
    mean /= static_cast<long>(v.size());
    for (auto& x : v) x -= mean;  // harmless shift: state points sum to zero
    return OnePS(clear_denominators(v));
}

/// Nonzero lambda with sum zero and lambda . p == 0 for every point, when the
/// points fail to span the sum-zero hyperplane. Empty optional otherwise.
inline std::optional<OnePS> orthogonal_direction(const StateSet& s) {
    int n = s.n;
    std::vector<std::vector<Rational>> rows;
    for (const auto& p : s.points) rows.push_back(p);
    rows.emplace_back(static_cast<std::size_t>(n), Rational(1));  // sum-zero constraint
    auto pivot_cols = rref(rows);
    if (static_cast<int>(pivot_cols.size()) == n) return std::nullopt;
    int free_col = 0;
    while (std::find(pivot_cols.begin(), pivot_cols.end(), free_col) != pivot_cols.end()) ++free_col;
    std::vector<Rational> v(static_cast<std::size_t>(n), Rational(0));
    v[static_cast<std::size_t>(free_col)] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r)
        v[static_cast<std::size_t>(pivot_cols[r])] = -rows[r][static_cast<std::size_t>(free_col)];
    return OnePS(clear_denominators(v));
}

}  // namespace detail

/// Exact torus verdict by linear programming on the state polytope.
///
/// One LP decides everything: maximize t subject to (mu convex, sum mu_i p_i
/// = 0, mu_i >= t). Infeasible means the origin is separated from the hull
/// and the Farkas prices give the separating weight vector. Feasible with
/// t > 0 and full-dimensional span means the origin is interior, i.e. stable.
/// Otherwise the origin sits on the relative boundary; the supporting weight
/// vector comes from the dual prices or, in the degenerate-span case, from a
/// direction orthogonal to every state point. All certificates are
/// re-verified before returning.
inline StabilityVerdict torus_verdict(const StateSet& s) {
    if (s.points.empty()) throw Error("torus verdict of an empty state");
    const int n = s.n;
    const int m = static_cast<int>(s.points.size());
    const int vars = 2 * m + 1;  // mu_1..mu_m, t, w_1..w_m
    const int rows = n + 1 + m;
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(rows),
                                         std::vector<Rational>(static_cast<std::size_t>(vars), Rational(0)));
    std::vector<Rational> b(static_cast<std::size_t>(rows), Rational(0));
    std::vector<Rational> c(static_cast<std::size_t>(vars), Rational(0));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = s.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] = 1;
    b[static_cast<std::size_t>(n)] = 1;
    for (int i = 0; i < m; ++i) {
        auto& row = a[static_cast<std::size_t>(n + 1 + i)];
        row[static_cast<std::size_t>(i)] = -1;        // -mu_i
        row[static_cast<std::size_t>(m)] = 1;         // +t
        row[static_cast<std::size_t>(m + 1 + i)] = 1; // +w_i
    }
    c[static_cast<std::size_t>(m)] = 1;

    auto lp = lp::solve_standard(a, b, c);

    StabilityVerdict v;
    if (lp.status == lp::Status::infeasible) {
        std::vector<Rational> dir(lp.y.begin(), lp.y.begin() + n);
        for (auto& x : dir) x = -x;
        OnePS lambda = detail::integerize_direction(std::move(dir));
        if (sgn(min_state_dot(s, lambda)) <= 0) throw Error("internal: separating certificate failed verification");
        v.status = StabilityStatus::unstable;
        v.lambda = std::move(lambda);
        return v;
    }
    if (lp.status != lp::Status::optimal) throw Error("internal: state polytope LP cannot be unbounded");

    v.convex_combination.assign(lp.x.begin(), lp.x.begin() + m);
    {
        Rational total(0);
        std::vector<Rational> comb(static_cast<std::size_t>(n), Rational(0));
        for (int i = 0; i < m; ++i) {
            const Rational& mu = v.convex_combination[static_cast<std::size_t>(i)];
            if (sgn(mu) < 0) throw Error("internal: negative convex weight");
            total += mu;
            for (int k = 0; k < n; ++k) comb[static_cast<std::size_t>(k)] += mu * s.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        }
        if (total != 1) throw Error("internal: convex weights do not sum to one");
        for (const auto& x : comb)
            if (sgn(x) != 0) throw Error("internal: convex combination misses the origin");
    }

    if (auto orth = detail::orthogonal_direction(s)) {
        if (sgn(min_state_dot(s, *orth)) != 0) throw Error("internal: orthogonal direction fails support check");
        v.status = StabilityStatus::strictly_semistable;
        v.lambda = std::move(*orth);
        return v;
    }

    if (sgn(lp.objective) > 0) {
        v.status = StabilityStatus::stable;
        return v;
    }

    std::vector<Rational> dir(lp.y.begin(), lp.y.begin() + n);
    OnePS lambda = detail::integerize_direction(std::move(dir));
    if (lambda.is_zero()) throw Error("internal: empty supporting direction");
    for (const auto& p : s.points)
        if (sgn(state_dot(lambda, p)) < 0) throw Error("internal: supporting certificate fails nonnegativity");
    if (sgn(min_state_dot(s, lambda)) != 0) throw Error("internal: supporting certificate is not tight");
    v.status = StabilityStatus::strictly_semistable;
    v.lambda = std::move(lambda);
    return v;
}

/// Exhaustive integer-weight search; oracle-grade alternative to the LP.
inline StabilityVerdict grid_verdict(const StateSet& s, long long bound) {
    if (s.points.empty()) throw Error("grid verdict of an empty state");
    StabilityVerdict v;
    std::optional<OnePS> supporting;
    for (auto& lambda : one_ps_grid(s.n, bound)) {
        int sign = sgn(min_state_dot(s, lambda));
        if (sign > 0) {
            v.status = StabilityStatus::unstable;
            v.lambda = std::move(lambda);
            return v;
        }
        if (sign == 0 && !supporting) supporting = std::move(lambda);
    }
    if (supporting) {
        v.status = StabilityStatus::strictly_semistable;
        v.lambda = std::move(supporting);
    } else {
        v.status = StabilityStatus::stable;
    }
    return v;
}

/// True when lambda has strictly positive weight on every monomial of F in
/// the coordinates reached through `frame`.
inline bool certifies_unstable(const Polynomial& f, const QMatrix& frame, const OnePS& lambda) {
    Polynomial g = apply_linear(f, frame);
    if (g.is_zero()) return false;
    return min_support_weight(lambda, g) > 0;
}

// ---------------------------------------------------------------------------
// Binary forms: exact multiplicity oracle
// ---------------------------------------------------------------------------

struct ProjectiveRoot {
    Rational num;  // the root [num : den], with [1 : 0] for the point at infinity
    Rational den;
    int multiplicity = 0;
};

struct BinaryOracleResult {
    StabilityStatus status = StabilityStatus::unknown;
    int max_multiplicity = 0;
    std::vector<ProjectiveRoot> rational_roots;          // the ones locatable over Q
    std::optional<ProjectiveRoot> destabilizing_root;    // the unique root of multiplicity > deg/2
};

/// Classical multiplicity criterion for binary forms: unstable iff some root
/// has multiplicity > deg/2, strictly semistable iff the maximum multiplicity
/// equals deg/2. A destabilizing root is unique, hence rational, and falls
/// out of a linear factor of the squarefree decomposition.
inline BinaryOracleResult binary_oracle(const Polynomial& f) {
    if (f.n_vars() != 2) throw DimensionMismatch("binary oracle expects two variables");
    if (f.is_zero()) throw ZeroPolynomial("binary oracle of the zero form");
    if (!f.is_homogeneous()) throw Error("binary oracle expects a homogeneous form");
    const int deg = f.degree();
    int xmult = deg, ymult = deg;
    for (const auto& [m, c] : f.terms()) {
        xmult = std::min(xmult, m[0]);
        ymult = std::min(ymult, m[1]);
    }
    // g(t) = (F / x^xmult y^ymult)(t, 1)
    UniPoly g;
    g.c.assign(static_cast<std::size_t>(deg - xmult - ymult) + 1, Rational(0));
    for (const auto& [m, c] : f.terms()) g.c[static_cast<std::size_t>(m[0] - xmult)] = c;
    g.trim();

    BinaryOracleResult res;
    res.max_multiplicity = std::max(xmult, ymult);
    if (xmult > 0) res.rational_roots.push_back({Rational(0), Rational(1), xmult});
    if (ymult > 0) res.rational_roots.push_back({Rational(1), Rational(0), ymult});
    auto decomposition = squarefree_decomposition(g);
    for (const auto& [factor, mult] : decomposition) {
        res.max_multiplicity = std::max(res.max_multiplicity, mult);
        for (const auto& r : rational_roots(factor)) res.rational_roots.push_back({r, Rational(1), mult});
    }

    if (2 * res.max_multiplicity > deg)
        res.status = StabilityStatus::unstable;
    else if (2 * res.max_multiplicity == deg)
        res.status = StabilityStatus::strictly_semistable;
    else
        res.status = StabilityStatus::stable;

    if (res.status == StabilityStatus::unstable) {
        if (2 * xmult > deg)
            res.destabilizing_root = ProjectiveRoot{Rational(0), Rational(1), xmult};
        else if (2 * ymult > deg)
            res.destabilizing_root = ProjectiveRoot{Rational(1), Rational(0), ymult};
        else
            for (const auto& [factor, mult] : decomposition)
                if (2 * mult > deg) {
                    // two distinct roots of this multiplicity would exceed the degree
                    if (factor.degree() != 1) throw Error("internal: dominant factor is not linear");
                    res.destabilizing_root = ProjectiveRoot{-factor.c[0] / factor.c[1], Rational(1), mult};
                }
    }
    return res;
}

/// Frames sending each rational repeated root of a binary form to the first
/// coordinate point, where a diagonal weight vector can see it.
inline std::vector<QMatrix> root_targeted_frames(const Polynomial& f) {
    std::vector<QMatrix> frames;
    if (f.n_vars() != 2 || f.is_zero() || !f.is_homogeneous()) return frames;
    auto oracle = binary_oracle(f);
    for (const auto& root : oracle.rational_roots) {
        if (root.multiplicity < 2) continue;
        if (sgn(root.den) == 0) continue;  // coordinate roots are torus-visible already
        Rational alpha = root.num / root.den;
        if (sgn(alpha) == 0) continue;
        QMatrix t = QMatrix::identity(2);
        t.at(0, 1) = alpha;  // x -> x + alpha y kills the root's linear form into x
        frames.push_back(std::move(t));
    }
    return frames;
}

// ---------------------------------------------------------------------------
// Destabilizer search over coordinate frames
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

inline QMatrix random_frame(int n, std::mt19937_64& rng, long long entry_bound) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(rand_below(rng, static_cast<std::uint64_t>(i) + 1))]);
    QMatrix u = QMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (rand_below(rng, 2) == 0) continue;
            long long num = 1 + static_cast<long long>(rand_below(rng, static_cast<std::uint64_t>(entry_bound)));
            long long den = 1 + static_cast<long long>(rand_below(rng, static_cast<std::uint64_t>(entry_bound)));
            if (rand_below(rng, 2) == 0) num = -num;
            u.at(i, j) = rational(static_cast<long>(num), static_cast<long>(den));
        }
    return QMatrix::permutation(perm) * u;
}

}  // namespace detail

/// Searches the identity frame, root-targeted frames (binary forms), and a
/// seeded budget of random triangular-times-permutation frames for a torus
/// destabilizer. Returns `unstable` with a verified (frame, lambda)
/// certificate on first success, otherwise `unknown` with the budget report;
/// it never claims semistability on its own.
inline StabilityVerdict find_destabilizer(const Polynomial& f, const SearchConfig& cfg) {
    cfg.validate();
    if (f.is_zero()) throw ZeroPolynomial("destabilizer search on the zero form");
    if (!f.is_homogeneous()) throw Error("destabilizer search expects a homogeneous form");
    const int n = f.n_vars();
    long long grid_bound = cfg.lambda_bound > 0 ? cfg.lambda_bound : 2LL * f.degree() * n;

    auto try_frame = [&](const QMatrix& frame) -> std::optional<StabilityVerdict> {
        StateSet state = form_state(apply_linear(f, frame));
        StabilityVerdict tv = cfg.strategy == SearchConfig::Strategy::lp_exact ? torus_verdict(state)
                                                                               : grid_verdict(state, grid_bound);
        if (tv.status != StabilityStatus::unstable) return std::nullopt;
        if (!certifies_unstable(f, frame, *tv.lambda)) throw Error("internal: frame certificate failed re-verification");
        tv.frame = frame;
        return tv;
    };

    int tried = 0;
    if (auto hit = try_frame(QMatrix::identity(n))) return *hit;
    ++tried;
    if (n == 2)
        for (const auto& frame : root_targeted_frames(f)) {
            if (auto hit = try_frame(frame)) return *hit;
            ++tried;
        }
    std::mt19937_64 rng(cfg.seed);
    for (int k = 0; k < cfg.frame_budget; ++k) {
        if (auto hit = try_frame(detail::random_frame(n, rng, cfg.entry_bound))) return *hit;
        ++tried;
    }
    StabilityVerdict v;
    v.status = StabilityStatus::unknown;
    v.budget = BudgetReport{cfg.seed, tried};
    return v;
}

// ---------------------------------------------------------------------------
// Initial-monomial alignment and the two weight transfers
// ---------------------------------------------------------------------------

/// Upper-triangular change after which the partials of F have pairwise
/// distinct initial monomials, equal as a set to the echelon pivots of the
/// gradient point (which the change leaves fixed). Weights must ascend, so
/// that a triangular substitution only moves monomials upward in the order.
inline UpperTriangularChange align_initials(const Polynomial& f, const OnePS& lambda) {
    const int n = f.n_vars();
    if (lambda.size() != n) throw DimensionMismatch("weight vector size");
    GradedSubspace grad = gradient_point(f);
    std::vector<Monomial> pivots = reduce_under_order(grad, lambda).pivots.monomials;

    if (!lambda.is_sorted()) {
        // Distinct initials of a basis are the pivot set under any total
        // order; only the collision-clearing induction needs ascending
        // weights (a triangular substitution must move monomials upward).
        std::vector<Monomial> initials;
        for (int i = 0; i < n; ++i) initials.push_back(initial_monomial(lambda, partial_derivative(f, i)));
        std::sort(initials.begin(), initials.end(), [&](const Monomial& x, const Monomial& y) {
            return lambda_compare(lambda, x, y) == std::strong_ordering::less;
        });
        if (initials == pivots) return UpperTriangularChange::identity(n);
        throw PreconditionFailed("alignment with colliding initials expects ascending weights");
    }

    Polynomial g = f;
    UpperTriangularChange total = UpperTriangularChange::identity(n);
    std::vector<bool> claimed(static_cast<std::size_t>(n), false);
    for (int r = 0; r < n; ++r) {
        std::vector<Polynomial> parts;
        parts.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) parts.push_back(partial_derivative(g, i));
        const Monomial& target = pivots[static_cast<std::size_t>(r)];
        int jstar = -1;
        for (int j = 0; j < n; ++j) {
            if (claimed[static_cast<std::size_t>(j)]) continue;
            if (initial_monomial(lambda, parts[static_cast<std::size_t>(j)]) == target) {
                jstar = j;
                break;
            }
        }
        if (jstar < 0) throw Error("internal: no unclaimed partial attains the next pivot");
        Rational lead = parts[static_cast<std::size_t>(jstar)].coeff(target);
        UpperTriangularChange step = UpperTriangularChange::identity(n);
        bool moved = false;
        for (int j = jstar + 1; j < n; ++j) {
            Rational cj = parts[static_cast<std::size_t>(j)].coeff(target) / lead;
            if (sgn(cj) == 0) continue;
            step.set_coefficient(jstar, j, -cj);
            moved = true;
        }
        if (moved) {
            g = apply_substitution(g, step);
            total = compose(total, step);
        }
        claimed[static_cast<std::size_t>(jstar)] = true;
    }

    // postcondition: distinct initials matching the pivot set
    std::vector<Monomial> initials;
    for (int i = 0; i < n; ++i) initials.push_back(initial_monomial(lambda, partial_derivative(g, i)));
    std::sort(initials.begin(), initials.end(), [&](const Monomial& x, const Monomial& y) {
        return lambda_compare(lambda, x, y) == std::strong_ordering::less;
    });
    if (initials != pivots) throw Error("internal: alignment failed to reproduce the pivot set");
    return total;
}

/// Forward transfer: lambda-positivity of every monomial of F pushes down to
/// the partials and makes every nonzero Pluecker coordinate of the gradient
/// point positive. Returns the per-partial bounds and the resulting weight,
/// or the degenerate-gradient certificate when the gradient has low rank.
struct ForwardCertificate {
    bool degenerate = false;
    int gradient_rank = 0;
    std::optional<OnePS> degenerate_lambda;
    std::vector<long long> partial_min_weights;  // min support weight of dF/dx_i
    std::vector<long long> partial_bounds;       // the bound -lambda_i it must exceed
    long long pluecker_weight = 0;
};

inline ForwardCertificate transfer_form_to_grad(const Polynomial& f, const OnePS& lambda) {
    if (f.is_zero()) throw ZeroPolynomial("transfer on the zero form");
    if (lambda.size() != f.n_vars()) throw DimensionMismatch("weight vector size");
    if (min_support_weight(lambda, f) <= 0)
        throw PreconditionFailed("lambda does not destabilize the form in the torus sense");
    ForwardCertificate cert;
    const int n = f.n_vars();
    try {
        GradedSubspace grad = gradient_point(f);
        cert.gradient_rank = grad.rank();
        for (int i = 0; i < n; ++i) {
            long long mw = min_support_weight(lambda, partial_derivative(f, i));
            cert.partial_min_weights.push_back(mw);
            cert.partial_bounds.push_back(-lambda[i]);
            if (mw <= -lambda[i]) throw Error("internal: partial weight bound failed");
        }
        cert.pluecker_weight = hm_weight(grad, lambda);
        if (cert.pluecker_weight <= 0) throw Error("internal: forward transfer produced a nonpositive weight");
    } catch (const DegenerateGradient& dg) {
        cert.degenerate = true;
        cert.gradient_rank = dg.rank;
        cert.degenerate_lambda = dg.certificate;
    }
    return cert;
}

/// Backward transfer: from a destabilized gradient point to an explicit
/// integer weight vector destabilizing F itself, through the alignment frame.
struct BackwardCertificate {
    QMatrix frame;                          // permutation-times-alignment; certificate coordinates
    OnePS sorted_lambda;                    // the input weights, ascending, in frame coordinates
    std::vector<long long> initial_weights; // weights of the aligned partial initials
    std::vector<Rational> mu_prime;         // strict lower bounds, summing to zero
    std::vector<Rational> functional;       // coefficients of the positive linear functional M
    OnePS emitted;                          // primitive integer normal of M
    long long pluecker_weight = 0;
};

namespace detail {

struct AlignedFrame {
    QMatrix frame;
    Polynomial g;        // F in frame coordinates
    OnePS sorted_lambda;
    std::vector<long long> initial_weights;
    long long pluecker_weight = 0;
};

inline AlignedFrame align_through_permutation(const Polynomial& f, const OnePS& lambda) {
    const int n = f.n_vars();
    if (lambda.size() != n) throw DimensionMismatch("weight vector size");
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lambda[a] < lambda[b]; });
    // new variable k plays the role of old variable order[k]
    std::vector<long long> sorted(static_cast<std::size_t>(n));
    std::vector<int> rename(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        sorted[static_cast<std::size_t>(k)] = lambda[order[static_cast<std::size_t>(k)]];
        rename[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;
    }
    QMatrix p = QMatrix::permutation(rename);
    OnePS lam(std::move(sorted));
    Polynomial fp = apply_linear(f, p);
    UpperTriangularChange t = align_initials(fp, lam);
    AlignedFrame out{p * t.matrix(), apply_substitution(fp, t), lam, {}, 0};
    for (int i = 0; i < n; ++i) {
        out.initial_weights.push_back(weight(lam, initial_monomial(lam, partial_derivative(out.g, i))));
        out.pluecker_weight += out.initial_weights.back();
    }
    return out;
}

}  // namespace detail

inline BackwardCertificate transfer_grad_to_form(const Polynomial& f, const OnePS& lambda) {
    auto aligned = detail::align_through_permutation(f, lambda);
    const int n = f.n_vars();
    const int d = f.degree() - 1;
    if (aligned.pluecker_weight <= 0)
        throw PreconditionFailed("lambda does not destabilize the gradient point");
    Rational wbar = rational(static_cast<long>(aligned.pluecker_weight), n);
    std::vector<Rational> mu_prime;
    std::vector<Rational> functional;
    for (int i = 0; i < n; ++i) {
        Rational mu_p = to_rational(aligned.initial_weights[static_cast<std::size_t>(i)]) - wbar;
        mu_prime.push_back(mu_p);
        functional.push_back(to_rational(static_cast<long long>(d) * aligned.sorted_lambda[i]) - mu_p);
    }
    for (const auto& [m, c] : aligned.g.terms()) {
        Rational val(0);
        for (int i = 0; i < n; ++i) val += functional[static_cast<std::size_t>(i)] * m[i];
        if (sgn(val) <= 0) throw Error("internal: transferred functional fails on a support point");
    }
    OnePS emitted(clear_denominators(functional));
    if (min_support_weight(emitted, aligned.g) <= 0)
        throw Error("internal: emitted weight vector does not destabilize the aligned form");
    return BackwardCertificate{aligned.frame,       aligned.sorted_lambda, aligned.initial_weights,
                               std::move(mu_prime), std::move(functional), std::move(emitted),
                               aligned.pluecker_weight};
}

/// Non-strict run of the backward transfer along the semistable boundary
/// (gradient weight exactly zero): reports whether the lower bounds are
/// pinned to d*lambda and, through the co-occurrence graph, the variable
/// decomposition the boundary forces on the aligned form.
struct BoundaryReport {
    QMatrix frame;
    OnePS sorted_lambda;
    std::vector<long long> initial_weights;
    std::vector<Rational> mu_prime;
    bool mu_prime_equals_d_lambda = false;
    bool functional_nonnegative = false;
    std::vector<std::vector<int>> components;  // of the aligned form
};

struct Decomposition {
    std::vector<std::vector<int>> blocks;    // connected components, each sorted
    std::optional<OnePS> fixing_one_ps;      // -(n-r) on the first block, r elsewhere
};

/// Connected components of the variable co-occurrence graph of F. Variables
/// absent from F form their own singleton blocks.
inline Decomposition disjoint_decomposition(const Polynomial& f) {
    if (f.is_zero()) throw ZeroPolynomial("decomposition of the zero polynomial");
    if (!f.is_homogeneous()) throw Error("decomposition expects a homogeneous form");
    const int n = f.n_vars();
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int x, int y) { parent[static_cast<std::size_t>(find(x))] = find(y); };
    for (const auto& [m, c] : f.terms()) {
        int prev = -1;
        for (int i = 0; i < n; ++i) {
            if (m[i] == 0) continue;
            if (prev >= 0) unite(prev, i);
            prev = i;
        }
    }
    std::vector<std::vector<int>> blocks;
    std::vector<int> root_block(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (root_block[static_cast<std::size_t>(r)] < 0) {
            root_block[static_cast<std::size_t>(r)] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[static_cast<std::size_t>(root_block[static_cast<std::size_t>(r)])].push_back(i);
    }
    Decomposition dec;
    dec.blocks = std::move(blocks);
    if (dec.blocks.size() >= 2) {
        int r = static_cast<int>(dec.blocks.front().size());
        std::vector<long long> w(static_cast<std::size_t>(n), r);
        for (int i : dec.blocks.front()) w[static_cast<std::size_t>(i)] = -(n - r);
        dec.fixing_one_ps = OnePS(std::move(w));
    }
    return dec;
}

inline BoundaryReport transfer_grad_to_form_boundary(const Polynomial& f, const OnePS& lambda) {
    auto aligned = detail::align_through_permutation(f, lambda);
    const int n = f.n_vars();
    const int d = f.degree() - 1;
    if (aligned.pluecker_weight != 0)
        throw PreconditionFailed("boundary analysis expects gradient weight exactly zero");
    bool pinned = true;
    std::vector<Rational> mu_prime;
    std::vector<Rational> functional;
    for (int i = 0; i < n; ++i) {
        Rational mu_p = to_rational(aligned.initial_weights[static_cast<std::size_t>(i)]);
        mu_prime.push_back(mu_p);
        pinned = pinned && mu_p == to_rational(static_cast<long long>(d) * aligned.sorted_lambda[i]);
        functional.push_back(to_rational(static_cast<long long>(d) * aligned.sorted_lambda[i]) - mu_p);
    }
    bool nonnegative = true;
    for (const auto& [m, c] : aligned.g.terms()) {
        Rational val(0);
        for (int i = 0; i < n; ++i) val += functional[static_cast<std::size_t>(i)] * m[i];
        if (sgn(val) < 0) nonnegative = false;
    }
    return BoundaryReport{aligned.frame,       aligned.sorted_lambda,
                          aligned.initial_weights, std::move(mu_prime),
                          pinned,              nonnegative,
                          disjoint_decomposition(aligned.g).blocks};
}

}  // namespace gitmilnor
