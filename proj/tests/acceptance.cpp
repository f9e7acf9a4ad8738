// Acceptance suite: one line per criterion, exact checks at desk scale.
// Exit status is the number of failed criteria.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "gitmilnor/corpus.hpp"
#include "gitmilnor/harness.hpp"
#include "gitmilnor/milnor.hpp"
#include "gitmilnor/parse.hpp"
#include "gitmilnor/stability.hpp"

using namespace gitmilnor;

namespace {

struct Criterion {
    int index;
    std::string name;
    bool passed;
    std::string detail;
    double seconds;
};

std::vector<Criterion> results;

template <typename Fn>
void run(int index, const std::string& name, Fn&& fn) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        detail = fn();
        ok = true;
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back({index, name, ok, detail, secs});
    std::printf("[%d/8] %s %s (%s, %.1fs)\n", index, ok ? "PASS" : "FAIL", name.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
}

struct Failure : Error {
    using Error::Error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

// exhaustive minor-enumeration oracle, duplicated here so the acceptance
// binary stays independent of the unit-test helpers
long long brute_force_hm_weight(const GradedSubspace& w, const OnePS& lambda);

Polynomial random_sparse_form(int n, int degree, std::mt19937_64& rng) {
    for (;;) {
        Polynomial f(n);
        for (const auto& m : monomials_of_degree(n, degree)) {
            if (rng() % 10 >= 5) continue;
            long c = static_cast<long>(rng() % 6) - 3;
            if (c >= 0) ++c;
            f.add_term(m, Rational(c));
        }
        if (!f.is_zero()) return f;
    }
}

// --- criterion 1 -----------------------------------------------------------

std::string hilbert_identity() {
    int checked = 0;
    auto check_config = [&](int n, int d, int count, std::uint64_t seed) {
        auto seqs = generate_regular_sequences(n, d, count, seed);
        int nu = n * (d - 1);
        auto expected = expected_hilbert(n, d);
        expected.resize(static_cast<std::size_t>(nu) + 2, 0);
        for (const auto& gens : seqs) {
            auto h = hilbert_function(gens, nu + 1);
            require(h == expected, "hilbert function differs from the binomial expansion");
            for (int m = 0; m <= nu; ++m)
                require(h[static_cast<std::size_t>(m)] == h[static_cast<std::size_t>(nu - m)], "not palindromic");
            require(h[static_cast<std::size_t>(nu) + 1] == 0, "socle does not terminate");
            ++checked;
        }
    };
    check_config(2, 2, 50, 101);
    check_config(2, 3, 50, 102);
    check_config(3, 2, 50, 103);
    check_config(3, 3, 55, 104);
    check_config(4, 2, 5, 105);
    require(checked >= 200, "not enough sequences");
    return std::to_string(checked) + " regular sequences";
}

// --- shared binary-catalog machinery ---------------------------------------

std::vector<QMatrix> tested_frames(const Polynomial& f) {
    std::vector<QMatrix> frames{QMatrix::identity(f.n_vars())};
    if (f.n_vars() == 2)
        for (auto& t : root_targeted_frames(f)) frames.push_back(std::move(t));
    return frames;
}

// --- criterion 2 -----------------------------------------------------------

std::string forward_direction() {
    std::atomic<long long> instances{0};
    std::atomic<long long> degenerate{0};
    std::atomic<int> violations{0};

    auto run_instance = [&](const Polynomial& f, const QMatrix& frame, const OnePS& lambda) {
        Polynomial framed = apply_linear(f, frame);
        ForwardCertificate cert = transfer_form_to_grad(framed, lambda);
        if (cert.degenerate) {
            ++degenerate;
        } else if (cert.pluecker_weight <= 0) {
            ++violations;
        }
        ++instances;
    };

    for (int degree = 2; degree <= 6; ++degree) {
        auto catalog = binary_catalog(degree);
        parallel_for(static_cast<int>(catalog.size()), [&](int i) {
            const Polynomial& f = catalog[static_cast<std::size_t>(i)];
            for (const auto& frame : tested_frames(f)) {
                StabilityVerdict v = torus_verdict(form_state(apply_linear(f, frame)));
                if (v.status == StabilityStatus::unstable) run_instance(f, frame, *v.lambda);
            }
        });
    }

    std::mt19937_64 rng(2024);
    SearchConfig cfg;
    cfg.frame_budget = 4;
    cfg.seed = 2024;
    for (int it = 0; it < 2000 && instances.load() < 520; ++it) {
        int n = 2 + static_cast<int>(it % 2);
        Polynomial f = random_sparse_form(n, 3 + static_cast<int>(it % 3), rng);
        StabilityVerdict v = find_destabilizer(f, cfg);
        if (v.status == StabilityStatus::unstable) run_instance(f, *v.frame, *v.lambda);
    }

    require(violations.load() == 0, std::to_string(violations.load()) + " violations");
    require(instances.load() >= 500, "only " + std::to_string(instances.load()) + " destabilized instances");
    return std::to_string(instances.load()) + " instances (" + std::to_string(degenerate.load()) +
           " degenerate gradients), 0 violations";
}

// --- criterion 3 -----------------------------------------------------------

std::string backward_direction() {
    long long instances = 0;
    int violations = 0;

    auto run_instance = [&](const Polynomial& f, const OnePS& lambda) {
        BackwardCertificate cert = transfer_grad_to_form(f, lambda);
        if (!certifies_unstable(f, cert.frame, cert.emitted)) ++violations;
        ++instances;
    };

    // seeded route: torus-unstable binary forms push forward to the gradient
    for (int degree : {3, 4}) {
        for (const auto& f : binary_catalog(degree)) {
            for (const auto& frame : tested_frames(f)) {
                Polynomial framed = apply_linear(f, frame);
                StabilityVerdict v = torus_verdict(form_state(framed));
                if (v.status != StabilityStatus::unstable) continue;
                ForwardCertificate fwd = transfer_form_to_grad(framed, *v.lambda);
                if (!fwd.degenerate) run_instance(framed, *v.lambda);
            }
        }
    }

    // seeded route over random forms: destabilize by search, push the weight
    // forward onto the gradient, then transfer it back
    std::mt19937_64 seeded(3031);
    SearchConfig cfg;
    cfg.frame_budget = 4;
    cfg.seed = 3031;
    for (int it = 0; it < 1200 && instances < 220; ++it) {
        int n = 2 + static_cast<int>(it % 2);
        Polynomial f = random_sparse_form(n, 3 + static_cast<int>(it % 3), seeded);
        StabilityVerdict v = find_destabilizer(f, cfg);
        if (v.status != StabilityStatus::unstable) continue;
        Polynomial framed = apply_linear(f, *v.frame);
        ForwardCertificate fwd = transfer_form_to_grad(framed, *v.lambda);
        if (!fwd.degenerate) run_instance(framed, *v.lambda);
    }

    // direct search route: scan sorted weight vectors against random gradients
    std::mt19937_64 rng(3033);
    auto lambdas = sorted_one_ps_grid(3, 3);
    for (int it = 0; it < 2500 && instances < 340; ++it) {
        Polynomial f = random_sparse_form(3, 3, rng);
        for (const auto& lambda : lambdas) {
            long long hm = 0;
            try {
                hm = hm_weight(gradient_point(f), lambda);
            } catch (const DegenerateGradient&) {
                break;
            }
            if (hm > 0) run_instance(f, lambda);
        }
    }

    require(violations == 0, std::to_string(violations) + " violations");
    require(instances >= 300, "only " + std::to_string(instances) + " instances");
    return std::to_string(instances) + " destabilized gradients re-certified, 0 violations";
}

// --- criterion 4 -----------------------------------------------------------

std::string binary_equivalence() {
    std::atomic<long long> forms{0};
    std::atomic<int> violations{0};
    for (int degree = 3; degree <= 6; ++degree) {
        auto catalog = binary_catalog(degree);
        parallel_for(static_cast<int>(catalog.size()), [&](int i) {
            const Polynomial& f = catalog[static_cast<std::size_t>(i)];
            bool oracle_unstable = binary_oracle(f).status == StabilityStatus::unstable;
            bool grad_hit = false;
            for (const auto& frame : tested_frames(f)) {
                Polynomial framed = apply_linear(f, frame);
                try {
                    GradedSubspace grad = gradient_point(framed);
                    if (torus_verdict(grassmannian_state(grad, 200000)).status == StabilityStatus::unstable)
                        grad_hit = true;
                } catch (const DegenerateGradient&) {
                    grad_hit = true;
                }
                if (grad_hit) break;
            }
            if (grad_hit != oracle_unstable) ++violations;
            ++forms;
        });
    }
    require(violations.load() == 0, std::to_string(violations.load()) + " violations");
    return std::to_string(forms.load()) + " binary forms, oracle == gradient verdict";
}

// --- criterion 5 -----------------------------------------------------------

std::string socle_and_assoc() {
    long long items = 0;
    long long checks = 0;
    for (auto [n, d, count, seed] :
         std::vector<std::array<int, 4>>{{2, 2, 75, 501}, {2, 3, 75, 502}, {3, 2, 75, 503}, {3, 3, 75, 504}}) {
        AssocSpec spec;
        spec.family = Family::random_sparse;
        spec.n = n;
        spec.gen_degree = d;
        spec.count = count;
        spec.seed = static_cast<std::uint64_t>(seed);
        spec.frames = 20;
        spec.lambda_bound = 6;
        HarnessReport rep = verify_assoc_theorem(spec);
        require(rep.ok(), std::to_string(rep.violations.size()) + " violations at n=" + std::to_string(n) +
                              " d=" + std::to_string(d) + ": " +
                              (rep.violations.empty() ? "" : rep.violations.front().check));
        items += rep.items;
        checks += rep.checks;
    }
    require(items >= 300, "only " + std::to_string(items) + " sequences");
    return std::to_string(items) + " sequences, " + std::to_string(checks) + " frame/lambda checks, 0 violations";
}

// --- criterion 6 -----------------------------------------------------------

std::string fermat_exactness() {
    int configs = 0;
    for (int n = 2; n <= 4; ++n) {
        for (int d = 2; d <= 3; ++d) {
            Polynomial f = fermat_form(n, d + 1);
            GradedSubspace grad = gradient_point(f);
            for (const auto& lambda : sorted_one_ps_grid(n, 6))
                require(hm_weight(grad, lambda) == 0, "fermat gradient weight nonzero");

            std::vector<Polynomial> powers;
            for (int i = 0; i < n; ++i) {
                Monomial m(std::vector<int>(static_cast<std::size_t>(n), 0));
                m.exp[static_cast<std::size_t>(i)] = d;
                powers.push_back(Polynomial::term(n, m, Rational(1)));
            }
            AssociatedForm mono = associated_form(powers);
            Polynomial balanced = Polynomial::term(n, Monomial(std::vector<int>(static_cast<std::size_t>(n), d - 1)),
                                                   Rational(1));
            require(mono.dual_form == balanced, "monomial-normalized inverse system is not the balanced power");

            AssociatedForm hess = associated_form(f);
            // ((d+1) d)^-n ((d-1)!)^-n against the diagonal hessian
            Rational expect = Rational(1);
            for (int i = 0; i < n; ++i)
                expect /= Rational(static_cast<long>((d + 1) * d)) * Rational(factorial(static_cast<unsigned long>(d - 1)));
            require(hess.dual_form == balanced * expect, "hessian-normalized coefficient is off");
            require(polar_pair(hess.dual_form, hessian(f)) == 1, "pairing against the hessian is not one");
            ++configs;
        }
    }
    return std::to_string(configs) + " fermat configurations exact";
}

// --- criterion 7 -----------------------------------------------------------

std::string oracle_equivalence() {
    std::mt19937_64 rng(707);
    int subspaces = 0;
    while (subspaces < 110) {
        int n = 2 + static_cast<int>(rng() % 2);
        int deg = 2 + static_cast<int>(rng() % 3);
        int k = 2 + static_cast<int>(rng() % 2);
        if (binomial(dim_sym(n, deg), k) > 100000) continue;
        std::vector<Polynomial> basis;
        for (int i = 0; i < k; ++i) basis.push_back(random_sparse_form(n, deg, rng));
        GradedSubspace w(n, deg, basis);
        if (w.rank() == 0) continue;
        std::vector<long long> raw(static_cast<std::size_t>(n));
        long long sum = 0;
        for (int i = 0; i + 1 < n; ++i) {
            raw[static_cast<std::size_t>(i)] = static_cast<long long>(rng() % 9) - 4;
            sum += raw[static_cast<std::size_t>(i)];
        }
        raw[static_cast<std::size_t>(n - 1)] = -sum;
        OnePS lambda(std::move(raw));
        require(hm_weight(w, lambda) == brute_force_hm_weight(w, lambda), "hm weight disagrees with minor enumeration");
        ++subspaces;
    }

    int states = 0;
    std::mt19937_64 rng2(708);
    while (states < 110) {
        int n = 2 + static_cast<int>(rng2() % 2);
        int deg = 2 + static_cast<int>(rng2() % 3);
        Polynomial f = random_sparse_form(n, deg, rng2);
        StateSet s = form_state(f);
        long long bound = 2LL * (deg + 1) * n;
        require(torus_verdict(s).status == grid_verdict(s, bound).status, "LP and grid verdicts disagree");
        ++states;
    }
    return std::to_string(subspaces) + " subspaces + " + std::to_string(states) + " states, 0 disagreements";
}

// --- criterion 8 -----------------------------------------------------------

std::string pivot_invariance_and_alignment() {
    std::mt19937_64 rng(808);
    int triples = 0;
    while (triples < 200) {
        int n = 2 + static_cast<int>(rng() % 2);
        int deg = 3 + static_cast<int>(rng() % 2);
        Polynomial f = random_sparse_form(n, deg, rng);
        GradedSubspace grad(n, deg - 1, {});
        try {
            grad = gradient_point(f);
        } catch (const DegenerateGradient&) {
            continue;
        }
        // random sorted lambda
        std::vector<long long> raw(static_cast<std::size_t>(n));
        long long sum = 0;
        for (int i = 0; i + 1 < n; ++i) {
            raw[static_cast<std::size_t>(i)] = static_cast<long long>(rng() % 9) - 4;
            sum += raw[static_cast<std::size_t>(i)];
        }
        raw[static_cast<std::size_t>(n - 1)] = -sum;
        std::sort(raw.begin(), raw.end());
        OnePS lambda(std::move(raw));
        // random unit upper-triangular change
        UpperTriangularChange t = UpperTriangularChange::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2)
                    t.set_coefficient(i, j, rational(static_cast<long>(rng() % 5) - 2, 1 + static_cast<long>(rng() % 2)));

        PivotSet before = reduce_under_order(grad, lambda).pivots;
        GradedSubspace moved = gradient_point(apply_substitution(f, t));
        require(reduce_under_order(moved, lambda).pivots == before, "pivot set moved under a triangular change");

        UpperTriangularChange align = align_initials(f, lambda);
        Polynomial g = apply_substitution(f, align);
        std::vector<Monomial> initials;
        for (int i = 0; i < n; ++i) initials.push_back(initial_monomial(lambda, partial_derivative(g, i)));
        std::sort(initials.begin(), initials.end(), [&](const Monomial& x, const Monomial& y) {
            return lambda_compare(lambda, x, y) == std::strong_ordering::less;
        });
        for (std::size_t i = 0; i + 1 < initials.size(); ++i)
            require(initials[i] != initials[i + 1], "aligned initials collide");
        require(initials == before.monomials, "aligned initials differ from the pivot set");
        ++triples;
    }
    return std::to_string(triples) + " (form, lambda, change) triples exact";
}

long long brute_force_hm_weight(const GradedSubspace& w, const OnePS& lambda) {
    int k = w.rank();
    auto cols = monomials_of_degree(w.n_vars(), w.degree());
    int ncols = static_cast<int>(cols.size());
    std::vector<std::vector<Rational>> mat;
    for (const auto& b : w.basis()) {
        std::vector<Rational> row;
        for (const auto& c : cols) row.push_back(b.coeff(c));
        mat.push_back(std::move(row));
    }
    std::vector<int> subset(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = i;
    bool found = false;
    long long best = 0;
    for (;;) {
        QMatrix minor(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                minor.at(i, j) = mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(subset[static_cast<std::size_t>(j)])];
        if (sgn(minor.det()) != 0) {
            long long wsum = 0;
            for (int j = 0; j < k; ++j) wsum += weight(lambda, cols[static_cast<std::size_t>(subset[static_cast<std::size_t>(j)])]);
            if (!found || wsum < best) best = wsum;
            found = true;
        }
        int i = k - 1;
        while (i >= 0 && subset[static_cast<std::size_t>(i)] == ncols - k + i) --i;
        if (i < 0) break;
        ++subset[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
    if (!found) throw Error("oracle: no nonzero minor");
    return best;
}
}  // namespace

int main() {
    run(1, "hilbert-function identity", hilbert_identity);
    run(2, "forward transfer (form to gradient)", forward_direction);
    run(3, "backward transfer (gradient to form)", backward_direction);
    run(4, "binary equivalence (oracle vs gradient)", binary_equivalence);
    run(5, "socle dominance and associated-form semistability", socle_and_assoc);
    run(6, "fermat exactness", fermat_exactness);
    run(7, "oracle equivalences (minors and grid)", oracle_equivalence);
    run(8, "pivot invariance and alignment", pivot_invariance_and_alignment);

    int failed = 0;
    for (const auto& r : results)
        if (!r.passed) ++failed;
    std::printf("ACCEPTANCE: %d/8 passed\n", 8 - failed);
    return failed;
}
