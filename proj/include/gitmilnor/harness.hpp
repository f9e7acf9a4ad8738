#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "gitmilnor/corpus.hpp"
#include "gitmilnor/parse.hpp"
#include "gitmilnor/stability.hpp"

namespace gitmilnor {

inline int harness_threads() {
    if (const char* env = std::getenv("GITMILNOR_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(std::min(hw, 8u)) : 1;
}

/// Fan items out over a small pool. Work per index must be independent;
/// callers keep per-index result slots so assembly stays order-stable.
template <typename Fn>
inline void parallel_for(int count, Fn&& fn) {
    int threads = std::min(harness_threads(), count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

struct Violation {
    int item = 0;
    std::string check;
    std::string detail;
};

struct HarnessReport {
    std::string operation;
    int items = 0;
    long long checks = 0;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr long long kGrassCap = 200000;

/// Does any tested frame exhibit a destabilized (or undefined) gradient point?
inline bool gradient_destabilized_in_frames(const Polynomial& f, const std::vector<QMatrix>& frames) {
    for (const auto& t : frames) {
        Polynomial ft = apply_linear(f, t);
        try {
            GradedSubspace grad = gradient_point(ft);
            if (torus_verdict(grassmannian_state(grad, kGrassCap)).status == StabilityStatus::unstable) return true;
        } catch (const DegenerateGradient&) {
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Per corpus item: run the destabilizer search; on success run both weight
/// transfers and re-certify the emitted weight vector on the original form.
/// For binary forms, cross-check against the exact multiplicity oracle with
/// root-targeted frames; for disjoint sums, check the fixing weight vector
/// leaves the gradient point on the semistable boundary.
inline HarnessReport verify_gradient_theorem(const CorpusSpec& spec, const SearchConfig& cfg) {
    HarnessReport rep;
    rep.operation = "verify-gradient-theorem";
    auto corpus = generate_corpus(spec);
    rep.items = static_cast<int>(corpus.size());
    std::vector<std::vector<Violation>> slots(corpus.size());
    std::vector<long long> counts(corpus.size(), 0);

    parallel_for(rep.items, [&](int idx) {
        const Polynomial& f = corpus[static_cast<std::size_t>(idx)];
        auto& out = slots[static_cast<std::size_t>(idx)];
        auto& nchecks = counts[static_cast<std::size_t>(idx)];
        auto fail = [&](const std::string& check, const std::string& detail) {
            out.push_back({idx, check, detail});
        };
        SearchConfig item_cfg = cfg;
        item_cfg.seed = detail::mix_seed(cfg.seed, static_cast<std::uint64_t>(idx));

        StabilityVerdict found = find_destabilizer(f, item_cfg);
        if (found.status == StabilityStatus::unstable) {
            Polynomial framed = apply_linear(f, *found.frame);
            try {
                ++nchecks;
                ForwardCertificate fwd = transfer_form_to_grad(framed, *found.lambda);
                if (!fwd.degenerate) {
                    ++nchecks;
                    BackwardCertificate bwd = transfer_grad_to_form(framed, *found.lambda);
                    QMatrix full = *found.frame * bwd.frame;
                    if (!certifies_unstable(f, full, bwd.emitted))
                        fail("backward-recertify", to_string(f) + " via lambda " + to_string(bwd.emitted));
                }
            } catch (const Error& e) {
                fail("transfer", to_string(f) + ": " + e.what());
            }
        }

        if (f.n_vars() == 2) {
            ++nchecks;
            auto oracle = binary_oracle(f);
            bool oracle_unstable = oracle.status == StabilityStatus::unstable;
            if (oracle_unstable && found.status != StabilityStatus::unstable)
                fail("binary-search-miss", to_string(f));
            if (!oracle_unstable && found.status == StabilityStatus::unstable)
                fail("binary-false-positive", to_string(f));
            std::vector<QMatrix> frames{QMatrix::identity(2)};
            for (auto& t : root_targeted_frames(f)) frames.push_back(std::move(t));
            bool grad_hit = detail::gradient_destabilized_in_frames(f, frames);
            if (grad_hit != oracle_unstable)
                fail("binary-gradient-mismatch", to_string(f) + (grad_hit ? ": spurious gradient destabilizer"
                                                                          : ": gradient destabilizer not found"));
        }

        if (spec.family == Family::disjoint_sums) {
            ++nchecks;
            auto dec = disjoint_decomposition(f);
            if (dec.blocks.size() < 2 || !dec.fixing_one_ps) {
                fail("disjoint-structure", to_string(f));
            } else {
                try {
                    long long w = hm_weight(gradient_point(f), *dec.fixing_one_ps);
                    if (w != 0) fail("disjoint-boundary", to_string(f) + " weight " + std::to_string(w));
                    // the fixing weight vector pins every partial's initial
                    // weight to d*lambda, which forces the decomposition back out
                    BoundaryReport boundary = transfer_grad_to_form_boundary(f, *dec.fixing_one_ps);
                    if (!boundary.mu_prime_equals_d_lambda)
                        fail("disjoint-mu-pinning", to_string(f));
                    if (boundary.components.size() < 2) fail("disjoint-recovery", to_string(f));
                } catch (const Error& e) {
                    fail("disjoint-gradient", to_string(f) + ": " + e.what());
                }
            }
        }
    });

    for (auto& s : slots)
        for (auto& v : s) rep.violations.push_back(std::move(v));
    for (long long c : counts) rep.checks += c;
    return rep;
}

struct AssocSpec {
    Family family = Family::random_smooth;  // fermat | random-smooth | random-sparse
    int n = 2;
    int gen_degree = 2;
    int count = 10;
    std::uint64_t seed = 1;
    int frames = 5;
    long long lambda_bound = 4;
    long long entry_bound = 2;
};

/// Regular-sequence items for the associated-form checks.
inline std::vector<std::vector<Polynomial>> assoc_items(const AssocSpec& spec) {
    std::vector<std::vector<Polynomial>> items;
    switch (spec.family) {
        case Family::fermat: {
            std::vector<Polynomial> gens;
            for (int i = 0; i < spec.n; ++i) {
                Monomial m(std::vector<int>(static_cast<std::size_t>(spec.n), 0));
                m.exp[static_cast<std::size_t>(i)] = spec.gen_degree;
                gens.push_back(Polynomial::term(spec.n, m, Rational(1)));
            }
            items.push_back(std::move(gens));
            break;
        }
        case Family::random_smooth: {
            CorpusSpec forms{Family::random_smooth, spec.n, spec.gen_degree + 1, spec.count, spec.seed};
            for (const auto& f : generate_corpus(forms)) {
                std::vector<Polynomial> gens;
                for (int i = 0; i < spec.n; ++i) gens.push_back(partial_derivative(f, i));
                items.push_back(std::move(gens));
            }
            break;
        }
        case Family::random_sparse:
            items = generate_regular_sequences(spec.n, spec.gen_degree, spec.count, spec.seed);
            break;
        default:
            throw Error("associated-form harness supports fermat, random-smooth, random-sparse");
    }
    return items;
}

/// Per regular sequence and per frame: the missing socle monomial must
/// dominate the balanced monomial for every sorted weight vector (checked on
/// the ordered echelon pivots and cross-checked against the inverse-system
/// route), and the associated form must never be torus-unstable.
inline HarnessReport verify_assoc_theorem(const AssocSpec& spec) {
    HarnessReport rep;
    rep.operation = "verify-assoc-theorem";
    auto items = assoc_items(spec);
    rep.items = static_cast<int>(items.size());
    auto lambdas = sorted_one_ps_grid(spec.n, spec.lambda_bound);
    std::vector<std::vector<Violation>> slots(items.size());
    std::vector<long long> counts(items.size(), 0);

    parallel_for(rep.items, [&](int idx) {
        const auto& gens = items[static_cast<std::size_t>(idx)];
        auto& out = slots[static_cast<std::size_t>(idx)];
        auto& nchecks = counts[static_cast<std::size_t>(idx)];
        int d = spec.gen_degree;
        int nu = spec.n * (d - 1);
        std::mt19937_64 rng(detail::mix_seed(spec.seed, static_cast<std::uint64_t>(idx)));

        std::vector<QMatrix> frames{QMatrix::identity(spec.n)};
        for (int k = 0; k < spec.frames; ++k) frames.push_back(detail::random_frame(spec.n, rng, spec.entry_bound));

        for (std::size_t fi = 0; fi < frames.size(); ++fi) {
            std::vector<Polynomial> framed;
            framed.reserve(gens.size());
            for (const auto& g : gens) framed.push_back(apply_linear(g, frames[fi]));
            GradedSubspace ideal_nu = span_of_multiples(framed, nu);
            DualPolynomial kernel = detail::apolar_kernel(ideal_nu);
            for (const auto& lambda : lambdas) {
                ++nchecks;
                SocleReport socle = socle_monomial_report(ideal_nu, d, lambda);
                if (!socle.dominates)
                    out.push_back({idx, "socle-dominates",
                                   "frame " + std::to_string(fi) + " lambda " + to_string(lambda) + " m0 " +
                                       to_string(socle.m0)});
                if (socle_monomial_via_inverse_system(kernel, lambda) != socle.m0)
                    out.push_back({idx, "socle-route-mismatch",
                                   "frame " + std::to_string(fi) + " lambda " + to_string(lambda)});
            }
            ++nchecks;
            StabilityVerdict v = torus_verdict(form_state(kernel));
            if (v.status == StabilityStatus::unstable)
                out.push_back({idx, "assoc-unstable", "frame " + std::to_string(fi) + " A = " + to_string(kernel, "u")});
        }
    });

    for (auto& s : slots)
        for (auto& v : s) rep.violations.push_back(std::move(v));
    for (long long c : counts) rep.checks += c;
    return rep;
}

}  // namespace gitmilnor
