#pragma once

#include <json.hpp>

#include <chrono>
#include <string>

#include "gitmilnor/milnor.hpp"
#include "gitmilnor/parse.hpp"
#include "gitmilnor/stability.hpp"

namespace gitmilnor {

/// Reports use insertion-ordered JSON so that identical inputs produce
/// byte-identical output; rationals serialize as "p/q" strings, never floats.
using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return to_string(q); }

inline Json to_json(const Monomial& m) {
    Json a = Json::array();
    for (int e : m.exp) a.push_back(e);
    return a;
}

inline Json to_json(const OnePS& lambda) {
    Json a = Json::array();
    for (long long w : lambda.weights()) a.push_back(w);
    return a;
}

inline Json to_json(const QMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const StateSet& s) {
    Json j;
    j["source"] = s.source == StateSource::form_support ? "form-support" : "grassmannian-pluecker";
    Json pts = Json::array();
    for (const auto& p : s.points) {
        Json pt = Json::array();
        for (const auto& v : p) pt.push_back(to_string(v));
        pts.push_back(std::move(pt));
    }
    j["points"] = std::move(pts);
    return j;
}

inline Json to_json(const PivotSet& p) {
    Json j;
    Json ms = Json::array();
    for (const auto& m : p.monomials) ms.push_back(to_json(m));
    j["monomials"] = std::move(ms);
    j["weight"] = p.weight;
    return j;
}

inline Json to_json(const StabilityVerdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    if (v.frame) j["frame"] = to_json(*v.frame);
    if (v.lambda) j["lambda"] = to_json(*v.lambda);
    if (!v.convex_combination.empty()) {
        Json c = Json::array();
        for (const auto& q : v.convex_combination) c.push_back(to_string(q));
        j["convex_combination"] = std::move(c);
    }
    if (v.budget) {
        j["budget"] = Json{{"seed", v.budget->seed}, {"frames_tried", v.budget->frames_tried}};
    }
    return j;
}

inline Json to_json(const ForwardCertificate& c) {
    Json j;
    j["degenerate"] = c.degenerate;
    j["gradient_rank"] = c.gradient_rank;
    if (c.degenerate_lambda) j["degenerate_lambda"] = to_json(*c.degenerate_lambda);
    if (!c.degenerate) {
        j["partial_min_weights"] = c.partial_min_weights;
        j["partial_bounds"] = c.partial_bounds;
        j["pluecker_weight"] = c.pluecker_weight;
    }
    return j;
}

inline Json to_json(const BackwardCertificate& c) {
    Json j;
    j["frame"] = to_json(c.frame);
    j["sorted_lambda"] = to_json(c.sorted_lambda);
    j["initial_weights"] = c.initial_weights;
    Json mu = Json::array();
    for (const auto& q : c.mu_prime) mu.push_back(to_string(q));
    j["mu_prime"] = std::move(mu);
    Json fn = Json::array();
    for (const auto& q : c.functional) fn.push_back(to_string(q));
    j["functional"] = std::move(fn);
    j["emitted_lambda"] = to_json(c.emitted);
    j["pluecker_weight"] = c.pluecker_weight;
    return j;
}

/// Stopwatch for the timing field; reports exclude it from any comparison.
class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    long long elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

inline Json make_report(const std::string& operation, Json input, Json result, Json certificate,
                        std::uint64_t seed, long long timing_ms) {
    Json j;
    j["operation"] = operation;
    j["input"] = std::move(input);
    j["result"] = std::move(result);
    if (!certificate.is_null()) j["certificate"] = std::move(certificate);
    j["seed"] = seed;
    j["timing_ms"] = timing_ms;
    return j;
}

}  // namespace gitmilnor
