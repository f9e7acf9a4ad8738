// Command-line front end: exact gradient points, Hilbert points, associated
// forms, and torus/frame stability certificates, as text or JSON reports.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "gitmilnor/corpus.hpp"
#include "gitmilnor/harness.hpp"
#include "gitmilnor/milnor.hpp"
#include "gitmilnor/parse.hpp"
#include "gitmilnor/report.hpp"
#include "gitmilnor/stability.hpp"

namespace gm = gitmilnor;

namespace {

struct CommonArgs {
    std::string form;
    std::string gens;
    std::string lambda;
    std::string family = "random-sparse";
    std::string format = "text";
    int n = 0;
    int m = -1;
    int degree = 3;
    int count = 10;
    std::uint64_t seed = 1;
    int budget = 16;
    int frames = 5;
    long long entry_bound = 2;
    long long lambda_bound = 4;
};

void emit(const gm::Json& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::cout << report["operation"].get<std::string>() << "\n";
    if (report.contains("input"))
        for (auto& [k, v] : report["input"].items()) std::cout << "  " << k << ": " << v.dump() << "\n";
    std::cout << "result:\n";
    for (auto& [k, v] : report["result"].items()) std::cout << "  " << k << ": " << v.dump() << "\n";
    if (report.contains("certificate")) std::cout << "certificate: " << report["certificate"].dump() << "\n";
}

gm::Json input_echo_form(const gm::Polynomial& f, const std::string& text) {
    gm::Json j;
    j["form"] = text;
    j["canonical"] = gm::to_string(f);
    j["n"] = f.n_vars();
    j["degree"] = f.degree();
    return j;
}

int cmd_gradient(const CommonArgs& a) {
    gm::Stopwatch clock;
    gm::Polynomial f = gm::parse_homogeneous_form(a.form, a.n);
    gm::Json result;
    gm::Json cert;
    try {
        gm::GradedSubspace grad = gm::gradient_point(f);
        result["status"] = "ok";
        result["rank"] = grad.rank();
        gm::Json basis = gm::Json::array();
        for (const auto& b : grad.basis()) basis.push_back(gm::to_string(b));
        result["basis"] = std::move(basis);
        result["pivots"] = gm::to_json(gm::reduce_under_order(grad, gm::OnePS::zero(f.n_vars())).pivots);
    } catch (const gm::DegenerateGradient& dg) {
        result["status"] = "degenerate";
        result["rank"] = dg.rank;
        if (dg.certificate) cert["destabilizing_lambda"] = gm::to_json(*dg.certificate);
    }
    emit(gm::make_report("gradient", input_echo_form(f, a.form), result, cert, a.seed, clock.elapsed_ms()), a.format);
    return 0;
}

int cmd_assoc(const CommonArgs& a) {
    gm::Stopwatch clock;
    gm::Json input;
    std::vector<gm::Polynomial> gens;
    gm::AssociatedForm assoc{gm::Polynomial(1), gm::Normalization::monomial};
    if (!a.form.empty()) {
        gm::Polynomial f = gm::parse_homogeneous_form(a.form, a.n);
        input = input_echo_form(f, a.form);
        for (int i = 0; i < f.n_vars(); ++i) gens.push_back(gm::partial_derivative(f, i));
        assoc = gm::associated_form(f);
    } else if (!a.gens.empty()) {
        gens = gm::parse_generators(a.gens, a.n);
        input["gens"] = a.gens;
        input["n"] = gens.front().n_vars();
        input["degree"] = gens.front().degree();
        assoc = gm::associated_form(gens);
    } else {
        throw gm::Error("assoc needs --form or --gens");
    }
    gm::Json result;
    result["dual_form"] = gm::to_string(assoc.dual_form, "u");
    result["normalization"] = assoc.normalization == gm::Normalization::hessian ? "hessian" : "monomial";
    result["degree"] = assoc.dual_form.degree();
    // recomputed apolarity check: the form must annihilate the whole socle-degree piece
    gm::GradedSubspace ideal = gm::span_of_multiples(gens, assoc.dual_form.degree());
    bool apolar = true;
    for (const auto& b : ideal.basis())
        if (sgn(gm::polar_pair(assoc.dual_form, b)) != 0) apolar = false;
    result["apolar_to_ideal"] = apolar;
    emit(gm::make_report("assoc", std::move(input), result, gm::Json(), a.seed, clock.elapsed_ms()), a.format);
    return 0;
}

int cmd_hilbert(const CommonArgs& a) {
    gm::Stopwatch clock;
    std::vector<gm::Polynomial> gens;
    gm::Json input;
    if (!a.gens.empty()) {
        gens = gm::parse_generators(a.gens, a.n);
        input["gens"] = a.gens;
    } else if (!a.form.empty()) {
        gm::Polynomial f = gm::parse_homogeneous_form(a.form, a.n);
        input = input_echo_form(f, a.form);
        for (int i = 0; i < f.n_vars(); ++i) gens.push_back(gm::partial_derivative(f, i));
    } else {
        throw gm::Error("hilbert needs --gens or --form");
    }
    int n = gens.front().n_vars();
    int d = gens.front().degree();
    input["n"] = n;
    input["degree"] = d;
    int m = a.m >= 0 ? a.m : d;
    gm::OnePS order = a.lambda.empty() ? gm::OnePS::zero(n) : gm::parse_one_ps(a.lambda);
    gm::HilbertPoint hp = gm::hilbert_point(gens, m, false);
    gm::Json result;
    result["m"] = hp.m;
    result["codim"] = hp.codim;
    result["rank"] = hp.ideal_piece.rank();
    result["pivots"] = gm::to_json(gm::reduce_under_order(hp.ideal_piece, order).pivots);
    result["hilbert_function"] = gm::hilbert_function(gens, std::max(m, n * (d - 1) + 1));
    result["regular"] = gm::is_regular_sequence(gens).regular;
    emit(gm::make_report("hilbert", std::move(input), result, gm::Json(), a.seed, clock.elapsed_ms()), a.format);
    return 0;
}

int cmd_stability(const CommonArgs& a) {
    gm::Stopwatch clock;
    gm::Polynomial f = gm::parse_homogeneous_form(a.form, a.n);
    gm::SearchConfig cfg;
    cfg.seed = a.seed;
    cfg.frame_budget = a.budget;
    cfg.entry_bound = a.entry_bound;
    gm::StabilityVerdict torus = gm::torus_verdict(gm::form_state(f));
    gm::StabilityVerdict search = gm::find_destabilizer(f, cfg);
    gm::Json result;
    result["status"] = gm::to_string(search.status);
    result["torus_identity_frame"] = gm::to_json(torus);
    gm::Json cert = gm::to_json(search);
    if (search.status == gm::StabilityStatus::unstable) {
        // chain the weight both ways: onto the gradient point and back onto F
        gm::Polynomial framed = gm::apply_linear(f, *search.frame);
        gm::ForwardCertificate fwd = gm::transfer_form_to_grad(framed, *search.lambda);
        cert["forward_transfer"] = gm::to_json(fwd);
        if (!fwd.degenerate) {
            gm::BackwardCertificate bwd = gm::transfer_grad_to_form(framed, *search.lambda);
            gm::Json back = gm::to_json(bwd);
            back["recertifies"] = gm::certifies_unstable(f, *search.frame * bwd.frame, bwd.emitted);
            cert["backward_transfer"] = std::move(back);
        }
    }
    emit(gm::make_report("stability", input_echo_form(f, a.form), result, cert, a.seed, clock.elapsed_ms()),
         a.format);
    return 0;
}

gm::Json violations_json(const gm::HarnessReport& rep) {
    gm::Json v = gm::Json::array();
    for (const auto& viol : rep.violations)
        v.push_back(gm::Json{{"item", viol.item}, {"check", viol.check}, {"detail", viol.detail}});
    return v;
}

int cmd_verify_gradient(const CommonArgs& a) {
    gm::Stopwatch clock;
    gm::CorpusSpec spec;
    spec.family = gm::family_from_string(a.family);
    spec.n = a.n > 0 ? a.n : 2;
    spec.form_degree = a.degree;
    spec.count = a.count;
    spec.seed = a.seed;
    gm::SearchConfig cfg;
    cfg.seed = a.seed;
    cfg.frame_budget = a.budget;
    cfg.entry_bound = a.entry_bound;
    cfg.lambda_bound = a.lambda_bound;
    gm::HarnessReport rep = gm::verify_gradient_theorem(spec, cfg);
    gm::Json input{{"family", gm::to_string(spec.family)}, {"n", spec.n},      {"degree", spec.form_degree},
                   {"count", spec.count},                  {"seed", spec.seed}, {"budget", cfg.frame_budget}};
    gm::Json result;
    result["items"] = rep.items;
    result["checks"] = rep.checks;
    result["violation_count"] = rep.violations.size();
    result["violations"] = violations_json(rep);
    emit(gm::make_report(rep.operation, std::move(input), result, gm::Json(), a.seed, clock.elapsed_ms()), a.format);
    return rep.ok() ? 0 : 1;
}

int cmd_verify_assoc(const CommonArgs& a) {
    gm::Stopwatch clock;
    gm::AssocSpec spec;
    spec.family = gm::family_from_string(a.family == "random-sparse" ? "random-smooth" : a.family);
    spec.n = a.n > 0 ? a.n : 2;
    spec.gen_degree = a.degree;
    spec.count = a.count;
    spec.seed = a.seed;
    spec.frames = a.frames;
    spec.lambda_bound = a.lambda_bound;
    spec.entry_bound = a.entry_bound;
    gm::HarnessReport rep = gm::verify_assoc_theorem(spec);
    gm::Json input{{"family", gm::to_string(spec.family)}, {"n", spec.n},
                   {"degree", spec.gen_degree},            {"count", spec.count},
                   {"seed", spec.seed},                    {"frames", spec.frames},
                   {"lambda_bound", spec.lambda_bound}};
    gm::Json result;
    result["items"] = rep.items;
    result["checks"] = rep.checks;
    result["violation_count"] = rep.violations.size();
    result["violations"] = violations_json(rep);
    emit(gm::make_report(rep.operation, std::move(input), result, gm::Json(), a.seed, clock.elapsed_ms()), a.format);
    return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact stability of gradient points, Hilbert points, and associated forms"};
    app.require_subcommand(1);
    CommonArgs a;
    int rc = 0;

    auto add_common = [&](CLI::App* cmd, bool wants_form, bool wants_gens) {
        if (wants_form) cmd->add_option("--form", a.form, "polynomial, e.g. \"x^3 + 3*x^2*y - 1/2*y^3\"");
        if (wants_gens) cmd->add_option("--gens", a.gens, "';'-separated homogeneous generators");
        cmd->add_option("--n", a.n, "variable count (default: inferred)");
        cmd->add_option("--seed", a.seed, "random seed");
        cmd->add_option("--format", a.format, "text|json")->check(CLI::IsMember({"text", "json"}));
    };

    auto* gradient = app.add_subcommand("gradient", "span of the first partials with echelon pivots");
    add_common(gradient, true, false);
    gradient->callback([&] { rc = cmd_gradient(a); });

    auto* assoc = app.add_subcommand("assoc", "associated form of a smooth form or regular sequence");
    add_common(assoc, true, true);
    assoc->callback([&] { rc = cmd_assoc(a); });

    auto* hilbert = app.add_subcommand("hilbert", "graded ideal piece, codimension, and Hilbert function");
    add_common(hilbert, true, true);
    hilbert->add_option("--m", a.m, "graded degree (default: generator degree)");
    hilbert->add_option("--lambda", a.lambda, "weight order for pivot reporting, e.g. \"-1,1\"");
    hilbert->callback([&] { rc = cmd_hilbert(a); });

    auto* stability = app.add_subcommand("stability", "torus verdict and destabilizer search");
    add_common(stability, true, false);
    stability->add_option("--budget", a.budget, "random frame budget");
    stability->add_option("--entry-bound", a.entry_bound, "numerator/denominator bound for random frames");
    stability->callback([&] { rc = cmd_stability(a); });

    auto* vg = app.add_subcommand("verify-gradient-theorem", "both weight transfers plus binary consistency on a corpus");
    add_common(vg, false, false);
    vg->add_option("--family", a.family, "fermat|random-smooth|random-sparse|binary-catalog|disjoint-sums");
    vg->add_option("--degree", a.degree, "form degree");
    vg->add_option("--count", a.count, "corpus size");
    vg->add_option("--budget", a.budget, "random frame budget per item");
    vg->add_option("--entry-bound", a.entry_bound, "frame entry bound");
    vg->add_option("--lambda-bound", a.lambda_bound, "grid bound for grid-strategy verdicts");
    vg->callback([&] { rc = cmd_verify_gradient(a); });

    auto* va = app.add_subcommand("verify-assoc-theorem", "socle dominance and associated-form semistability on a corpus");
    add_common(va, false, false);
    va->add_option("--family", a.family, "fermat|random-smooth|random-sparse");
    va->add_option("--degree", a.degree, "generator degree");
    va->add_option("--count", a.count, "corpus size");
    va->add_option("--frames", a.frames, "random frames per item");
    va->add_option("--entry-bound", a.entry_bound, "frame entry bound");
    va->add_option("--lambda-bound", a.lambda_bound, "sorted integer weight bound");
    va->callback([&] { rc = cmd_verify_assoc(a); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const gitmilnor::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
