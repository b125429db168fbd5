#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "oprew/json_io.hpp"

namespace {

using namespace oprew;

constexpr std::uint64_t kDefaultBudget = 1000000;

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kBudgetOrUnknown = 2,
    kInvariantViolation = 3,
};

struct CommonOptions {
    std::string system = "averaging";
    std::string mode = "scheme";
    std::string variant = "unitary";
    std::uint32_t max_degree = 4;
    std::uint32_t generators = 2;
    std::uint64_t budget = kDefaultBudget;
    bool json = false;
    bool trace = false;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool wants_sweep = false) {
    cmd->add_option("--system", opt.system,
                    "averaging|averaging-novarphi|differential|rb:<lambda>|reynolds|<file.json>");
    cmd->add_option("--mode", opt.mode, "scheme|order");
    cmd->add_option("--variant", opt.variant, "unitary|nonunitary");
    cmd->add_option("--generators", opt.generators, "alphabet size (x1..xK)");
    cmd->add_option("--budget", opt.budget, "vertex/step budget");
    cmd->add_flag("--json", opt.json, "machine-readable output");
    cmd->add_flag("--trace", opt.trace, "include rewrite traces");
    cmd->add_option("--seed", opt.seed, "seed for randomized commands");
    cmd->add_option("--threads", opt.threads, "worker threads for sweeps (0 = auto)");
    if (wants_sweep) cmd->add_option("--max-degree", opt.max_degree, "degree bound");
}

Variant variant_of(const CommonOptions& opt) {
    if (opt.variant == "unitary") return Variant::Unitary;
    if (opt.variant == "nonunitary") return Variant::Nonunitary;
    throw CLI::ValidationError("--variant must be unitary or nonunitary");
}

Mode mode_of(const CommonOptions& opt) {
    if (opt.mode == "scheme") return Mode::Scheme;
    if (opt.mode == "order") return Mode::Order;
    throw CLI::ValidationError("--mode must be scheme or order");
}

RewriteSystem system_of(const CommonOptions& opt) {
    const Mode mode = mode_of(opt);
    const Variant variant = variant_of(opt);
    if (opt.system == "averaging")
        return build_system(AvgSelection{true, true, true}, mode, variant);
    if (opt.system == "averaging-novarphi")
        return build_system(AvgSelection{true, true, false}, mode, variant);

    const Orientation orientation =
        mode == Mode::Order ? Orientation(OrderHandle{}) : Orientation(PatternSide{0});
    if (opt.system == "differential")
        return to_system({builtin("differential")}, orientation, variant);
    if (opt.system == "reynolds")
        return to_system({builtin("reynolds")}, orientation, variant);
    if (opt.system.rfind("rb:", 0) == 0) {
        const std::string lam = opt.system.substr(3);
        const auto slash = lam.find('/');
        Rational lambda = slash == std::string::npos
                              ? Rational(BigInt(lam))
                              : Rational(BigInt(lam.substr(0, slash)),
                                         BigInt(lam.substr(slash + 1)));
        return to_system({builtin("rota_baxter", lambda)}, orientation, variant);
    }
    if (opt.system.size() > 5 && opt.system.substr(opt.system.size() - 5) == ".json") {
        std::ifstream in(opt.system);
        if (!in) throw CLI::ValidationError("cannot open system file: " + opt.system);
        nlohmann::json j = nlohmann::json::parse(in);
        std::vector<Opi> opis;
        if (j.is_array())
            for (const auto& item : j) opis.push_back(opi_from_json(item));
        else
            opis.push_back(opi_from_json(j));
        return to_system(std::move(opis), orientation, variant);
    }
    throw CLI::ValidationError("unknown --system: " + opt.system);
}

Alphabet alphabet_of(const CommonOptions& opt) { return Alphabet::numbered(opt.generators); }

void emit(const Json& j, const CommonOptions& opt, const std::string& text) {
    if (opt.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text << "\n";
}

Json system_header(const CommonOptions& opt, const std::string& command) {
    Json j;
    j["command"] = command;
    j["system"] = opt.system;
    j["mode"] = opt.mode;
    j["variant"] = opt.variant;
    j["generators"] = opt.generators;
    return j;
}

int run_normalize(const CommonOptions& opt, const std::string& input) {
    const Alphabet alphabet = alphabet_of(opt);
    const RewriteSystem sys = system_of(opt);
    const LinComb f = parse_poly(input, alphabet);
    std::vector<StepRecord> steps;
    try {
        const LinComb nf = normalize(f, sys, opt.budget, opt.trace ? &steps : nullptr);
        Json j = system_header(opt, "normalize");
        j["input"] = print_poly(f, alphabet);
        j["normal_form"] = print_poly(nf, alphabet);
        if (opt.trace) {
            Json t = Json::array();
            for (const StepRecord& s : steps) t.push_back(step_to_json(s, alphabet));
            j["trace"] = t;
        }
        emit(j, opt, print_poly(nf, alphabet));
        return kOk;
    } catch (const CycleGuardError& e) {
        Json j = system_header(opt, "normalize");
        j["error"] = "cycle";
        j["detail"] = e.what();
        emit(j, opt, std::string("error: ") + e.what());
        return kBudgetOrUnknown;
    } catch (const BudgetError& e) {
        Json j = system_header(opt, "normalize");
        j["error"] = "budget";
        j["detail"] = e.what();
        emit(j, opt, std::string("error: ") + e.what());
        return kBudgetOrUnknown;
    }
}

int run_reducts(const CommonOptions& opt, const std::string& input) {
    const Alphabet alphabet = alphabet_of(opt);
    const RewriteSystem sys = system_of(opt);
    const Word w = parse_word(input, alphabet);
    Json arr = Json::array();
    std::string text;
    for (const Redex& r : find_redexes(w, sys)) {
        const LinComb to = apply_redex(w, r, sys);
        arr.push_back(redex_to_json(w, r, to, alphabet));
        text += r.rule.family + " -> " + print_poly(to, alphabet) + "\n";
    }
    Json j = system_header(opt, "reducts");
    j["word"] = print_word(w, alphabet);
    j["reducts"] = arr;
    if (!text.empty()) text.pop_back();
    emit(j, opt, text.empty() ? "(normal form)" : text);
    return kOk;
}

int run_closure(const CommonOptions& opt, const std::string& input) {
    const Alphabet alphabet = alphabet_of(opt);
    const RewriteSystem sys = system_of(opt);
    const Word w = parse_word(input, alphabet);
    const ClosureReport report = closure(w, sys, opt.budget);
    Json j = system_header(opt, "closure");
    const Json body = closure_to_json(report, alphabet);
    for (const auto& [k, v] : body.items()) j[k] = v;
    std::string text = "vertices: " + std::to_string(report.vertices.size()) +
                       ", normal forms:";
    for (const Word& nf : report.normal_forms) text += " " + print_word(nf, alphabet);
    text += report.has_cycle ? ", has_cycle: true" : ", has_cycle: false";
    emit(j, opt, text);
    return report.truncated ? kBudgetOrUnknown : kOk;
}

int run_joinable(const CommonOptions& opt, const std::string& a, const std::string& b) {
    const Alphabet alphabet = alphabet_of(opt);
    const RewriteSystem sys = system_of(opt);
    const JoinResult res =
        joinable(parse_poly(a, alphabet), parse_poly(b, alphabet), sys, opt.budget);
    Json j = system_header(opt, "joinable");
    j["joinable"] = tri_to_json(res.joinable);
    if (res.witness) j["witness"] = print_poly(*res.witness, alphabet);
    std::string text = res.joinable == Tri::True    ? "joinable"
                       : res.joinable == Tri::False ? "not joinable"
                                                    : "unknown";
    if (res.witness) text += " at " + print_poly(*res.witness, alphabet);
    emit(j, opt, text);
    return res.joinable == Tri::Unknown ? kBudgetOrUnknown : kOk;
}

int run_confluence(const CommonOptions& opt) {
    const Alphabet alphabet = alphabet_of(opt);
    const RewriteSystem sys = system_of(opt);
    const ConfluenceReport report =
        local_confluence_report(opt.max_degree, alphabet, sys, opt.budget, opt.threads);
    Json j = system_header(opt, "confluence");
    j["max_degree"] = opt.max_degree;
    const Json body = confluence_to_json(report, alphabet);
    for (const auto& [k, v] : body.items()) j[k] = v;
    std::string text = "locally confluent: ";
    text += report.verdict == Tri::True    ? "true"
            : report.verdict == Tri::False ? "false"
                                           : "unknown";
    text += " (" + std::to_string(report.offenders.size()) + " offenders, " +
            std::to_string(report.words_checked) + " words)";
    emit(j, opt, text);
    return report.verdict == Tri::Unknown ? kBudgetOrUnknown : kOk;
}

int run_gs(const CommonOptions& opt) {
    const Alphabet alphabet = alphabet_of(opt);
    const RewriteSystem sys = system_of(opt);
    const GsReport report = gs_verdict(opt.max_degree, alphabet, sys, opt.budget, opt.threads);
    Json j = system_header(opt, "gs");
    const Json body = gs_to_json(report, alphabet);
    for (const auto& [k, v] : body.items()) j[k] = v;
    std::string text = "GS basis up to degree " + std::to_string(opt.max_degree) + ": ";
    text += report.verdict == Tri::True    ? "true"
            : report.verdict == Tri::False ? "false"
                                           : "unknown";
    emit(j, opt, text);
    return report.verdict == Tri::Unknown ? kBudgetOrUnknown : kOk;
}

int run_basis_list(const CommonOptions& opt) {
    const Alphabet alphabet = alphabet_of(opt);
    const auto words = irr_enumerate(opt.max_degree, alphabet, variant_of(opt));
    Json arr = Json::array();
    std::string text;
    for (const Word& w : words) {
        arr.push_back(print_word(w, alphabet));
        text += print_word(w, alphabet) + "\n";
    }
    Json j = system_header(opt, "basis list");
    j["max_degree"] = opt.max_degree;
    j["count"] = words.size();
    j["words"] = arr;
    if (!text.empty()) text.pop_back();
    emit(j, opt, text);
    return kOk;
}

int run_basis_count(const CommonOptions& opt) {
    Json counts = Json::array();
    std::string text;
    for (std::uint32_t d = 0; d <= opt.max_degree; ++d) {
        const auto n = irr_count(d, opt.generators, variant_of(opt));
        counts.push_back(n);
        text += "degree " + std::to_string(d) + ": " + std::to_string(n) + "\n";
    }
    Json j = system_header(opt, "basis count");
    j["max_degree"] = opt.max_degree;
    j["counts"] = counts;
    if (!text.empty()) text.pop_back();
    emit(j, opt, text);
    return kOk;
}

int run_basis_audit(const CommonOptions& opt) {
    const Alphabet alphabet = alphabet_of(opt);
    const RewriteSystem sys = system_of(opt);
    const BasisAuditReport report =
        basis_audit(opt.max_degree, alphabet, sys, opt.budget, opt.threads);
    Json j = system_header(opt, "basis audit");
    j["max_degree"] = opt.max_degree;
    const Json body = basis_audit_to_json(report, alphabet);
    for (const auto& [k, v] : body.items()) j[k] = v;
    std::string text = "mismatches: " + std::to_string(report.mismatches.size());
    for (const Word& w : report.mismatches) text += " " + print_word(w, alphabet);
    emit(j, opt, text);
    return kOk;
}

int run_member(const CommonOptions& opt, const std::string& input) {
    const Alphabet alphabet = alphabet_of(opt);
    const RewriteSystem sys = system_of(opt);
    const Tri res = member(parse_poly(input, alphabet), sys, opt.budget);
    Json j = system_header(opt, "member");
    j["in_ideal"] = tri_to_json(res);
    if (res == Tri::False)
        j["note"] = "certain only where the bounded confluence verdict holds";
    emit(j, opt,
         res == Tri::True ? "in ideal" : res == Tri::False ? "not reduced to zero" : "unknown");
    return res == Tri::Unknown ? kBudgetOrUnknown : kOk;
}

int run_orient(const CommonOptions& opt, const std::string& family_text,
               const std::string& u1_text, const std::string& u2_text) {
    const Alphabet alphabet = alphabet_of(opt);
    AvgFamily family;
    if (family_text == "phi")
        family = AvgFamily::Phi;
    else if (family_text == "psi")
        family = AvgFamily::Psi;
    else if (family_text == "varphi")
        family = AvgFamily::Varphi;
    else
        throw CLI::ValidationError("--family must be phi, psi or varphi");
    const Word u1 = parse_word(u1_text, alphabet);
    const Word u2 = parse_word(u2_text, alphabet);
    const OrientationAudit audit = audit_orientation(family, u1, u2, OrderHandle{});
    const Json j = orientation_to_json(family, u1, u2, audit, alphabet);
    emit(j, opt,
         std::string("paper_lhs: ") + print_word(audit.paper_lhs, alphabet) +
             ", order_lhs: " + print_word(audit.order_lhs, alphabet) +
             ", agrees: " + (audit.agrees ? "true" : "false"));
    return kOk;
}

int run_placements(const CommonOptions& opt, const std::string& host_text,
                   const std::string& factor_text) {
    const Alphabet alphabet = alphabet_of(opt);
    const Word host = parse_word(host_text, alphabet);
    const Word factor = parse_word(factor_text, alphabet);
    Json arr = Json::array();
    std::string text;
    for (const Placement& p : subword_placements(host, factor)) {
        arr.push_back(placement_to_json(p));
        text += placement_to_json(p).dump() + "\n";
    }
    Json j = system_header(opt, "placements");
    j["host"] = print_word(host, alphabet);
    j["factor"] = print_word(factor, alphabet);
    j["placements"] = arr;
    if (!text.empty()) text.pop_back();
    emit(j, opt, text.empty() ? "(none)" : text);
    return kOk;
}

int run_relation(const CommonOptions& opt, const std::string& host_text,
                 const std::string& p1_text, const std::string& p2_text) {
    const Alphabet alphabet = alphabet_of(opt);
    const Word host = parse_word(host_text, alphabet);
    const Placement p1 = placement_from_json(nlohmann::json::parse(p1_text));
    const Placement p2 = placement_from_json(nlohmann::json::parse(p2_text));
    const PlacementRelation rel = classify(host, p1, p2);
    const std::string name = rel == PlacementRelation::Separated    ? "separated"
                             : rel == PlacementRelation::Nested     ? "nested"
                                                                    : "intersecting";
    Json j = system_header(opt, "relation");
    j["host"] = print_word(host, alphabet);
    j["p1"] = placement_to_json(p1);
    j["p2"] = placement_to_json(p2);
    j["relation"] = name;
    emit(j, opt, name);
    return kOk;
}

int run_eval_check(const CommonOptions& opt, std::uint64_t target_edges, std::size_t dim,
                   std::uint32_t assignments) {
    const Alphabet alphabet = alphabet_of(opt);
    const EvalAlgebra alg(dim);
    std::mt19937_64 rng(opt.seed ? opt.seed : 0x0e7a1c4eull);

    std::uint64_t edges_checked = 0;
    Json failures = Json::array();
    const AvgSelection selections[] = {{true, true, true}, {true, true, false}};
    for (std::uint32_t d = 1; edges_checked < target_edges && d <= 12; ++d) {
        for (const AvgSelection& sel : selections) {
            for (const Mode mode : {Mode::Scheme, Mode::Order}) {
                for (const Variant variant : {Variant::Unitary, Variant::Nonunitary}) {
                    const RewriteSystem sys = build_system(sel, mode, variant);
                    for (const Word& w : words_of_degree(d, alphabet, variant)) {
                        if (edges_checked >= target_edges) break;
                        for (const Redex& r : find_redexes(w, sys)) {
                            const LinComb from = LinComb::monomial(w);
                            const LinComb to = apply_redex(w, r, sys);
                            const LinComb diff = from - to;
                            for (std::uint32_t k = 0; k < assignments; ++k) {
                                const Assignment a = random_assignment(alphabet, alg, rng);
                                for (const Rational& x : eval(diff, a, alg)) {
                                    if (x != 0)
                                        failures.push_back(redex_to_json(w, r, to, alphabet));
                                }
                            }
                            ++edges_checked;
                        }
                    }
                }
            }
        }
    }
    Json j = system_header(opt, "eval-check");
    j["edges_checked"] = edges_checked;
    j["assignments_per_edge"] = assignments;
    j["dimension"] = dim;
    j["failures"] = failures;
    emit(j, opt,
         "edges: " + std::to_string(edges_checked) +
             ", failures: " + std::to_string(failures.size()));
    if (!failures.empty()) return kInvariantViolation;
    return edges_checked >= target_edges ? kOk : kBudgetOrUnknown;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear term rewriting on bracketed words"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string input, input2;
    std::string family, u1, u2, host, factor, p1, p2;
    std::uint64_t edges = 10000;
    std::size_t dim = 3;
    std::uint32_t assignments = 20;

    auto* normalize_cmd = app.add_subcommand("normalize", "normal form of a polynomial");
    add_common(normalize_cmd, opt);
    normalize_cmd->add_option("input", input)->required();

    auto* reducts_cmd = app.add_subcommand("reducts", "one-step reducts of a word");
    add_common(reducts_cmd, opt);
    reducts_cmd->add_option("input", input)->required();

    auto* closure_cmd = app.add_subcommand("closure", "reachable rewrite graph of a word");
    add_common(closure_cmd, opt);
    closure_cmd->add_option("input", input)->required();

    auto* joinable_cmd = app.add_subcommand("joinable", "common reduct of two polynomials");
    add_common(joinable_cmd, opt);
    joinable_cmd->add_option("first", input)->required();
    joinable_cmd->add_option("second", input2)->required();

    auto* confluence_cmd =
        app.add_subcommand("confluence", "bounded local-confluence sweep");
    add_common(confluence_cmd, opt, true);

    auto* gs_cmd = app.add_subcommand("gs", "bounded Groebner-Shirshov verdict");
    add_common(gs_cmd, opt, true);

    auto* basis_cmd = app.add_subcommand("basis", "irreducible-word basis");
    basis_cmd->require_subcommand(1);
    auto* basis_list = basis_cmd->add_subcommand("list", "enumerate basis words");
    add_common(basis_list, opt, true);
    auto* basis_count = basis_cmd->add_subcommand("count", "count basis words per degree");
    add_common(basis_count, opt, true);
    auto* basis_audit_cmd =
        basis_cmd->add_subcommand("audit", "pattern vs engine irreducibility");
    add_common(basis_audit_cmd, opt, true);

    auto* member_cmd = app.add_subcommand("member", "operated-ideal membership");
    add_common(member_cmd, opt);
    member_cmd->add_option("input", input)->required();

    auto* orient_cmd = app.add_subcommand("orient", "pattern vs dT orientation audit");
    add_common(orient_cmd, opt);
    orient_cmd->add_option("--family", family)->required();
    orient_cmd->add_option("--u1", u1)->required();
    orient_cmd->add_option("--u2", u2)->required();

    auto* placements_cmd = app.add_subcommand("placements", "occurrences of a factor");
    add_common(placements_cmd, opt);
    placements_cmd->add_option("--host", host)->required();
    placements_cmd->add_option("--factor", factor)->required();

    auto* relation_cmd = app.add_subcommand("relation", "relative position of two placements");
    add_common(relation_cmd, opt);
    relation_cmd->add_option("--host", host)->required();
    relation_cmd->add_option("--p1", p1)->required();
    relation_cmd->add_option("--p2", p2)->required();

    auto* eval_cmd = app.add_subcommand("eval-check", "rewrite invariance of the eval oracle");
    add_common(eval_cmd, opt, true);
    eval_cmd->add_option("--edges", edges, "minimum edges to sample");
    eval_cmd->add_option("--dim", dim, "oracle dimension");
    eval_cmd->add_option("--assignments", assignments, "assignments per edge");

    CLI11_PARSE(app, argc, argv);

    if (*eval_cmd && eval_cmd->get_option("--max-degree")->count() == 0)
        opt.max_degree = 5;

    try {
        if (*normalize_cmd) return run_normalize(opt, input);
        if (*reducts_cmd) return run_reducts(opt, input);
        if (*closure_cmd) return run_closure(opt, input);
        if (*joinable_cmd) return run_joinable(opt, input, input2);
        if (*confluence_cmd) return run_confluence(opt);
        if (*gs_cmd) return run_gs(opt);
        if (*basis_list) return run_basis_list(opt);
        if (*basis_count) return run_basis_count(opt);
        if (*basis_audit_cmd) return run_basis_audit(opt);
        if (*member_cmd) return run_member(opt, input);
        if (*orient_cmd) return run_orient(opt, family, u1, u2);
        if (*placements_cmd) return run_placements(opt, host, factor);
        if (*relation_cmd) return run_relation(opt, host, p1, p2);
        if (*eval_cmd) return run_eval_check(opt, edges, dim, assignments);
    } catch (const ParseError& e) {
        std::cerr << "parse error at position " << e.position() << ": " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kInvariantViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
