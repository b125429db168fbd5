#include "oprew/json_io.hpp"

namespace oprew {

Json placement_to_json(const Placement& p) {
    Json j;
    j["path"] = p.path;
    j["start"] = p.start;
    j["len"] = p.len;
    return j;
}

Placement placement_from_json(const nlohmann::json& j) {
    Placement p;
    p.path = j.at("path").get<std::vector<std::uint32_t>>();
    p.start = j.at("start").get<std::uint32_t>();
    p.len = j.at("len").get<std::uint32_t>();
    return p;
}

Json tri_to_json(Tri t) {
    switch (t) {
        case Tri::True: return Json(true);
        case Tri::False: return Json(false);
        case Tri::Unknown: return Json("unknown");
    }
    return Json();
}

Json rule_to_json(const RuleInstance& r, const Alphabet& alphabet) {
    Json j;
    j["family"] = r.family;
    if (r.args.size() == 2) {
        j["u1"] = print_word(r.args[0], alphabet);
        j["u2"] = print_word(r.args[1], alphabet);
    } else {
        Json args = Json::array();
        for (const Word& a : r.args) args.push_back(print_word(a, alphabet));
        j["args"] = args;
    }
    return j;
}

Json redex_to_json(const Word& from, const Redex& r, const LinComb& to,
                   const Alphabet& alphabet) {
    Json j;
    j["from"] = print_word(from, alphabet);
    j["rule"] = rule_to_json(r.rule, alphabet);
    j["placement"] = placement_to_json(r.at);
    j["to"] = print_poly(to, alphabet);
    return j;
}

Json edge_to_json(const Edge& e, const Alphabet& alphabet) {
    Json j;
    j["from"] = print_word(e.from, alphabet);
    j["rule"] = rule_to_json(e.rule, alphabet);
    j["placement"] = placement_to_json(e.at);
    j["to"] = print_word(e.to, alphabet);
    return j;
}

Json step_to_json(const StepRecord& s, const Alphabet& alphabet) {
    Json j;
    j["from"] = print_poly(s.from, alphabet);
    j["rule"] = rule_to_json(s.rule, alphabet);
    j["placement"] = placement_to_json(s.at);
    j["to"] = print_poly(s.to, alphabet);
    return j;
}

Json closure_to_json(const ClosureReport& r, const Alphabet& alphabet) {
    Json j;
    j["root"] = print_word(r.root, alphabet);
    Json vs = Json::array();
    for (const Word& w : r.vertices) vs.push_back(print_word(w, alphabet));
    j["vertices"] = vs;
    Json es = Json::array();
    for (const Edge& e : r.edges) es.push_back(edge_to_json(e, alphabet));
    j["edges"] = es;
    Json nfs = Json::array();
    for (const Word& w : r.normal_forms) nfs.push_back(print_word(w, alphabet));
    j["normal_forms"] = nfs;
    j["has_cycle"] = r.has_cycle;
    j["truncated"] = r.truncated;
    j["budget_used"] = r.budget_used;
    return j;
}

namespace {

Json fork_to_json(const Fork& f, const Alphabet& alphabet) {
    Json j;
    j["word"] = print_word(f.word, alphabet);
    j["reduct1"] = print_poly(f.reduct1, alphabet);
    j["reduct2"] = print_poly(f.reduct2, alphabet);
    return j;
}

}  // namespace

Json confluence_to_json(const ConfluenceReport& r, const Alphabet& alphabet) {
    Json j;
    j["verdict"] = tri_to_json(r.verdict);
    Json off = Json::array();
    for (const Fork& f : r.offenders) off.push_back(fork_to_json(f, alphabet));
    j["offenders"] = off;
    Json unk = Json::array();
    for (const Fork& f : r.unknowns) unk.push_back(fork_to_json(f, alphabet));
    j["unknowns"] = unk;
    j["words_checked"] = r.words_checked;
    j["forks_checked"] = r.forks_checked;
    return j;
}

Json gs_to_json(const GsReport& r, const Alphabet& alphabet) {
    Json j;
    j["degree_bound"] = r.degree_bound;
    j["locally_confluent"] = tri_to_json(r.locally_confluent);
    j["cosets_reduce"] = tri_to_json(r.cosets_reduce);
    j["verdict"] = tri_to_json(r.verdict);
    if (r.verdict == Tri::True)
        j["label"] = "GS basis up to degree " + std::to_string(r.degree_bound);
    Json off = Json::array();
    for (const Fork& f : r.offenders) off.push_back(fork_to_json(f, alphabet));
    j["offenders"] = off;
    Json cf = Json::array();
    for (const Word& w : r.coset_failures) cf.push_back(print_word(w, alphabet));
    j["coset_failures"] = cf;
    Json cu = Json::array();
    for (const Word& w : r.coset_unknowns) cu.push_back(print_word(w, alphabet));
    j["coset_unknowns"] = cu;
    j["words_checked"] = r.words_checked;
    return j;
}

Json basis_audit_to_json(const BasisAuditReport& r, const Alphabet& alphabet) {
    Json rows = Json::array();
    for (const BasisAuditRow& row : r.rows) {
        Json j;
        j["degree"] = row.word.degree();
        j["word"] = print_word(row.word, alphabet);
        j["pattern_irr"] = row.pattern_irr;
        j["engine_irr"] = row.engine_irr;
        if (row.cycle)
            j["nf"] = "cycle";
        else if (row.nf)
            j["nf"] = print_word(*row.nf, alphabet);
        else
            j["nf"] = nullptr;
        if (!row.coset_ok) j["coset_ok"] = false;
        rows.push_back(std::move(j));
    }
    Json j;
    j["rows"] = rows;
    Json mm = Json::array();
    for (const Word& w : r.mismatches) mm.push_back(print_word(w, alphabet));
    j["mismatches"] = mm;
    return j;
}

Json orientation_to_json(AvgFamily family, const Word& u1, const Word& u2,
                         const OrientationAudit& audit, const Alphabet& alphabet) {
    Json j;
    j["family"] = family_name(family);
    j["u1"] = print_word(u1, alphabet);
    j["u2"] = print_word(u2, alphabet);
    j["paper_lhs"] = print_word(audit.paper_lhs, alphabet);
    j["order_lhs"] = print_word(audit.order_lhs, alphabet);
    j["agrees"] = audit.agrees;
    return j;
}

Opi opi_from_json(const nlohmann::json& j) {
    const std::string name = j.at("name").get<std::string>();
    const auto arity = j.at("arity").get<std::uint32_t>();
    const std::string body = j.at("body").get<std::string>();
    // textual term order is the declaration order; the first term is the
    // scheme pattern side
    return make_opi(name, arity, parse_poly_terms(body, metavariable_alphabet(arity)));
}

}  // namespace oprew
