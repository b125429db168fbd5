// Acceptance suite: one pass/fail line per criterion. Derived values are
// re-verified against the independent oracle in oracle.hpp before being
// asserted; discrepancy notes are printed where re-verification overturned a
// narrated value.

#include <iostream>
#include <sstream>

#include "helpers.hpp"
#include "oracle.hpp"
#include "oprew/json_io.hpp"

using namespace oprew;
using namespace oprew::testing;

namespace {

int failures = 0;
std::ostringstream current_detail;

void criterion(int n, const std::string& name, bool ok) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << name
              << "\n";
    const std::string detail = current_detail.str();
    if (!detail.empty()) std::cout << detail;
    current_detail.str("");
    if (!ok) ++failures;
}

#define EXPECT(cond)                                                             \
    ([&]() -> bool {                                                             \
        const bool ok_ = static_cast<bool>(cond);                                \
        if (!ok_) current_detail << "       failed: " << #cond << "\n";          \
        return ok_;                                                              \
    }())

RewriteSystem averaging(Mode mode, Variant variant, bool varphi = true) {
    return build_system({true, true, varphi}, mode, variant);
}

// ---------------------------------------------------------------- criterion 1

bool pattern_fork_reproduction() {
    const RewriteSystem sys = averaging(Mode::Scheme, Variant::Unitary, false);
    const Word w = w2("[[x1] [x2]]");
    std::set<std::string> reducts;
    for (const Redex& r : find_redexes(w, sys))
        reducts.insert(print_poly(apply_redex(w, r, sys), ab2()));
    return EXPECT(reducts ==
                  (std::set<std::string>{"[[[x1] x2]]", "[[[x1]] x2]"}));
}

// ---------------------------------------------------------------- criterion 2

bool nonunitary_convergence() {
    bool ok = true;
    const RewriteSystem full = averaging(Mode::Scheme, Variant::Nonunitary);
    const auto words = enumerate_words(6, ab2(), Variant::Nonunitary);
    std::vector<std::uint8_t> word_ok(words.size(), 0);
    parallel_for(words.size(), 0, [&](std::size_t i) {
        bool good = true;
        try {
            normalize(LinComb::monomial(words[i]), full, 1000000);
        } catch (...) {
            good = false;
        }
        if (closure(words[i], full, 1000000).has_cycle) good = false;
        word_ok[i] = good;
    });
    for (std::size_t i = 0; i < words.size(); ++i)
        ok &= EXPECT(word_ok[i] == 1);

    const auto report = local_confluence_report(6, ab2(), full, 1000000, 0);
    ok &= EXPECT(report.verdict == Tri::True);
    ok &= EXPECT(report.offenders.empty());
    ok &= EXPECT(report.words_checked == 2320);

    const auto broken = local_confluence_report(
        5, ab2(), averaging(Mode::Scheme, Variant::Nonunitary, false), 1000000, 0);
    ok &= EXPECT(broken.verdict == Tri::False);
    ok &= EXPECT(!broken.offenders.empty());
    bool contains = false;
    for (const Fork& f : broken.offenders)
        if (f.word == w2("[[x1] [x2]]")) contains = true;
    ok &= EXPECT(contains);
    return ok;
}

// ---------------------------------------------------------------- criterion 3

bool basis_agreement() {
    bool ok = true;
    const RewriteSystem sys = averaging(Mode::Scheme, Variant::Nonunitary);
    const auto words = enumerate_words(6, ab2(), Variant::Nonunitary);
    std::vector<std::uint8_t> word_ok(words.size(), 0);
    parallel_for(words.size(), 0, [&](std::size_t i) {
        const Word& w = words[i];
        bool good = irr_pattern(w, Variant::Nonunitary) == find_redexes(w, sys).empty();
        const LinComb nf = normalize(LinComb::monomial(w), sys, 1000000);
        for (const auto& [m, c] : nf.terms())
            good &= irr_pattern(m, Variant::Nonunitary);
        good &= member(LinComb::monomial(w) - nf, sys, 1000000) == Tri::True;
        word_ok[i] = good;
    });
    for (std::size_t i = 0; i < words.size(); ++i) ok &= EXPECT(word_ok[i] == 1);
    return ok;
}

// ---------------------------------------------------------------- criterion 4

bool degenerate_word_findings() {
    bool ok = true;

    // (a) the scheme-mode two-cycle
    const ClosureReport cycle = closure(w1("[[[1]]]"), averaging(Mode::Scheme,
                                                                 Variant::Unitary),
                                        1000000);
    ok &= EXPECT(cycle.has_cycle);
    ok &= EXPECT(cycle.normal_forms.empty());
    ok &= EXPECT(cycle.vertices.size() == 2);
    ok &= EXPECT(cycle.vertices[0] == w1("[[1] [1]]"));
    ok &= EXPECT(cycle.vertices[1] == w1("[[[1]]]"));
    {
        oracle::Config cfg;
        const auto reach = oracle::reach(w1("[[[1]]]"), cfg);
        ok &= EXPECT(reach.size() == 2);
        ok &= EXPECT(oracle::normal_forms_of(w1("[[[1]]]"), cfg).empty());
    }

    // (b) scheme-mode unique normal form
    const ClosureReport scheme = closure(w2("[[x1] [x2]]"),
                                         averaging(Mode::Scheme, Variant::Unitary),
                                         1000000);
    ok &= EXPECT(scheme.normal_forms.size() == 1);
    ok &= EXPECT(scheme.normal_forms[0] == w2("[[[1] x1] x2]"));
    ok &= EXPECT(!scheme.has_cycle);
    {
        oracle::Config cfg;
        const auto nfs = oracle::normal_forms_of(w2("[[x1] [x2]]"), cfg);
        ok &= EXPECT(nfs.size() == 1 && nfs[0] == w2("[[[1] x1] x2]"));
    }

    // (c) order-mode unique normal form: [[1] [x1] x2] is the reversed lhs of
    // phi(1, [x1] x2) and reduces further, so the exhaustively verified
    // normal form is pinned
    const RewriteSystem order = averaging(Mode::Order, Variant::Unitary);
    const ClosureReport ordered = closure(w2("[[x1] [x2]]"), order, 1000000);
    ok &= EXPECT(ordered.normal_forms.size() == 1);
    ok &= EXPECT(ordered.normal_forms[0] == w2("[1] [[x1] x2]"));
    ok &= EXPECT(!ordered.has_cycle);
    ok &= EXPECT(!find_redexes(w2("[[1] [x1] x2]"), order).empty());
    {
        oracle::Config cfg;
        cfg.order = true;
        const auto nfs = oracle::normal_forms_of(w2("[[x1] [x2]]"), cfg);
        ok &= EXPECT(nfs.size() == 1 && nfs[0] == w2("[1] [[x1] x2]"));
    }
    current_detail << "       note: the hand-traced expectation [[1] [x1] x2] is "
                      "reducible by the reversed phi(1, [x1] x2) instance; the "
                      "exhaustively verified value [1] [[x1] x2] is pinned\n";

    // (d) unitary order-mode basis-audit mismatches at degree <= 3: the
    // degenerate coset pair [[1]] / [1] [1] mismatches; [[1] [1]] does not
    // (it is order-reducible via the reversed phi(1, [1]) instance)
    const BasisAuditReport audit = basis_audit(3, ab1(), order, 1000000, 0);
    std::set<std::string> mismatches;
    for (const Word& w : audit.mismatches) mismatches.insert(print_word(w, ab1()));
    ok &= EXPECT(!mismatches.empty());
    ok &= EXPECT(mismatches.count("[[1]]") == 1);
    ok &= EXPECT(mismatches.count("[1] [1]") == 1);
    ok &= EXPECT(mismatches.count("[[1] [1]]") == 0);
    ok &= EXPECT(!find_redexes(w1("[[1] [1]]"), order).empty());
    {
        oracle::Config cfg;
        cfg.order = true;
        for (const BasisAuditRow& row : audit.rows) {
            ok &= EXPECT(row.engine_irr == oracle::reducts(row.word, cfg).empty());
        }
    }
    current_detail << "       note: the hand-traced candidate [[1] [1]] rewrites via "
                      "the reversed phi(1, [1]) instance and is not a mismatch; the "
                      "verified list contains the coset pair [[1]] and [1] [1]\n";
    return ok;
}

// ---------------------------------------------------------------- criterion 5

bool order_soundness() {
    bool ok = true;
    const auto words = enumerate_words(4, ab2(), Variant::Unitary);
    // totality and antisymmetry
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (compare_dt(words[i], words[i]) != 0) return EXPECT(false);
        for (std::size_t j = i + 1; j < words.size(); ++j) {
            const int c = compare_dt(words[i], words[j]);
            if (c == 0 || c != -compare_dt(words[j], words[i])) return EXPECT(false);
        }
    }
    // context compatibility: q|u < q|v whenever u < v
    const auto contexts = enumerate_contexts(3, ab2(), Variant::Unitary);
    std::vector<std::uint8_t> ctx_ok(contexts.size(), 0);
    parallel_for(contexts.size(), 0, [&](std::size_t qi) {
        std::vector<Word> filled;
        filled.reserve(words.size());
        const Placement hole = star_placement(contexts[qi]);
        for (const Word& w : words) filled.push_back(substitute(contexts[qi], hole, w));
        bool good = true;
        for (std::size_t i = 0; i < words.size() && good; ++i) {
            for (std::size_t j = i + 1; j < words.size(); ++j) {
                const int c = compare_dt(words[i], words[j]);
                if (compare_dt(filled[i], filled[j]) != c) {
                    good = false;
                    break;
                }
            }
        }
        ctx_ok[qi] = good;
    });
    for (std::size_t qi = 0; qi < contexts.size(); ++qi) ok &= EXPECT(ctx_ok[qi] == 1);

    // orientation agreement on generator-bearing spines, u1/u2 of degree <= 3
    const OrderHandle ord;
    const auto args = enumerate_words(3, ab2(), Variant::Unitary);
    for (const Word& u1 : args) {
        for (const Word& u2 : args) {
            for (AvgFamily fam : {AvgFamily::Phi, AvgFamily::Psi}) {
                auto [m1, m2] = family_monomials(fam, u1, u2);
                if (m1 == m2) continue;
                if (leftmost_spine_has_generator(u1))
                    ok &= EXPECT(audit_orientation(fam, u1, u2, ord).agrees);
            }
            if (!u2.empty())
                ok &= EXPECT(audit_orientation(AvgFamily::Varphi, u1, u2, ord).agrees);
        }
    }
    return ok;
}

// ---------------------------------------------------------------- criterion 6

bool unconditional_coset_soundness() {
    bool ok = true;
    const EvalAlgebra alg(3);
    std::mt19937_64 rng(0xc05e7ull);
    std::uint64_t edges = 0;
    for (std::uint32_t d = 1; edges < 10000 && d <= 12; ++d) {
        for (bool varphi : {true, false}) {
            for (Mode mode : {Mode::Scheme, Mode::Order}) {
                for (Variant variant : {Variant::Unitary, Variant::Nonunitary}) {
                    const RewriteSystem sys = averaging(mode, variant, varphi);
                    for (const Word& w : words_of_degree(d, ab2(), variant)) {
                        if (edges >= 10000) break;
                        for (const Redex& r : find_redexes(w, sys)) {
                            const LinComb diff =
                                LinComb::monomial(w) - apply_redex(w, r, sys);
                            for (int k = 0; k < 20; ++k) {
                                const Assignment a = random_assignment(ab2(), alg, rng);
                                for (const Rational& x : eval(diff, a, alg))
                                    if (x != 0) ok = EXPECT(false);
                            }
                            ++edges;
                        }
                    }
                }
            }
        }
    }
    ok &= EXPECT(edges >= 10000);
    current_detail << "       edges checked: " << edges
                   << " (20 exact assignments each, dimension 3)\n";
    return ok;
}

// ---------------------------------------------------------------- criterion 7

bool combinatorial_oracles() {
    bool ok = true;
    const unsigned long long expected[4] = {1, 2, 6, 22};
    for (std::uint32_t d = 0; d <= 3; ++d) {
        // re-derived by the independent token-string enumeration, then pinned
        ok &= EXPECT(oracle::count_words_tokens(d, 1, false) == expected[d]);
        ok &= EXPECT(count_words(d, 1, Variant::Unitary) == expected[d]);
        ok &= EXPECT(words_of_degree(d, ab1(), Variant::Unitary).size() == expected[d]);
    }
    // irr counts, re-derived via the oracle's scheme-irreducibility
    const auto irr_by_oracle = [&](Variant variant) {
        oracle::Config cfg;
        cfg.nonunitary = variant == Variant::Nonunitary;
        unsigned long long n = 0;
        for (const Word& w : words_of_degree(2, ab1(), variant))
            if (oracle::reducts(w, cfg).empty()) ++n;
        return n;
    };
    ok &= EXPECT(irr_by_oracle(Variant::Unitary) == 5);
    ok &= EXPECT(irr_count(2, 1, Variant::Unitary) == 5);
    ok &= EXPECT(irr_by_oracle(Variant::Nonunitary) == 2);
    ok &= EXPECT(irr_count(2, 1, Variant::Nonunitary) == 2);
    return ok;
}

// ---------------------------------------------------------------- criterion 8

bool rewriting_calculus_properties() {
    bool ok = true;
    const RewriteSystem sys = averaging(Mode::Scheme, Variant::Unitary);
    std::mt19937_64 rng(0x8a5eull);

    // scalar iff-compatibility: 1000 randomized one-step pairs
    int cases = 0;
    while (cases < 1000) {
        const Word w = random_word(rng, ab2(), 4);
        const auto redexes = find_redexes(w, sys);
        if (redexes.empty()) continue;
        const Redex& r = redexes[rng() % redexes.size()];
        const LinComb f = LinComb::monomial(w, small_rational(rng, true));
        const Rational c = small_rational(rng, true);
        if (rewrite_once(scale(c, f), sys, w, r) != scale(c, rewrite_once(f, sys, w, r)))
            return EXPECT(false);
        ++cases;
    }
    // exhaustive at degree <= 4: reachable sets scale monomial-wise
    for (const Word& w : enumerate_words(4, ab1(), Variant::Unitary)) {
        const ClosureReport plain = closure(w, sys, 1000000);
        std::set<std::string> scaled, expected;
        std::vector<LinComb> queue{LinComb::monomial(w, Rational(-7, 3))};
        scaled.insert(print_poly(queue[0], ab1()));
        while (!queue.empty()) {
            const LinComb state = queue.back();
            queue.pop_back();
            for (const auto& [t, coef] : state.terms())
                for (const Redex& r : find_redexes(t, sys)) {
                    const LinComb next = rewrite_once(state, sys, t, r);
                    if (scaled.insert(print_poly(next, ab1())).second)
                        queue.push_back(next);
                }
        }
        for (const Word& v : plain.vertices)
            expected.insert(print_poly(LinComb::monomial(v, Rational(-7, 3)), ab1()));
        ok &= EXPECT(scaled == expected);
    }

    // context lifting: every closure edge replays under every context
    const auto contexts1 = enumerate_contexts(3, ab1(), Variant::Unitary);
    for (const Word& w : enumerate_words(4, ab1(), Variant::Unitary)) {
        for (const Edge& e : closure(w, sys, 1000000).edges) {
            for (const Word& q : contexts1) {
                const Placement hole = star_placement(q);
                const Word lifted_from = fill(q, e.from);
                const Word lifted_to = fill(q, e.to);
                const Placement region{hole.path, hole.start,
                                       static_cast<std::uint32_t>(e.from.breadth())};
                const Placement lifted_at = compose(region, e.at);
                if (substitute_lin(lifted_from, lifted_at, e.rule.rhs) !=
                    LinComb::monomial(lifted_to))
                    return EXPECT(false);
                bool found = false;
                for (const Redex& r : find_redexes(lifted_from, sys))
                    if (r.at == lifted_at && r.rule.rhs == e.rule.rhs) found = true;
                if (!found) return EXPECT(false);
            }
        }
    }

    // direct sums: scaling and contexts preserve disjoint supports
    cases = 0;
    while (cases < 1000) {
        const LinComb f = random_lincomb(rng, ab2(), 4, 3);
        LinComb g;
        for (int k = 0; k < 3; ++k) {
            const Word w = random_word(rng, ab2(), 4);
            if (f.coeff(w) == 0) g.add_term(w, small_rational(rng));
        }
        if (!is_direct_sum(f, g)) return EXPECT(false);
        if (!is_direct_sum(scale(small_rational(rng), f), scale(small_rational(rng), g)))
            return EXPECT(false);
        ++cases;
    }
    const auto words3 = enumerate_words(3, ab1(), Variant::Unitary);
    for (std::size_t i = 0; i < words3.size(); ++i)
        for (std::size_t j = i + 1; j < words3.size(); ++j)
            for (const Word& q : contexts1)
                if (!is_direct_sum(fill_lin(q, LinComb::monomial(words3[i])),
                                   fill_lin(q, LinComb::monomial(words3[j], -3))))
                    return EXPECT(false);

    // placement trichotomy with witnesses: exhaustive to degree 4 plus
    // randomized hosts
    const auto check_host = [&](const Word& host) {
        const auto ps = all_placements(host);
        for (std::size_t i = 0; i < ps.size(); ++i) {
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                const PlacementRelation rel = classify(host, ps[i], ps[j]);
                if (rel != classify(host, ps[j], ps[i])) return false;
                if (rel == PlacementRelation::Separated) {
                    const Word p = two_hole_witness(host, ps[i], ps[j]);
                    if (fill_two(p, factor_at(host, ps[i]), factor_at(host, ps[j])) !=
                        host)
                        return false;
                }
            }
        }
        return true;
    };
    for (const Word& host : enumerate_words(4, ab2(), Variant::Unitary))
        if (!check_host(host)) return EXPECT(false);
    for (int k = 0; k < 1000; ++k)
        if (!check_host(random_word(rng, ab2(), 6))) return EXPECT(false);

    return ok;
}

// ---------------------------------------------------------------- criterion 9

bool order_mode_unitary_verdict() {
    bool ok = true;
    const RewriteSystem sys = averaging(Mode::Order, Variant::Unitary);

    // production verdict at degree <= 5 over one generator
    const GsReport gs1 = gs_verdict(5, ab1(), sys, 1000000, 1);
    const GsReport gs2 = gs_verdict(5, ab1(), sys, 1000000, 2);
    const GsReport gs4 = gs_verdict(5, ab1(), sys, 1000000, 4);
    const auto dump = [](const GsReport& r) { return gs_to_json(r, ab1()).dump(); };
    ok &= EXPECT(dump(gs1) == dump(gs2));
    ok &= EXPECT(dump(gs1) == dump(gs4));
    ok &= EXPECT(gs1.verdict != Tri::Unknown);

    // independent oracle: every word of degree <= 5 is locally confluent and
    // has a unique normal form in its exhaustive one-step graph
    oracle::Config cfg;
    cfg.order = true;
    bool oracle_verdict = true;
    const auto words = enumerate_words(5, ab1(), Variant::Unitary);
    std::vector<std::uint8_t> word_ok(words.size(), 0);
    parallel_for(words.size(), 0, [&](std::size_t i) {
        word_ok[i] = oracle::locally_confluent(words[i], cfg) &&
                     oracle::normal_forms_of(words[i], cfg).size() == 1;
    });
    for (std::size_t i = 0; i < words.size(); ++i)
        if (!word_ok[i]) oracle_verdict = false;

    ok &= EXPECT((gs1.verdict == Tri::True) == oracle_verdict);
    current_detail << "       verdict (pinned after oracle agreement): "
                   << (gs1.verdict == Tri::True ? "GS basis up to degree 5"
                                                : "not a GS basis up to degree 5")
                   << "\n";
    return ok;
}

}  // namespace

int main() {
    criterion(1, "pattern fork reproduction ({phi,psi}, scheme)", pattern_fork_reproduction());
    criterion(2, "nonunitary convergence at degree <= 6", nonunitary_convergence());
    criterion(3, "basis agreement in the nonunitary variant", basis_agreement());
    criterion(4, "degenerate-word findings (re-verified regressions)",
              degenerate_word_findings());
    criterion(5, "order soundness (monomial axioms, orientation agreement)",
              order_soundness());
    criterion(6, "unconditional coset soundness (>= 10^4 edges)",
              unconditional_coset_soundness());
    criterion(7, "combinatorial oracles (word and basis counts)",
              combinatorial_oracles());
    criterion(8, "rewriting-calculus properties (randomized + exhaustive)",
              rewriting_calculus_properties());
    criterion(9, "order-mode unitary verdict vs brute-force oracle",
              order_mode_unitary_verdict());

    if (failures == 0)
        std::cout << "all acceptance criteria passed\n";
    else
        std::cout << failures << " acceptance criteria failed\n";
    return failures;
}
