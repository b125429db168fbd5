#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "oprew/engine.hpp"

using namespace oprew;
using namespace oprew::testing;

namespace {

const Alphabet& meta2() {
    static const Alphabet a = metavariable_alphabet(2);
    return a;
}

}  // namespace

TEST_CASE("builtins are the displayed polynomials") {
    CHECK(builtin("averaging_phi").body == parse_poly("[x1] [x2] - [[x1] x2]", meta2()));
    CHECK(builtin("averaging_psi").body == parse_poly("[x1 [x2]] - [[x1] x2]", meta2()));
    CHECK(builtin("averaging_varphi").body ==
          parse_poly("[[[x1] x2]] - [[[x1]] x2]", meta2()));
    CHECK(builtin("differential").body ==
          parse_poly("[x1 x2] - [x1] x2 - x1 [x2]", meta2()));
    CHECK(builtin("rota_baxter", Rational(1)).body ==
          parse_poly("[x1] [x2] - [x1 [x2]] - [[x1] x2] - [x1 x2]", meta2()));
    CHECK(builtin("rota_baxter", Rational(2, 3)).body ==
          parse_poly("[x1] [x2] - [x1 [x2]] - [[x1] x2] - 2/3 [x1 x2]", meta2()));
    CHECK(builtin("reynolds").body ==
          parse_poly("[[x1] [x2]] + [x1] [x2] - [x1 [x2]] - [[x1] x2]", meta2()));

    CHECK_THROWS_AS(builtin("nope"), std::invalid_argument);
    CHECK_THROWS_AS(builtin("rota_baxter"), std::invalid_argument);
}

TEST_CASE("instantiate: examples") {
    CHECK(instantiate(builtin("averaging_phi"), {wxyz("x"), wxyz("y")}) ==
          pxyz("[x] [y] - [[x] y]"));
    CHECK(instantiate(builtin("differential"), {wxyz("x"), wxyz("y")}) ==
          pxyz("[x y] - [x] y - x [y]"));
    // identity substitution: metavariables map to themselves
    for (const char* name :
         {"averaging_phi", "averaging_psi", "averaging_varphi", "differential",
          "reynolds"}) {
        const Opi p = builtin(name);
        CHECK(instantiate(p, {Word::gen(0), Word::gen(1)}) == p.body);
    }
    CHECK_THROWS_AS(instantiate(builtin("averaging_phi"), {wxyz("x")}),
                    std::invalid_argument);
}

TEST_CASE("instantiate: zero instances") {
    CHECK(instantiate(builtin("averaging_psi"), {Word(), Word()}).is_zero());
    CHECK(instantiate(builtin("averaging_varphi"), {wxyz("x"), Word()}).is_zero());
    CHECK_FALSE(instantiate(builtin("averaging_phi"), {Word(), Word()}).is_zero());
}

TEST_CASE("make_opi validation") {
    CHECK_THROWS_AS(make_opi("zero", 2, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_opi("badvar", 1, {{1, Word::gen(3)}}), std::invalid_argument);
    CHECK_THROWS_AS(
        make_opi("dup", 1, {{1, Word::gen(0)}, {2, Word::gen(0)}}),
        std::invalid_argument);
}

TEST_CASE("instantiate is an operated-algebra morphism") {
    std::mt19937_64 rng(31);
    const Alphabet meta = metavariable_alphabet(2);
    for (int i = 0; i < 200; ++i) {
        const LinComb b1 = random_lincomb(rng, meta, 3, 3);
        const LinComb b2 = random_lincomb(rng, meta, 3, 3);
        std::vector<Word> args{random_word(rng, ab2(), 3), random_word(rng, ab2(), 3)};
        const auto apply = [&](const LinComb& body) {
            LinComb out;
            for (const auto& [w, c] : body.terms())
                out.add_term(instantiate_word(w, args), c);
            return out;
        };
        CHECK(apply(mul(b1, b2)) == mul(apply(b1), apply(b2)));
        CHECK(apply(bracket(b1)) == bracket(apply(b1)));
        CHECK(apply(b1 + b2) == apply(b1) + apply(b2));
    }
}

TEST_CASE("to_system: scheme pattern sides and flags") {
    const RewriteSystem avg = build_system({true, true, true}, Mode::Scheme,
                                           Variant::Unitary);
    CHECK(avg.unit_monomial_rules);
    CHECK(avg.degree_preserving);
    CHECK(avg.generator_preserving);
    CHECK(avg.degree_nonincreasing);
    CHECK(avg.families.size() == 3);

    const RewriteSystem diff =
        to_system({builtin("differential")}, Orientation(PatternSide{0}), Variant::Unitary);
    CHECK_FALSE(diff.unit_monomial_rules);
    CHECK(diff.degree_preserving);
    CHECK(diff.generator_preserving);

    const RewriteSystem rb = to_system({builtin("rota_baxter", Rational(1))},
                                       Orientation(PatternSide{0}), Variant::Unitary);
    CHECK(rb.degree_nonincreasing);
    CHECK_FALSE(rb.degree_preserving);
    CHECK(rb.generator_preserving);

    CHECK_THROWS_AS(to_system({builtin("averaging_phi")}, Orientation(PatternSide{7}),
                              Variant::Unitary),
                    std::invalid_argument);
    // a monomial omitting a metavariable admits no complete matcher
    CHECK_THROWS_AS(
        to_system({make_opi("partial", 2,
                            {{1, Word::gen(0)}, {-1, Word::bracket(Word::gen(1))}})},
                  Orientation(PatternSide{0}), Variant::Unitary),
        std::invalid_argument);
}

TEST_CASE("to_system: scheme averaging equals the pattern orientation") {
    const RewriteSystem sys = build_system({true, true, true}, Mode::Scheme,
                                           Variant::Unitary);
    const auto redexes = find_redexes(w2("[x1] [x2]"), sys);
    REQUIRE(redexes.size() == 1);
    CHECK(redexes[0].rule.family == "phi");
    CHECK(redexes[0].rule.lhs == w2("[x1] [x2]"));
    CHECK(redexes[0].rule.rhs == LinComb::monomial(w2("[[x1] x2]")));
}

TEST_CASE("to_system: differential under the order fires at [u v] when maximal") {
    const RewriteSystem sys =
        to_system({builtin("differential")}, Orientation(OrderHandle{}), Variant::Unitary);
    // theta = ([1], x1): the bracket monomial is the dT maximum
    const Word w = w1("[[1] x1]");
    const auto redexes = find_redexes(w, sys);
    bool found = false;
    for (const Redex& r : redexes) {
        if (r.at == Placement{{}, 0, 1} && r.rule.lhs == w) {
            found = true;
            CHECK(apply_redex(w, r, sys) == p1("[[1]] x1 + [1] [x1]"));
        }
    }
    CHECK(found);
    // theta = (x1, x2): x1 [x2] is the maximum instead, so [x1 x2] is inert
    CHECK(find_redexes(w2("[x1 x2]"), sys).empty());
    const auto at_max = find_redexes(w2("x1 [x2]"), sys);
    REQUIRE(at_max.size() == 1);
    CHECK(apply_redex(w2("x1 [x2]"), at_max[0], sys) == p2("[x1 x2] - [x1] x2"));
}

TEST_CASE("rule instances reconstruct their instance polynomial") {
    const RewriteSystem sys = build_system({true, true, true}, Mode::Scheme,
                                           Variant::Unitary);
    std::map<std::string, Opi> by_name;
    for (const RuleFamily& f : sys.families) by_name.emplace(f.opi.name, f.opi);
    for (const Word& w : enumerate_words(4, ab2(), Variant::Unitary)) {
        for (const Redex& r : find_redexes(w, sys)) {
            const LinComb s = instantiate(by_name.at(r.rule.family), r.rule.args);
            const Rational c = s.coeff(r.rule.lhs);
            REQUIRE(c != 0);
            CHECK(LinComb::monomial(r.rule.lhs) - r.rule.rhs == scale(Rational(1) / c, s));
        }
    }
}

TEST_CASE("empty OPI set gives the empty system") {
    const RewriteSystem sys = to_system({}, Orientation(PatternSide{0}), Variant::Unitary);
    CHECK(sys.families.empty());
    CHECK(find_redexes(w2("[x1] [x2]"), sys).empty());
    const auto report = local_confluence_report(3, ab1(), sys, 1000);
    CHECK(report.verdict == Tri::True);
    CHECK(report.offenders.empty());
}
