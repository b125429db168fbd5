#include "oprew/opi.hpp"

#include <algorithm>

namespace oprew {

namespace {

void check_metavars(const Word& w, std::uint32_t arity) {
    for (const Letter& l : w.letters()) {
        if (l.is_gen()) {
            if (l.gen_id() >= arity)
                throw std::invalid_argument("OPI uses metavariable index >= arity");
        } else {
            check_metavars(l.content(), arity);
        }
    }
}

}  // namespace

Opi make_opi(std::string name, std::uint32_t arity,
             std::vector<std::pair<Rational, Word>> terms, bool allow_zero) {
    if (arity == 0) throw std::invalid_argument("OPI arity must be >= 1");
    Opi p;
    p.name = std::move(name);
    p.arity = arity;
    for (auto& [c, w] : terms) {
        check_metavars(w, arity);
        if (std::find(p.monomials.begin(), p.monomials.end(), w) != p.monomials.end())
            throw std::invalid_argument("OPI declares a monomial twice");
        p.body.add_term(w, c);
        p.monomials.push_back(std::move(w));
    }
    if (p.body.is_zero() && !allow_zero)
        throw std::invalid_argument("zero OPI rejected");
    return p;
}

Word instantiate_word(const Word& pattern, const std::vector<Word>& args) {
    std::vector<Letter> out;
    for (const Letter& l : pattern.letters()) {
        if (l.is_gen()) {
            const Word& arg = args.at(l.gen_id());
            out.insert(out.end(), arg.letters().begin(), arg.letters().end());
        } else {
            out.push_back(Letter::bracket(instantiate_word(l.content(), args)));
        }
    }
    return Word(std::move(out));
}

LinComb instantiate(const Opi& p, const std::vector<Word>& args) {
    if (args.size() != p.arity)
        throw std::invalid_argument("instantiate: arity mismatch");
    LinComb out;
    for (const auto& [w, c] : p.body.terms()) out.add_term(instantiate_word(w, args), c);
    return out;
}

namespace {

const Word kX1 = Word::gen(0);
const Word kX2 = Word::gen(1);

Word br(const Word& w) { return Word::bracket(w); }

}  // namespace

Opi builtin(const std::string& name, const std::optional<Rational>& lambda) {
    if (name == "differential") {
        return make_opi(name, 2,
                        {{1, br(kX1.concat(kX2))},
                         {-1, br(kX1).concat(kX2)},
                         {-1, kX1.concat(br(kX2))}});
    }
    if (name == "rota_baxter") {
        if (!lambda) throw std::invalid_argument("rota_baxter requires the weight lambda");
        return make_opi(name, 2,
                        {{1, br(kX1).concat(br(kX2))},
                         {-1, br(kX1.concat(br(kX2)))},
                         {-1, br(br(kX1).concat(kX2))},
                         {-*lambda, br(kX1.concat(kX2))}});
    }
    if (name == "reynolds") {
        return make_opi(name, 2,
                        {{1, br(br(kX1).concat(br(kX2)))},
                         {1, br(kX1).concat(br(kX2))},
                         {-1, br(kX1.concat(br(kX2)))},
                         {-1, br(br(kX1).concat(kX2))}});
    }
    if (name == "averaging_phi") {
        return make_opi("phi", 2,
                        {{1, br(kX1).concat(br(kX2))}, {-1, br(br(kX1).concat(kX2))}});
    }
    if (name == "averaging_psi") {
        return make_opi("psi", 2,
                        {{1, br(kX1.concat(br(kX2)))}, {-1, br(br(kX1).concat(kX2))}});
    }
    if (name == "averaging_varphi") {
        return make_opi("varphi", 2,
                        {{1, br(br(br(kX1).concat(kX2)))},
                         {-1, br(br(br(kX1)).concat(kX2))}});
    }
    throw std::invalid_argument("unknown builtin OPI: " + name);
}

Alphabet metavariable_alphabet(std::uint32_t arity) {
    return Alphabet::numbered(arity);
}

}  // namespace oprew
