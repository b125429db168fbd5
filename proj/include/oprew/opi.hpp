#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oprew/linear.hpp"

namespace oprew {

// An operated polynomial identity: a bracketed polynomial over the reserved
// metavariable generators 0..arity-1 (named x1..xk). `monomials` keeps the
// declaration order of the support; monomials[0] is the conventional pattern
// side for scheme orientation.
struct Opi {
    std::string name;
    std::uint32_t arity = 0;
    LinComb body;
    std::vector<Word> monomials;
};

// Builds and validates an OPI from (coefficient, monomial) terms in
// declaration order. Rejects metavariable indices >= arity and colliding
// monomials; a zero body is only legal with allow_zero.
Opi make_opi(std::string name, std::uint32_t arity,
             std::vector<std::pair<Rational, Word>> terms, bool allow_zero = false);

// Replaces each metavariable letter by the corresponding argument word.
Word instantiate_word(const Word& pattern, const std::vector<Word>& args);
// The operated-morphism image of the body under x_i -> args[i].
LinComb instantiate(const Opi& p, const std::vector<Word>& args);

// Classical operator identities as built-ins:
//   differential        [x1 x2] - [x1] x2 - x1 [x2]
//   rota_baxter (λ)     [x1][x2] - [x1[x2]] - [[x1]x2] - λ [x1 x2]
//   reynolds            [[x1][x2]] + [x1][x2] - [x1[x2]] - [[x1]x2]
//   averaging_phi       [x1][x2] - [[x1]x2]
//   averaging_psi       [x1[x2]] - [[x1]x2]
//   averaging_varphi    [[[x1]x2]] - [[[x1]]x2]
Opi builtin(const std::string& name, const std::optional<Rational>& lambda = std::nullopt);

// The metavariable alphabet x1..xk used by OPI text syntax.
Alphabet metavariable_alphabet(std::uint32_t arity);

}  // namespace oprew
