#pragma once

#include <map>
#include <utility>

#include "oprew/order.hpp"
#include "oprew/rational.hpp"
#include "oprew/terms.hpp"

namespace oprew {

// A bracketed polynomial: a finitely supported map from words to nonzero
// exact-rational coefficients. Zero coefficients are never stored; the zero
// element has empty support. The support is kept in dT order so printing,
// hashing and iteration are deterministic.
class LinComb {
public:
    using Terms = std::map<Word, Rational, WordDtLess>;

    LinComb() = default;
    static LinComb monomial(Word w, Rational c = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }
    Rational coeff(const Word& w) const;
    bool is_monomial() const { return terms_.size() == 1; }

    void add_term(const Word& w, const Rational& c);

    LinComb& operator+=(const LinComb& other);
    LinComb& operator-=(const LinComb& other);
    LinComb operator+(const LinComb& other) const;
    LinComb operator-(const LinComb& other) const;
    LinComb operator-() const;

    bool operator==(const LinComb& other) const { return terms_ == other.terms_; }
    bool operator!=(const LinComb& other) const { return !(*this == other); }

    std::size_t hash() const;

private:
    Terms terms_;
};

struct LinCombHash {
    std::size_t operator()(const LinComb& f) const { return f.hash(); }
};

LinComb scale(const Rational& c, const LinComb& f);
// Concatenation product, extended bilinearly.
LinComb mul(const LinComb& f, const LinComb& g);
// Wraps every support word in a bracket; linear.
LinComb bracket(const LinComb& f);

// Supp(f) and Supp(g) are disjoint.
bool is_direct_sum(const LinComb& f, const LinComb& g);

// R_w(f) := c_w w - f, for w in Supp(f).
LinComb r_w(const LinComb& f, const Word& w);

// The ord-maximal support word with its coefficient; (1, c) for f = c*1 or
// f = 0.
std::pair<Word, Rational> leading(const LinComb& f, const OrderHandle& ord);

// Total deterministic order on polynomials (support compared in descending dT,
// then coefficients); used only for canonical sorting of reports.
int compare_lincomb(const LinComb& f, const LinComb& g);

// Linear extension of substitution: sum of c_i * (host with p replaced by u_i).
LinComb substitute_lin(const Word& host, const Placement& p, const LinComb& s);
// q|_s for a one-hole context word.
LinComb fill_lin(const Word& context, const LinComb& s);

// Polynomial text syntax:
//   poly := ["-"] term (("+"|"-") term)* | "0"
//   term := [rational "*"?] word ;  rational := int | int "/" int
LinComb parse_poly(std::string_view text, const Alphabet& alphabet);
// The same, term by term in textual order, without collapsing.
std::vector<std::pair<Rational, Word>> parse_poly_terms(std::string_view text,
                                                        const Alphabet& alphabet);
std::string print_poly(const LinComb& f, const Alphabet& alphabet);

}  // namespace oprew
