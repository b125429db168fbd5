#include "oprew/linear.hpp"

#include <algorithm>
#include <cctype>

namespace oprew {

LinComb LinComb::monomial(Word w, Rational c) {
    LinComb f;
    if (c != 0) f.terms_.emplace(std::move(w), std::move(c));
    return f;
}

Rational LinComb::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

void LinComb::add_term(const Word& w, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LinComb& LinComb::operator+=(const LinComb& other) {
    for (const auto& [w, c] : other.terms_) add_term(w, c);
    return *this;
}

LinComb& LinComb::operator-=(const LinComb& other) {
    for (const auto& [w, c] : other.terms_) add_term(w, -c);
    return *this;
}

LinComb LinComb::operator+(const LinComb& other) const {
    LinComb r = *this;
    r += other;
    return r;
}

LinComb LinComb::operator-(const LinComb& other) const {
    LinComb r = *this;
    r -= other;
    return r;
}

LinComb LinComb::operator-() const { return scale(Rational(-1), *this); }

std::size_t LinComb::hash() const {
    std::size_t h = 0x5f4c696e436f6d62ull;
    for (const auto& [w, c] : terms_) {
        h ^= w.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= hash_rational(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

LinComb scale(const Rational& c, const LinComb& f) {
    LinComb r;
    if (c == 0) return r;
    for (const auto& [w, cw] : f.terms()) r.add_term(w, c * cw);
    return r;
}

LinComb mul(const LinComb& f, const LinComb& g) {
    LinComb r;
    for (const auto& [u, cu] : f.terms())
        for (const auto& [v, cv] : g.terms()) r.add_term(u.concat(v), cu * cv);
    return r;
}

LinComb bracket(const LinComb& f) {
    LinComb r;
    for (const auto& [w, c] : f.terms()) r.add_term(Word::bracket(w), c);
    return r;
}

bool is_direct_sum(const LinComb& f, const LinComb& g) {
    const LinComb& small = f.support_size() <= g.support_size() ? f : g;
    const LinComb& large = f.support_size() <= g.support_size() ? g : f;
    for (const auto& [w, c] : small.terms())
        if (large.terms().count(w)) return false;
    return true;
}

LinComb r_w(const LinComb& f, const Word& w) {
    auto it = f.terms().find(w);
    if (it == f.terms().end())
        throw std::invalid_argument("r_w: word not in the support");
    return LinComb::monomial(w, it->second) - f;
}

std::pair<Word, Rational> leading(const LinComb& f, const OrderHandle& ord) {
    (void)ord;  // terms_ are already kept in dT order
    if (f.is_zero()) return {Word(), Rational(0)};
    const auto& [w, c] = *f.terms().rbegin();
    if (f.support_size() == 1 && w.empty()) return {Word(), c};
    return {w, c};
}

int compare_lincomb(const LinComb& f, const LinComb& g) {
    auto it = f.terms().rbegin();
    auto jt = g.terms().rbegin();
    for (; it != f.terms().rend() && jt != g.terms().rend(); ++it, ++jt) {
        const int c = compare_dt(it->first, jt->first);
        if (c != 0) return c;
        if (it->second != jt->second) return it->second < jt->second ? -1 : 1;
    }
    if (it != f.terms().rend()) return 1;
    if (jt != g.terms().rend()) return -1;
    return 0;
}

LinComb substitute_lin(const Word& host, const Placement& p, const LinComb& s) {
    LinComb r;
    for (const auto& [u, c] : s.terms()) r.add_term(substitute(host, p, u), c);
    return r;
}

LinComb fill_lin(const Word& context, const LinComb& s) {
    return substitute_lin(context, star_placement(context), s);
}

// -- text syntax ---------------------------------------------------------------

namespace {

bool is_int_at(std::string_view t, std::size_t i) {
    return i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]));
}

}  // namespace

std::vector<std::pair<Rational, Word>> parse_poly_terms(std::string_view text,
                                                        const Alphabet& alphabet) {
    std::vector<std::pair<Rational, Word>> out;
    std::size_t i = 0;
    const auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw ParseError("empty polynomial", i);
    if (text[i] == '0') {
        std::size_t j = i + 1;
        while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j == text.size()) return out;  // the zero polynomial
    }
    bool first = true;
    while (i < text.size()) {
        skip_ws();
        Rational sign = 1;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') sign = -1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms", i);
        }
        first = false;
        Rational coeff = 1;
        if (is_int_at(text, i)) {
            // A digit starts either a rational coefficient or the word "1".
            std::size_t j = i;
            while (is_int_at(text, j)) ++j;
            const std::string num(text.substr(i, j - i));
            std::size_t k = j;
            while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
            if (k < text.size() && text[k] == '/') {
                ++k;
                while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
                if (!is_int_at(text, k)) throw ParseError("expected denominator", k);
                std::size_t m = k;
                while (is_int_at(text, m)) ++m;
                const std::string den(text.substr(k, m - k));
                if (BigInt(den) == 0) throw ParseError("zero denominator", k);
                coeff = Rational(BigInt(num), BigInt(den));
                i = m;
            } else if (num == "1" && (k == text.size() || text[k] == '+' || text[k] == '-')) {
                // bare "1" is the empty word, not a coefficient
                out.emplace_back(sign, Word());
                i = j;
                skip_ws();
                continue;
            } else {
                coeff = Rational(BigInt(num));
                i = j;
            }
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        // the word part runs to the next top-level '+' or '-'
        std::size_t end = i;
        while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
        std::string_view word_text = text.substr(i, end - i);
        std::size_t trimmed = word_text.size();
        while (trimmed > 0 && std::isspace(static_cast<unsigned char>(word_text[trimmed - 1])))
            --trimmed;
        word_text = word_text.substr(0, trimmed);
        if (word_text.empty()) throw ParseError("expected a word", i);
        Word w;
        try {
            w = parse_word(word_text, alphabet);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), i + e.position());
        }
        out.emplace_back(sign * coeff, std::move(w));
        i = end;
    }
    return out;
}

LinComb parse_poly(std::string_view text, const Alphabet& alphabet) {
    LinComb out;
    for (const auto& [c, w] : parse_poly_terms(text, alphabet)) out.add_term(w, c);
    return out;
}

std::string print_poly(const LinComb& f, const Alphabet& alphabet) {
    if (f.is_zero()) return "0";
    std::string out;
    // leading term first
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [w, c] = *it;
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        if (mag != 1) {
            out += print_rational(mag);
            out += ' ';
        }
        out += print_word(w, alphabet);
    }
    return out;
}

}  // namespace oprew
