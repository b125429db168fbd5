#pragma once

#include <random>
#include <string>
#include <vector>

#include "oprew/averaging.hpp"

namespace oprew::testing {

inline const Alphabet& ab1() {
    static const Alphabet a = Alphabet::numbered(1);
    return a;
}

inline const Alphabet& ab2() {
    static const Alphabet a = Alphabet::numbered(2);
    return a;
}

inline const Alphabet& abxyz() {
    static const Alphabet a({"x", "y", "z"});
    return a;
}

inline Word w1(const std::string& text) { return parse_word(text, ab1()); }
inline Word w2(const std::string& text) { return parse_word(text, ab2()); }
inline Word wxyz(const std::string& text) { return parse_word(text, abxyz()); }

inline LinComb p1(const std::string& text) { return parse_poly(text, ab1()); }
inline LinComb p2(const std::string& text) { return parse_poly(text, ab2()); }
inline LinComb pxyz(const std::string& text) { return parse_poly(text, abxyz()); }

inline Rational small_rational(std::mt19937_64& rng, bool nonzero = false) {
    int num = static_cast<int>(rng() % 19) - 9;
    if (nonzero && num == 0) num = 1;
    const int den = static_cast<int>(rng() % 9) + 1;
    return Rational(num, den);
}

inline Word random_word(std::mt19937_64& rng, const Alphabet& alphabet,
                        std::uint32_t max_degree, Variant variant = Variant::Unitary) {
    const auto all = enumerate_words(max_degree, alphabet, variant);
    return all[rng() % all.size()];
}

inline LinComb random_lincomb(std::mt19937_64& rng, const Alphabet& alphabet,
                              std::uint32_t max_degree, std::size_t terms) {
    LinComb f;
    for (std::size_t i = 0; i < terms; ++i)
        f.add_term(random_word(rng, alphabet, max_degree), small_rational(rng));
    return f;
}

// All placements of nonempty factors in a word, by direct scan of every
// (path, start, len) triple.
inline void all_placements_rec(const Word& at, std::vector<std::uint32_t>& path,
                               std::vector<Placement>& out) {
    const std::size_t n = at.letters().size();
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t l = 1; s + l <= n; ++l)
            out.push_back(Placement{path, static_cast<std::uint32_t>(s),
                                    static_cast<std::uint32_t>(l)});
    for (std::size_t i = 0; i < n; ++i) {
        if (!at.letters()[i].is_bracket()) continue;
        path.push_back(static_cast<std::uint32_t>(i));
        all_placements_rec(at.letters()[i].content(), path, out);
        path.pop_back();
    }
}

inline std::vector<Placement> all_placements(const Word& host) {
    std::vector<Placement> out;
    std::vector<std::uint32_t> path;
    all_placements_rec(host, path, out);
    return out;
}

}  // namespace oprew::testing
