#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace oprew {

using GenId = std::uint32_t;

// Reserved generator ids for context holes. A context ("star-bracketed word")
// is an ordinary Word containing exactly one kStar letter; two-hole words use
// kStar and kStar2.
inline constexpr GenId kStar = 0xfffffffeu;
inline constexpr GenId kStar2 = 0xffffffffu;

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t position)
        : std::runtime_error(std::move(message)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// A declared, totally ordered finite alphabet. Generator ids are indices into
// the declaration order, so id order *is* the alphabet order.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    // {stem1, ..., stemN}, e.g. numbered(2) = {x1, x2}.
    static Alphabet numbered(std::size_t count, const std::string& stem = "x");

    GenId id_of(const std::string& name) const;
    std::optional<GenId> find(const std::string& name) const;
    const std::string& name_of(GenId id) const;
    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, GenId> index_;
};

class Word;

// One letter of a bracketed word: a generator or a bracketed sub-word.
// Bracket contents are shared immutable words, so copies are cheap.
class Letter {
public:
    static Letter gen(GenId id);
    static Letter bracket(Word content);

    bool is_gen() const { return content_ == nullptr; }
    bool is_bracket() const { return content_ != nullptr; }
    GenId gen_id() const;
    const Word& content() const;

    std::uint32_t degree() const;
    std::size_t hash() const;
    bool operator==(const Letter& other) const;
    bool operator!=(const Letter& other) const { return !(*this == other); }

private:
    Letter() = default;
    GenId gen_ = 0;
    std::shared_ptr<const Word> content_;
};

// A bracketed word: a finite letter sequence. The empty sequence is the
// monoid identity 1. Immutable after construction; degree and a structural
// hash are cached.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters);

    static Word gen(GenId id);
    static Word bracket(Word content);

    const std::vector<Letter>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    std::size_t breadth() const { return letters_.size(); }
    std::uint32_t degree() const { return degree_; }
    std::uint32_t depth() const;
    std::size_t hash() const { return hash_; }

    Word concat(const Word& other) const;
    Word factor(std::size_t start, std::size_t len) const;

    bool operator==(const Word& other) const;
    bool operator!=(const Word& other) const { return !(*this == other); }

private:
    std::vector<Letter> letters_;
    std::uint32_t degree_ = 0;
    std::size_t hash_ = 0xcbf29ce484222325ull;
};

struct WordHash {
    std::size_t operator()(const Word& w) const { return w.hash(); }
};

// One occurrence of a factor inside a host word: descend through bracket
// letters along `path`, then take `len` letters starting at `start`.
struct Placement {
    std::vector<std::uint32_t> path;
    std::uint32_t start = 0;
    std::uint32_t len = 0;

    bool operator==(const Placement&) const = default;
};

// Canonical (path, start, len) order.
int compare(const Placement& a, const Placement& b);

enum class PlacementRelation { Separated, Nested, Intersecting };

enum class Variant { Unitary, Nonunitary };

// -- resolution & substitution ------------------------------------------------

const Word& word_at(const Word& host, const std::vector<std::uint32_t>& path);
bool resolves(const Word& host, const Placement& p);
Word factor_at(const Word& host, const Placement& p);
Word substitute(const Word& host, const Placement& p, const Word& replacement);

// -- subwords & their relative positions --------------------------------------

// All occurrences of u (u != 1) as a factor of host, in (path, start) order.
std::vector<Placement> subword_placements(const Word& host, const Word& u);

// Relative position of two distinct nonempty-factor occurrences; exactly one
// relation holds.
PlacementRelation classify(const Word& host, const Placement& p1, const Placement& p2);

// -- contexts ------------------------------------------------------------------

// The context q with q|_(factor at p) = host, as a word with one kStar letter.
Word to_context(const Word& host, const Placement& p);
// Number of star letters (kStar) anywhere in w.
std::size_t star_count(const Word& w);
// Placement of the unique kStar letter; throws unless star_count == 1.
Placement star_placement(const Word& context);
// q|_u for a one-hole context.
Word fill(const Word& context, const Word& u);
// Two-hole witness for separated placements: host with the factor at p1
// replaced by kStar and the factor at p2 by kStar2.
Word two_hole_witness(const Word& host, const Placement& p1, const Placement& p2);
// Fill kStar with a and kStar2 with b.
Word fill_two(const Word& witness, const Word& a, const Word& b);

// Composes placements: the location of `inner` (relative to the factor under
// `outer` of the same host) as a placement in the full host. `outer` must
// resolve and `inner` must resolve in factor_at(host, outer).
Placement compose(const Placement& outer, const Placement& inner);

// -- text syntax ---------------------------------------------------------------
//
//   word := "1" | atom+ ;  atom := IDENT | "[" word "]"
//
// "1" denotes the empty word and may not appear inside a nonempty sequence.

Word parse_word(std::string_view text, const Alphabet& alphabet);
std::string print_word(const Word& w, const Alphabet& alphabet);

// -- statistics & enumeration ---------------------------------------------------

bool one_free(const Word& w);  // no bracket with empty content anywhere
bool in_variant(const Word& w, Variant variant);
void generator_multiset(const Word& w, std::unordered_map<GenId, std::uint32_t>& out);

// Every word of the exact degree, sorted ascending in the dT order.
std::vector<Word> words_of_degree(std::uint32_t degree, const Alphabet& alphabet,
                                  Variant variant);
// Every word of degree <= bound, in (degree, dT) order.
std::vector<Word> enumerate_words(std::uint32_t degree_bound, const Alphabet& alphabet,
                                  Variant variant);
// Cardinality of words_of_degree via the convolution recurrence
//   w(d) = sum_j l(j) w(d-j),  l(1) = |X| + [unitary],  l(j) = w(j-1),
// computed without enumerating.
unsigned long long count_words(std::uint32_t degree, std::size_t alphabet_size,
                               Variant variant);
// Every one-hole context of degree <= bound (star contributes no degree),
// in (degree, dT) order.
std::vector<Word> enumerate_contexts(std::uint32_t degree_bound, const Alphabet& alphabet,
                                     Variant variant);

}  // namespace oprew
