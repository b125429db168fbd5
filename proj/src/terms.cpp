#include "oprew/terms.hpp"

#include <algorithm>
#include <cctype>

#include "oprew/order.hpp"

namespace oprew {

namespace {

constexpr std::size_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::size_t kFnvPrime = 0x100000001b3ull;

std::size_t mix(std::size_t h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h * kFnvPrime;
}

}  // namespace

// -- Alphabet -------------------------------------------------------------------

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (GenId i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw std::invalid_argument("empty generator name");
        if (!index_.emplace(names_[i], i).second)
            throw std::invalid_argument("duplicate generator name: " + names_[i]);
    }
}

Alphabet Alphabet::numbered(std::size_t count, const std::string& stem) {
    std::vector<std::string> names;
    names.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) names.push_back(stem + std::to_string(i));
    return Alphabet(std::move(names));
}

GenId Alphabet::id_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown generator: " + name);
    return it->second;
}

std::optional<GenId> Alphabet::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const std::string& Alphabet::name_of(GenId id) const {
    static const std::string star = "*";
    static const std::string star2 = "*2";
    if (id == kStar) return star;
    if (id == kStar2) return star2;
    if (id >= names_.size()) throw std::invalid_argument("generator id out of range");
    return names_[id];
}

// -- Letter / Word ----------------------------------------------------------------

Letter Letter::gen(GenId id) {
    Letter l;
    l.gen_ = id;
    return l;
}

Letter Letter::bracket(Word content) {
    Letter l;
    l.content_ = std::make_shared<const Word>(std::move(content));
    return l;
}

GenId Letter::gen_id() const {
    if (!is_gen()) throw std::logic_error("gen_id() on a bracket letter");
    return gen_;
}

const Word& Letter::content() const {
    if (!is_bracket()) throw std::logic_error("content() on a generator letter");
    return *content_;
}

std::uint32_t Letter::degree() const {
    return is_gen() ? 1u : 1u + content_->degree();
}

std::size_t Letter::hash() const {
    if (is_gen()) return mix(0x67656e5f6c657474ull, gen_);
    return mix(0x62725f6c65747465ull, content_->hash());
}

bool Letter::operator==(const Letter& other) const {
    if (is_gen() != other.is_gen()) return false;
    if (is_gen()) return gen_ == other.gen_;
    if (content_ == other.content_) return true;
    return *content_ == *other.content_;
}

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
    std::size_t h = kFnvOffset;
    for (const Letter& l : letters_) {
        degree_ += l.degree();
        h = mix(h, l.hash());
    }
    hash_ = h;
}

Word Word::gen(GenId id) { return Word({Letter::gen(id)}); }

Word Word::bracket(Word content) { return Word({Letter::bracket(std::move(content))}); }

std::uint32_t Word::depth() const {
    std::uint32_t d = 0;
    for (const Letter& l : letters_)
        if (l.is_bracket()) d = std::max(d, 1u + l.content().depth());
    return d;
}

Word Word::concat(const Word& other) const {
    std::vector<Letter> ls = letters_;
    ls.insert(ls.end(), other.letters_.begin(), other.letters_.end());
    return Word(std::move(ls));
}

Word Word::factor(std::size_t start, std::size_t len) const {
    if (start + len > letters_.size()) throw std::out_of_range("factor out of range");
    return Word(std::vector<Letter>(letters_.begin() + start, letters_.begin() + start + len));
}

bool Word::operator==(const Word& other) const {
    if (hash_ != other.hash_ || degree_ != other.degree_ ||
        letters_.size() != other.letters_.size())
        return false;
    for (std::size_t i = 0; i < letters_.size(); ++i)
        if (letters_[i] != other.letters_[i]) return false;
    return true;
}

// -- placements -------------------------------------------------------------------

int compare(const Placement& a, const Placement& b) {
    const std::size_t n = std::min(a.path.size(), b.path.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.path[i] != b.path[i]) return a.path[i] < b.path[i] ? -1 : 1;
    }
    if (a.path.size() != b.path.size()) return a.path.size() < b.path.size() ? -1 : 1;
    if (a.start != b.start) return a.start < b.start ? -1 : 1;
    if (a.len != b.len) return a.len < b.len ? -1 : 1;
    return 0;
}

const Word& word_at(const Word& host, const std::vector<std::uint32_t>& path) {
    const Word* w = &host;
    for (std::uint32_t idx : path) {
        if (idx >= w->letters().size() || !w->letters()[idx].is_bracket())
            throw std::out_of_range("placement path does not resolve");
        w = &w->letters()[idx].content();
    }
    return *w;
}

bool resolves(const Word& host, const Placement& p) {
    const Word* w = &host;
    for (std::uint32_t idx : p.path) {
        if (idx >= w->letters().size() || !w->letters()[idx].is_bracket()) return false;
        w = &w->letters()[idx].content();
    }
    return static_cast<std::size_t>(p.start) + p.len <= w->letters().size();
}

Word factor_at(const Word& host, const Placement& p) {
    return word_at(host, p.path).factor(p.start, p.len);
}

namespace {

Word substitute_rec(const Word& w, const Placement& p, std::size_t depth,
                    const Word& replacement) {
    if (depth == p.path.size()) {
        if (static_cast<std::size_t>(p.start) + p.len > w.letters().size())
            throw std::out_of_range("placement start/len does not resolve");
        std::vector<Letter> ls;
        ls.reserve(w.letters().size() - p.len + replacement.letters().size());
        ls.insert(ls.end(), w.letters().begin(), w.letters().begin() + p.start);
        ls.insert(ls.end(), replacement.letters().begin(), replacement.letters().end());
        ls.insert(ls.end(), w.letters().begin() + p.start + p.len, w.letters().end());
        return Word(std::move(ls));
    }
    const std::uint32_t idx = p.path[depth];
    if (idx >= w.letters().size() || !w.letters()[idx].is_bracket())
        throw std::out_of_range("placement path does not resolve");
    std::vector<Letter> ls = w.letters();
    ls[idx] = Letter::bracket(substitute_rec(w.letters()[idx].content(), p, depth + 1, replacement));
    return Word(std::move(ls));
}

}  // namespace

Word substitute(const Word& host, const Placement& p, const Word& replacement) {
    return substitute_rec(host, p, 0, replacement);
}

namespace {

void collect_placements(const Word& w, const Word& u, std::vector<std::uint32_t>& path,
                        std::vector<Placement>& out) {
    const std::size_t n = w.letters().size();
    const std::size_t k = u.letters().size();
    if (k <= n) {
        for (std::size_t start = 0; start + k <= n; ++start) {
            bool match = true;
            for (std::size_t i = 0; i < k; ++i) {
                if (w.letters()[start + i] != u.letters()[i]) {
                    match = false;
                    break;
                }
            }
            if (match)
                out.push_back(Placement{path, static_cast<std::uint32_t>(start),
                                        static_cast<std::uint32_t>(k)});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!w.letters()[i].is_bracket()) continue;
        path.push_back(static_cast<std::uint32_t>(i));
        collect_placements(w.letters()[i].content(), u, path, out);
        path.pop_back();
    }
}

}  // namespace

std::vector<Placement> subword_placements(const Word& host, const Word& u) {
    if (u.empty())
        throw std::invalid_argument("subword_placements: empty factor is excluded");
    std::vector<Placement> out;
    std::vector<std::uint32_t> path;
    collect_placements(host, u, path, out);
    return out;
}

PlacementRelation classify(const Word& host, const Placement& p1, const Placement& p2) {
    if (p1 == p2) throw std::invalid_argument("classify: identical placements");
    if (p1.len == 0 || p2.len == 0)
        throw std::invalid_argument("classify: empty factors have no trichotomy");
    if (!resolves(host, p1) || !resolves(host, p2))
        throw std::out_of_range("classify: placement does not resolve");

    const std::size_t n = std::min(p1.path.size(), p2.path.size());
    std::size_t i = 0;
    while (i < n && p1.path[i] == p2.path[i]) ++i;
    if (i < n) return PlacementRelation::Separated;  // paths diverge

    if (p1.path.size() == p2.path.size()) {
        const std::uint64_t s1 = p1.start, e1 = p1.start + p1.len;
        const std::uint64_t s2 = p2.start, e2 = p2.start + p2.len;
        if (e1 <= s2 || e2 <= s1) return PlacementRelation::Separated;
        if ((s1 <= s2 && e2 <= e1) || (s2 <= s1 && e1 <= e2)) return PlacementRelation::Nested;
        return PlacementRelation::Intersecting;
    }
    // One path is a proper prefix of the other: nested iff the deeper
    // occurrence descends through a letter of the shallower factor.
    const bool p1_shallow = p1.path.size() < p2.path.size();
    const Placement& outer = p1_shallow ? p1 : p2;
    const Placement& inner = p1_shallow ? p2 : p1;
    const std::uint32_t j = inner.path[outer.path.size()];
    if (j >= outer.start && j < outer.start + outer.len) return PlacementRelation::Nested;
    return PlacementRelation::Separated;
}

// -- contexts ---------------------------------------------------------------------

Word to_context(const Word& host, const Placement& p) {
    return substitute(host, p, Word::gen(kStar));
}

std::size_t star_count(const Word& w) {
    std::size_t c = 0;
    for (const Letter& l : w.letters()) {
        if (l.is_gen()) {
            if (l.gen_id() == kStar) ++c;
        } else {
            c += star_count(l.content());
        }
    }
    return c;
}

namespace {

bool find_gen(const Word& w, GenId id, std::vector<std::uint32_t>& path, Placement& out) {
    for (std::size_t i = 0; i < w.letters().size(); ++i) {
        const Letter& l = w.letters()[i];
        if (l.is_gen()) {
            if (l.gen_id() == id) {
                out = Placement{path, static_cast<std::uint32_t>(i), 1};
                return true;
            }
        } else {
            path.push_back(static_cast<std::uint32_t>(i));
            if (find_gen(l.content(), id, path, out)) return true;
            path.pop_back();
        }
    }
    return false;
}

Placement locate_gen(const Word& w, GenId id, const char* what) {
    std::vector<std::uint32_t> path;
    Placement p;
    if (!find_gen(w, id, path, p)) throw std::invalid_argument(std::string(what) + ": hole not found");
    return p;
}

}  // namespace

Placement star_placement(const Word& context) {
    if (star_count(context) != 1)
        throw std::invalid_argument("star_placement: context must contain exactly one star");
    return locate_gen(context, kStar, "star_placement");
}

Word fill(const Word& context, const Word& u) {
    return substitute(context, star_placement(context), u);
}

Word two_hole_witness(const Word& host, const Placement& p1, const Placement& p2) {
    if (classify(host, p1, p2) != PlacementRelation::Separated)
        throw std::invalid_argument("two_hole_witness: placements are not separated");

    Placement adjusted = p2;
    if (p1.path.size() < p2.path.size() &&
        std::equal(p1.path.begin(), p1.path.end(), p2.path.begin())) {
        std::uint32_t& j = adjusted.path[p1.path.size()];
        if (j >= p1.start + p1.len) j = j - p1.len + 1;
    } else if (p1.path == p2.path && p2.start >= p1.start + p1.len) {
        adjusted.start = p2.start - p1.len + 1;
    }
    Word w = substitute(host, p1, Word::gen(kStar));
    return substitute(w, adjusted, Word::gen(kStar2));
}

Word fill_two(const Word& witness, const Word& a, const Word& b) {
    Word w = substitute(witness, locate_gen(witness, kStar2, "fill_two"), b);
    return substitute(w, locate_gen(w, kStar, "fill_two"), a);
}

Placement compose(const Placement& outer, const Placement& inner) {
    Placement r;
    r.path = outer.path;
    if (inner.path.empty()) {
        r.start = outer.start + inner.start;
        r.len = inner.len;
        return r;
    }
    r.path.push_back(outer.start + inner.path[0]);
    r.path.insert(r.path.end(), inner.path.begin() + 1, inner.path.end());
    r.start = inner.start;
    r.len = inner.len;
    return r;
}

// -- text syntax --------------------------------------------------------------------

namespace {

struct WordParser {
    std::string_view text;
    std::size_t pos = 0;
    const Alphabet& alphabet;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg, std::size_t at) { throw ParseError(msg, at); }

    Word parse_word_body(bool at_top) {
        skip_ws();
        std::vector<Letter> letters;
        bool saw_one = false;
        while (pos < text.size()) {
            const char c = text[pos];
            if (c == ']') break;
            if (c == '[') {
                const std::size_t open = pos++;
                Word inner = parse_word_body(false);
                skip_ws();
                if (pos >= text.size() || text[pos] != ']')
                    fail("unmatched '['", open);
                ++pos;
                letters.push_back(Letter::bracket(std::move(inner)));
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                const std::size_t begin = pos;
                while (pos < text.size() &&
                       std::isalnum(static_cast<unsigned char>(text[pos])))
                    ++pos;
                const std::string name(text.substr(begin, pos - begin));
                auto id = alphabet.find(name);
                if (!id) fail("unknown generator: " + name, begin);
                letters.push_back(Letter::gen(*id));
            } else if (c == '1') {
                if (!letters.empty()) fail("'1' inside a nonempty sequence", pos);
                ++pos;
                skip_ws();
                if (pos < text.size() && text[pos] != ']')
                    fail("'1' inside a nonempty sequence", pos);
                saw_one = true;
                break;
            } else {
                fail(std::string("unexpected character '") + c + "'", pos);
            }
            skip_ws();
        }
        if (letters.empty() && !saw_one)
            fail("empty word must be written as '1'", pos);
        (void)at_top;
        return Word(std::move(letters));
    }
};

}  // namespace

Word parse_word(std::string_view text, const Alphabet& alphabet) {
    WordParser p{text, 0, alphabet};
    Word w = p.parse_word_body(true);
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input", p.pos);
    return w;
}

std::string print_word(const Word& w, const Alphabet& alphabet) {
    if (w.empty()) return "1";
    std::string out;
    bool first = true;
    for (const Letter& l : w.letters()) {
        if (!first) out += ' ';
        first = false;
        if (l.is_gen()) {
            out += alphabet.name_of(l.gen_id());
        } else {
            out += '[';
            out += print_word(l.content(), alphabet);
            out += ']';
        }
    }
    return out;
}

// -- statistics & enumeration ----------------------------------------------------------

bool one_free(const Word& w) {
    for (const Letter& l : w.letters()) {
        if (l.is_bracket() && (l.content().empty() || !one_free(l.content()))) return false;
    }
    return true;
}

bool in_variant(const Word& w, Variant variant) {
    if (variant == Variant::Unitary) return true;
    return !w.empty() && one_free(w);
}

void generator_multiset(const Word& w, std::unordered_map<GenId, std::uint32_t>& out) {
    for (const Letter& l : w.letters()) {
        if (l.is_gen())
            ++out[l.gen_id()];
        else
            generator_multiset(l.content(), out);
    }
}

namespace {

// Words of each exact degree up to `top`, computed bottom-up. Index 0 holds
// {1} as the concatenation terminator for both variants.
std::vector<std::vector<Word>> word_table(std::uint32_t top, const Alphabet& alphabet,
                                          Variant variant) {
    std::vector<std::vector<Word>> table(top + 1);
    table[0].push_back(Word());
    std::vector<Letter> letters;  // the letters of degree 1
    for (GenId g = 0; g < alphabet.size(); ++g) letters.push_back(Letter::gen(g));
    if (variant == Variant::Unitary) letters.push_back(Letter::bracket(Word()));
    for (std::uint32_t d = 1; d <= top; ++d) {
        std::vector<Word>& out = table[d];
        for (std::uint32_t j = 1; j <= d; ++j) {
            const std::vector<Letter>* first;
            std::vector<Letter> brackets;
            if (j == 1) {
                first = &letters;
            } else {
                for (const Word& c : table[j - 1]) brackets.push_back(Letter::bracket(c));
                first = &brackets;
            }
            for (const Letter& l : *first) {
                for (const Word& tail : table[d - j]) {
                    std::vector<Letter> ls;
                    ls.reserve(1 + tail.letters().size());
                    ls.push_back(l);
                    ls.insert(ls.end(), tail.letters().begin(), tail.letters().end());
                    out.emplace_back(std::move(ls));
                }
            }
        }
        std::sort(out.begin(), out.end(), WordDtLess{});
    }
    return table;
}

}  // namespace

std::vector<Word> words_of_degree(std::uint32_t degree, const Alphabet& alphabet,
                                  Variant variant) {
    if (degree == 0) {
        if (variant == Variant::Nonunitary) return {};
        return {Word()};
    }
    auto table = word_table(degree, alphabet, variant);
    return std::move(table[degree]);
}

std::vector<Word> enumerate_words(std::uint32_t degree_bound, const Alphabet& alphabet,
                                  Variant variant) {
    auto table = word_table(degree_bound, alphabet, variant);
    std::vector<Word> out;
    if (variant == Variant::Unitary) out.push_back(Word());
    for (std::uint32_t d = 1; d <= degree_bound; ++d)
        for (Word& w : table[d]) out.push_back(std::move(w));
    return out;
}

unsigned long long count_words(std::uint32_t degree, std::size_t alphabet_size,
                               Variant variant) {
    if (degree == 0) return variant == Variant::Unitary ? 1 : 0;
    std::vector<unsigned long long> w(degree + 1, 0);
    w[0] = 1;
    const unsigned long long l1 =
        alphabet_size + (variant == Variant::Unitary ? 1 : 0);
    for (std::uint32_t d = 1; d <= degree; ++d) {
        unsigned long long total = l1 * w[d - 1];
        for (std::uint32_t j = 2; j <= d; ++j) total += w[j - 1] * w[d - j];
        w[d] = total;
    }
    return w[degree];
}

std::vector<Word> enumerate_contexts(std::uint32_t degree_bound, const Alphabet& alphabet,
                                     Variant variant) {
    auto words = word_table(degree_bound, alphabet, variant);
    // contexts[d]: star at top level or inside exactly one bracket letter
    std::vector<std::vector<Word>> contexts(degree_bound + 1);
    for (std::uint32_t d = 0; d <= degree_bound; ++d) {
        std::vector<Word>& out = contexts[d];
        for (std::uint32_t du = 0; du <= d; ++du) {
            for (const Word& u : words[du]) {
                for (const Word& v : words[d - du]) {
                    out.push_back(u.concat(Word::gen(kStar)).concat(v));
                }
            }
        }
        for (std::uint32_t dc = 0; dc + 1 <= d; ++dc) {
            for (const Word& c : contexts[dc]) {
                const Word br = Word::bracket(c);
                for (std::uint32_t du = 0; du + dc + 1 <= d; ++du) {
                    for (const Word& u : words[du]) {
                        for (const Word& v : words[d - du - dc - 1]) {
                            out.push_back(u.concat(br).concat(v));
                        }
                    }
                }
            }
        }
        std::sort(out.begin(), out.end(), WordDtLess{});
    }
    std::vector<Word> all;
    for (std::uint32_t d = 0; d <= degree_bound; ++d)
        for (Word& q : contexts[d]) all.push_back(std::move(q));
    return all;
}

}  // namespace oprew
