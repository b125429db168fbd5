#include "oprew/order.hpp"

namespace oprew {

namespace {

int compare_letter(const Letter& x, const Letter& y);

// The pure sequence comparison T: left-to-right letters, proper prefix
// smaller. Degree is never consulted here.
int compare_seq(const Word& a, const Word& b) {
    const std::size_t n = std::min(a.letters().size(), b.letters().size());
    for (std::size_t i = 0; i < n; ++i) {
        const int c = compare_letter(a.letters()[i], b.letters()[i]);
        if (c != 0) return c;
    }
    if (a.letters().size() != b.letters().size())
        return a.letters().size() < b.letters().size() ? -1 : 1;
    return 0;
}

int compare_letter(const Letter& x, const Letter& y) {
    if (x.is_gen() && y.is_gen()) {
        const GenId a = x.gen_id(), b = y.gen_id();
        return a < b ? -1 : (a > b ? 1 : 0);
    }
    if (x.is_gen() != y.is_gen()) return x.is_gen() ? 1 : -1;  // generator beats bracket
    return compare_seq(x.content(), y.content());
}

}  // namespace

int compare_dt(const Word& u, const Word& v) {
    if (u.degree() != v.degree()) return u.degree() < v.degree() ? -1 : 1;
    return compare_seq(u, v);
}

Ordering compare(const Word& u, const Word& v, const OrderHandle& ord) {
    (void)ord;  // dT is the only built-in kind
    return static_cast<Ordering>(compare_dt(u, v));
}

bool leftmost_spine_has_generator(const Word& u) {
    const Word* w = &u;
    while (true) {
        if (w->empty()) return false;
        const Letter& first = w->letters().front();
        if (first.is_gen()) return true;
        w = &first.content();
    }
}

const char* family_name(AvgFamily f) {
    switch (f) {
        case AvgFamily::Phi: return "phi";
        case AvgFamily::Psi: return "psi";
        case AvgFamily::Varphi: return "varphi";
    }
    return "?";
}

std::pair<Word, Word> family_monomials(AvgFamily f, const Word& u1, const Word& u2) {
    const Letter br_u1 = Letter::bracket(u1);
    switch (f) {
        case AvgFamily::Phi: {
            Word m1({br_u1, Letter::bracket(u2)});
            Word m2 = Word::bracket(Word({br_u1}).concat(u2));
            return {m1, m2};
        }
        case AvgFamily::Psi: {
            Word m1 = Word::bracket(u1.concat(Word({Letter::bracket(u2)})));
            Word m2 = Word::bracket(Word({br_u1}).concat(u2));
            return {m1, m2};
        }
        case AvgFamily::Varphi: {
            Word m1 = Word::bracket(Word::bracket(Word({br_u1}).concat(u2)));
            Word m2 = Word::bracket(Word::bracket(Word({br_u1})).concat(u2));
            return {m1, m2};
        }
    }
    throw std::logic_error("unreachable");
}

OrientationAudit audit_orientation(AvgFamily family, const Word& u1, const Word& u2,
                                   const OrderHandle& ord) {
    auto [pattern, other] = family_monomials(family, u1, u2);
    if (pattern == other)
        throw std::invalid_argument("audit_orientation: zero instance");
    OrientationAudit audit;
    audit.paper_lhs = pattern;
    audit.order_lhs = compare(pattern, other, ord) == Ordering::Greater ? pattern : other;
    audit.agrees = audit.order_lhs == audit.paper_lhs;
    return audit;
}

}  // namespace oprew
