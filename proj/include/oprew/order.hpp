#pragma once

#include "oprew/terms.hpp"

namespace oprew {

// The dT order: degree first, then the pure left-to-right sequence comparison
// T. T compares letters positionally (generator beats bracket, generators by
// alphabet order, brackets by T on their contents) and calls a proper prefix
// smaller. At equal top-level degree a proper-prefix tie cannot occur, which
// makes the order stable under concatenation and bracket contexts.
struct OrderHandle {
    enum class Kind { DegreeThenT };
    Kind kind = Kind::DegreeThenT;
};

// -1 / 0 / +1; total on all words, EQUAL only on structural equality.
int compare_dt(const Word& u, const Word& v);

enum class Ordering { Less = -1, Equal = 0, Greater = 1 };
Ordering compare(const Word& u, const Word& v, const OrderHandle& ord);

struct WordDtLess {
    bool operator()(const Word& a, const Word& b) const { return compare_dt(a, b) < 0; }
};

// True iff the chain of leftmost letters through brackets bottoms out at a
// generator. Instances whose u1 fails this are the ones where dT may reverse
// the phi/psi pattern orientation.
bool leftmost_spine_has_generator(const Word& u);

enum class AvgFamily { Phi, Psi, Varphi };

const char* family_name(AvgFamily f);

// The two monomials of an averaging-family instance: pattern side first.
//   Phi:    [u1][u2]   vs [[u1]u2]
//   Psi:    [u1[u2]]   vs [[u1]u2]
//   Varphi: [[[u1]u2]] vs [[[u1]]u2]
std::pair<Word, Word> family_monomials(AvgFamily f, const Word& u1, const Word& u2);

struct OrientationAudit {
    Word paper_lhs;
    Word order_lhs;
    bool agrees = false;
};

// Compares the instance's pattern side against its dT maximum. Throws
// std::invalid_argument on the zero instances (psi(1,1), varphi(.,1)).
OrientationAudit audit_orientation(AvgFamily family, const Word& u1, const Word& u2,
                                   const OrderHandle& ord);

}  // namespace oprew
