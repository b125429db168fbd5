#pragma once

#include <random>
#include <unordered_map>

#include "oprew/engine.hpp"

namespace oprew {

struct AvgSelection {
    bool phi = true;
    bool psi = true;
    bool varphi = true;
};

// The rewriting system of the averaging operator: families phi, psi and
// optionally varphi, under pattern or dT orientation.
RewriteSystem build_system(const AvgSelection& families, Mode mode, Variant variant,
                           const OrderHandle& ord = {});

// True iff w contains no factor of the shapes [u1][u2], [u1[u2]] or
// [[[u1]u2]] for u1, u2 in the variant's word set, zero instances excluded
// (psi(1,1) and varphi(.,1) exclude nothing).
bool irr_pattern(const Word& w, Variant variant);

std::vector<Word> irr_enumerate(std::uint32_t degree_bound, const Alphabet& alphabet,
                                Variant variant);
unsigned long long irr_count(std::uint32_t degree, std::size_t alphabet_size,
                             Variant variant);

struct BasisAuditRow {
    Word word;
    bool pattern_irr = false;
    bool engine_irr = false;
    std::optional<Word> nf;  // empty on cycle
    bool cycle = false;
    bool coset_ok = true;  // w - nf evaluates to 0 in the oracle algebra
};

struct BasisAuditReport {
    std::vector<BasisAuditRow> rows;
    std::vector<Word> mismatches;  // pattern_irr != engine_irr
};

BasisAuditReport basis_audit(std::uint32_t degree_bound, const Alphabet& alphabet,
                             const RewriteSystem& sys, std::uint64_t budget,
                             unsigned threads = 1);

// Quotient-algebra arithmetic: normal forms of the product / the operator.
LinComb nf_product(const LinComb& f, const LinComb& g, const RewriteSystem& sys,
                   std::uint64_t budget);
LinComb nf_bracket(const LinComb& f, const RewriteSystem& sys, std::uint64_t budget);

// True iff normalize(f) = 0. A True answer certifies ideal membership
// unconditionally; interpreting False as non-membership needs the bounded
// confluence verdict.
Tri member(const LinComb& f, const RewriteSystem& sys, std::uint64_t budget);

// A concrete unitary averaging algebra: rational n-vectors under the
// pointwise product with A(v) = v[0] * (1,...,1). Serves as the independent
// evaluation oracle; the averaging identities are asserted at construction.
class EvalAlgebra {
public:
    using Vec = std::vector<Rational>;

    explicit EvalAlgebra(std::size_t dimension);

    std::size_t dimension() const { return dim_; }
    Vec ones() const;
    Vec apply(const Vec& v) const;
    Vec product(const Vec& a, const Vec& b) const;

private:
    void check(const Vec& v) const;
    std::size_t dim_;
};

using Assignment = std::unordered_map<GenId, EvalAlgebra::Vec>;

// Recursive evaluation: generators by assignment, concatenation by pointwise
// product, brackets by A, 1 by the all-ones vector; extended linearly.
EvalAlgebra::Vec eval(const LinComb& f, const Assignment& assignment,
                      const EvalAlgebra& alg);

Assignment random_assignment(const Alphabet& alphabet, const EvalAlgebra& alg,
                             std::mt19937_64& rng);

}  // namespace oprew
