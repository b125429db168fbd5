#include "oprew/averaging.hpp"

#include <algorithm>
#include <cassert>

namespace oprew {

RewriteSystem build_system(const AvgSelection& families, Mode mode, Variant variant,
                           const OrderHandle& ord) {
    std::vector<Opi> opis;
    if (families.phi) opis.push_back(builtin("averaging_phi"));
    if (families.psi) opis.push_back(builtin("averaging_psi"));
    if (families.varphi) opis.push_back(builtin("averaging_varphi"));
    if (mode == Mode::Order) return to_system(std::move(opis), Orientation(ord), variant);
    return to_system(std::move(opis), Orientation(PatternSide{0}), variant);
}

namespace {

// The three excluded shapes, scanned structurally. A shape occurrence only
// counts when the instance polynomial is nonzero and the substitution words
// lie in the variant's word set.
bool has_excluded_shape(const Word& w, Variant variant) {
    const auto& ls = w.letters();
    for (std::size_t i = 0; i < ls.size(); ++i) {
        if (!ls[i].is_bracket()) continue;

        // phi: [u1][u2] at adjacent letters; instances are never zero
        if (i + 1 < ls.size() && ls[i + 1].is_bracket() &&
            in_variant(ls[i].content(), variant) &&
            in_variant(ls[i + 1].content(), variant))
            return true;

        const Word& c = ls[i].content();

        // psi: [u1 [u2]]; psi(1,1) is the zero instance
        bool psi_hit = false;
        if (!c.empty() && c.letters().back().is_bracket()) {
            const Word& u2 = c.letters().back().content();
            const Word u1 = c.factor(0, c.breadth() - 1);
            if (in_variant(u1, variant) && in_variant(u2, variant) &&
                !(u1.empty() && u2.empty()))
                psi_hit = true;
        }
        if (psi_hit) return true;

        // varphi: [[[u1] u2]]; varphi(.,1) is the zero instance
        if (c.breadth() == 1 && c.letters()[0].is_bracket()) {
            const Word& d = c.letters()[0].content();
            if (!d.empty() && d.letters()[0].is_bracket()) {
                const Word& u1 = d.letters()[0].content();
                const Word u2 = d.factor(1, d.breadth() - 1);
                if (!u2.empty() && in_variant(u1, variant) && in_variant(u2, variant)) {
                    // in the unitary variant this shape is the psi shape with
                    // u1 = 1, so psi must already have fired
                    assert(variant != Variant::Unitary || psi_hit);
                    return true;
                }
            }
        }

        if (has_excluded_shape(c, variant)) return true;
    }
    return false;
}

}  // namespace

bool irr_pattern(const Word& w, Variant variant) { return !has_excluded_shape(w, variant); }

std::vector<Word> irr_enumerate(std::uint32_t degree_bound, const Alphabet& alphabet,
                                Variant variant) {
    std::vector<Word> out;
    for (Word& w : enumerate_words(degree_bound, alphabet, variant))
        if (irr_pattern(w, variant)) out.push_back(std::move(w));
    return out;
}

unsigned long long irr_count(std::uint32_t degree, std::size_t alphabet_size,
                             Variant variant) {
    const Alphabet alphabet = Alphabet::numbered(alphabet_size);
    unsigned long long n = 0;
    for (const Word& w : words_of_degree(degree, alphabet, variant))
        if (irr_pattern(w, variant)) ++n;
    if (degree == 0 && variant == Variant::Unitary) n = 1;
    return n;
}

BasisAuditReport basis_audit(std::uint32_t degree_bound, const Alphabet& alphabet,
                             const RewriteSystem& sys, std::uint64_t budget,
                             unsigned threads) {
    const std::vector<Word> words = enumerate_words(degree_bound, alphabet, sys.variant);
    const EvalAlgebra alg(3);

    BasisAuditReport report;
    report.rows.resize(words.size());
    parallel_for(words.size(), threads, [&](std::size_t i) {
        BasisAuditRow& row = report.rows[i];
        row.word = words[i];
        row.pattern_irr = irr_pattern(words[i], sys.variant);
        row.engine_irr = find_redexes(words[i], sys).empty();
        try {
            const LinComb nf = normalize(LinComb::monomial(words[i]), sys, budget);
            if (nf.support_size() == 1 && nf.terms().begin()->second == 1)
                row.nf = nf.terms().begin()->first;
            for (const auto& [m, c] : nf.terms()) {
                if (!find_redexes(m, sys).empty())
                    throw std::logic_error("normalize returned a reducible word");
            }
            // coset soundness against the evaluation oracle
            const LinComb coset = LinComb::monomial(words[i]) - nf;
            std::mt19937_64 rng(0x5eed0000ull + i);
            for (int k = 0; k < 5 && row.coset_ok; ++k) {
                const Assignment a = random_assignment(alphabet, alg, rng);
                const auto v = eval(coset, a, alg);
                for (const Rational& x : v)
                    if (x != 0) row.coset_ok = false;
            }
        } catch (const CycleGuardError&) {
            row.cycle = true;
        } catch (const BudgetError&) {
            row.cycle = true;
        }
    });
    for (const BasisAuditRow& row : report.rows)
        if (row.pattern_irr != row.engine_irr) report.mismatches.push_back(row.word);
    return report;
}

LinComb nf_product(const LinComb& f, const LinComb& g, const RewriteSystem& sys,
                   std::uint64_t budget) {
    return normalize(mul(f, g), sys, budget);
}

LinComb nf_bracket(const LinComb& f, const RewriteSystem& sys, std::uint64_t budget) {
    return normalize(bracket(f), sys, budget);
}

Tri member(const LinComb& f, const RewriteSystem& sys, std::uint64_t budget) {
    try {
        return normalize(f, sys, budget).is_zero() ? Tri::True : Tri::False;
    } catch (const CycleGuardError&) {
        return Tri::Unknown;
    } catch (const BudgetError&) {
        return Tri::Unknown;
    }
}

// -- evaluation oracle -----------------------------------------------------------

EvalAlgebra::EvalAlgebra(std::size_t dimension) : dim_(dimension) {
    if (dim_ == 0) throw std::invalid_argument("EvalAlgebra: dimension must be >= 1");
    // averaging identities on deterministic samples
    std::mt19937_64 rng(0xa19eb5a5eedull);
    for (int k = 0; k < 8; ++k) {
        Vec u(dim_), v(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            u[i] = Rational(static_cast<int>(rng() % 19) - 9,
                            static_cast<int>(rng() % 9) + 1);
            v[i] = Rational(static_cast<int>(rng() % 19) - 9,
                            static_cast<int>(rng() % 9) + 1);
        }
        const Vec lhs = product(apply(u), apply(v));
        const Vec mid = apply(product(apply(u), v));
        const Vec rhs = apply(product(u, apply(v)));
        if (lhs != mid || mid != rhs)
            throw std::logic_error("EvalAlgebra: averaging identity failed");
    }
}

EvalAlgebra::Vec EvalAlgebra::ones() const { return Vec(dim_, Rational(1)); }

void EvalAlgebra::check(const Vec& v) const {
    if (v.size() != dim_) throw std::invalid_argument("EvalAlgebra: dimension mismatch");
}

EvalAlgebra::Vec EvalAlgebra::apply(const Vec& v) const {
    check(v);
    return Vec(dim_, v[0]);
}

EvalAlgebra::Vec EvalAlgebra::product(const Vec& a, const Vec& b) const {
    check(a);
    check(b);
    Vec out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out[i] = a[i] * b[i];
    return out;
}

namespace {

EvalAlgebra::Vec eval_word(const Word& w, const Assignment& assignment,
                           const EvalAlgebra& alg) {
    EvalAlgebra::Vec acc = alg.ones();
    for (const Letter& l : w.letters()) {
        EvalAlgebra::Vec x;
        if (l.is_gen()) {
            auto it = assignment.find(l.gen_id());
            if (it == assignment.end())
                throw std::invalid_argument("eval: generator has no assignment");
            x = it->second;
        } else {
            x = alg.apply(eval_word(l.content(), assignment, alg));
        }
        acc = alg.product(acc, x);
    }
    return acc;
}

}  // namespace

EvalAlgebra::Vec eval(const LinComb& f, const Assignment& assignment,
                      const EvalAlgebra& alg) {
    EvalAlgebra::Vec out(alg.dimension(), Rational(0));
    for (const auto& [w, c] : f.terms()) {
        const EvalAlgebra::Vec v = eval_word(w, assignment, alg);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * v[i];
    }
    return out;
}

Assignment random_assignment(const Alphabet& alphabet, const EvalAlgebra& alg,
                             std::mt19937_64& rng) {
    Assignment a;
    for (GenId g = 0; g < alphabet.size(); ++g) {
        EvalAlgebra::Vec v(alg.dimension());
        for (auto& x : v)
            x = Rational(static_cast<int>(rng() % 19) - 9,
                         static_cast<int>(rng() % 9) + 1);
        a.emplace(g, std::move(v));
    }
    return a;
}

}  // namespace oprew
