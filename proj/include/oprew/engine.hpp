#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "oprew/opi.hpp"

namespace oprew {

enum class Mode { Scheme, Order };
enum class Tri { False, True, Unknown };

class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A repeated state under the deterministic strategy: the system does not
// terminate on this input.
class CycleGuardError : public std::runtime_error {
public:
    explicit CycleGuardError(const std::string& what) : std::runtime_error(what) {}
};

struct RuleFamily {
    Opi opi;
    std::uint32_t pattern_index = 0;  // scheme-orientation side
};

// Pattern-side orientation (by monomial index into each OPI's declaration
// list) or per-instance orientation under a monomial order.
struct PatternSide {
    std::uint32_t index = 0;
};
using Orientation = std::variant<PatternSide, OrderHandle>;

struct RewriteSystem {
    std::vector<RuleFamily> families;
    Mode mode = Mode::Scheme;
    Variant variant = Variant::Unitary;
    OrderHandle order{};

    // Static shape analysis, computed at build time. Exact word-level closure
    // semantics require unit_monomial_rules; exploration of systems without
    // degree_nonincreasing is budgeted with Unknown propagation.
    bool unit_monomial_rules = false;
    bool degree_nonincreasing = false;
    bool degree_preserving = false;
    bool generator_preserving = false;
};

RewriteSystem to_system(std::vector<Opi> opis, const Orientation& orientation,
                        Variant variant);

// One oriented rule instance: family tag, the substitution words, the lhs
// monomial and the (monic) rhs. lhs - rhs is the instantiated OPI divided by
// its lhs coefficient, so lhs is never in Supp(rhs).
struct RuleInstance {
    std::string family;
    std::vector<Word> args;
    Word lhs;
    LinComb rhs;

    const Word& u1() const { return args.at(0); }
    const Word& u2() const { return args.at(1); }
};

struct Redex {
    RuleInstance rule;
    Placement at;
};

// All redexes of all families in w, deduplicated by (placement, lhs, rhs) and
// sorted canonically. In Order mode every monomial shape is scanned and an
// occurrence is kept only when it is the dT maximum of its instance.
std::vector<Redex> find_redexes(const Word& w, const RewriteSystem& sys);

// The one-step image of the monomial `host` under the redex: q|_rhs.
LinComb apply_redex(const Word& host, const Redex& r, const RewriteSystem& sys);

// One step on a polynomial: rewrite the support monomial t at the given redex,
//   f = c_t t (+) -R_t(f)  ->  c_t (t rewritten) - R_t(f).
LinComb rewrite_once(const LinComb& f, const RewriteSystem& sys, const Word& t,
                     const Redex& r);

struct Edge {
    Word from;
    RuleInstance rule;
    Placement at;
    Word to;
};

struct ClosureReport {
    Word root;
    std::vector<Word> vertices;
    std::vector<Edge> edges;
    std::vector<Word> normal_forms;
    bool has_cycle = false;
    bool truncated = false;
    std::uint64_t budget_used = 0;
};

// Exhaustive breadth-first reachability of the one-step graph from w.
// Requires a system with unit monomial rules (all averaging families qualify).
ClosureReport closure(const Word& w, const RewriteSystem& sys, std::uint64_t budget);

struct StepRecord {
    LinComb from;
    RuleInstance rule;
    Placement at;
    LinComb to;
};

// Deterministic strategy: rewrite the dT-greatest reducible support monomial
// at its canonically first redex until no redex remains. Throws BudgetError
// or CycleGuardError (a repeated state).
LinComb normalize(const LinComb& f, const RewriteSystem& sys, std::uint64_t budget,
                  std::vector<StepRecord>* trace = nullptr);

struct JoinResult {
    Tri joinable = Tri::Unknown;
    std::optional<LinComb> witness;
    bool truncated = false;
};

JoinResult joinable(const LinComb& f, const LinComb& g, const RewriteSystem& sys,
                    std::uint64_t budget);

struct Fork {
    Word word;
    LinComb reduct1;
    LinComb reduct2;
};

struct ConfluenceReport {
    Tri verdict = Tri::Unknown;
    std::vector<Fork> offenders;
    std::vector<Fork> unknowns;
    std::uint64_t words_checked = 0;
    std::uint64_t forks_checked = 0;
};

// Decides joinability of every one-step fork of every word of degree <= bound
// (monomial-level checking suffices for linear systems).
ConfluenceReport local_confluence_report(std::uint32_t degree_bound,
                                         const Alphabet& alphabet,
                                         const RewriteSystem& sys, std::uint64_t budget,
                                         unsigned threads = 1);

struct GsReport {
    std::uint32_t degree_bound = 0;
    Tri locally_confluent = Tri::Unknown;
    Tri cosets_reduce = Tri::Unknown;
    Tri verdict = Tri::Unknown;
    std::vector<Fork> offenders;
    std::vector<Word> coset_failures;
    std::vector<Word> coset_unknowns;
    std::uint64_t words_checked = 0;
};

// Bounded Groebner-Shirshov verdict: local confluence at the bound plus the
// check that w - normalize(w) rewrites to 0 for every word at the bound.
// Order mode only.
GsReport gs_verdict(std::uint32_t degree_bound, const Alphabet& alphabet,
                    const RewriteSystem& sys, std::uint64_t budget,
                    unsigned threads = 1);

// Runs fn(i) for i in [0, n) across workers; results are merged by index, so
// output is identical for every thread count.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace oprew
