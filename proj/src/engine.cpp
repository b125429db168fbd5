#include "oprew/engine.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace oprew {

namespace {

std::uint32_t metavar_occurrences(const Word& w, std::vector<std::uint32_t>& mult) {
    std::uint32_t total = 0;
    for (const Letter& l : w.letters()) {
        if (l.is_gen()) {
            ++mult[l.gen_id()];
            ++total;
        } else {
            total += metavar_occurrences(l.content(), mult);
        }
    }
    return total;
}

struct MonomialShape {
    std::vector<std::uint32_t> mult;  // metavariable multiplicities
    std::uint32_t brackets = 0;       // degree with metavariable letters removed
};

MonomialShape shape_of(const Word& m, std::uint32_t arity) {
    MonomialShape s;
    s.mult.assign(arity, 0);
    const std::uint32_t metavars = metavar_occurrences(m, s.mult);
    s.brackets = m.degree() - metavars;
    return s;
}

}  // namespace

RewriteSystem to_system(std::vector<Opi> opis, const Orientation& orientation,
                        Variant variant) {
    RewriteSystem sys;
    sys.variant = variant;
    if (std::holds_alternative<OrderHandle>(orientation)) {
        sys.mode = Mode::Order;
        sys.order = std::get<OrderHandle>(orientation);
    } else {
        sys.mode = Mode::Scheme;
    }

    sys.unit_monomial_rules = true;
    sys.degree_nonincreasing = true;
    sys.degree_preserving = true;
    sys.generator_preserving = true;

    for (Opi& p : opis) {
        if (p.body.is_zero())
            throw std::invalid_argument("to_system: zero OPI admits no rules");
        RuleFamily fam;
        fam.opi = std::move(p);
        if (sys.mode == Mode::Scheme) {
            const auto idx = std::get<PatternSide>(orientation).index;
            if (idx >= fam.opi.monomials.size())
                throw std::invalid_argument("to_system: pattern index out of range");
            fam.pattern_index = idx;
        }

        std::vector<MonomialShape> shapes;
        for (const Word& m : fam.opi.monomials) {
            MonomialShape s = shape_of(m, fam.opi.arity);
            for (std::uint32_t i = 0; i < fam.opi.arity; ++i)
                if (s.mult[i] == 0)
                    throw std::invalid_argument(
                        "to_system: monomial of '" + fam.opi.name +
                        "' omits a metavariable; instances would branch unboundedly");
            shapes.push_back(std::move(s));
        }

        // unit monomial right-hand sides: exactly two monomials with opposite
        // coefficients
        if (fam.opi.monomials.size() != 2 ||
            fam.opi.body.coeff(fam.opi.monomials[0]) !=
                -fam.opi.body.coeff(fam.opi.monomials[1]))
            sys.unit_monomial_rules = false;

        const auto same_shape = [&](const MonomialShape& a, const MonomialShape& b) {
            return a.brackets == b.brackets && a.mult == b.mult;
        };
        if (sys.mode == Mode::Scheme) {
            const MonomialShape& lhs = shapes[fam.pattern_index];
            for (std::size_t i = 0; i < shapes.size(); ++i) {
                if (i == fam.pattern_index) continue;
                const MonomialShape& m = shapes[i];
                bool leq = m.brackets <= lhs.brackets;
                for (std::uint32_t k = 0; k < fam.opi.arity && leq; ++k)
                    leq = m.mult[k] <= lhs.mult[k];
                if (!leq) sys.degree_nonincreasing = false;
                if (!same_shape(m, lhs)) sys.degree_preserving = false;
                if (m.mult != lhs.mult) sys.generator_preserving = false;
            }
        } else {
            // Under a degree-dominant order the per-instance maximum has
            // maximal degree, so rewriting never increases degree.
            for (std::size_t i = 1; i < shapes.size(); ++i) {
                if (!same_shape(shapes[i], shapes[0])) sys.degree_preserving = false;
                if (shapes[i].mult != shapes[0].mult) sys.generator_preserving = false;
            }
        }
        sys.families.push_back(std::move(fam));
    }
    // dT is degree-dominant, so per-instance maxima never lose degree.
    if (sys.mode == Mode::Order) sys.degree_nonincreasing = true;
    return sys;
}

// -- matching -------------------------------------------------------------------

namespace {

// Matches pattern letters against subject letters starting at sj. Metavariable
// letters bind arbitrary factors (nonempty 1-free ones in the Nonunitary
// variant); bracket letters recurse with exact consumption. The top frame is
// inexact so the consumed length identifies the matched factor.
void match_seq(const std::vector<Letter>& pat, std::size_t pi,
               const std::vector<Letter>& sub, std::size_t sj, bool exact,
               Variant variant, std::vector<std::optional<Word>>& bind,
               const std::function<void(std::size_t)>& emit) {
    if (pi == pat.size()) {
        if (!exact || sj == sub.size()) emit(sj);
        return;
    }
    const Letter& pl = pat[pi];
    if (pl.is_gen()) {
        const GenId m = pl.gen_id();
        if (bind[m]) {
            const auto& bound = bind[m]->letters();
            if (sj + bound.size() > sub.size()) return;
            for (std::size_t i = 0; i < bound.size(); ++i)
                if (sub[sj + i] != bound[i]) return;
            match_seq(pat, pi + 1, sub, sj + bound.size(), exact, variant, bind, emit);
            return;
        }
        for (std::size_t t = 0; sj + t <= sub.size(); ++t) {
            Word cand(std::vector<Letter>(sub.begin() + sj, sub.begin() + sj + t));
            if (!in_variant(cand, variant)) continue;
            bind[m] = std::move(cand);
            match_seq(pat, pi + 1, sub, sj + t, exact, variant, bind, emit);
            bind[m].reset();
        }
        return;
    }
    if (sj >= sub.size() || !sub[sj].is_bracket()) return;
    match_seq(pl.content().letters(), 0, sub[sj].content().letters(), 0, true, variant,
              bind, [&](std::size_t) {
                  match_seq(pat, pi + 1, sub, sj + 1, exact, variant, bind, emit);
              });
}

struct Match {
    std::size_t len;
    std::vector<Word> args;
};

std::vector<Match> match_factor(const Word& pattern, const Word& subject,
                                std::size_t start, std::uint32_t arity,
                                Variant variant) {
    std::vector<Match> out;
    std::vector<std::optional<Word>> bind(arity);
    std::vector<Letter> window(subject.letters().begin() + start, subject.letters().end());
    match_seq(pattern.letters(), 0, window, 0, false, variant, bind,
              [&](std::size_t end) {
                  Match m;
                  m.len = end;
                  m.args.reserve(arity);
                  for (const auto& b : bind) m.args.push_back(b ? *b : Word());
                  out.push_back(std::move(m));
              });
    return out;
}

int compare_args(const std::vector<Word>& a, const std::vector<Word>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int c = compare_dt(a[i], b[i]);
        if (c != 0) return c;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

int compare_redex(const Redex& a, const Redex& b) {
    if (const int c = compare(a.at, b.at)) return c;
    if (const int c = a.rule.family.compare(b.rule.family)) return c < 0 ? -1 : 1;
    if (const int c = compare_args(a.rule.args, b.rule.args)) return c;
    return compare_lincomb(a.rule.rhs, b.rule.rhs);
}

void collect_redexes(const Word& cw, std::vector<std::uint32_t>& path,
                     const RewriteSystem& sys, std::vector<Redex>& out) {
    for (const RuleFamily& fam : sys.families) {
        const std::size_t nshapes = fam.opi.monomials.size();
        for (std::size_t si = 0; si < nshapes; ++si) {
            if (sys.mode == Mode::Scheme && si != fam.pattern_index) continue;
            const Word& pattern = fam.opi.monomials[si];
            for (std::size_t start = 0; start < cw.letters().size(); ++start) {
                for (Match& m : match_factor(pattern, cw, start, fam.opi.arity,
                                             sys.variant)) {
                    if (m.len == 0) continue;  // no rewriting at empty occurrences
                    const LinComb s = instantiate(fam.opi, m.args);
                    if (s.is_zero()) continue;
                    Word lhs = cw.factor(start, m.len);
                    Rational c;
                    if (sys.mode == Mode::Order) {
                        auto [mx, cmx] = leading(s, sys.order);
                        if (mx != lhs) continue;  // only the ord-larger side is a redex
                        c = cmx;
                    } else {
                        c = s.coeff(lhs);
                        if (c == 0) continue;
                    }
                    LinComb rhs = LinComb::monomial(lhs) - scale(Rational(1) / c, s);
                    Redex r;
                    r.rule = RuleInstance{fam.opi.name, std::move(m.args), std::move(lhs),
                                          std::move(rhs)};
                    r.at = Placement{path, static_cast<std::uint32_t>(start),
                                     static_cast<std::uint32_t>(m.len)};
                    out.push_back(std::move(r));
                }
            }
        }
    }
    for (std::size_t i = 0; i < cw.letters().size(); ++i) {
        if (!cw.letters()[i].is_bracket()) continue;
        path.push_back(static_cast<std::uint32_t>(i));
        collect_redexes(cw.letters()[i].content(), path, sys, out);
        path.pop_back();
    }
}

}  // namespace

std::vector<Redex> find_redexes(const Word& w, const RewriteSystem& sys) {
    std::vector<Redex> out;
    std::vector<std::uint32_t> path;
    collect_redexes(w, path, sys, out);
    std::sort(out.begin(), out.end(),
              [](const Redex& a, const Redex& b) { return compare_redex(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Redex& a, const Redex& b) {
                              return compare(a.at, b.at) == 0 && a.rule.lhs == b.rule.lhs &&
                                     a.rule.rhs == b.rule.rhs;
                          }),
              out.end());
    // simplicity: the lhs coefficient of the monic instance cancels exactly
    for (const Redex& r : out) {
        if (r.rule.rhs.coeff(r.rule.lhs) != 0)
            throw std::logic_error("non-simple rule instance produced");
    }
    return out;
}

LinComb apply_redex(const Word& host, const Redex& r, const RewriteSystem& sys) {
    LinComb image = substitute_lin(host, r.at, r.rule.rhs);
    if (sys.degree_nonincreasing) {
        for (const auto& [m, c] : image.terms()) {
            if (m.degree() > host.degree())
                throw std::logic_error("degree increased along a rewrite edge");
        }
    }
    if (sys.generator_preserving && sys.degree_preserving) {
        std::unordered_map<GenId, std::uint32_t> expect, got;
        generator_multiset(host, expect);
        for (const auto& [m, c] : image.terms()) {
            got.clear();
            generator_multiset(m, got);
            if (got != expect)
                throw std::logic_error("generator multiset changed along a rewrite edge");
        }
    }
    return image;
}

LinComb rewrite_once(const LinComb& f, const RewriteSystem& sys, const Word& t,
                     const Redex& r) {
    const Rational c_t = f.coeff(t);
    if (c_t == 0) throw std::invalid_argument("rewrite_once: monomial not in support");
    if (!resolves(t, r.at) || factor_at(t, r.at) != r.rule.lhs)
        throw std::invalid_argument("rewrite_once: placement is not a redex of the monomial");
    LinComb out = f;
    out -= LinComb::monomial(t, c_t);
    out += scale(c_t, apply_redex(t, r, sys));
    return out;
}

// -- word-level closure -----------------------------------------------------------

namespace {

Word unit_monomial_word(const LinComb& f) {
    if (f.support_size() != 1 || f.terms().begin()->second != 1)
        throw std::logic_error("expected a unit monomial image");
    return f.terms().begin()->first;
}

bool digraph_has_cycle(std::size_t n, const std::vector<std::vector<std::uint32_t>>& adj) {
    std::vector<std::uint8_t> color(n, 0);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (color[s] != 0) continue;
        color[s] = 1;
        stack.push_back({s, 0});
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < adj[v].size()) {
                const std::uint32_t w = adj[v][i++];
                if (color[w] == 1) return true;  // back edge
                if (color[w] == 0) {
                    color[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

}  // namespace

ClosureReport closure(const Word& w, const RewriteSystem& sys, std::uint64_t budget) {
    if (!sys.unit_monomial_rules)
        throw std::domain_error(
            "closure: word-level reachability requires unit monomial rules");
    if (budget == 0) throw std::invalid_argument("closure: budget must be positive");

    std::unordered_map<Word, std::uint32_t, WordHash> ids;
    std::vector<Word> words;
    std::vector<std::uint8_t> expanded;
    struct RawEdge {
        std::uint32_t from;
        Redex redex;
        std::uint32_t to;
    };
    std::vector<RawEdge> raw;
    std::deque<std::uint32_t> queue;
    bool truncated = false;

    const auto intern = [&](const Word& x) -> std::optional<std::uint32_t> {
        auto it = ids.find(x);
        if (it != ids.end()) return it->second;
        if (words.size() >= budget) {
            truncated = true;
            return std::nullopt;
        }
        const auto id = static_cast<std::uint32_t>(words.size());
        ids.emplace(x, id);
        words.push_back(x);
        expanded.push_back(0);
        queue.push_back(id);
        return id;
    };

    intern(w);
    while (!queue.empty()) {
        const std::uint32_t v = queue.front();
        queue.pop_front();
        expanded[v] = 1;
        const Word from = words[v];
        for (const Redex& r : find_redexes(from, sys)) {
            const Word to = unit_monomial_word(apply_redex(from, r, sys));
            if (auto id = intern(to)) raw.push_back({v, r, *id});
        }
    }

    std::vector<std::vector<std::uint32_t>> adj(words.size());
    std::vector<std::uint32_t> outdeg(words.size(), 0);
    for (const RawEdge& e : raw) {
        adj[e.from].push_back(e.to);
        ++outdeg[e.from];
    }

    ClosureReport report;
    report.root = w;
    report.truncated = truncated;
    report.budget_used = words.size();
    report.has_cycle = digraph_has_cycle(words.size(), adj);
    for (std::uint32_t v = 0; v < words.size(); ++v) {
        report.vertices.push_back(words[v]);
        if (expanded[v] && outdeg[v] == 0) report.normal_forms.push_back(words[v]);
    }
    std::sort(report.vertices.begin(), report.vertices.end(), WordDtLess{});
    std::sort(report.normal_forms.begin(), report.normal_forms.end(), WordDtLess{});
    for (const RawEdge& e : raw)
        report.edges.push_back(Edge{words[e.from], e.redex.rule, e.redex.at, words[e.to]});
    std::sort(report.edges.begin(), report.edges.end(), [](const Edge& a, const Edge& b) {
        if (const int c = compare_dt(a.from, b.from)) return c < 0;
        if (const int c = compare(a.at, b.at)) return c < 0;
        if (const int c = a.rule.family.compare(b.rule.family)) return c < 0;
        if (const int c = compare_args(a.rule.args, b.rule.args)) return c < 0;
        return compare_dt(a.to, b.to) < 0;
    });
    return report;
}

// -- normalization ------------------------------------------------------------------

LinComb normalize(const LinComb& f, const RewriteSystem& sys, std::uint64_t budget,
                  std::vector<StepRecord>* trace) {
    if (budget == 0) throw std::invalid_argument("normalize: budget must be positive");
    LinComb state = f;
    std::unordered_set<LinComb, LinCombHash> seen;
    seen.insert(state);
    std::uint64_t steps = 0;
    while (true) {
        const Word* target = nullptr;
        std::vector<Redex> redexes;
        for (auto it = state.terms().rbegin(); it != state.terms().rend(); ++it) {
            redexes = find_redexes(it->first, sys);
            if (!redexes.empty()) {
                target = &it->first;
                break;
            }
        }
        if (target == nullptr) return state;
        if (++steps > budget) throw BudgetError("normalize: step budget exhausted");
        LinComb next = rewrite_once(state, sys, *target, redexes.front());
        if (trace)
            trace->push_back(StepRecord{state, redexes.front().rule, redexes.front().at, next});
        if (!seen.insert(next).second)
            throw CycleGuardError("normalize: repeated state; system does not terminate here");
        state = std::move(next);
    }
}

// -- reachability on polynomials ----------------------------------------------------

namespace {

struct LcClosure {
    std::unordered_set<LinComb, LinCombHash> states;
    bool truncated = false;
};

LcClosure lincomb_closure(const LinComb& f, const RewriteSystem& sys,
                          std::uint64_t budget) {
    LcClosure out;
    std::deque<LinComb> queue;
    out.states.insert(f);
    queue.push_back(f);
    while (!queue.empty()) {
        const LinComb state = queue.front();
        queue.pop_front();
        for (const auto& [t, c] : state.terms()) {
            for (const Redex& r : find_redexes(t, sys)) {
                LinComb next = rewrite_once(state, sys, t, r);
                if (out.states.count(next)) continue;
                if (out.states.size() >= budget) {
                    out.truncated = true;
                    continue;
                }
                out.states.insert(next);
                queue.push_back(next);
            }
        }
    }
    return out;
}

// Minimal common state of two closures, if any (canonical witness).
std::optional<LinComb> intersect(const LcClosure& a, const LcClosure& b) {
    const LcClosure& small = a.states.size() <= b.states.size() ? a : b;
    const LcClosure& large = a.states.size() <= b.states.size() ? b : a;
    std::optional<LinComb> best;
    for (const LinComb& s : small.states) {
        if (!large.states.count(s)) continue;
        if (!best || compare_lincomb(s, *best) < 0) best = s;
    }
    return best;
}

}  // namespace

JoinResult joinable(const LinComb& f, const LinComb& g, const RewriteSystem& sys,
                    std::uint64_t budget) {
    if (budget == 0) throw std::invalid_argument("joinable: budget must be positive");
    JoinResult result;
    if (f == g) {
        result.joinable = Tri::True;
        result.witness = f;
        return result;
    }
    const LcClosure cf = lincomb_closure(f, sys, budget);
    const LcClosure cg = lincomb_closure(g, sys, budget);
    result.truncated = cf.truncated || cg.truncated;
    if (auto w = intersect(cf, cg)) {
        result.joinable = Tri::True;
        result.witness = std::move(w);
        return result;
    }
    result.joinable = result.truncated ? Tri::Unknown : Tri::False;
    return result;
}

// -- sweeps ---------------------------------------------------------------------------

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
    if (threads == 0) {
        threads = std::thread::hardware_concurrency();
        if (threads == 0) threads = 1;
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr error;
    const auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

ConfluenceReport local_confluence_report(std::uint32_t degree_bound,
                                         const Alphabet& alphabet,
                                         const RewriteSystem& sys, std::uint64_t budget,
                                         unsigned threads) {
    const std::vector<Word> words = enumerate_words(degree_bound, alphabet, sys.variant);

    struct PerWord {
        std::vector<Fork> offenders;
        std::vector<Fork> unknowns;
        std::uint64_t forks = 0;
    };
    std::vector<PerWord> results(words.size());

    parallel_for(words.size(), threads, [&](std::size_t i) {
        const Word& w = words[i];
        const std::vector<Redex> redexes = find_redexes(w, sys);
        if (redexes.size() < 2) return;
        std::vector<LinComb> reducts;
        reducts.reserve(redexes.size());
        for (const Redex& r : redexes) reducts.push_back(apply_redex(w, r, sys));
        std::vector<std::optional<LcClosure>> closures(reducts.size());
        const auto closure_of = [&](std::size_t k) -> const LcClosure& {
            if (!closures[k]) closures[k] = lincomb_closure(reducts[k], sys, budget);
            return *closures[k];
        };
        PerWord& res = results[i];
        for (std::size_t a = 0; a < reducts.size(); ++a) {
            for (std::size_t b = a + 1; b < reducts.size(); ++b) {
                ++res.forks;
                if (reducts[a] == reducts[b]) continue;
                const LcClosure& ca = closure_of(a);
                const LcClosure& cb = closure_of(b);
                if (intersect(ca, cb)) continue;
                Fork fork{w, reducts[a], reducts[b]};
                if (ca.truncated || cb.truncated)
                    res.unknowns.push_back(std::move(fork));
                else
                    res.offenders.push_back(std::move(fork));
            }
        }
    });

    ConfluenceReport report;
    report.words_checked = words.size();
    for (PerWord& res : results) {
        report.forks_checked += res.forks;
        for (Fork& f : res.offenders) report.offenders.push_back(std::move(f));
        for (Fork& f : res.unknowns) report.unknowns.push_back(std::move(f));
    }
    if (!report.offenders.empty())
        report.verdict = Tri::False;
    else if (!report.unknowns.empty())
        report.verdict = Tri::Unknown;
    else
        report.verdict = Tri::True;
    return report;
}

GsReport gs_verdict(std::uint32_t degree_bound, const Alphabet& alphabet,
                    const RewriteSystem& sys, std::uint64_t budget, unsigned threads) {
    if (sys.mode != Mode::Order)
        throw std::domain_error("gs_verdict: refuses Scheme mode; a monomial order is required");

    GsReport report;
    report.degree_bound = degree_bound;

    ConfluenceReport lc =
        local_confluence_report(degree_bound, alphabet, sys, budget, threads);
    report.locally_confluent = lc.verdict;
    report.offenders = std::move(lc.offenders);
    report.words_checked = lc.words_checked;

    const std::vector<Word> words = enumerate_words(degree_bound, alphabet, sys.variant);
    std::vector<std::uint8_t> status(words.size(), 0);  // 0 ok, 1 failed, 2 unknown
    parallel_for(words.size(), threads, [&](std::size_t i) {
        try {
            const LinComb nf = normalize(LinComb::monomial(words[i]), sys, budget);
            const LinComb coset = LinComb::monomial(words[i]) - nf;
            if (!normalize(coset, sys, budget).is_zero()) status[i] = 1;
        } catch (const BudgetError&) {
            status[i] = 2;
        } catch (const CycleGuardError&) {
            status[i] = 2;
        }
    });
    bool any_unknown = false;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (status[i] == 1) report.coset_failures.push_back(words[i]);
        if (status[i] == 2) {
            report.coset_unknowns.push_back(words[i]);
            any_unknown = true;
        }
    }
    report.cosets_reduce = !report.coset_failures.empty() ? Tri::False
                           : any_unknown                  ? Tri::Unknown
                                                          : Tri::True;

    const auto tri_and = [](Tri a, Tri b) {
        if (a == Tri::False || b == Tri::False) return Tri::False;
        if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
        return Tri::True;
    };
    report.verdict = tri_and(report.locally_confluent, report.cosets_reduce);
    return report;
}

}  // namespace oprew
