#include "rdl/search.hpp"

#include "rdl/simsem.hpp"
#include "rdl/syntax.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace rdl {

namespace {

using FK = FormulaKind;
using PK = ProgramKind;

// ---- preprocessing ----

std::optional<Path> find_box_f(const FormulaPtr& f, Path& p);
std::optional<Path> find_box_p(const ProgramPtr& a, Path& p) {
    auto at = [&](int c, auto&& fn) -> std::optional<Path> {
        p.push_back(c);
        auto r = fn();
        p.pop_back();
        return r;
    };
    switch (a->kind) {
        case PK::Test:
        case PK::Ode: return at(0, [&] { return find_box_f(a->formula, p); });
        case PK::Choice:
        case PK::Seq:
            if (auto r = at(0, [&] { return find_box_p(a->left, p); })) return r;
            return at(1, [&] { return find_box_p(a->right, p); });
        case PK::Star: return at(0, [&] { return find_box_p(a->left, p); });
        case PK::Assign: break;
    }
    return std::nullopt;
}

std::optional<Path> find_box_f(const FormulaPtr& f, Path& p) {
    auto at = [&](int c, auto&& fn) -> std::optional<Path> {
        p.push_back(c);
        auto r = fn();
        p.pop_back();
        return r;
    };
    switch (f->kind) {
        case FK::Box: return p;
        case FK::Or:
        case FK::And:
            if (auto r = at(0, [&] { return find_box_f(f->left, p); })) return r;
            return at(1, [&] { return find_box_f(f->right, p); });
        case FK::Exists:
        case FK::Forall: return at(0, [&] { return find_box_f(f->left, p); });
        case FK::Diamond:
            if (auto r = at(0, [&] { return find_box_p(f->program, p); })) return r;
            return at(1, [&] { return find_box_f(f->left, p); });
        default: break;
    }
    return std::nullopt;
}

VarSet sequent_vars(const Sequent& s) {
    VarSet out;
    for (const auto& f : s.ante)
        for (const auto& v : all_vars(f)) out.insert(v);
    for (const auto& f : s.succ)
        for (const auto& v : all_vars(f)) out.insert(v);
    return out;
}

int index_of(const std::vector<FormulaPtr>& fs, const FormulaPtr& f) {
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (equal(fs[i], f)) return int(i);
    return -1;
}

RuleInstance make_rule(RuleName n, int side, int index) {
    RuleInstance r;
    r.name = n;
    r.pos.side = side;
    r.pos.index = index;
    return r;
}

RuleInstance rewrite(int index, AxiomName a, std::string fresh = {}) {
    RuleInstance r = make_rule(RuleName::ContextRewrite, 1, index);
    r.axiom = a;
    r.fresh = std::move(fresh);
    return r;
}

/// Domain rho & ||xs|| < b with xs the ODE variables in order and b free of them.
bool bounded_ode(const ProgramPtr& a) {
    const FormulaPtr& dom = a->formula;
    if (dom->kind != FK::And) return false;
    auto nm = match_norm(dom->right, Strictness::Strict);
    if (!nm || nm->first != ode_vars(a->ode)) return false;
    VarSet bv = free_vars(nm->second);
    for (const auto& x : nm->first)
        if (bv.count(x)) return false;
    return true;
}

Ordinal repaired_rank(const FormulaPtr& f) {
    static thread_local std::map<FormulaPtr, Ordinal, std::owner_less<>> memo;
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    if (memo.size() > 200000) memo.clear();
    Ordinal o = rank_formula(f, RankScheme::Repaired);
    memo.emplace(f, o);
    return o;
}

std::string ordinal_of(const std::vector<FormulaPtr>& succ) {
    Ordinal m;
    for (const auto& f : succ) m = ord_max(m, repaired_rank(f));
    return m.str();
}

std::string bounded_var_name(const Sequent& s, const FormulaPtr& f, const std::string& x) {
    bool clash = false;
    for (const auto& g : s.ante)
        if (free_vars(g).count(x)) clash = true;
    for (const auto& g : s.succ)
        if (g != f && free_vars(g).count(x)) clash = true;
    if (!clash) return x;
    return fresh_name(sequent_vars(s), x);
}


// ---- exact simulation at a point, used only to skip hopeless loop counts ----

bool known(const VarSet& vs, const Point& w) {
    for (const auto& v : vs)
        if (!w.count(v)) return false;
    return true;
}

/// Variables the antecedent pins to a single value.
Point point_state(const Sequent& s) {
    Point w;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& a : s.ante) {
            auto m = match_interval(a);
            if (!m || w.count(m->var)) continue;
            VarSet vs = free_vars(m->lo);
            collect_vars(m->hi, vs);
            if (!known(vs, w)) continue;
            Rational lo = eval_term(w, m->lo);
            if (lo != eval_term(w, m->hi)) continue;
            w[m->var] = lo;
            changed = true;
        }
    }
    return w;
}

/// True only when f is certainly false at w.
bool refuted(const FormulaPtr& f, const Point& w) {
    if (is_quantifier_free_basic(*f)) return known(free_vars(f), w) && !eval_exact(f, w);
    switch (f->kind) {
        case FK::And: return refuted(f->left, w) || refuted(f->right, w);
        case FK::Or: return refuted(f->left, w) && refuted(f->right, w);
        case FK::Forall: {
            auto m = match_bounded(f);
            if (!m || m->kind != BoundedKind::ForallClosed) return false;
            VarSet vs = free_vars(m->lo);
            collect_vars(m->hi, vs);
            if (!known(vs, w)) return false;
            Rational lo = eval_term(w, m->lo), hi = eval_term(w, m->hi);
            if (hi < lo) return false;
            for (const auto& q : {lo, hi, (lo + hi) / Rational(2)}) {
                Point v = w;
                v[m->var] = q;
                if (refuted(m->body, v)) return true;
            }
            return false;
        }
        case FK::Diamond:
            if (f->program->kind == PK::Assign) {
                if (!known(free_vars(f->program->term), w)) return false;
                Point v = w;
                v[f->program->var] = eval_term(w, f->program->term);
                return refuted(f->left, v);
            }
            if (f->program->kind == PK::Test) return refuted(f->program->formula, w) || refuted(f->left, w);
            return false;
        default: return false;
    }
}

/// Final states of a loop- and ODE-free program; nullopt when not simulable.
std::optional<std::vector<Point>> run(const ProgramPtr& a, const std::vector<Point>& ws) {
    std::vector<Point> out;
    switch (a->kind) {
        case PK::Assign:
            for (const auto& w : ws) {
                if (!known(free_vars(a->term), w)) return std::nullopt;
                Point v = w;
                v[a->var] = eval_term(w, a->term);
                out.push_back(std::move(v));
            }
            break;
        case PK::Test:
            for (const auto& w : ws)
                if (!refuted(a->formula, w)) out.push_back(w);
            break;
        case PK::Seq: {
            auto mid = run(a->left, ws);
            if (!mid) return std::nullopt;
            return run(a->right, *mid);
        }
        case PK::Choice: {
            auto l = run(a->left, ws), r = run(a->right, ws);
            if (!l || !r) return std::nullopt;
            out = std::move(*l);
            out.insert(out.end(), r->begin(), r->end());
            break;
        }
        default: return std::nullopt;
    }
    if (out.size() > 64) return std::nullopt;
    return out;
}

/// Loop counts 0..top not certainly refuted by running the loop from the
/// antecedent's point state; all of them when that state is not a point.
std::vector<int> viable_counts(const Sequent& s, const FormulaPtr& f, int top) {
    std::vector<int> all;
    for (int n = 0; n <= top; ++n) all.push_back(n);
    Point w = point_state(s);
    if (!known(free_vars(f), w)) return all;
    std::vector<int> out;
    std::vector<Point> cur{w};
    for (int n = 0; n <= top; ++n) {
        bool ok = false;
        for (const auto& v : cur)
            if (!refuted(f->left, v)) ok = true;
        if (ok) out.push_back(n);
        auto next = run(f->program->left, cur);
        if (!next) {
            for (int m = n + 1; m <= top; ++m) out.push_back(m);
            return out;
        }
        cur = std::move(*next);
    }
    return out;
}

}  // namespace

// ---- public helpers ----

Preprocessed preprocess(const FormulaPtr& goal) {
    Preprocessed out{goal, {}};
    for (;;) {
        Path p;
        auto where = find_box_f(out.result, p);
        if (!where) return out;
        FormulaPtr sub = subformula_at(out.result, *where);
        RuleInstance r = rewrite(0, AxiomName::BoxTest);
        r.pos.path = *where;
        switch (sub->program->kind) {
            case PK::Assign:
                r.axiom = AxiomName::BoxAssign;
                r.fresh = fresh_name(all_vars(out.result), "_z");
                break;
            case PK::Test: r.axiom = AxiomName::BoxTest; break;
            case PK::Choice: r.axiom = AxiomName::BoxChoice; break;
            case PK::Seq: r.axiom = AxiomName::BoxSeq; break;
            case PK::Ode:
                if (!match_norm_domain(sub->program))
                    throw NotInFragment("ODE box without a norm-bounded domain at " + path_str(*where), {});
                r.axiom = AxiomName::ODEDual;
                break;
            case PK::Star: throw NotInFragment("loop box at " + path_str(*where), {});
        }
        AxiomPair inst = axiom_instance(r.axiom, sub, r);
        out.result = replace_at(out.result, *where, inst.rhs);
        out.steps.push_back(std::move(r));
    }
}

int select_formula(const Sequent& s) {
    int best = -1;
    Ordinal br;
    for (std::size_t i = 0; i < s.succ.size(); ++i) {
        if (is_quantifier_free_basic(*s.succ[i])) continue;
        Ordinal o = repaired_rank(s.succ[i]);
        if (best < 0 || br < o) {
            best = int(i);
            br = o;
        }
    }
    return best;
}

ReductionStep reduce_once(const Sequent& s) {
    ReductionStep out{ReductionStep::Kind::OracleLeaf, {}, {}, {}, -1};
    int i = select_formula(s);
    if (i < 0) return out;
    out.index = i;
    const FormulaPtr& f = s.succ[std::size_t(i)];
    auto step = [&](RuleInstance r) {
        out.kind = ReductionStep::Kind::Step;
        out.premises = apply_rule(s, r);
        out.rule = std::move(r);
        return out;
    };
    auto needs = [&](const char* c) {
        out.kind = ReductionStep::Kind::NeedsSearch;
        out.choice = c;
        return out;
    };
    switch (f->kind) {
        case FK::Or: return step(make_rule(RuleName::OrR, 1, i));
        case FK::And: return step(make_rule(RuleName::AndR, 1, i));
        case FK::Exists: return needs("witness");
        case FK::Forall: {
            auto m = match_bounded(f);
            if (!m || m->kind != BoundedKind::ForallClosed)
                throw StuckSequent("unbounded universal in the succedent: " + pretty(f));
            RuleInstance r = make_rule(RuleName::ForallR, 1, i);
            r.fresh = bounded_var_name(s, f, m->var);
            return step(std::move(r));
        }
        case FK::Diamond:
            switch (f->program->kind) {
                case PK::Assign: return step(rewrite(i, AxiomName::DiaAssign, fresh_name(sequent_vars(s), "_z")));
                case PK::Test: return step(rewrite(i, AxiomName::DiaTest));
                case PK::Choice: return step(rewrite(i, AxiomName::DiaChoice));
                case PK::Seq: return step(rewrite(i, AxiomName::DiaSeq));
                case PK::Star: return needs("loop");
                case PK::Ode: return needs("euler");
            }
            break;
        default: break;
    }
    throw StuckSequent("no reduction applies to " + pretty(f));
}

std::vector<EulerTuple> euler_tuples(int r) {
    std::vector<EulerTuple> out;
    for (int total = 0; total <= r; ++total)
        for (int a = 0; a <= total; ++a)
            for (int b = 0; a + b <= total; ++b)
                for (int c = 0; a + b + c <= total; ++c) {
                    int d = total - a - b - c;
                    out.push_back({pow2(a), pow2(b), pow2(c), pow2(-(d + 1))});
                }
    return out;
}

// ---- the engine ----

namespace {

struct BudgetOut {
    std::string reason;
};

class Engine {
public:
    Engine(const Schedule& sch, SearchStats& st) : sch_(sch), st_(st), start_(Clock::now()) {}

    int round = 0;
    std::deque<FrontierItem> failures;
    bool witness_exhausted = false;
    std::vector<Sequent> stack;

    ProofPtr solve(const Sequent& s) {
        tick();
        stack.push_back(s);
        ProofPtr p = solve_inner(s);
        stack.pop_back();
        return p;
    }

    void begin_round(int r) {
        round = r;
        failures.clear();
        witness_exhausted = false;
        ++st_.rounds;
    }

private:
    using Clock = std::chrono::steady_clock;

    struct OracleMemo {
        OracleVerdict verdict;
        int depth;
        TreePtr tree;
    };

    const Schedule& sch_;
    SearchStats& st_;
    Clock::time_point start_;
    std::map<std::string, OracleMemo> oracle_memo_;
    std::map<std::string, Rational> forced_;
    std::optional<EulerTuple> pending_;

    void tick() {
        ++st_.nodes;
        if (st_.nodes > sch_.max_nodes) throw BudgetOut{"nodes"};
        if ((st_.nodes & 63) == 0 &&
            std::chrono::duration<double>(Clock::now() - start_).count() > sch_.max_seconds)
            throw BudgetOut{"seconds"};
    }

    void fail(const Sequent& s, std::string note) {
        failures.push_back({s.str(), ordinal_of(s.succ), std::move(note)});
        if (failures.size() > 8) failures.pop_front();
    }

    int oracle_depth() const {
        return std::min(sch_.oracle_depth_max, sch_.oracle_depth_base + sch_.oracle_depth_step * round);
    }
    int loop_max() const { return sch_.loop_base + sch_.loop_step * round; }

    ProofPtr node(const Sequent& s, RuleInstance r, std::vector<ProofPtr> prem) {
        auto n = std::make_shared<ProofNode>();
        n->conclusion = s;
        n->rule = std::move(r);
        n->premises = std::move(prem);
        return n;
    }

    std::vector<Sequent> apply(const Sequent& s, const RuleInstance& r) {
        tick();
        return apply_rule(s, r);
    }

    // Every formula a premise adds must rank below the principal formula.
    void check_descent(const Sequent& s, const std::vector<Sequent>& prem, const FormulaPtr& principal) {
        for (const auto& p : prem) {
            std::vector<FormulaPtr> fresh;
            for (const auto& g : p.succ)
                if (!contains(s.succ, g)) fresh.push_back(g);
            if (fresh.empty()) continue;
            ++st_.rank_checks;
            if (set_cmp(fresh, {principal}, RankScheme::Repaired) != Cmp::LT) ++st_.rank_violations;
        }
    }

    TreePtr oracle(const Sequent& s, std::string& why) {
        std::string key = s.str();
        int depth = oracle_depth();
        auto it = oracle_memo_.find(key);
        if (it != oracle_memo_.end() &&
            (it->second.verdict != OracleVerdict::Unknown || it->second.depth >= depth)) {
            ++st_.oracle_cache_hits;
            why = std::string("oracle: ") + to_string(it->second.verdict);
            return it->second.verdict == OracleVerdict::Valid ? it->second.tree : nullptr;
        }
        ++st_.oracle_calls;
        DecideResult d;
        try {
            d = decide_sequent(s, OracleBudget{depth, sch_.oracle_nodes});
        } catch (const PreconditionViolation& e) {
            d.verdict = OracleVerdict::Unknown;
            d.note = e.what();
            depth = 1 << 30;  // never retried
        }
        oracle_memo_[key] = {d.verdict, depth, d.tree};
        why = std::string("oracle: ") + to_string(d.verdict) + (d.note.empty() ? "" : " (" + d.note + ")");
        return d.verdict == OracleVerdict::Valid ? d.tree : nullptr;
    }

    ProofPtr leaf(const Sequent& s) {
        std::string why;
        TreePtr t = oracle(s, why);
        if (!t) {
            fail(s, why);
            return nullptr;
        }
        ProofPtr n = node(s, make_rule(RuleName::RReal, 1, 0), {});
        n->oracle_trace = t;
        return n;
    }

    /// WeakenR every succedent formula except `keep` (in order), then continue
    /// with `then` on the focused sequent.  Returns the chain root.
    template <class F>
    ProofPtr weaken_all_but(const Sequent& s, const std::vector<FormulaPtr>& keep, F&& then) {
        for (std::size_t i = 0; i < s.succ.size(); ++i) {
            if (index_of(keep, s.succ[i]) >= 0) continue;
            RuleInstance r = make_rule(RuleName::WeakenR, 1, int(i));
            Sequent next = apply(s, r)[0];
            ProofPtr rest = weaken_all_but(next, keep, then);
            return rest ? node(s, r, {rest}) : nullptr;
        }
        return then(s);
    }

    // Drops interval hypotheses about variables nothing else mentions.
    ProofPtr collect_garbage(const Sequent& s, const std::function<ProofPtr(const Sequent&)>& then) {
        for (std::size_t i = 0; i < s.ante.size(); ++i) {
            auto m = match_interval(s.ante[i]);
            if (!m) continue;
            bool used = false;
            for (std::size_t j = 0; j < s.ante.size() && !used; ++j)
                if (j != i && free_vars(s.ante[j]).count(m->var)) used = true;
            for (const auto& g : s.succ)
                if (!used && free_vars(g).count(m->var)) used = true;
            if (used) continue;
            RuleInstance r = make_rule(RuleName::WeakenL, 0, int(i));
            Sequent next = apply(s, r)[0];
            ProofPtr rest = collect_garbage(next, then);
            return rest ? node(s, r, {rest}) : nullptr;
        }
        return then(s);
    }

    ProofPtr step(const Sequent& s, const RuleInstance& r, const FormulaPtr& principal, bool assert_descent = true) {
        std::vector<Sequent> prem = apply(s, r);
        if (assert_descent) check_descent(s, prem, principal);
        std::vector<ProofPtr> kids;
        for (const auto& p : prem) {
            ProofPtr k = solve(p);
            if (!k) return nullptr;
            kids.push_back(k);
        }
        return node(s, r, std::move(kids));
    }

    ProofPtr solve_inner(const Sequent& s) {
        int i = select_formula(s);
        if (i < 0) return leaf(s);

        // A basic part that already closes the sequent saves the reduction.
        std::vector<FormulaPtr> basic;
        for (const auto& g : s.succ)
            if (is_quantifier_free_basic(*g)) basic.push_back(g);
        if (!basic.empty()) {
            std::string why;
            Sequent b(s.ante, basic);
            if (oracle(b, why)) return weaken_all_but(s, basic, [&](const Sequent& t) { return leaf(t); });
        }

        const FormulaPtr f = s.succ[std::size_t(i)];
        switch (f->kind) {
            case FK::Or: return step(s, make_rule(RuleName::OrR, 1, i), f);
            case FK::And: return conjunction(s, i, f);
            case FK::Exists: return existential(s, f);
            case FK::Forall: {
                auto m = match_bounded(f);
                if (!m || m->kind != BoundedKind::ForallClosed)
                    throw StuckSequent("unbounded universal in the succedent: " + pretty(f));
                return collect_garbage(s, [&](const Sequent& t) -> ProofPtr {
                    RuleInstance r = make_rule(RuleName::ForallR, 1, index_of(t.succ, f));
                    r.fresh = bounded_var_name(t, f, m->var);
                    return step(t, r, f);
                });
            }
            case FK::Diamond: return diamond_case(s, i, f);
            default: break;
        }
        throw StuckSequent("no reduction applies to " + pretty(f));
    }

    ProofPtr conjunction(const Sequent& s, int i, const FormulaPtr& f) {
        RuleInstance r = make_rule(RuleName::AndR, 1, i);
        std::vector<Sequent> prem = apply(s, r);
        check_descent(s, prem, f);
        std::vector<ProofPtr> kids;
        for (int side = 0; side < 2; ++side) {
            const Sequent& p = prem[std::size_t(side)];
            FormulaPtr part = side == 0 ? f->left : f->right;
            ProofPtr k;
            if (p.succ.size() > 1) k = weaken_all_but(p, {part}, [&](const Sequent& t) { return solve(t); });
            if (!k) k = solve(p);
            if (!k) return nullptr;
            kids.push_back(k);
        }
        return node(s, r, std::move(kids));
    }

    std::vector<TermPtr> witnesses(const Sequent& s, const FormulaPtr& f) {
        auto it = forced_.find(f->var);
        if (it != forced_.end()) return {cst(it->second)};
        std::vector<Rational> qs;
        for (int d = 0; d <= round; ++d)
            for (const auto& q : witness_round(d)) qs.push_back(q);
        std::vector<TermPtr> out;
        for (const auto& q : qs) out.push_back(cst(q));
        // Offsets from bounded variables: a single constant cannot serve a
        // whole box of free-variable values.
        for (const auto& a : s.ante) {
            auto m = match_interval(a);
            if (!m || m->var == f->var) continue;
            for (const auto& q : qs) out.push_back(q.is_zero() ? var(m->var) : add(var(m->var), cst(q)));
        }
        return out;
    }

    ProofPtr existential(const Sequent& s, const FormulaPtr& f) {
        int i = index_of(s.succ, f);
        for (const auto& w : witnesses(s, f)) {
            RuleInstance r = make_rule(RuleName::ExistsR, 1, i);
            r.witness = w;
            if (ProofPtr p = step(s, r, f)) return p;
        }
        if (!forced_.count(f->var)) witness_exhausted = true;
        fail(s, "witness stream exhausted for " + f->var + " in round " + std::to_string(round));
        return nullptr;
    }

    ProofPtr diamond_case(const Sequent& s, int i, const FormulaPtr& f) {
        switch (f->program->kind) {
            case PK::Assign:
                return step(s, rewrite(i, AxiomName::DiaAssign, fresh_name(sequent_vars(s), "_z")), f);
            case PK::Test: return step(s, rewrite(i, AxiomName::DiaTest), f);
            case PK::Choice: return step(s, rewrite(i, AxiomName::DiaChoice), f);
            case PK::Seq: return step(s, rewrite(i, AxiomName::DiaSeq), f);
            case PK::Star: return loop(s, i, f);
            case PK::Ode: return bounded_ode(f->program) ? euler(s, i, f) : bound_ode(s, i, f);
        }
        return nullptr;
    }

    // <a^{<=n}>phi, then keep only the n-fold disjunct.
    ProofPtr exactly(const Sequent& s, const FormulaPtr& g, int n, const FormulaPtr& origin) {
        if (n == 0 || g->program->kind != PK::Choice) {
            check_descent(Sequent(s.ante, {}), {Sequent(s.ante, {g})}, origin);
            return solve(s);
        }
        RuleInstance r = rewrite(index_of(s.succ, g), AxiomName::DiaChoice);
        Sequent s1 = apply(s, r)[0];
        FormulaPtr dis = lor(diamond(g->program->left, g->left), diamond(g->program->right, g->left));
        RuleInstance o = make_rule(RuleName::OrR, 1, index_of(s1.succ, dis));
        Sequent s2 = apply(s1, o)[0];
        FormulaPtr drop = dis->left, keep = dis->right;
        if (contains(s.succ, drop)) {
            // already present before: nothing to weaken
            ProofPtr rest = exactly(s2, keep, n, origin);
            return rest ? node(s, r, {node(s1, o, {rest})}) : nullptr;
        }
        RuleInstance w = make_rule(RuleName::WeakenR, 1, index_of(s2.succ, drop));
        Sequent s3 = apply(s2, w)[0];
        ProofPtr rest = exactly(s3, keep, n, origin);
        return rest ? node(s, r, {node(s1, o, {node(s2, w, {rest})})}) : nullptr;
    }

    ProofPtr loop(const Sequent& s, int i, const FormulaPtr& f) {
        int top = loop_max();
        std::vector<int> ns = viable_counts(s, f, top);
        if (ns.empty()) {
            fail(s, "loop counts up to " + std::to_string(top) + " refuted by simulation");
            return nullptr;
        }
        for (int n : ns) {
            RuleInstance r = make_rule(RuleName::StarFinite, 1, i);
            r.n = n;
            Sequent p = apply(s, r)[0];
            FormulaPtr g = diamond(iterate_upto(f->program->left, n), f->left);
            if (ProofPtr k = exactly(p, g, n, f)) return node(s, r, {k});
        }
        RuleInstance r = make_rule(RuleName::StarFinite, 1, i);
        r.n = top;
        if (ProofPtr k = step(s, r, f)) return k;
        fail(s, "loop counts up to " + std::to_string(top) + " refuted");
        return nullptr;
    }

    template <class F>
    auto scoped(F&& body) {
        auto saved_f = forced_;
        auto saved_p = pending_;
        auto out = body();
        forced_ = std::move(saved_f);
        pending_ = std::move(saved_p);
        return out;
    }

    // <ODE & rho>phi: bound the state by a fresh y, then commit to a tuple.
    ProofPtr bound_ode(const Sequent& s, int i, const FormulaPtr& f) {
        std::string y = fresh_name(sequent_vars(s), "_y");
        for (const auto& t : euler_tuples(round)) {
            ProofPtr p = scoped([&] {
                forced_[y] = t.k;
                pending_ = t;
                return step(s, rewrite(i, AxiomName::DiaOdeBound, y), f, false);
            });
            if (p) return p;
        }
        fail(s, "Euler tuples of round " + std::to_string(round) + " refuted");
        return nullptr;
    }

    ProofPtr euler(const Sequent& s, int i, const FormulaPtr& f) {
        std::vector<EulerTuple> ts;
        if (pending_) ts.push_back(*pending_);
        else ts = euler_tuples(round);
        EulerNames names = fresh_euler_names(sequent_vars(s), f->program->ode.size());
        for (const auto& t : ts) {
            ProofPtr p = scoped([&] {
                pending_.reset();
                forced_[names.m] = t.m;
                forced_[names.l] = t.l;
                forced_[names.h] = t.h;
                RuleInstance r = rewrite(i, AxiomName::DiaOde);
                r.euler = names;
                return step(s, r, f);
            });
            if (p) return p;
        }
        if (!pending_) fail(s, "Euler tuples of round " + std::to_string(round) + " refuted");
        return nullptr;
    }
};

}  // namespace

ProveResult prove(const FormulaPtr& goal0, const Schedule& sched) {
    ProveResult out;
    FormulaPtr goal = normalize_clock(goal0);
    if (!free_vars(goal).empty()) throw NotInFragment("goal is not a sentence", {});
    FragmentResult fr = in_rrdl(goal, Side::Strict);
    if (!fr.ok) throw NotInFragment("goal is not a strict rrdL formula", fr.blames);
    Preprocessed pre = preprocess(goal);

    auto t0 = std::chrono::steady_clock::now();
    Engine e(sched, out.stats);
    Timeout to;
    to.reason = "rounds";
    for (int r = sched.first_round; r < sched.max_rounds; ++r) {
        e.begin_round(r);
        to.last_round = r;
        ProofPtr p;
        try {
            p = e.solve(Sequent({}, {pre.result}));
        } catch (const BudgetOut& b) {
            to.reason = b.reason;
            for (std::size_t i = e.stack.size() > 4 ? e.stack.size() - 4 : 0; i < e.stack.size(); ++i)
                to.frontier.push_back({e.stack[i].str(), ordinal_of(e.stack[i].succ), "open"});
            for (const auto& f : e.failures) to.frontier.push_back(f);
            to.witness_stream_exhausted = e.witness_exhausted;
            break;
        }
        if (p) {
            // the box-elimination rewrites sit on top of the search proof
            std::vector<Sequent> seqs{Sequent({}, {goal})};
            for (const auto& st : pre.steps) seqs.push_back(apply_rule(seqs.back(), st)[0]);
            for (std::size_t k = pre.steps.size(); k-- > 0;) {
                auto n = std::make_shared<ProofNode>();
                n->conclusion = seqs[k];
                n->rule = pre.steps[k];
                n->premises = {p};
                p = n;
            }
            out.certificate = Certificate{goal, p};
            break;
        }
        to.frontier.assign(e.failures.begin(), e.failures.end());
        to.witness_stream_exhausted = e.witness_exhausted;
    }
    out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!out.certificate) out.timeout = to;
    return out;
}

std::string frontier_report(const Timeout& t, const SearchStats& st) {
    std::ostringstream o;
    o << "timeout (" << t.reason << ") after round " << t.last_round << "\n";
    o << "nodes " << st.nodes << ", oracle calls " << st.oracle_calls << " (+" << st.oracle_cache_hits
      << " cached), " << st.seconds << " s\n";
    if (t.witness_stream_exhausted) o << "witness stream exhausted for the admitted rounds\n";
    o << "frontier:\n";
    for (const auto& f : t.frontier) o << "  [" << f.rank << "] " << f.sequent << "    # " << f.note << "\n";
    return o.str();
}

}  // namespace rdl
