#include "rdl/oracle.hpp"

#include "rdl/fragment.hpp"
#include "rdl/syntax.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace rdl {

const char* to_string(OracleVerdict v) {
    switch (v) {
        case OracleVerdict::Valid: return "Valid";
        case OracleVerdict::Counterexample: return "Counterexample";
        case OracleVerdict::Unknown: return "Unknown";
    }
    return "?";
}

std::size_t tree_size(const TreePtr& t) { return t ? 1 + tree_size(t->left) + tree_size(t->right) : 0; }

std::size_t tree_depth(const TreePtr& t) {
    if (!t || !t->split) return 0;
    return 1 + std::max(tree_depth(t->left), tree_depth(t->right));
}

nlohmann::json tree_to_json(const TreePtr& t) {
    nlohmann::json j;
    nlohmann::json box = nlohmann::json::object();
    for (const auto& [x, iv] : t->box) box[x] = {iv.lo.str(), iv.hi.str()};
    j["box"] = box;
    if (t->split) {
        j["split"] = {{"var", t->var}, {"mid", t->mid.str()}};
        j["left"] = tree_to_json(t->left);
        j["right"] = tree_to_json(t->right);
    } else {
        j["verdict"] = "AllTrue";
    }
    return j;
}

TreePtr tree_from_json(const nlohmann::json& j) {
    auto t = std::make_shared<SubdivisionTree>();
    for (const auto& [x, iv] : j.at("box").items()) {
        if (!iv.is_array() || iv.size() != 2) throw std::invalid_argument("malformed box entry for " + x);
        t->box[x] = RatInterval(Rational::parse(iv[0].get<std::string>()), Rational::parse(iv[1].get<std::string>()));
    }
    if (j.contains("split")) {
        t->split = true;
        t->var = j.at("split").at("var").get<std::string>();
        t->mid = Rational::parse(j.at("split").at("mid").get<std::string>());
        t->left = tree_from_json(j.at("left"));
        t->right = tree_from_json(j.at("right"));
    } else if (j.value("verdict", "") != "AllTrue") {
        throw std::invalid_argument("leaf without AllTrue verdict");
    }
    return t;
}

// ---- compiled three-valued formulas ----

namespace {

enum class TV { False, Unknown, True };

TV tv_not(TV a) { return a == TV::True ? TV::False : a == TV::False ? TV::True : TV::Unknown; }
TV tv_and(TV a, TV b) {
    if (a == TV::False || b == TV::False) return TV::False;
    if (a == TV::True && b == TV::True) return TV::True;
    return TV::Unknown;
}
TV tv_or(TV a, TV b) { return tv_not(tv_and(tv_not(a), tv_not(b))); }

struct Compiled {
    enum Kind { Atom, And, Or } kind;
    bool strict = false;  // atom: p > 0 (strict) or p >= 0
    std::shared_ptr<Horner> poly;
    std::shared_ptr<Compiled> l, r;

    static std::shared_ptr<Compiled> from(const FormulaPtr& f) {
        auto c = std::make_shared<Compiled>();
        switch (f->kind) {
            case FormulaKind::Gt:
            case FormulaKind::Geq:
                c->kind = Atom;
                c->strict = f->kind == FormulaKind::Gt;
                c->poly = std::make_shared<Horner>(Polynomial::from_term(f->lhs_term) -
                                                   Polynomial::from_term(f->rhs_term));
                return c;
            case FormulaKind::And:
            case FormulaKind::Or:
                c->kind = f->kind == FormulaKind::And ? And : Or;
                c->l = from(f->left);
                c->r = from(f->right);
                return c;
            default: throw PreconditionViolation("oracle input must be quantifier-free and modality-free");
        }
    }

    TV eval(const Box& b) const {
        if (kind == Atom) {
            RatInterval v = poly->eval(b);
            if (strict) return v.lo.sign() > 0 ? TV::True : v.hi.sign() <= 0 ? TV::False : TV::Unknown;
            return v.lo.sign() >= 0 ? TV::True : v.hi.sign() < 0 ? TV::False : TV::Unknown;
        }
        TV a = l->eval(b);
        if (kind == And && a == TV::False) return a;
        if (kind == Or && a == TV::True) return a;
        TV c = r->eval(b);
        return kind == And ? tv_and(a, c) : tv_or(a, c);
    }

    bool eval(const Point& p) const {
        if (kind == Atom) {
            int s = poly->eval(p).sign();
            return strict ? s > 0 : s >= 0;
        }
        return kind == And ? (l->eval(p) && r->eval(p)) : (l->eval(p) || r->eval(p));
    }
};

struct Problem {
    std::vector<std::shared_ptr<Compiled>> ante, succ;

    explicit Problem(const Sequent& s) {
        for (const auto& f : s.ante) {
            if (!is_quantifier_free_basic(*f) || classify_formula(f).cls != FormulaClass::Weak)
                throw PreconditionViolation("antecedent formula is not weak and quantifier-free: " + pretty(f));
            ante.push_back(Compiled::from(f));
        }
        for (const auto& f : s.succ) {
            if (!is_quantifier_free_basic(*f) || classify_formula(f).cls != FormulaClass::Strict)
                throw PreconditionViolation("succedent formula is not strict and quantifier-free: " + pretty(f));
            succ.push_back(Compiled::from(f));
        }
    }

    // three-valued truth of (and ante) -> (or succ)
    TV eval(const Box& b) const {
        TV a = TV::True;
        for (const auto& c : ante) {
            a = tv_and(a, c->eval(b));
            if (a == TV::False) return TV::True;
        }
        TV s = TV::False;
        for (const auto& c : succ) {
            s = tv_or(s, c->eval(b));
            if (s == TV::True) return TV::True;
        }
        return tv_or(tv_not(a), s);
    }

    bool refutes(const Point& p) const {
        for (const auto& c : ante)
            if (!c->eval(p)) return false;
        for (const auto& c : succ)
            if (c->eval(p)) return false;
        return true;
    }
};

void check_box_covers(const Sequent& s, const Box& b) {
    VarSet vs;
    for (const auto& f : s.ante) for (const auto& v : free_vars(f)) vs.insert(v);
    for (const auto& f : s.succ) for (const auto& v : free_vars(f)) vs.insert(v);
    for (const auto& v : vs)
        if (!b.count(v)) throw PreconditionViolation("variable " + v + " has no box");
}

Point center(const Box& b) {
    Point p;
    for (const auto& [x, iv] : b) p[x] = iv.mid();
    return p;
}

}  // namespace

DecideResult decide(const Sequent& s, const Box& b, OracleBudget budget) {
    check_box_covers(s, b);
    Problem prob(s);
    DecideResult res;
    std::size_t nodes = 0;
    bool aborted = false;

    std::function<TreePtr(const Box&, int)> solve = [&](const Box& box, int depth) -> TreePtr {
        if (aborted) return nullptr;
        if (++nodes > budget.max_nodes) {
            aborted = true;
            res.note = "node budget exhausted";
            return nullptr;
        }
        auto node = std::make_shared<SubdivisionTree>();
        node->box = box;
        if (prob.eval(box) == TV::True) return node;
        Point c = center(box);
        if (prob.refutes(c)) {
            aborted = true;
            res.verdict = OracleVerdict::Counterexample;
            res.point = c;
            return nullptr;
        }
        // widest variable; map order breaks ties by name
        const std::string* var = nullptr;
        Rational best;
        for (const auto& [x, iv] : box)
            if (!var || best < iv.width()) {
                var = &x;
                best = iv.width();
            }
        if (depth >= budget.max_depth || !var || best.is_zero()) {
            aborted = true;
            res.note = depth >= budget.max_depth ? "depth budget exhausted" : "undecided at a point";
            return nullptr;
        }
        node->split = true;
        node->var = *var;
        node->mid = box.at(*var).mid();
        Box lb = box, rb = box;
        lb[*var].hi = node->mid;
        rb[*var].lo = node->mid;
        node->left = solve(lb, depth + 1);
        if (aborted) return nullptr;
        node->right = solve(rb, depth + 1);
        if (aborted) return nullptr;
        return node;
    };

    TreePtr t = solve(b, 0);
    if (t) {
        res.verdict = OracleVerdict::Valid;
        res.tree = t;
    }
    return res;
}

bool replay(const TreePtr& tree, const Sequent& s, const Box& b) {
    try {
        check_box_covers(s, b);
        Problem prob(s);
        std::function<bool(const TreePtr&, const Box&)> walk = [&](const TreePtr& t, const Box& box) -> bool {
            if (!t || t->box != box) return false;
            if (!t->split) return prob.eval(box) == TV::True;
            auto it = box.find(t->var);
            if (it == box.end() || !(it->second.lo < t->mid && t->mid < it->second.hi)) return false;
            Box lb = box, rb = box;
            lb[t->var].hi = t->mid;
            rb[t->var].lo = t->mid;
            return walk(t->left, lb) && walk(t->right, rb);
        };
        return walk(tree, b);
    } catch (const std::exception&) {
        return false;
    }
}

// ---- front end ----

OracleProblem prepare(const Sequent& s) {
    OracleProblem out;
    for (const auto& f : s.succ)
        if (!is_quantifier_free_basic(*f)) {
            out.reason = "succedent not quantifier-free basic: " + pretty(f);
            return out;
        }
    std::map<std::string, std::vector<IntervalMatch>> bounds;
    std::vector<FormulaPtr> others;
    for (const auto& f : s.ante) {
        if (!is_quantifier_free_basic(*f)) continue;
        if (auto m = match_interval(f)) bounds[m->var].push_back(*m);
        else others.push_back(f);
    }
    // closure of variables the succedent depends on through interval bounds
    VarSet need;
    for (const auto& f : s.succ)
        for (const auto& v : free_vars(f)) need.insert(v);
    std::vector<std::string> work(need.begin(), need.end());
    while (!work.empty()) {
        std::string x = work.back();
        work.pop_back();
        auto it = bounds.find(x);
        if (it == bounds.end()) {
            out.reason = "variable " + x + " is not bounded";
            return out;
        }
        const IntervalMatch& m = it->second.front();
        VarSet deps = free_vars(m.lo);
        collect_vars(m.hi, deps);
        for (const auto& d : deps)
            if (need.insert(d).second) work.push_back(d);
    }
    // dependency order; the first bound of each variable defines its box
    std::vector<std::string> order;
    std::set<std::string> done, visiting;
    std::function<bool(const std::string&)> visit = [&](const std::string& x) -> bool {
        if (done.count(x)) return true;
        if (!visiting.insert(x).second) return false;
        const IntervalMatch& m = bounds.at(x).front();
        VarSet deps = free_vars(m.lo);
        collect_vars(m.hi, deps);
        for (const auto& d : deps)
            if (!visit(d)) return false;
        visiting.erase(x);
        done.insert(x);
        order.push_back(x);
        return true;
    };
    for (const auto& x : need)
        if (!visit(x)) {
            out.reason = "cyclic interval bounds";
            return out;
        }

    std::vector<FormulaPtr> ante;
    std::vector<FormulaPtr> succ = s.succ;
    std::map<std::string, TermPtr> subst;
    auto apply = [&](const TermPtr& t) {
        TermPtr r = t;
        for (const auto& [x, v] : out.eliminated) r = term_subst(r, x, v);
        return r;
    };
    for (const auto& x : order) {
        const IntervalMatch& m = bounds.at(x).front();
        TermPtr lo = apply(m.lo), hi = apply(m.hi);
        if (equal(m.lo, m.hi)) {
            out.eliminated.push_back({x, lo});
            continue;
        }
        RatInterval l = interval_eval(lo, out.box), h = interval_eval(hi, out.box);
        if (h.hi < l.lo) {
            out.reason = "bounds of " + x + " are inconsistent";
            return out;
        }
        out.box[x] = RatInterval(l.lo, h.hi);
    }
    auto subst_formula = [&](FormulaPtr f) {
        for (const auto& [x, v] : out.eliminated) {
            std::function<FormulaPtr(const FormulaPtr&)> go = [&](const FormulaPtr& g) -> FormulaPtr {
                switch (g->kind) {
                    case FormulaKind::Gt: return gt(term_subst(g->lhs_term, x, v), term_subst(g->rhs_term, x, v));
                    case FormulaKind::Geq: return geq(term_subst(g->lhs_term, x, v), term_subst(g->rhs_term, x, v));
                    case FormulaKind::And: return land(go(g->left), go(g->right));
                    case FormulaKind::Or: return lor(go(g->left), go(g->right));
                    default: return g;
                }
            };
            f = go(f);
        }
        return f;
    };
    // interval constraints of boxed variables, plus other constraints fully inside the closure
    for (const auto& x : order) {
        bool eliminated = false;
        for (const auto& e : out.eliminated) eliminated |= e.first == x;
        for (const auto& m : bounds.at(x)) {
            if (eliminated && &m == &bounds.at(x).front()) continue;
            ante.push_back(subst_formula(in_interval(x, m.lo, m.hi)));
        }
    }
    for (const auto& f : others) {
        VarSet fv = free_vars(f);
        if (std::all_of(fv.begin(), fv.end(), [&](const std::string& v) { return need.count(v) > 0; }))
            ante.push_back(subst_formula(f));
    }
    for (auto& f : succ) f = subst_formula(f);
    // a constraint may become a closed constant after substitution; keep it, it evaluates exactly
    out.reduced = Sequent(ante, succ);
    out.ok = true;
    return out;
}

DecideResult decide_sequent(const Sequent& s, OracleBudget budget) {
    OracleProblem p = prepare(s);
    if (!p.ok) {
        DecideResult r;
        r.note = p.reason;
        return r;
    }
    DecideResult r = decide(p.reduced, p.box, budget);
    if (r.verdict == OracleVerdict::Counterexample) {
        for (const auto& [x, v] : p.eliminated) {
            Box pb;
            for (const auto& [y, q] : r.point) pb[y] = RatInterval(q);
            r.point[x] = interval_eval(v, pb).lo;
        }
        // variables dropped as irrelevant sit at their lower bound; the point
        // must then refute the original sequent, not just the reduced one
        for (bool grew = true; grew;) {
            grew = false;
            for (const auto& f : s.ante) {
                auto m = is_quantifier_free_basic(*f) ? match_interval(f) : std::nullopt;
                if (!m || r.point.count(m->var)) continue;
                VarSet deps = free_vars(m->lo);
                if (!std::all_of(deps.begin(), deps.end(), [&](const std::string& v) { return r.point.count(v) > 0; }))
                    continue;
                Box pb;
                for (const auto& [y, q] : r.point) pb[y] = RatInterval(q);
                r.point[m->var] = interval_eval(m->lo, pb).lo;
                grew = true;
            }
        }
        bool refutes = true;
        try {
            for (const auto& f : s.ante)
                if (is_quantifier_free_basic(*f)) refutes = refutes && eval_exact(f, r.point);
            for (const auto& f : s.succ) refutes = refutes && !eval_exact(f, r.point);
        } catch (const std::exception&) {
            refutes = false;
        }
        if (!refutes) {
            r.verdict = OracleVerdict::Unknown;
            r.note = "counterexample to the reduced sequent does not extend";
            r.point.clear();
        }
    }
    return r;
}

bool replay_sequent(const TreePtr& tree, const Sequent& s) {
    OracleProblem p = prepare(s);
    if (!p.ok) return false;
    return replay(tree, p.reduced, p.box);
}

bool eval_exact(const FormulaPtr& f, const Point& p) { return Compiled::from(f)->eval(p); }

// ---- witnesses ----

std::vector<Rational> witness_round(int d) {
    if (d <= 0) return {Rational(0)};
    auto round_set = [](int r) {
        std::vector<Rational> v;
        if (r <= 0) return std::vector<Rational>{Rational(0)};
        for (int j = 0; j <= r / 4; ++j)
            for (int ae = 0; ae <= r; ++ae)
                for (int es : {1, -1}) {
                    if (ae == 0 && es < 0) continue;
                    int e = es * ae;
                    for (int sign : {1, -1})
                        for (long k = 0; k < (1L << j); ++k) {
                            Rational m = Rational(1) + Rational(k, 1L << j);
                            v.push_back(Rational(sign) * pow2(e) * m);
                        }
                }
        return v;
    };
    std::set<Rational> seen;
    for (const auto& q : round_set(d - 1)) seen.insert(q);
    // values from rounds before d-1 are contained in round d-1's set (monotone grid)
    std::vector<Rational> out;
    for (const auto& q : round_set(d))
        if (seen.insert(q).second) out.push_back(q);
    return out;
}

std::optional<Rational> find_rational_witness(const FormulaPtr& body, const std::string& x, const Box& context,
                                              int max_round, OracleBudget budget) {
    for (int d = 0; d <= max_round; ++d)
        for (const auto& q : witness_round(d)) {
            std::function<FormulaPtr(const FormulaPtr&)> go = [&](const FormulaPtr& g) -> FormulaPtr {
                switch (g->kind) {
                    case FormulaKind::Gt: return gt(term_subst(g->lhs_term, x, cst(q)), term_subst(g->rhs_term, x, cst(q)));
                    case FormulaKind::Geq:
                        return geq(term_subst(g->lhs_term, x, cst(q)), term_subst(g->rhs_term, x, cst(q)));
                    case FormulaKind::And: return land(go(g->left), go(g->right));
                    case FormulaKind::Or: return lor(go(g->left), go(g->right));
                    default: throw PreconditionViolation("witness body must be quantifier-free");
                }
            };
            auto r = decide(Sequent({}, {go(body)}), context, budget);
            if (r.verdict == OracleVerdict::Valid) return q;
        }
    return std::nullopt;
}

}  // namespace rdl
