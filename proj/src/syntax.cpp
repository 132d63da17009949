#include "rdl/syntax.hpp"

#include <algorithm>

namespace rdl {

FormulaPtr negate(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::Gt: return geq(f->rhs_term, f->lhs_term);
        case FormulaKind::Geq: return gt(f->rhs_term, f->lhs_term);
        case FormulaKind::Or: return land(negate(f->left), negate(f->right));
        case FormulaKind::And: return lor(negate(f->left), negate(f->right));
        case FormulaKind::Exists: return forall(f->var, negate(f->left));
        case FormulaKind::Forall: return exists(f->var, negate(f->left));
        case FormulaKind::Diamond: return box(f->program, negate(f->left));
        case FormulaKind::Box: return diamond(f->program, negate(f->left));
    }
    return f;
}

// ---- variables ----

void collect_vars(const TermPtr& t, VarSet& out) {
    switch (t->kind) {
        case TermKind::Var: out.insert(t->name); break;
        case TermKind::Const: break;
        default:
            collect_vars(t->lhs, out);
            collect_vars(t->rhs, out);
    }
}

VarSet free_vars(const TermPtr& t) {
    VarSet s;
    collect_vars(t, s);
    return s;
}

VarSet must_bound_vars(const ProgramPtr& p) {
    switch (p->kind) {
        case ProgramKind::Assign: return {p->var};
        case ProgramKind::Test: return {};
        case ProgramKind::Choice: {
            VarSet a = must_bound_vars(p->left), b = must_bound_vars(p->right), out;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
            return out;
        }
        case ProgramKind::Seq: {
            VarSet a = must_bound_vars(p->left), b = must_bound_vars(p->right);
            a.insert(b.begin(), b.end());
            return a;
        }
        case ProgramKind::Star: return {};
        case ProgramKind::Ode: {
            VarSet s;
            for (const auto& pr : p->ode) s.insert(pr.var);
            return s;
        }
    }
    return {};
}

static void minus_into(VarSet& out, const VarSet& a, const VarSet& remove) {
    for (const auto& v : a)
        if (!remove.count(v)) out.insert(v);
}

VarSet free_vars(const ProgramPtr& p) {
    switch (p->kind) {
        case ProgramKind::Assign: return free_vars(p->term);
        case ProgramKind::Test: return free_vars(p->formula);
        case ProgramKind::Choice: {
            VarSet a = free_vars(p->left), b = free_vars(p->right);
            a.insert(b.begin(), b.end());
            return a;
        }
        case ProgramKind::Seq: {
            VarSet a = free_vars(p->left);
            minus_into(a, free_vars(p->right), must_bound_vars(p->left));
            return a;
        }
        case ProgramKind::Star: return free_vars(p->left);
        case ProgramKind::Ode: {
            VarSet s = free_vars(p->formula);
            for (const auto& pr : p->ode) {
                s.insert(pr.var);
                collect_vars(pr.rhs, s);
            }
            return s;
        }
    }
    return {};
}

VarSet free_vars(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::Gt:
        case FormulaKind::Geq: {
            VarSet s;
            collect_vars(f->lhs_term, s);
            collect_vars(f->rhs_term, s);
            return s;
        }
        case FormulaKind::Or:
        case FormulaKind::And: {
            VarSet a = free_vars(f->left), b = free_vars(f->right);
            a.insert(b.begin(), b.end());
            return a;
        }
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            VarSet s = free_vars(f->left);
            s.erase(f->var);
            return s;
        }
        case FormulaKind::Diamond:
        case FormulaKind::Box: {
            VarSet s = free_vars(f->program);
            minus_into(s, free_vars(f->left), must_bound_vars(f->program));
            return s;
        }
    }
    return {};
}

static void all_vars_into(const FormulaPtr& f, VarSet& out);

static void all_vars_into(const ProgramPtr& p, VarSet& out) {
    switch (p->kind) {
        case ProgramKind::Assign:
            out.insert(p->var);
            collect_vars(p->term, out);
            break;
        case ProgramKind::Test: all_vars_into(p->formula, out); break;
        case ProgramKind::Choice:
        case ProgramKind::Seq:
            all_vars_into(p->left, out);
            all_vars_into(p->right, out);
            break;
        case ProgramKind::Star: all_vars_into(p->left, out); break;
        case ProgramKind::Ode:
            for (const auto& pr : p->ode) {
                out.insert(pr.var);
                collect_vars(pr.rhs, out);
            }
            all_vars_into(p->formula, out);
            break;
    }
}

static void all_vars_into(const FormulaPtr& f, VarSet& out) {
    switch (f->kind) {
        case FormulaKind::Gt:
        case FormulaKind::Geq:
            collect_vars(f->lhs_term, out);
            collect_vars(f->rhs_term, out);
            break;
        case FormulaKind::Or:
        case FormulaKind::And:
            all_vars_into(f->left, out);
            all_vars_into(f->right, out);
            break;
        case FormulaKind::Exists:
        case FormulaKind::Forall:
            out.insert(f->var);
            all_vars_into(f->left, out);
            break;
        case FormulaKind::Diamond:
        case FormulaKind::Box:
            all_vars_into(f->program, out);
            all_vars_into(f->left, out);
            break;
    }
}

VarSet all_vars(const FormulaPtr& f) {
    VarSet s;
    all_vars_into(f, s);
    return s;
}

VarSet all_vars(const ProgramPtr& p) {
    VarSet s;
    all_vars_into(p, s);
    return s;
}

// ---- renaming and substitution ----

namespace {

TermPtr ren(const TermPtr& t, const std::string& a, const std::string& b) {
    switch (t->kind) {
        case TermKind::Var: return t->name == a ? var(b) : t;
        case TermKind::Const: return t;
        case TermKind::Add: return add(ren(t->lhs, a, b), ren(t->rhs, a, b));
        case TermKind::Mul: return mul(ren(t->lhs, a, b), ren(t->rhs, a, b));
    }
    return t;
}

FormulaPtr ren(const FormulaPtr& f, const std::string& a, const std::string& b);

ProgramPtr ren(const ProgramPtr& p, const std::string& a, const std::string& b) {
    switch (p->kind) {
        case ProgramKind::Assign: return assign(p->var == a ? b : p->var, ren(p->term, a, b));
        case ProgramKind::Test: return test(ren(p->formula, a, b));
        case ProgramKind::Choice: return choice(ren(p->left, a, b), ren(p->right, a, b));
        case ProgramKind::Seq: return seq(ren(p->left, a, b), ren(p->right, a, b));
        case ProgramKind::Star: return star(ren(p->left, a, b));
        case ProgramKind::Ode: {
            std::vector<OdePair> sys;
            for (const auto& pr : p->ode) sys.push_back({pr.var == a ? b : pr.var, ren(pr.rhs, a, b)});
            return ode(std::move(sys), ren(p->formula, a, b));
        }
    }
    return p;
}

FormulaPtr ren(const FormulaPtr& f, const std::string& a, const std::string& b) {
    switch (f->kind) {
        case FormulaKind::Gt: return gt(ren(f->lhs_term, a, b), ren(f->rhs_term, a, b));
        case FormulaKind::Geq: return geq(ren(f->lhs_term, a, b), ren(f->rhs_term, a, b));
        case FormulaKind::Or: return lor(ren(f->left, a, b), ren(f->right, a, b));
        case FormulaKind::And: return land(ren(f->left, a, b), ren(f->right, a, b));
        case FormulaKind::Exists: return exists(f->var == a ? b : f->var, ren(f->left, a, b));
        case FormulaKind::Forall: return forall(f->var == a ? b : f->var, ren(f->left, a, b));
        case FormulaKind::Diamond: return diamond(ren(f->program, a, b), ren(f->left, a, b));
        case FormulaKind::Box: return box(ren(f->program, a, b), ren(f->left, a, b));
    }
    return f;
}

}  // namespace

FormulaPtr rename(const FormulaPtr& f, const std::string& old_name, const std::string& fresh) {
    if (old_name == fresh) return f;
    VarSet vs = all_vars(f);
    if (vs.count(fresh)) throw FreshnessViolation("variable " + fresh + " already occurs");
    if (!vs.count(old_name)) return f;
    return ren(f, old_name, fresh);
}

ProgramPtr rename(const ProgramPtr& p, const std::string& old_name, const std::string& fresh) {
    if (old_name == fresh) return p;
    VarSet vs = all_vars(p);
    if (vs.count(fresh)) throw FreshnessViolation("variable " + fresh + " already occurs");
    if (!vs.count(old_name)) return p;
    return ren(p, old_name, fresh);
}

TermPtr rename(const TermPtr& t, const std::string& old_name, const std::string& fresh) {
    if (old_name == fresh) return t;
    VarSet vs = free_vars(t);
    if (vs.count(fresh)) throw FreshnessViolation("variable " + fresh + " already occurs");
    return ren(t, old_name, fresh);
}

TermPtr term_subst(const TermPtr& v, const std::string& x, const TermPtr& r) {
    switch (v->kind) {
        case TermKind::Var: return v->name == x ? r : v;
        case TermKind::Const: return v;
        case TermKind::Add: return add(term_subst(v->lhs, x, r), term_subst(v->rhs, x, r));
        case TermKind::Mul: return mul(term_subst(v->lhs, x, r), term_subst(v->rhs, x, r));
    }
    return v;
}

std::string fresh_name(const VarSet& used, const std::string& prefix) {
    for (int i = 0;; ++i) {
        std::string n = prefix + std::to_string(i);
        if (!used.count(n)) return n;
    }
}

FormulaPtr safe_subst(const FormulaPtr& f, const std::string& x, const TermPtr& v, std::optional<std::string> z) {
    std::string zn;
    if (z) {
        zn = *z;
    } else {
        VarSet used = all_vars(f);
        collect_vars(v, used);
        used.insert(x);
        zn = fresh_name(used);
    }
    TermPtr vz = term_subst(v, x, var(zn));
    TermPtr xt = var(x), zt = var(zn);
    FormulaPtr inner = forall(x, lor(negate(eq(xt, vz)), f));
    return forall(zn, lor(negate(eq(zt, xt)), inner));
}

// ---- abbreviations ----

static TermPtr negated_bound(const TermPtr& w) {
    if (w->kind == TermKind::Const) return cst(-w->value);
    return mul(cst(-1), w);
}

FormulaPtr desugar_norm(const std::vector<TermPtr>& vs, const TermPtr& w, Strictness s) {
    std::vector<FormulaPtr> parts;
    TermPtr nw = negated_bound(w);
    for (const auto& v : vs) {
        if (s == Strictness::Strict)
            parts.push_back(land(gt(v, nw), gt(w, v)));
        else
            parts.push_back(land(geq(v, nw), geq(w, v)));
    }
    return conj(parts);
}

std::optional<std::pair<std::vector<std::string>, TermPtr>> match_norm(const FormulaPtr& f, Strictness s) {
    FormulaKind ck = s == Strictness::Strict ? FormulaKind::Gt : FormulaKind::Geq;
    // Unfold the left-nested conjunction from the right; each component is
    // And(cmp(v, -w), cmp(w, v)), so we peel while the right conjunct fits.
    std::vector<std::string> vars;
    TermPtr w;
    auto component = [&](const FormulaPtr& c) -> bool {
        if (c->kind != FormulaKind::And) return false;
        const auto& a = c->left;
        const auto& b = c->right;
        if (a->kind != ck || b->kind != ck) return false;
        if (a->lhs_term->kind != TermKind::Var || !equal(a->lhs_term, b->rhs_term)) return false;
        if (!equal(a->rhs_term, negated_bound(b->lhs_term))) return false;
        if (w && !equal(w, b->lhs_term)) return false;
        w = b->lhs_term;
        vars.push_back(a->lhs_term->name);
        return true;
    };
    FormulaPtr cur = f;
    while (true) {
        if (component(cur)) break;
        if (cur->kind == FormulaKind::And && component(cur->right)) {
            cur = cur->left;
            continue;
        }
        return std::nullopt;
    }
    std::reverse(vars.begin(), vars.end());
    VarSet seen;
    for (const auto& v : vars)
        if (!seen.insert(v).second) return std::nullopt;
    return std::make_pair(vars, w);
}

FormulaPtr in_interval(const std::string& x, const TermPtr& lo, const TermPtr& hi) {
    return land(geq(var(x), lo), geq(hi, var(x)));
}

std::optional<IntervalMatch> match_interval(const FormulaPtr& f) {
    if (f->kind != FormulaKind::And) return std::nullopt;
    const auto& a = f->left;
    const auto& b = f->right;
    if (a->kind != FormulaKind::Geq || b->kind != FormulaKind::Geq) return std::nullopt;
    if (a->lhs_term->kind != TermKind::Var || !equal(a->lhs_term, b->rhs_term)) return std::nullopt;
    const std::string& x = a->lhs_term->name;
    if (free_vars(a->rhs_term).count(x) || free_vars(b->lhs_term).count(x)) return std::nullopt;
    return IntervalMatch{x, a->rhs_term, b->lhs_term};
}

FormulaPtr desugar_bounded_quantifier(BoundedKind kind, const std::string& x, const TermPtr& lo, const TermPtr& hi,
                                      const FormulaPtr& body) {
    if (free_vars(lo).count(x) || free_vars(hi).count(x))
        throw BoundMentionsVar("bound of " + x + " mentions " + x);
    TermPtr xt = var(x);
    switch (kind) {
        case BoundedKind::ForallClosed: return forall(x, lor(lor(gt(lo, xt), gt(xt, hi)), body));
        case BoundedKind::ExistsClosed: return exists(x, land(land(geq(xt, lo), geq(hi, xt)), body));
        case BoundedKind::ExistsOpen: return exists(x, land(land(gt(xt, lo), gt(hi, xt)), body));
        case BoundedKind::ForallOpen: return forall(x, lor(lor(geq(lo, xt), geq(xt, hi)), body));
    }
    return body;
}

std::optional<BoundedMatch> match_bounded(const FormulaPtr& f) {
    if (f->kind != FormulaKind::Exists && f->kind != FormulaKind::Forall) return std::nullopt;
    const std::string& x = f->var;
    const FormulaPtr& inner = f->left;
    bool is_forall = f->kind == FormulaKind::Forall;
    if (inner->kind != (is_forall ? FormulaKind::Or : FormulaKind::And)) return std::nullopt;
    const FormulaPtr& guard = inner->left;
    if (guard->kind != inner->kind) return std::nullopt;
    const FormulaPtr& a = guard->left;
    const FormulaPtr& b = guard->right;
    if (a->kind != b->kind || (a->kind != FormulaKind::Gt && a->kind != FormulaKind::Geq)) return std::nullopt;
    TermPtr lo, hi;
    if (is_forall) {
        // lo > x | x > hi  (closed)   or  lo >= x | x >= hi  (open)
        if (a->rhs_term->kind != TermKind::Var || a->rhs_term->name != x) return std::nullopt;
        if (b->lhs_term->kind != TermKind::Var || b->lhs_term->name != x) return std::nullopt;
        lo = a->lhs_term;
        hi = b->rhs_term;
    } else {
        // x >= lo & hi >= x  (closed)  or  x > lo & hi > x  (open)
        if (a->lhs_term->kind != TermKind::Var || a->lhs_term->name != x) return std::nullopt;
        if (b->rhs_term->kind != TermKind::Var || b->rhs_term->name != x) return std::nullopt;
        lo = a->rhs_term;
        hi = b->lhs_term;
    }
    if (free_vars(lo).count(x) || free_vars(hi).count(x)) return std::nullopt;
    BoundedKind k;
    if (is_forall)
        k = a->kind == FormulaKind::Gt ? BoundedKind::ForallClosed : BoundedKind::ForallOpen;
    else
        k = a->kind == FormulaKind::Geq ? BoundedKind::ExistsClosed : BoundedKind::ExistsOpen;
    return BoundedMatch{k, x, lo, hi, inner->right};
}

ProgramPtr iterate_upto(const ProgramPtr& a, int n) {
    if (n <= 0) return test(top());
    // Build alpha^1 .. alpha^n, then fold the choice from the right.
    std::vector<ProgramPtr> powers;
    ProgramPtr cur = a;
    powers.push_back(cur);
    for (int i = 2; i <= n; ++i) {
        cur = seq(a, cur);
        powers.push_back(cur);
    }
    ProgramPtr acc = powers.back();
    for (int i = n - 2; i >= 0; --i) acc = choice(powers[i], acc);
    return choice(test(top()), acc);
}

// ---- clock ----

ProgramPtr normalize_clock(const ProgramPtr& p) {
    switch (p->kind) {
        case ProgramKind::Assign: return p;
        case ProgramKind::Test: return test(normalize_clock(p->formula));
        case ProgramKind::Choice: return choice(normalize_clock(p->left), normalize_clock(p->right));
        case ProgramKind::Seq: return seq(normalize_clock(p->left), normalize_clock(p->right));
        case ProgramKind::Star: return star(normalize_clock(p->left));
        case ProgramKind::Ode: {
            std::vector<OdePair> sys = p->ode;
            bool has = false;
            for (const auto& pr : sys) {
                if (pr.var != kClock) continue;
                if (!is_const(pr.rhs, 1)) throw ClockMisuse("clock " + std::string(kClock) + " must have rate 1");
                has = true;
            }
            if (!has) sys.push_back({kClock, cst(1)});
            return ode(std::move(sys), normalize_clock(p->formula));
        }
    }
    return p;
}

FormulaPtr normalize_clock(const FormulaPtr& f) {
    switch (f->kind) {
        case FormulaKind::Gt:
        case FormulaKind::Geq: return f;
        case FormulaKind::Or: return lor(normalize_clock(f->left), normalize_clock(f->right));
        case FormulaKind::And: return land(normalize_clock(f->left), normalize_clock(f->right));
        case FormulaKind::Exists: return exists(f->var, normalize_clock(f->left));
        case FormulaKind::Forall: return forall(f->var, normalize_clock(f->left));
        case FormulaKind::Diamond: return diamond(normalize_clock(f->program), normalize_clock(f->left));
        case FormulaKind::Box: return box(normalize_clock(f->program), normalize_clock(f->left));
    }
    return f;
}

}  // namespace rdl
