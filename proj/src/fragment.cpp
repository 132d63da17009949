#include "rdl/fragment.hpp"

#include "rdl/syntax.hpp"

namespace rdl {

std::string path_str(const Path& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + "]";
}

const char* to_string(FormulaClass c) {
    switch (c) {
        case FormulaClass::Strict: return "Strict";
        case FormulaClass::Weak: return "Weak";
        case FormulaClass::Neither: return "Neither";
    }
    return "?";
}

const char* to_string(BlameReason r) {
    switch (r) {
        case BlameReason::WrongPolarityAtom: return "WrongPolarityAtom";
        case BlameReason::UnboundedForall: return "UnboundedForall";
        case BlameReason::UnboundedExists: return "UnboundedExists";
        case BlameReason::LoopInApproximate: return "LoopInApproximate";
        case BlameReason::UnboundedEvolutionDomain: return "UnboundedEvolutionDomain";
        case BlameReason::EqualityInExactTest: return "EqualityInExactTest";
    }
    return "?";
}

namespace {

Path child(const Path& p, int i) {
    Path q = p;
    q.push_back(i);
    return q;
}

bool is_equality(const FormulaPtr& f) {
    return f->kind == FormulaKind::And && f->left->kind == FormulaKind::Geq && f->right->kind == FormulaKind::Geq &&
           equal(f->left->lhs_term, f->right->rhs_term) && equal(f->left->rhs_term, f->right->lhs_term);
}

// rdL grammar.  `strict` selects phi+ (true) or phi- (false).
struct Classifier {
    std::vector<Blame> blames;

    bool formula(const FormulaPtr& f, bool strict, const Path& at) {
        switch (f->kind) {
            case FormulaKind::Gt:
            case FormulaKind::Geq:
                if ((f->kind == FormulaKind::Gt) == strict) return true;
                blames.push_back({at, BlameReason::WrongPolarityAtom});
                return false;
            case FormulaKind::Or:
            case FormulaKind::And: {
                bool a = formula(f->left, strict, child(at, 0));
                bool b = formula(f->right, strict, child(at, 1));
                return a && b;
            }
            case FormulaKind::Exists:
            case FormulaKind::Forall: return formula(f->left, strict, child(at, 0));
            case FormulaKind::Diamond:
            case FormulaKind::Box: {
                // strict: <exact> and [approximate]; weak: the other way round
                bool want_exact = (f->kind == FormulaKind::Diamond) == strict;
                bool a = program(f->program, want_exact, child(at, 0));
                bool b = formula(f->left, strict, child(at, 1));
                return a && b;
            }
        }
        return false;
    }

    bool program(const ProgramPtr& p, bool exact, const Path& at) {
        switch (p->kind) {
            case ProgramKind::Assign: return true;
            case ProgramKind::Test:
                if (exact && is_equality(p->formula)) {
                    blames.push_back({child(at, 0), BlameReason::EqualityInExactTest});
                    return false;
                }
                return formula(p->formula, exact, child(at, 0));
            case ProgramKind::Choice:
            case ProgramKind::Seq: {
                bool a = program(p->left, exact, child(at, 0));
                bool b = program(p->right, exact, child(at, 1));
                return a && b;
            }
            case ProgramKind::Star: return program(p->left, exact, child(at, 0));
            case ProgramKind::Ode: return formula(p->formula, exact, child(at, 0));
        }
        return false;
    }
};

}  // namespace

FormulaClassification classify_formula(const FormulaPtr& f) {
    Classifier s, w;
    bool strict = s.formula(f, true, {});
    bool weak = w.formula(f, false, {});
    if (strict) return {FormulaClass::Strict, {}};
    if (weak) return {FormulaClass::Weak, {}};
    return {FormulaClass::Neither, s.blames.size() <= w.blames.size() ? s.blames : w.blames};
}

ProgramClassification classify_program(const ProgramPtr& p) {
    Classifier e, a;
    bool exact = e.program(p, true, {});
    bool approx = a.program(p, false, {});
    ProgramClassification out{exact, approx, {}};
    if (!exact) out.blames = e.blames;
    else if (!approx) out.blames = a.blames;
    return out;
}

std::optional<NormDomain> match_norm_domain(const ProgramPtr& p) {
    if (p->kind != ProgramKind::Ode || p->formula->kind != FormulaKind::And) return std::nullopt;
    auto m = match_norm(p->formula->right, Strictness::Weak);
    if (!m) return std::nullopt;
    VarSet ode_vars, norm_vars(m->first.begin(), m->first.end());
    for (const auto& pr : p->ode) ode_vars.insert(pr.var);
    ode_vars.insert(kClock);
    if (norm_vars != ode_vars) return std::nullopt;
    for (const auto& v : free_vars(m->second))
        if (ode_vars.count(v)) return std::nullopt;
    return NormDomain{p->formula->left, m->second};
}

namespace {

// rrdL grammar.  strict = phi+ side.
struct Reach {
    FragmentOptions opts;
    std::vector<Blame> blames;

    bool formula(const FormulaPtr& f, bool strict, const Path& at) {
        switch (f->kind) {
            case FormulaKind::Gt:
            case FormulaKind::Geq:
                if ((f->kind == FormulaKind::Gt) == strict) return true;
                blames.push_back({at, BlameReason::WrongPolarityAtom});
                return false;
            case FormulaKind::Or:
            case FormulaKind::And: {
                bool a = formula(f->left, strict, child(at, 0));
                bool b = formula(f->right, strict, child(at, 1));
                return a && b;
            }
            case FormulaKind::Exists:
                if (strict) return formula(f->left, strict, child(at, 0));
                if (auto m = match_bounded(f); m && m->kind == BoundedKind::ExistsClosed)
                    return formula(m->body, strict, child(child(at, 0), 1));
                blames.push_back({at, BlameReason::UnboundedExists});
                return false;
            case FormulaKind::Forall:
                if (!strict) return formula(f->left, strict, child(at, 0));
                if (auto m = match_bounded(f); m && m->kind == BoundedKind::ForallClosed)
                    return formula(m->body, strict, child(child(at, 0), 1));
                blames.push_back({at, BlameReason::UnboundedForall});
                return false;
            case FormulaKind::Diamond:
            case FormulaKind::Box: {
                bool want_exact = (f->kind == FormulaKind::Diamond) == strict;
                bool a = want_exact ? exact(f->program, child(at, 0)) : approximate(f->program, child(at, 0));
                bool b = formula(f->left, strict, child(at, 1));
                return a && b;
            }
        }
        return false;
    }

    bool exact(const ProgramPtr& p, const Path& at) {
        switch (p->kind) {
            case ProgramKind::Assign: return true;
            case ProgramKind::Test:
                if (is_equality(p->formula)) {
                    blames.push_back({child(at, 0), BlameReason::EqualityInExactTest});
                    return false;
                }
                return formula(p->formula, true, child(at, 0));
            case ProgramKind::Choice:
            case ProgramKind::Seq: {
                bool a = exact(p->left, child(at, 0));
                bool b = exact(p->right, child(at, 1));
                return a && b;
            }
            case ProgramKind::Star: return exact(p->left, child(at, 0));
            case ProgramKind::Ode: return formula(p->formula, true, child(at, 0));
        }
        return false;
    }

    bool approximate(const ProgramPtr& p, const Path& at) {
        switch (p->kind) {
            case ProgramKind::Assign: return true;
            case ProgramKind::Test: return formula(p->formula, false, child(at, 0));
            case ProgramKind::Choice:
            case ProgramKind::Seq: {
                bool a = approximate(p->left, child(at, 0));
                bool b = approximate(p->right, child(at, 1));
                return a && b;
            }
            case ProgramKind::Star:
                blames.push_back({at, BlameReason::LoopInApproximate});
                return false;
            case ProgramKind::Ode: {
                if (auto nd = match_norm_domain(p)) return formula(nd->psi, false, child(child(at, 0), 0));
                if (opts.allow_time_bound && p->formula->kind == FormulaKind::And) {
                    const auto& r = p->formula->right;
                    if (r->kind == FormulaKind::Geq && r->rhs_term->kind == TermKind::Var &&
                        r->rhs_term->name == kClock && !free_vars(r->lhs_term).count(kClock))
                        return formula(p->formula->left, false, child(child(at, 0), 0));
                }
                blames.push_back({child(at, 0), BlameReason::UnboundedEvolutionDomain});
                return false;
            }
        }
        return false;
    }
};

}  // namespace

FragmentResult in_rrdl(const FormulaPtr& f, Side side, FragmentOptions opts) {
    Reach r{opts, {}};
    bool ok = r.formula(f, side == Side::Strict, {});
    return {ok, r.blames};
}

}  // namespace rdl
