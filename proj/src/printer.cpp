#include "rdl/syntax.hpp"

namespace rdl {

namespace {

// Term levels: 0 sum, 1 product, 2 unary operand.
std::string term_str(const TermPtr& t, int level) {
    switch (t->kind) {
        case TermKind::Var: return t->name;
        case TermKind::Const: return t->value.str();
        case TermKind::Add: {
            std::string s;
            if (t->rhs->kind == TermKind::Mul && is_const(t->rhs->lhs, -1))
                s = term_str(t->lhs, 0) + " - " + term_str(t->rhs->rhs, 1);
            else
                s = term_str(t->lhs, 0) + " + " + term_str(t->rhs, 1);
            return level > 0 ? "(" + s + ")" : s;
        }
        case TermKind::Mul: {
            std::string s = term_str(t->lhs, 1) + "*" + term_str(t->rhs, 2);
            return level > 1 ? "(" + s + ")" : s;
        }
    }
    return "?";
}

std::string program_str(const ProgramPtr& p, int level);

std::string interval_str(const TermPtr& lo, const TermPtr& hi, bool closed) {
    return std::string(closed ? "[" : "(") + term_str(lo, 0) + ", " + term_str(hi, 0) + (closed ? "]" : ")");
}

// Formula levels: 0 disjunction, 1 conjunction, 2 unary.
std::string formula_str(const FormulaPtr& f, int level) {
    if (is_top(f)) return "true";
    if (is_bottom(f)) return "false";
    switch (f->kind) {
        case FormulaKind::Gt: return term_str(f->lhs_term, 0) + " > " + term_str(f->rhs_term, 0);
        case FormulaKind::Geq: return term_str(f->lhs_term, 0) + " >= " + term_str(f->rhs_term, 0);
        case FormulaKind::And: {
            const auto& a = f->left;
            const auto& b = f->right;
            if (a->kind == FormulaKind::Geq && b->kind == FormulaKind::Geq && equal(a->lhs_term, b->rhs_term) &&
                equal(a->rhs_term, b->lhs_term))
                return term_str(a->lhs_term, 0) + " = " + term_str(a->rhs_term, 0);
            std::string s = formula_str(a, 1) + " & " + formula_str(b, 2);
            return level > 1 ? "(" + s + ")" : s;
        }
        case FormulaKind::Or: {
            std::string s = formula_str(f->left, 0) + " | " + formula_str(f->right, 1);
            return level > 0 ? "(" + s + ")" : s;
        }
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            if (auto m = match_bounded(f)) {
                bool closed = m->kind == BoundedKind::ForallClosed || m->kind == BoundedKind::ExistsClosed;
                bool ex = m->kind == BoundedKind::ExistsClosed || m->kind == BoundedKind::ExistsOpen;
                return std::string(ex ? "\\exists " : "\\forall ") + m->var + " in " +
                       interval_str(m->lo, m->hi, closed) + " . " + formula_str(m->body, 2);
            }
            return std::string(f->kind == FormulaKind::Exists ? "\\exists " : "\\forall ") + f->var + " . " +
                   formula_str(f->left, 2);
        }
        case FormulaKind::Diamond: return "<" + program_str(f->program, 0) + "> " + formula_str(f->left, 2);
        case FormulaKind::Box: return "[" + program_str(f->program, 0) + "] " + formula_str(f->left, 2);
    }
    return "?";
}

// Program levels: 0 choice, 1 sequence, 2 atomic.
std::string program_str(const ProgramPtr& p, int level) {
    switch (p->kind) {
        case ProgramKind::Assign: return p->var + " := " + term_str(p->term, 0);
        case ProgramKind::Test: return "?" + formula_str(p->formula, 2);
        case ProgramKind::Choice: {
            std::string s = program_str(p->left, 0) + " ++ " + program_str(p->right, 1);
            return level > 0 ? "{" + s + "}" : s;
        }
        case ProgramKind::Seq: {
            std::string s = program_str(p->left, 2) + "; " + program_str(p->right, 1);
            return level > 1 ? "{" + s + "}" : s;
        }
        case ProgramKind::Star: return "{" + program_str(p->left, 0) + "}*";
        case ProgramKind::Ode: {
            std::string s = "{";
            for (std::size_t i = 0; i < p->ode.size(); ++i)
                s += (i ? ", " : "") + p->ode[i].var + "' = " + term_str(p->ode[i].rhs, 0);
            if (!is_top(p->formula)) s += " & " + formula_str(p->formula, 0);
            return s + "}";
        }
    }
    return "?";
}

}  // namespace

std::string pretty(const TermPtr& t) { return term_str(t, 0); }
std::string pretty(const FormulaPtr& f) { return formula_str(f, 0); }
std::string pretty(const ProgramPtr& p) { return program_str(p, 0); }

}  // namespace rdl
