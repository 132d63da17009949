#include "rdl/rank.hpp"

namespace rdl {

namespace {

Ordinal rank_f(const FormulaPtr& f, RankScheme s);

// w * a: left multiplication shifts every exponent up by one.
Ordinal omega_times(const Ordinal& a) {
    std::vector<Ordinal::Term> t = a.terms();
    for (auto& [e, c] : t) ++e;
    return Ordinal::from_terms(std::move(t));
}

Ordinal rank_p(const ProgramPtr& p, RankScheme s) {
    bool lit = s == RankScheme::Literal;
    switch (p->kind) {
        case ProgramKind::Assign: return lit ? 4 : 5;
        case ProgramKind::Test: return rank_f(p->formula, s) + 1;
        case ProgramKind::Choice: return rank_p(p->left, s) + rank_p(p->right, s) + 2;
        case ProgramKind::Seq: return rank_p(p->right, s) + 1 + rank_p(p->left, s) + 1;
        case ProgramKind::Ode: {
            if (lit) return ord_mul_omega(rank_f(p->formula, s) + 17);
            return omega_times(rank_f(p->formula, s) + 17) + 2;
        }
        case ProgramKind::Star: return ord_mul_omega(rank_p(p->left, s) + 1) + 1;
    }
    return {};
}

Ordinal rank_f(const FormulaPtr& f, RankScheme s) {
    bool lit = s == RankScheme::Literal;
    if (lit && is_basic(*f)) return {};
    switch (f->kind) {
        case FormulaKind::Gt:
        case FormulaKind::Geq: return {};
        case FormulaKind::Or:
        case FormulaKind::And: return ord_max(rank_f(f->left, s), rank_f(f->right, s)) + 1;
        case FormulaKind::Exists: return rank_f(f->left, s) + (lit ? 5 : 7);
        case FormulaKind::Forall: return rank_f(f->left, s) + 1;
        case FormulaKind::Diamond:
        case FormulaKind::Box: return rank_f(f->left, s) + rank_p(f->program, s) + 1;
    }
    return {};
}

}  // namespace

Ordinal rank_formula(const FormulaPtr& f, RankScheme s) { return rank_f(f, s); }
Ordinal rank_program(const ProgramPtr& p, RankScheme s) { return rank_p(p, s); }

Ordinal sequent_measure(const std::vector<FormulaPtr>& g, RankScheme s) {
    Ordinal m;
    for (const auto& f : g) m = ord_max(m, rank_formula(f, s));
    return m;
}

Cmp set_cmp(const std::vector<FormulaPtr>& g1, const std::vector<FormulaPtr>& g2, RankScheme s) {
    return ord_cmp(sequent_measure(g1, s), sequent_measure(g2, s));
}

}  // namespace rdl
