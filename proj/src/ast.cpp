#include "rdl/ast.hpp"

#include <functional>

namespace rdl {

namespace {

// FNV-style mixing; stable across runs so canonical order is reproducible.
std::size_t mix(std::size_t h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h * 0x100000001b3ULL;
}

std::size_t str_hash(const std::string& s) {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
    return h;
}

template <class T>
int cmp3(const T& a, const T& b) {
    return a < b ? -1 : (b < a ? 1 : 0);
}

}  // namespace

TermPtr var(std::string name) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Var;
    t->hash = mix(1, str_hash(name));
    t->name = std::move(name);
    return t;
}

TermPtr cst(Rational value) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Const;
    t->hash = mix(2, value.hash());
    t->value = std::move(value);
    return t;
}

static TermPtr binary_term(TermKind k, TermPtr a, TermPtr b) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    t->hash = mix(mix(static_cast<std::size_t>(k) + 11, a->hash), b->hash);
    t->lhs = std::move(a);
    t->rhs = std::move(b);
    return t;
}

TermPtr add(TermPtr a, TermPtr b) { return binary_term(TermKind::Add, std::move(a), std::move(b)); }
TermPtr mul(TermPtr a, TermPtr b) { return binary_term(TermKind::Mul, std::move(a), std::move(b)); }

TermPtr neg(TermPtr a) {
    if (a->kind == TermKind::Const) return cst(-a->value);
    return mul(cst(-1), std::move(a));
}

TermPtr sub(TermPtr a, TermPtr b) { return add(std::move(a), mul(cst(-1), std::move(b))); }

static FormulaPtr cmp_formula(FormulaKind k, TermPtr a, TermPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->hash = mix(mix(static_cast<std::size_t>(k) + 101, a->hash), b->hash);
    f->lhs_term = std::move(a);
    f->rhs_term = std::move(b);
    return f;
}

FormulaPtr gt(TermPtr a, TermPtr b) { return cmp_formula(FormulaKind::Gt, std::move(a), std::move(b)); }
FormulaPtr geq(TermPtr a, TermPtr b) { return cmp_formula(FormulaKind::Geq, std::move(a), std::move(b)); }

static FormulaPtr junction(FormulaKind k, FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->hash = mix(mix(static_cast<std::size_t>(k) + 101, a->hash), b->hash);
    f->left = std::move(a);
    f->right = std::move(b);
    return f;
}

FormulaPtr lor(FormulaPtr a, FormulaPtr b) { return junction(FormulaKind::Or, std::move(a), std::move(b)); }
FormulaPtr land(FormulaPtr a, FormulaPtr b) { return junction(FormulaKind::And, std::move(a), std::move(b)); }

static FormulaPtr quantifier(FormulaKind k, std::string x, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->hash = mix(mix(static_cast<std::size_t>(k) + 101, str_hash(x)), body->hash);
    f->var = std::move(x);
    f->left = std::move(body);
    return f;
}

FormulaPtr exists(std::string x, FormulaPtr body) { return quantifier(FormulaKind::Exists, std::move(x), std::move(body)); }
FormulaPtr forall(std::string x, FormulaPtr body) { return quantifier(FormulaKind::Forall, std::move(x), std::move(body)); }

static FormulaPtr modality(FormulaKind k, ProgramPtr a, FormulaPtr post) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->hash = mix(mix(static_cast<std::size_t>(k) + 101, a->hash), post->hash);
    f->program = std::move(a);
    f->left = std::move(post);
    return f;
}

FormulaPtr diamond(ProgramPtr a, FormulaPtr post) { return modality(FormulaKind::Diamond, std::move(a), std::move(post)); }
FormulaPtr box(ProgramPtr a, FormulaPtr post) { return modality(FormulaKind::Box, std::move(a), std::move(post)); }

FormulaPtr eq(TermPtr a, TermPtr b) { return land(geq(a, b), geq(b, a)); }
FormulaPtr top() { return gt(cst(0), cst(-1)); }
FormulaPtr bottom() { return gt(cst(0), cst(0)); }

FormulaPtr conj(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) return top();
    FormulaPtr acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = land(acc, fs[i]);
    return acc;
}

FormulaPtr disj(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) return bottom();
    FormulaPtr acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = lor(acc, fs[i]);
    return acc;
}

ProgramPtr assign(std::string x, TermPtr v) {
    auto p = std::make_shared<Program>();
    p->kind = ProgramKind::Assign;
    p->hash = mix(mix(1001, str_hash(x)), v->hash);
    p->var = std::move(x);
    p->term = std::move(v);
    return p;
}

ProgramPtr test(FormulaPtr f) {
    auto p = std::make_shared<Program>();
    p->kind = ProgramKind::Test;
    p->hash = mix(1002, f->hash);
    p->formula = std::move(f);
    return p;
}

static ProgramPtr binary_program(ProgramKind k, ProgramPtr a, ProgramPtr b) {
    auto p = std::make_shared<Program>();
    p->kind = k;
    p->hash = mix(mix(static_cast<std::size_t>(k) + 1001, a->hash), b->hash);
    p->left = std::move(a);
    p->right = std::move(b);
    return p;
}

ProgramPtr choice(ProgramPtr a, ProgramPtr b) { return binary_program(ProgramKind::Choice, std::move(a), std::move(b)); }
ProgramPtr seq(ProgramPtr a, ProgramPtr b) { return binary_program(ProgramKind::Seq, std::move(a), std::move(b)); }

ProgramPtr star(ProgramPtr a) {
    auto p = std::make_shared<Program>();
    p->kind = ProgramKind::Star;
    p->hash = mix(1005, a->hash);
    p->left = std::move(a);
    return p;
}

ProgramPtr ode(std::vector<OdePair> system, FormulaPtr domain) {
    auto p = std::make_shared<Program>();
    p->kind = ProgramKind::Ode;
    std::size_t h = 1006;
    for (const auto& [x, v] : system) h = mix(mix(h, str_hash(x)), v->hash);
    p->hash = mix(h, domain->hash);
    p->ode = std::move(system);
    p->formula = std::move(domain);
    return p;
}

// ---- comparison ----

int compare(const Term& a, const Term& b) {
    if (&a == &b) return 0;
    if (a.hash != b.hash) return cmp3(a.hash, b.hash);
    if (a.kind != b.kind) return cmp3(a.kind, b.kind);
    switch (a.kind) {
        case TermKind::Var: return a.name.compare(b.name) < 0 ? -1 : (a.name == b.name ? 0 : 1);
        case TermKind::Const: return cmp3(a.value, b.value);
        default: {
            int c = compare(*a.lhs, *b.lhs);
            return c ? c : compare(*a.rhs, *b.rhs);
        }
    }
}

int compare(const Formula& a, const Formula& b) {
    if (&a == &b) return 0;
    if (a.hash != b.hash) return cmp3(a.hash, b.hash);
    if (a.kind != b.kind) return cmp3(a.kind, b.kind);
    switch (a.kind) {
        case FormulaKind::Gt:
        case FormulaKind::Geq: {
            int c = compare(*a.lhs_term, *b.lhs_term);
            return c ? c : compare(*a.rhs_term, *b.rhs_term);
        }
        case FormulaKind::Or:
        case FormulaKind::And: {
            int c = compare(*a.left, *b.left);
            return c ? c : compare(*a.right, *b.right);
        }
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            int c = a.var.compare(b.var);
            if (c) return c < 0 ? -1 : 1;
            return compare(*a.left, *b.left);
        }
        case FormulaKind::Diamond:
        case FormulaKind::Box: {
            int c = compare(*a.program, *b.program);
            return c ? c : compare(*a.left, *b.left);
        }
    }
    return 0;
}

int compare(const Program& a, const Program& b) {
    if (&a == &b) return 0;
    if (a.hash != b.hash) return cmp3(a.hash, b.hash);
    if (a.kind != b.kind) return cmp3(a.kind, b.kind);
    switch (a.kind) {
        case ProgramKind::Assign: {
            int c = a.var.compare(b.var);
            if (c) return c < 0 ? -1 : 1;
            return compare(*a.term, *b.term);
        }
        case ProgramKind::Test: return compare(*a.formula, *b.formula);
        case ProgramKind::Choice:
        case ProgramKind::Seq: {
            int c = compare(*a.left, *b.left);
            return c ? c : compare(*a.right, *b.right);
        }
        case ProgramKind::Star: return compare(*a.left, *b.left);
        case ProgramKind::Ode: {
            if (a.ode.size() != b.ode.size()) return cmp3(a.ode.size(), b.ode.size());
            for (std::size_t i = 0; i < a.ode.size(); ++i) {
                int c = a.ode[i].var.compare(b.ode[i].var);
                if (c) return c < 0 ? -1 : 1;
                c = compare(*a.ode[i].rhs, *b.ode[i].rhs);
                if (c) return c;
            }
            return compare(*a.formula, *b.formula);
        }
    }
    return 0;
}

bool equal(const TermPtr& a, const TermPtr& b) { return a == b || (a && b && compare(*a, *b) == 0); }
bool equal(const FormulaPtr& a, const FormulaPtr& b) { return a == b || (a && b && compare(*a, *b) == 0); }
bool equal(const ProgramPtr& a, const ProgramPtr& b) { return a == b || (a && b && compare(*a, *b) == 0); }

std::size_t size(const Term& t) {
    if (t.kind == TermKind::Var || t.kind == TermKind::Const) return 1;
    return 1 + size(*t.lhs) + size(*t.rhs);
}

std::size_t size(const Formula& f) {
    switch (f.kind) {
        case FormulaKind::Gt:
        case FormulaKind::Geq: return 1 + size(*f.lhs_term) + size(*f.rhs_term);
        case FormulaKind::Or:
        case FormulaKind::And: return 1 + size(*f.left) + size(*f.right);
        case FormulaKind::Exists:
        case FormulaKind::Forall: return 1 + size(*f.left);
        default: return 1 + size(*f.program) + size(*f.left);
    }
}

std::size_t size(const Program& p) {
    switch (p.kind) {
        case ProgramKind::Assign: return 1 + size(*p.term);
        case ProgramKind::Test: return 1 + size(*p.formula);
        case ProgramKind::Choice:
        case ProgramKind::Seq: return 1 + size(*p.left) + size(*p.right);
        case ProgramKind::Star: return 1 + size(*p.left);
        case ProgramKind::Ode: {
            std::size_t n = 1 + size(*p.formula);
            for (const auto& pr : p.ode) n += 1 + size(*pr.rhs);
            return n;
        }
    }
    return 1;
}

bool is_const(const TermPtr& t, const Rational& value) {
    return t->kind == TermKind::Const && t->value == value;
}

bool is_top(const FormulaPtr& f) {
    return f->kind == FormulaKind::Gt && is_const(f->lhs_term, 0) && is_const(f->rhs_term, -1);
}

bool is_bottom(const FormulaPtr& f) {
    return f->kind == FormulaKind::Gt && is_const(f->lhs_term, 0) && is_const(f->rhs_term, 0);
}

bool is_basic(const Formula& f) {
    switch (f.kind) {
        case FormulaKind::Gt:
        case FormulaKind::Geq: return true;
        case FormulaKind::Or:
        case FormulaKind::And: return is_basic(*f.left) && is_basic(*f.right);
        case FormulaKind::Exists:
        case FormulaKind::Forall: return is_basic(*f.left);
        default: return false;
    }
}

bool is_quantifier_free_basic(const Formula& f) {
    switch (f.kind) {
        case FormulaKind::Gt:
        case FormulaKind::Geq: return true;
        case FormulaKind::Or:
        case FormulaKind::And: return is_quantifier_free_basic(*f.left) && is_quantifier_free_basic(*f.right);
        default: return false;
    }
}

}  // namespace rdl
