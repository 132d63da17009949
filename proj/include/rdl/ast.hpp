#pragma once

#include "rdl/rational.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace rdl {

struct Term;
struct Formula;
struct Program;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;
using ProgramPtr = std::shared_ptr<const Program>;

/// Name of the distinguished clock variable that every ODE carries with rate 1.
inline constexpr const char* kClock = "tau";

enum class TermKind { Var, Const, Add, Mul };

struct Term {
    TermKind kind;
    std::string name;  // Var
    Rational value;    // Const
    TermPtr lhs, rhs;  // Add, Mul
    std::size_t hash = 0;
};

enum class FormulaKind { Gt, Geq, Or, And, Exists, Forall, Diamond, Box };

/// Comparisons use lhs_term/rhs_term; connectives use left/right;
/// quantifiers use var/left; modalities use program/left.
struct Formula {
    FormulaKind kind;
    TermPtr lhs_term, rhs_term;
    FormulaPtr left, right;
    std::string var;
    ProgramPtr program;
    std::size_t hash = 0;
};

enum class ProgramKind { Assign, Test, Choice, Seq, Star, Ode };

struct OdePair {
    std::string var;
    TermPtr rhs;
};

/// Assign uses var/term; Test uses formula; Choice/Seq use left/right;
/// Star uses left; Ode uses ode/formula (the evolution domain).
struct Program {
    ProgramKind kind;
    std::string var;
    TermPtr term;
    FormulaPtr formula;
    ProgramPtr left, right;
    std::vector<OdePair> ode;
    std::size_t hash = 0;
};

// Term constructors.
TermPtr var(std::string name);
TermPtr cst(Rational value);
TermPtr add(TermPtr a, TermPtr b);
TermPtr mul(TermPtr a, TermPtr b);
TermPtr neg(TermPtr a);             // (-1) * a, or a negated literal
TermPtr sub(TermPtr a, TermPtr b);  // a + (-1) * b

// Formula constructors.
FormulaPtr gt(TermPtr a, TermPtr b);
FormulaPtr geq(TermPtr a, TermPtr b);
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr exists(std::string x, FormulaPtr body);
FormulaPtr forall(std::string x, FormulaPtr body);
FormulaPtr diamond(ProgramPtr a, FormulaPtr post);
FormulaPtr box(ProgramPtr a, FormulaPtr post);
FormulaPtr eq(TermPtr a, TermPtr b);  // a >= b & b >= a
FormulaPtr top();                     // 0 > -1
FormulaPtr bottom();                  // 0 > 0
FormulaPtr conj(const std::vector<FormulaPtr>& fs);  // left-nested; empty -> top()
FormulaPtr disj(const std::vector<FormulaPtr>& fs);  // left-nested; empty -> bottom()

// Program constructors.
ProgramPtr assign(std::string x, TermPtr v);
ProgramPtr test(FormulaPtr f);
ProgramPtr choice(ProgramPtr a, ProgramPtr b);
ProgramPtr seq(ProgramPtr a, ProgramPtr b);
ProgramPtr star(ProgramPtr a);
ProgramPtr ode(std::vector<OdePair> system, FormulaPtr domain);

// Structural comparison: a total order that is deterministic across runs.
int compare(const Term& a, const Term& b);
int compare(const Formula& a, const Formula& b);
int compare(const Program& a, const Program& b);

bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const ProgramPtr& a, const ProgramPtr& b);

struct FormulaLess {
    bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return compare(*a, *b) < 0; }
};

std::size_t size(const Term& t);
std::size_t size(const Formula& f);
std::size_t size(const Program& p);

bool is_top(const FormulaPtr& f);
bool is_bottom(const FormulaPtr& f);
bool is_const(const TermPtr& t, const Rational& value);
/// True when the formula contains no modality.
bool is_basic(const Formula& f);
/// True when the formula contains no quantifier and no modality.
bool is_quantifier_free_basic(const Formula& f);

}  // namespace rdl
