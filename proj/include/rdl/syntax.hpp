#pragma once

#include "rdl/ast.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rdl {

using VarSet = std::set<std::string>;

struct SyntaxError : std::runtime_error {
    int line;
    int column;
    std::vector<std::string> expected;
    SyntaxError(const std::string& msg, int line, int column, std::vector<std::string> expected);
};

struct FreshnessViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoundMentionsVar : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ClockMisuse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parsing. Whole input must be consumed.
FormulaPtr parse_formula(std::string_view text);
ProgramPtr parse_program(std::string_view text);
TermPtr parse_term(std::string_view text);

// Printing; parse(pretty(x)) is structurally equal to x.
std::string pretty(const TermPtr& t);
std::string pretty(const FormulaPtr& f);
std::string pretty(const ProgramPtr& p);

FormulaPtr negate(const FormulaPtr& f);

VarSet free_vars(const TermPtr& t);
VarSet free_vars(const FormulaPtr& f);
VarSet free_vars(const ProgramPtr& p);
/// Variables written on every run of p.
VarSet must_bound_vars(const ProgramPtr& p);
/// Every variable name occurring anywhere, bound or free.
VarSet all_vars(const FormulaPtr& f);
VarSet all_vars(const ProgramPtr& p);
void collect_vars(const TermPtr& t, VarSet& out);

/// Uniformly renames every occurrence of `old_name`.  Throws FreshnessViolation
/// if `fresh` already occurs.
FormulaPtr rename(const FormulaPtr& f, const std::string& old_name, const std::string& fresh);
ProgramPtr rename(const ProgramPtr& p, const std::string& old_name, const std::string& fresh);
TermPtr rename(const TermPtr& t, const std::string& old_name, const std::string& fresh);

TermPtr term_subst(const TermPtr& v, const std::string& x, const TermPtr& r);

/// forall z (z = x -> forall x (x = v[x:=z] -> f)).  Picks z via fresh_name
/// when not supplied.
FormulaPtr safe_subst(const FormulaPtr& f, const std::string& x, const TermPtr& v,
                      std::optional<std::string> z = std::nullopt);

enum class Strictness { Strict, Weak };

FormulaPtr desugar_norm(const std::vector<TermPtr>& vs, const TermPtr& w, Strictness s);
/// Recognizes a desugar_norm output over plain variables; returns (vars, w).
std::optional<std::pair<std::vector<std::string>, TermPtr>> match_norm(const FormulaPtr& f, Strictness s);

enum class BoundedKind { ForallClosed, ExistsClosed, ExistsOpen, ForallOpen };

FormulaPtr desugar_bounded_quantifier(BoundedKind kind, const std::string& x, const TermPtr& lo,
                                      const TermPtr& hi, const FormulaPtr& body);

struct BoundedMatch {
    BoundedKind kind;
    std::string var;
    TermPtr lo, hi;
    FormulaPtr body;
};
/// Recognizes the exact shapes emitted by desugar_bounded_quantifier.
std::optional<BoundedMatch> match_bounded(const FormulaPtr& f);

/// x in [lo,hi] as lo <= x & x <= hi, i.e. And(Geq(x,lo), Geq(hi,x)).
FormulaPtr in_interval(const std::string& x, const TermPtr& lo, const TermPtr& hi);
struct IntervalMatch {
    std::string var;
    TermPtr lo, hi;
};
std::optional<IntervalMatch> match_interval(const FormulaPtr& f);

/// alpha^{<=n} = ?true ++ alpha ++ alpha;alpha ++ ... (right-nested).
ProgramPtr iterate_upto(const ProgramPtr& a, int n);

ProgramPtr normalize_clock(const ProgramPtr& p);
FormulaPtr normalize_clock(const FormulaPtr& f);

/// Smallest "_v<i>" (or prefix<i>) not in `used`.
std::string fresh_name(const VarSet& used, const std::string& prefix = "_v");

}  // namespace rdl
