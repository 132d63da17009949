#pragma once

#include "rdl/ast.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rdl {

/// Child-index path from the root of an AST.  Formula children: Or/And 0,1;
/// quantifier 0; modality 0 = program, 1 = postcondition.  Program children:
/// Test 0; Choice/Seq 0,1; Star 0; Ode 0 = evolution domain.
using Path = std::vector<int>;

std::string path_str(const Path& p);

enum class FormulaClass { Strict, Weak, Neither };

enum class BlameReason {
    WrongPolarityAtom,
    UnboundedForall,
    UnboundedExists,
    LoopInApproximate,
    UnboundedEvolutionDomain,
    EqualityInExactTest,
};

struct Blame {
    Path path;
    BlameReason reason;
};

const char* to_string(FormulaClass c);
const char* to_string(BlameReason r);

struct FormulaClassification {
    FormulaClass cls;
    std::vector<Blame> blames;
};

struct ProgramClassification {
    bool exact;
    bool approximate;
    std::vector<Blame> blames;
};

FormulaClassification classify_formula(const FormulaPtr& f);
ProgramClassification classify_program(const ProgramPtr& p);

enum class Side { Strict, Weak };

struct FragmentOptions {
    /// Accept weak-side evolution domains of the form psi & tau <= k.
    bool allow_time_bound = false;
};

struct FragmentResult {
    bool ok;
    std::vector<Blame> blames;
};

FragmentResult in_rrdl(const FormulaPtr& f, Side side, FragmentOptions opts = {});

/// Recognizes the weak-side domain psi & ||xs|| <= k where xs are exactly the
/// ODE variables (clock included).  Returns (psi, k).
struct NormDomain {
    FormulaPtr psi;
    TermPtr bound;
};
std::optional<NormDomain> match_norm_domain(const ProgramPtr& ode_node);

}  // namespace rdl
