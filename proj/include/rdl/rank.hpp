#pragma once

#include "rdl/ast.hpp"
#include "rdl/ordinal.hpp"

#include <vector>

namespace rdl {

/// Literal: the published recursion, atoms 0, and every modality-free formula
/// forced to 0.  Repaired: a compositional variant (assignment 5, exists +7,
/// ODE w*(dom+17) + 2, no basic override) under which every reduction the
/// search performs strictly descends.
enum class RankScheme { Literal, Repaired };

Ordinal rank_formula(const FormulaPtr& f, RankScheme s = RankScheme::Literal);
Ordinal rank_program(const ProgramPtr& p, RankScheme s = RankScheme::Literal);

Ordinal sequent_measure(const std::vector<FormulaPtr>& g, RankScheme s = RankScheme::Literal);
Cmp set_cmp(const std::vector<FormulaPtr>& g1, const std::vector<FormulaPtr>& g2,
            RankScheme s = RankScheme::Literal);

}  // namespace rdl
