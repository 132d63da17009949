#pragma once

#include "rdl/ast.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rdl {

/// Two-sided sequent.  Both sides are kept sorted by the canonical formula
/// order and duplicate-free, so equality is order-insensitive.
struct Sequent {
    std::vector<FormulaPtr> ante;
    std::vector<FormulaPtr> succ;

    Sequent() = default;
    Sequent(std::vector<FormulaPtr> a, std::vector<FormulaPtr> s);

    bool operator==(const Sequent& o) const;
    std::string str() const;
};

/// Inverse of Sequent::str: "A, B ==> C, D"; either side may be empty.
/// Throws SyntaxError.
Sequent parse_sequent(std::string_view text);

/// Sorts and deduplicates in the canonical order.
std::vector<FormulaPtr> canonical_set(std::vector<FormulaPtr> fs);
bool contains(const std::vector<FormulaPtr>& set, const FormulaPtr& f);
std::vector<FormulaPtr> erase_one(const std::vector<FormulaPtr>& set, const FormulaPtr& f);

}  // namespace rdl
