#include "rdl/sequent.hpp"

#include "rdl/syntax.hpp"

#include <algorithm>

namespace rdl {

std::vector<FormulaPtr> canonical_set(std::vector<FormulaPtr> fs) {
    std::sort(fs.begin(), fs.end(), FormulaLess{});
    fs.erase(std::unique(fs.begin(), fs.end(), [](const FormulaPtr& a, const FormulaPtr& b) { return equal(a, b); }),
             fs.end());
    return fs;
}

Sequent::Sequent(std::vector<FormulaPtr> a, std::vector<FormulaPtr> s)
    : ante(canonical_set(std::move(a))), succ(canonical_set(std::move(s))) {}

bool Sequent::operator==(const Sequent& o) const {
    auto same = [](const std::vector<FormulaPtr>& x, const std::vector<FormulaPtr>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!equal(x[i], y[i])) return false;
        return true;
    };
    return same(ante, o.ante) && same(succ, o.succ);
}

std::string Sequent::str() const {
    std::string s;
    for (std::size_t i = 0; i < ante.size(); ++i) s += (i ? ", " : "") + pretty(ante[i]);
    s += ante.empty() ? "==> " : " ==> ";
    for (std::size_t i = 0; i < succ.size(); ++i) s += (i ? ", " : "") + pretty(succ[i]);
    return s;
}

bool contains(const std::vector<FormulaPtr>& set, const FormulaPtr& f) {
    return std::binary_search(set.begin(), set.end(), f, FormulaLess{});
}

std::vector<FormulaPtr> erase_one(const std::vector<FormulaPtr>& set, const FormulaPtr& f) {
    std::vector<FormulaPtr> out;
    for (const auto& g : set)
        if (!equal(g, f)) out.push_back(g);
    return out;
}

namespace {

// Splits at commas outside brackets.
std::vector<FormulaPtr> parse_side(std::string_view t) {
    std::vector<FormulaPtr> out;
    int depth = 0;
    std::size_t start = 0;
    auto flush = [&](std::size_t end) {
        std::string_view part = t.substr(start, end - start);
        if (part.find_first_not_of(" \t\n") != std::string_view::npos) out.push_back(parse_formula(part));
    };
    for (std::size_t i = 0; i < t.size(); ++i) {
        char c = t[i];
        if (c == '(' || c == '[' || c == '{') ++depth;
        else if (c == ')' || c == ']' || c == '}') --depth;
        else if (c == ',' && depth == 0) {
            flush(i);
            start = i + 1;
        }
    }
    flush(t.size());
    return out;
}

}  // namespace

Sequent parse_sequent(std::string_view text) {
    auto cut = text.find("==>");
    if (cut == std::string_view::npos) return Sequent({}, parse_side(text));
    return Sequent(parse_side(text.substr(0, cut)), parse_side(text.substr(cut + 3)));
}

}  // namespace rdl
