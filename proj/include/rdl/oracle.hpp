#pragma once

#include "rdl/interval.hpp"
#include "rdl/polynomial.hpp"
#include "rdl/sequent.hpp"

#include "json.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdl {

struct PreconditionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SubdivisionTree;
using TreePtr = std::shared_ptr<const SubdivisionTree>;

/// A leaf (split == false) certifies the sequent over `box` by interval
/// evaluation alone; an inner node bisects `var` at `mid`.
struct SubdivisionTree {
    Box box;
    bool split = false;
    std::string var;
    Rational mid;
    TreePtr left, right;
};

std::size_t tree_size(const TreePtr& t);
std::size_t tree_depth(const TreePtr& t);
nlohmann::json tree_to_json(const TreePtr& t);
TreePtr tree_from_json(const nlohmann::json& j);

enum class OracleVerdict { Valid, Counterexample, Unknown };
const char* to_string(OracleVerdict v);

using Point = std::map<std::string, Rational>;

struct OracleBudget {
    int max_depth = 40;
    std::size_t max_nodes = 100000;
};

struct DecideResult {
    OracleVerdict verdict = OracleVerdict::Unknown;
    TreePtr tree;     // Valid
    Point point;      // Counterexample
    std::string note; // why Unknown
};

/// Branch and bound over an explicit box.  The sequent must be
/// quantifier-free, antecedent weak, succedent strict, and every free
/// variable must be in the box.
DecideResult decide(const Sequent& s, const Box& b, OracleBudget budget = {});
bool replay(const TreePtr& tree, const Sequent& s, const Box& b);

/// Front end used at proof leaves: drops antecedent formulas that do not bear
/// on the succedent, substitutes point bounds x in [t,t], and derives the box
/// from the remaining interval bounds in dependency order.
struct OracleProblem {
    bool ok = false;
    std::string reason;  // when !ok
    Sequent reduced;
    Box box;
    std::vector<std::pair<std::string, TermPtr>> eliminated;  // in substitution order
};
OracleProblem prepare(const Sequent& s);
DecideResult decide_sequent(const Sequent& s, OracleBudget budget = {});
bool replay_sequent(const TreePtr& tree, const Sequent& s);

/// Exact truth of a quantifier-free basic formula at a point.
bool eval_exact(const FormulaPtr& f, const Point& p);

/// Candidates introduced in round d of the witness schedule: 0 in round 0,
/// then +-2^e (1 + k/2^j) with |e| <= d and j <= d/4, skipping values seen in
/// earlier rounds.  Ordered by j, |e|, e > 0 first, + first, k.
std::vector<Rational> witness_round(int d);

/// First candidate q (rounds 0..max_round) with decide(|- body[x:=q]) Valid
/// over `context`.
std::optional<Rational> find_rational_witness(const FormulaPtr& body, const std::string& x, const Box& context,
                                              int max_round, OracleBudget budget = {});

}  // namespace rdl
