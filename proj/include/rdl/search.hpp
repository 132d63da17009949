#pragma once

#include "rdl/calculus.hpp"
#include "rdl/fragment.hpp"
#include "rdl/rank.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdl {

struct NotInFragment : std::runtime_error {
    std::vector<Blame> blames;
    NotInFragment(const std::string& what, std::vector<Blame> b) : std::runtime_error(what), blames(std::move(b)) {}
};
struct StuckSequent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Budgets and candidate streams.  Round r of the iterative deepening admits
/// witness rounds <= r, loop counts n <= loop_base + loop_step*r, Euler tuples
/// (k,m,l,h) = (2^a, 2^b, 2^c, 2^-(d+1)) with a+b+c+d <= r, and oracle depth
/// min(oracle_depth_max, oracle_depth_base + oracle_depth_step*r).
struct Schedule {
    int first_round = 0;
    int max_rounds = 8;
    int loop_base = 2;
    int loop_step = 4;
    int oracle_depth_base = 12;
    int oracle_depth_step = 4;
    int oracle_depth_max = 40;
    std::size_t oracle_nodes = 100000;
    std::size_t max_nodes = 1000000;
    double max_seconds = 600;
};

struct SearchStats {
    int rounds = 0;  // rounds started
    std::size_t nodes = 0;
    std::size_t oracle_calls = 0;
    std::size_t oracle_cache_hits = 0;
    std::size_t rank_checks = 0;
    std::size_t rank_violations = 0;
    double seconds = 0;
};

struct FrontierItem {
    std::string sequent;  // ante |- succ, parseable formulas separated by ", "
    std::string rank;     // repaired succedent measure
    std::string note;
};

struct Timeout {
    std::string reason;  // "rounds", "nodes", "seconds"
    std::vector<FrontierItem> frontier;
    bool witness_stream_exhausted = false;  // every admitted witness was refuted
    int last_round = -1;
};

struct ProveResult {
    std::optional<Certificate> certificate;
    std::optional<Timeout> timeout;
    SearchStats stats;
};

/// Box elimination by ContextRewrite ([:=], [?], [u], [;] and the ODE dual of
/// norm-bounded ODE boxes), outermost first.
struct Preprocessed {
    FormulaPtr result;
    std::vector<RuleInstance> steps;  // each applies to the single succedent formula
};
Preprocessed preprocess(const FormulaPtr& goal);

/// One deterministic step on a sequent, or the reason none applies.
struct ReductionStep {
    enum class Kind { Step, OracleLeaf, NeedsSearch } kind;
    RuleInstance rule;              // Step
    std::vector<Sequent> premises;  // Step
    std::string choice;             // NeedsSearch: "witness", "loop", "euler"
    int index = -1;                 // selected succedent formula
};
ReductionStep reduce_once(const Sequent& s);

/// Index of the succedent formula the search reduces next: maximal repaired
/// rank among non-basic formulas, first in canonical order on ties; -1 if all
/// succedent formulas are quantifier-free basic.
int select_formula(const Sequent& s);

ProveResult prove(const FormulaPtr& goal, const Schedule& sched = {});

std::string frontier_report(const Timeout& t, const SearchStats& stats);

/// Euler tuples admitted in round r, in the order they are tried.
struct EulerTuple {
    Rational k, m, l, h;
};
std::vector<EulerTuple> euler_tuples(int r);

}  // namespace rdl
