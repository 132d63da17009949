#pragma once

#include "rdl/ast.hpp"
#include "rdl/euler.hpp"

#include <map>
#include <string>
#include <vector>

namespace rdl {

/// Finite-support valuation; unmentioned variables read as 0.
using State = std::map<std::string, Rational>;

Rational eval_term(const State& w, const TermPtr& v);

enum class Truth { False, Unknown, True };
const char* to_string(Truth t);

struct SimConfig {
    int quant_range = 3;           // unbounded quantifiers sample [-2^d, 2^d]
    int quant_steps = 4;           // ... at spacing 2^-quant_steps
    int bounded_samples = 16;      // bounded quantifiers: this many equal parts of the interval
    int loop_unroll = 12;
    Rational ode_step = Rational(1, 64);
    Rational ode_horizon = 4;
    std::size_t max_states = 4000;  // per reachability query
};

/// Three-valued, sampled truth.  Bounded quantifiers are decided by their
/// samples; unbounded ones can only be confirmed (exists) or refuted
/// (forall).  Modalities use the sampled reachable set and report Unknown
/// when a budget cut it short.
Truth sample_truth(const State& w, const FormulaPtr& f, const SimConfig& cfg = {});

struct Reach {
    std::vector<State> states;
    bool complete = true;
};
Reach reachable(const State& w, const ProgramPtr& a, const SimConfig& cfg = {});

struct OpennessReport {
    Rational margin;  // largest tested radius below which every perturbation stayed true; 0 if none
    std::vector<std::pair<Rational, bool>> tested;  // radius, all perturbations true
};
/// Perturbs every free variable by -r, 0, +r (all combinations) for each
/// radius, in decreasing order.
OpennessReport probe_openness(const FormulaPtr& f, const State& w, const std::vector<Rational>& radii,
                              const SimConfig& cfg = {});
std::vector<Rational> default_radii();  // 1/2, 1/4, ..., 1/1024

std::string trajectory_csv(const OdeSystem& sys, const NumState& x0, double T, double step);

}  // namespace rdl
