#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gen.hpp"
#include "rdl/calculus.hpp"
#include "rdl/oracle.hpp"
#include "rdl/simsem.hpp"
#include "rdl/syntax.hpp"

#include <random>

using namespace rdl;

static FormulaPtr F(const std::string& s) { return normalize_clock(parse_formula(s)); }

TEST_CASE("term evaluation") {
    CHECK(eval_term({{"x", 2}}, parse_term("x * x + 1")) == Rational(5));
    CHECK(eval_term({}, parse_term("7/3")) == Rational(7, 3));
    CHECK(eval_term({{"x", Rational(1, 3)}}, parse_term("3 * x")) == Rational(1));
    CHECK(eval_term({}, parse_term("y + 1")) == Rational(1));
}

TEST_CASE("sampled truth") {
    CHECK(sample_truth({{"x", 1}}, F("x > 0")) == Truth::True);
    CHECK(sample_truth({{"x", 0}}, F("x > 0")) == Truth::False);
    SimConfig c;
    c.loop_unroll = 6;
    CHECK(sample_truth({}, F("<x := 0; {x := x + 1}*> x > 5"), c) == Truth::True);
    c.loop_unroll = 5;
    CHECK(sample_truth({}, F("<x := 0; {x := x + 1}*> x > 5"), c) == Truth::Unknown);
    SimConfig o;
    o.ode_horizon = 2;
    CHECK(sample_truth({}, F("<{x' = 1}> x > 1"), o) == Truth::True);
    CHECK(sample_truth({}, F("<{x' = 1 & x < 1/2}> x > 1"), o) == Truth::False);
    CHECK(sample_truth({}, F("[x := 1 ++ x := 2] x > 0")) == Truth::True);
    CHECK(sample_truth({}, F("[x := 1 ++ x := -2] x > 0")) == Truth::False);
    CHECK(sample_truth({}, F("\\exists x . x * x < 1")) == Truth::True);
    CHECK(sample_truth({}, F("\\exists x . x > x")) == Truth::Unknown);
    CHECK(sample_truth({}, F("\\forall x in [0, 1] . x * (1 - x) < 0.26")) == Truth::True);
    CHECK(sample_truth({}, F("\\forall x in [0, 1] . x * (1 - x) < 0.24")) == Truth::False);
    CHECK(sample_truth({}, F("[{x := x + 1}*] x >= 0")) == Truth::Unknown);
    CHECK(sample_truth({}, F("[?0 > 1; {x := x + 1}*] x > 3")) == Truth::True);
}

TEST_CASE("openness probes") {
    auto r = probe_openness(F("x > 0"), {{"x", 1}}, default_radii());
    CHECK(r.margin >= Rational(1, 2));
    auto razor = probe_openness(F("-(x * x) >= x * x"), {{"x", 0}}, default_radii());
    CHECK(razor.margin == Rational(0));
    auto as = probe_openness(F("<x := x + 1> x > 0"), {{"x", 0}}, default_radii());
    CHECK(as.margin == Rational(1, 2));
    auto tight = probe_openness(F("x > 0"), {{"x", Rational(1, 100)}}, default_radii());
    CHECK(tight.margin == Rational(1, 128));
}

TEST_CASE("sampled truth agrees with the oracle") {
    testing::Gen g(31);
    std::mt19937 rng(8);
    int compared = 0;
    for (int i = 0; i < 300; ++i) {
        std::vector<std::string> vs{"x", "y", "z"};
        vs.resize(std::size_t(1 + g.pick(3)));
        FormulaPtr f = g.qf(vs, 2, true);
        Box b;
        for (const auto& v : free_vars(f)) {
            long lo = long(rng() % 5) - 2;
            b[v] = RatInterval(Rational(lo), Rational(lo + 1));
        }
        DecideResult d;
        try {
            d = decide(Sequent({}, {f}), b, {10, 2000});
        } catch (const PreconditionViolation&) {
            continue;
        }
        if (d.verdict == OracleVerdict::Counterexample) {
            CHECK(sample_truth(d.point, f) == Truth::False);
            ++compared;
        } else if (d.verdict == OracleVerdict::Valid) {
            for (int k = 0; k < 5; ++k) {
                State s;
                for (const auto& [v, iv] : b) s[v] = iv.lo + iv.width() * Rational(long(rng() % 17), 16);
                CHECK(sample_truth(s, f) == Truth::True);
            }
            ++compared;
        }
    }
    CHECK(compared > 50);
}

// premises true at a state imply the conclusion true there (discrete rules, exact sampling)
TEST_CASE("rule soundness spot check by simulation") {
    struct Case {
        std::string succ;
        RuleInstance rule;
    };
    auto rw = [](AxiomName a, std::string fresh = "") {
        RuleInstance r;
        r.name = RuleName::ContextRewrite;
        r.axiom = a;
        r.fresh = fresh;
        return r;
    };
    RuleInstance orr;
    orr.name = RuleName::OrR;
    RuleInstance sf;
    sf.name = RuleName::StarFinite;
    sf.n = 3;
    std::vector<Case> cases = {
        {"<x := x + 1> x > y", rw(AxiomName::DiaAssign, "z")},
        {"<x := x * x ++ ?x > 0> x > y", rw(AxiomName::DiaChoice)},
        {"<x := x + 1; x := x * 2> x > y", rw(AxiomName::DiaSeq)},
        {"<?x > 0> x > y", rw(AxiomName::DiaTest)},
        {"[?x > 0] x > y", rw(AxiomName::BoxTest)},
        {"<{x := x + 1}*> x > y", rw(AxiomName::DiaStarUnfold)},
        {"<{x := x + 1}*> x > y", sf},
        {"x > y | y > x + 1", orr},
    };
    std::vector<Rational> grid;
    for (int i = -8; i <= 8; ++i) grid.push_back(Rational(i, 4));
    for (const auto& c : cases) {
        Sequent s({}, {F(c.succ)});
        auto prem = apply_rule(s, c.rule);
        REQUIRE(prem.size() == 1);
        for (const auto& x : grid)
            for (const auto& y : grid) {
                State w{{"x", x}, {"y", y}};
                bool none_true = true;
                for (const auto& f : prem[0].succ) none_true = none_true && sample_truth(w, f) != Truth::True;
                if (none_true) continue;
                // some premise formula holds, so the conclusion must too
                CHECK(sample_truth(w, s.succ[0]) != Truth::False);
            }
    }
}

TEST_CASE("trajectory export") {
    auto sys = normalize_clock(parse_program("{x' = 1}"))->ode;
    std::string csv = trajectory_csv(sys, {{"x", 0}, {"tau", 0}}, 1, 0.5);
    CHECK(csv.rfind("step,x,tau\n0,0,0\n1,0.5,0.5\n", 0) == 0);
}
