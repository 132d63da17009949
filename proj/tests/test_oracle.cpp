#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gen.hpp"
#include "rdl/oracle.hpp"
#include "rdl/syntax.hpp"

#include <random>

using namespace rdl;

static RatInterval iv(long a, long b) { return RatInterval(Rational(a), Rational(b)); }
static Sequent seq(std::vector<std::string> a, std::vector<std::string> s) {
    std::vector<FormulaPtr> fa, fs;
    for (auto& x : a) fa.push_back(parse_formula(x));
    for (auto& x : s) fs.push_back(parse_formula(x));
    return Sequent(fa, fs);
}

TEST_CASE("interval evaluation") {
    CHECK(interval_eval(parse_term("x + 1"), {{"x", iv(1, 2)}}) == iv(2, 3));
    CHECK(interval_eval(parse_term("x * x"), {{"x", iv(-1, 1)}}) == iv(-1, 1));
    CHECK(interval_eval(parse_term("x * x - 3"), {{"x", iv(1, 2)}}) == iv(-2, 1));
    CHECK_THROWS_AS(interval_eval(parse_term("y"), {{"x", iv(1, 2)}}), UnboundVariable);
}

TEST_CASE("interval evaluation is inclusion monotone and encloses samples") {
    testing::Gen g(7);
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
        TermPtr t = g.term(3);
        Box b, sub;
        for (std::string x : {"x", "y", "z", "u", "w"}) {
            long lo = long(rng() % 7) - 3;
            long w = long(rng() % 4);
            b[x] = iv(lo, lo + w);
            sub[x] = RatInterval(Rational(lo) + Rational(w, 4), Rational(lo) + Rational(w, 2));
        }
        RatInterval whole = interval_eval(t, b), part = interval_eval(t, sub);
        CHECK(part.subset_of(whole));
        Box pt;
        for (auto& [x, r] : sub) pt[x] = RatInterval(r.mid());
        CHECK(interval_eval(t, pt).subset_of(part));
    }
}

TEST_CASE("decide examples") {
    auto r1 = decide(seq({}, {"x > 0"}), {{"x", iv(1, 2)}});
    CHECK(r1.verdict == OracleVerdict::Valid);
    CHECK(tree_size(r1.tree) == 1);

    auto r2 = decide(seq({}, {"x > 0"}), {{"x", iv(-1, 1)}});
    REQUIRE(r2.verdict == OracleVerdict::Counterexample);
    CHECK(r2.point.at("x") <= Rational(0));

    Sequent s3 = seq({"x >= 0 & 1 >= x"}, {"x * (1 - x) < 0.26"});
    auto r3 = decide(s3, {{"x", iv(0, 1)}});
    REQUIRE(r3.verdict == OracleVerdict::Valid);
    CHECK(tree_depth(r3.tree) <= 6);
    CHECK(replay(r3.tree, s3, {{"x", iv(0, 1)}}));
}

TEST_CASE("non-robust leaf is Unknown, not a loop") {
    // x > 0 fails only at the boundary point 0, which no box center ever hits
    auto r = decide(seq({"x >= 0 & 1 >= x"}, {"x > 0"}), {{"x", iv(0, 1)}});
    CHECK(r.verdict == OracleVerdict::Unknown);
}

TEST_CASE("polarity precondition") {
    CHECK_THROWS_AS(decide(seq({}, {"x >= 0"}), {{"x", iv(0, 1)}}), PreconditionViolation);
    CHECK_THROWS_AS(decide(seq({"x > 0"}, {"x > -1"}), {{"x", iv(0, 1)}}), PreconditionViolation);
    CHECK_THROWS_AS(decide(seq({}, {"\\exists y . y > x"}), {{"x", iv(0, 1)}}), PreconditionViolation);
    CHECK_THROWS_AS(decide(seq({}, {"y > 0"}), {{"x", iv(0, 1)}}), PreconditionViolation);
}

TEST_CASE("touching boundary exhausts the depth budget") {
    // x >= 0 on [0,1] does not give x > 0; the center never refutes it on the first boxes
    auto r = decide(seq({}, {"x > 0 | x < -1"}), {{"x", iv(0, 1)}}, {8, 1000});
    CHECK(r.verdict != OracleVerdict::Valid);
}

TEST_CASE("replay rejects tampering") {
    Sequent s = seq({}, {"x * (1 - x) < 0.26"});
    Box b{{"x", iv(0, 1)}};
    auto r = decide(s, b);
    REQUIRE(r.verdict == OracleVerdict::Valid);
    CHECK(replay(r.tree, s, b));
    CHECK(replay(tree_from_json(tree_to_json(r.tree)), s, b));

    auto j = tree_to_json(r.tree);
    // widen one leaf box
    nlohmann::json* leaf = &j;
    while (leaf->contains("left")) leaf = &(*leaf)["left"];
    (*leaf)["box"]["x"][0] = "-1";
    CHECK_FALSE(replay(tree_from_json(j), s, b));

    CHECK_FALSE(replay(r.tree, seq({}, {"x * (1 - x) < 0.24"}), b));
    CHECK_FALSE(replay(r.tree, s, {{"x", iv(0, 2)}}));
}

TEST_CASE("decide is deterministic") {
    Sequent s = seq({}, {"x * y < 1.01 | x < 0.5"});
    Box b{{"x", iv(0, 1)}, {"y", iv(0, 1)}};
    auto a = decide(s, b), c = decide(s, b);
    REQUIRE(a.verdict == OracleVerdict::Valid);
    CHECK(tree_to_json(a.tree) == tree_to_json(c.tree));
}

TEST_CASE("front end derives boxes and eliminates point bounds") {
    Sequent s = seq({"x >= 0 & 1 >= x", "y >= x & x >= y", "z >= 5 & 6 >= z", "q > 3"}, {"y + 1 > x"});
    auto p = prepare(s);
    REQUIRE(p.ok);
    CHECK(p.box.count("x") == 1);
    CHECK(p.box.count("y") == 0);
    CHECK(p.box.count("z") == 0);
    REQUIRE(p.eliminated.size() == 1);
    CHECK(p.eliminated[0].first == "y");
    auto r = decide_sequent(s);
    REQUIRE(r.verdict == OracleVerdict::Valid);
    CHECK(replay_sequent(r.tree, s));

    auto u = decide_sequent(seq({}, {"y > 0"}));
    CHECK(u.verdict == OracleVerdict::Unknown);

    // dependent bound: y in [0, x]
    Sequent d = seq({"x >= 1 & 2 >= x", "y >= 0 & x >= y"}, {"3 > y"});
    auto rd = decide_sequent(d);
    CHECK(rd.verdict == OracleVerdict::Valid);
}

TEST_CASE("witness schedule") {
    CHECK(witness_round(0) == std::vector<Rational>{Rational(0)});
    auto r1 = witness_round(1);
    REQUIRE(!r1.empty());
    CHECK(r1[0] == Rational(1));
    std::set<Rational> seen;
    bool big = false;
    for (int d = 0; d <= 21; ++d)
        for (auto& q : witness_round(d)) {
            CHECK(seen.insert(q).second);
            if (d <= 20 && q >= Rational(1L << 20)) big = true;
        }
    CHECK(big);
    CHECK(seen.count(Rational(3, 2)) == 1);
    CHECK(seen.count(Rational(-5, 32)) == 1);

    auto x = parse_formula("x > 0");
    CHECK(find_rational_witness(x, "x", {}, 3) == Rational(1));
    CHECK(find_rational_witness(parse_formula("x * x < 1"), "x", {}, 3) == Rational(0));
    auto big_w = find_rational_witness(parse_formula("x > 1000000"), "x", {}, 21);
    REQUIRE(big_w);
    CHECK(*big_w > Rational(1000000));
    CHECK_FALSE(find_rational_witness(parse_formula("x > x"), "x", {}, 4));
    CHECK(find_rational_witness(parse_formula("x > y"), "x", {{"y", iv(2, 3)}}, 4) == Rational(4));
}

TEST_CASE("random strict sequents: verdicts are sound") {
    testing::Gen g(11);
    std::mt19937 rng(5);
    int valid = 0, cex = 0;
    for (int i = 0; i < 200; ++i) {
        FormulaPtr f = g.formula(2);
        if (!is_quantifier_free_basic(*f)) continue;
        Sequent s({}, {f});
        Box b;
        for (auto& v : free_vars(f)) {
            long lo = long(rng() % 5) - 2;
            b[v] = iv(lo, lo + 1 + long(rng() % 2));
        }
        DecideResult r;
        try {
            r = decide(s, b, {12, 4000});
        } catch (const PreconditionViolation&) {
            continue;
        }
        if (r.verdict == OracleVerdict::Valid) {
            ++valid;
            CHECK(replay(r.tree, s, b));
        } else if (r.verdict == OracleVerdict::Counterexample) {
            ++cex;
            CHECK_FALSE(eval_exact(f, r.point));
        }
    }
    CHECK(valid > 0);
    CHECK(cex > 0);
}
