#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gen.hpp"
#include "triple.hpp"
#include "rdl/rank.hpp"
#include "rdl/syntax.hpp"

using namespace rdl;

static Ordinal w(std::uint32_t e, std::uint64_t c = 1) { return Ordinal::omega_power(e, c); }

TEST_CASE("ordinal addition") {
    CHECK(Ordinal(1) + w(1) == w(1));
    CHECK((w(1) + 1).str() == "w*1 + 1");
    CHECK((w(1, 2) + 3) + (w(1) + 5) == w(1, 3) + 5);
    CHECK((w(2, 3) + w(1) + 17).str() == "w^2*3 + w*1 + 17");
    CHECK(Ordinal().str() == "0");
}

TEST_CASE("ordinal times omega") {
    CHECK(ord_mul_omega(17) == w(1));
    CHECK(ord_mul_omega(w(1) + 1) == w(2));
    CHECK(ord_mul_omega(w(2)) == w(3));
    CHECK_THROWS_AS(ord_mul_omega(Ordinal()), ZeroOperand);
}

TEST_CASE("ordinal comparison") {
    CHECK(ord_cmp(w(1), 5) == Cmp::GT);
    CHECK(ord_cmp(w(1) + 1, w(1) + 1) == Cmp::EQ);
    CHECK(ord_cmp(w(1, 2), w(2)) == Cmp::LT);
}

TEST_CASE("ordinal arithmetic agrees with the triple model") {
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> d(0, 3);
    for (int i = 0; i < 5000; ++i) {
        testing::Triple a{std::uint64_t(d(rng)), std::uint64_t(d(rng)), std::uint64_t(d(rng))};
        testing::Triple b{std::uint64_t(d(rng)), std::uint64_t(d(rng)), std::uint64_t(d(rng))};
        Ordinal oa = testing::to_ordinal(a), ob = testing::to_ordinal(b);
        REQUIRE(oa + ob == testing::to_ordinal(testing::triple_add(a, b)));
        REQUIRE((oa < ob) == (a < b));
        REQUIRE((oa == ob) == (a == b));
        REQUIRE(!(oa + ob < oa));
        Ordinal oc = testing::to_ordinal({std::uint64_t(d(rng)), 0, std::uint64_t(d(rng))});
        REQUIRE((oa + ob) + oc == oa + (ob + oc));
        if (!oa.is_zero() && oa.leading_exponent() < 2) REQUIRE(ord_mul_omega(oa) > oa);
    }
}

TEST_CASE("rank examples") {
    CHECK(rank_program(parse_program("x := 1")) == Ordinal(4));
    CHECK(rank_formula(parse_formula("x > 0")) == Ordinal(0));
    CHECK(rank_formula(parse_formula("<x := 1> x > 0")) == Ordinal(5));
    CHECK(rank_program(parse_program("{x := x + 1}*")) == w(1) + 1);
    CHECK(rank_formula(parse_formula("\\exists x . x > 0")) == Ordinal(0));
    CHECK(rank_program(parse_program("{x' = 1}")) == w(1));
    CHECK(rank_program(parse_program("{x' = 1}"), RankScheme::Repaired) == Ordinal::omega_power(1, 17) + 2);
    CHECK(rank_program(parse_program("x := 1"), RankScheme::Repaired) == Ordinal(5));
}

TEST_CASE("sequent measure") {
    std::vector<FormulaPtr> g{parse_formula("x > 0"), parse_formula("<x := 1> x > 0")};
    CHECK(sequent_measure(g) == Ordinal(5));
    CHECK(sequent_measure({}) == Ordinal(0));
    CHECK(set_cmp({parse_formula("x > 0")}, {parse_formula("<x := 1> x > 0")}) == Cmp::LT);
}

TEST_CASE("rank is invariant under renaming") {
    testing::Gen g(4);
    for (int i = 0; i < 1000; ++i) {
        auto f = g.formula(5);
        for (auto s : {RankScheme::Literal, RankScheme::Repaired})
            REQUIRE(rank_formula(rename(f, "x", "_r"), s) == rank_formula(f, s));
    }
}
