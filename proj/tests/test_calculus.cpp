#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rdl/calculus.hpp"
#include "rdl/syntax.hpp"

using namespace rdl;

static FormulaPtr F(const std::string& s) { return parse_formula(s); }

static RuleInstance rule(RuleName n, int index = 0, int side = 1) {
    RuleInstance r;
    r.name = n;
    r.pos = {side, index, {}};
    return r;
}

static RuleInstance rewrite(AxiomName a, Path path = {}, int index = 0) {
    RuleInstance r = rule(RuleName::ContextRewrite, index);
    r.axiom = a;
    r.pos.path = std::move(path);
    return r;
}

static int index_of(const Sequent& s, const FormulaPtr& f, int side = 1) {
    const auto& fs = side == 0 ? s.ante : s.succ;
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (equal(fs[i], f)) return int(i);
    FAIL("formula not in sequent: " << pretty(f));
    return -1;
}

TEST_CASE("propositional and quantifier rules") {
    Sequent s({}, {F("x > 0 | y > 0"), F("z > 0")});
    auto ps = apply_rule(s, rule(RuleName::OrR, index_of(s, F("x > 0 | y > 0"))));
    REQUIRE(ps.size() == 1);
    CHECK(ps[0] == Sequent({}, {F("x > 0"), F("y > 0"), F("z > 0")}));

    Sequent a({}, {F("x > 0 & y > 0")});
    auto pa = apply_rule(a, rule(RuleName::AndR));
    REQUIRE(pa.size() == 2);
    CHECK(pa[1] == Sequent({}, {F("y > 0")}));

    RuleInstance ex = rule(RuleName::ExistsR);
    ex.witness = parse_term("2");
    auto pe = apply_rule(Sequent({}, {F("\\exists x . x > 1")}), ex);
    CHECK(pe[0] == Sequent({}, {F("<x := 2> x > 1")}));

    RuleInstance fa = rule(RuleName::ForallR);
    fa.fresh = "w";
    auto pf = apply_rule(Sequent({}, {F("\\forall x in [0, 1] . x + 1 > 0")}), fa);
    CHECK(pf[0] == Sequent({F("w >= 0 & 1 >= w")}, {F("w + 1 > 0")}));

    // freshness: w is already free in the antecedent
    CHECK_THROWS_AS(apply_rule(Sequent({F("w > 3")}, {F("\\forall x in [0, 1] . x + 1 > 0")}), fa),
                    SideConditionViolation);
    // interval bound mentioning the bound variable
    CHECK_THROWS_AS(apply_rule(Sequent({}, {F("\\forall x . (x > x + 1 | x > 2 | x > 0)")}), fa), PrincipalNotFound);

    RuleInstance sf = rule(RuleName::StarFinite);
    sf.n = 2;
    auto ps2 = apply_rule(Sequent({}, {F("<{x := x + 1}*> x > 1")}), sf);
    CHECK(ps2[0] == Sequent({}, {diamond(iterate_upto(parse_program("x := x + 1"), 2), F("x > 1"))}));

    CHECK_THROWS_AS(apply_rule(s, rule(RuleName::AndR, 0)), PrincipalNotFound);
    CHECK_THROWS_AS(apply_rule(s, rule(RuleName::OrR, 7)), PrincipalNotFound);
    CHECK_THROWS_AS(apply_rule(s, rule(RuleName::OrR, 0, 0)), PrincipalNotFound);
}

TEST_CASE("program axioms") {
    RuleInstance none;
    auto ch = axiom_instance(AxiomName::DiaChoice, F("<x := 1 ++ x := 2> x > 1"), none);
    CHECK(equal(ch.rhs, F("<x := 1> x > 1 | <x := 2> x > 1")));
    auto st = axiom_instance(AxiomName::DiaStarUnfold, F("<{x := x + 1}*> x > 1"), none);
    CHECK(equal(st.rhs, F("x > 1 | <x := x + 1> <{x := x + 1}*> x > 1")));
    auto bt = axiom_instance(AxiomName::BoxTest, F("[?x > 0] y > 0"), none);
    CHECK(equal(bt.rhs, F("x <= 0 | y > 0")));
    auto bs = axiom_instance(AxiomName::BoxStarUnfold, F("[{x := x + 1}*] x > 1"), none);
    CHECK(equal(bs.rhs, F("x > 1 & [x := x + 1] [{x := x + 1}*] x > 1")));
    CHECK(equal(axiom_instance(AxiomName::DiaSeq, F("<x := 1; y := x> y > 0"), none).rhs, F("<x := 1> <y := x> y > 0")));
    CHECK(equal(axiom_instance(AxiomName::DiaTest, F("<?x > 0> y > 0"), none).rhs, F("x > 0 & y > 0")));
    CHECK_THROWS_AS(axiom_instance(AxiomName::DiaTest, F("<x := 1> y > 0"), none), PrincipalNotFound);

    RuleInstance z;
    z.fresh = "z";
    auto as = axiom_instance(AxiomName::DiaAssign, F("<x := x + 1> x > 0"), z);
    CHECK(equal(as.rhs, safe_subst(F("x > 0"), "x", parse_term("x + 1"), "z")));
    z.fresh = "x";
    CHECK_THROWS_AS(axiom_instance(AxiomName::DiaAssign, F("<x := x + 1> x > 0"), z), SideConditionViolation);
    RuleInstance missing;
    CHECK_THROWS_AS(axiom_instance(AxiomName::DiaAssign, F("<x := 1> x > 0"), missing), MalformedParameters);

    // rewriting inside context
    Sequent s({}, {F("\\exists y . <x := 1 ++ x := 2> x > y")});
    auto p = apply_rule(s, rewrite(AxiomName::DiaChoice, {0}));
    CHECK(p[0] == Sequent({}, {F("\\exists y . (<x := 1> x > y | <x := 2> x > y)")}));
    // and back again
    RuleInstance back = rewrite(AxiomName::DiaChoice, {0});
    back.reverse = true;
    back.other = F("<x := 1 ++ x := 2> x > y");
    CHECK(apply_rule(p[0], back)[0] == s);
    // a non-axiom equivalence is not accepted
    CHECK_THROWS(apply_rule(s, rewrite(AxiomName::DiaSeq, {0})));
}

TEST_CASE("ODE axioms") {
    RuleInstance none;
    auto dual = axiom_instance(AxiomName::ODEDual, F("[{x'=1, tau'=1 & x >= 0 & \\norm(x, tau) <= 2}] x < 3"), none);
    CHECK(!dual.guard);
    CHECK(equal(dual.rhs, F("<{x'=1, tau'=1 & x < 3 | tau > 2}> (!(x >= 0 & \\norm(x, tau) <= 2) | tau > 2)")));

    RuleInstance withk;
    withk.k = cst(5);
    auto g = axiom_instance(AxiomName::ODEDual, F("[{x'=1, tau'=1 & x >= 0 & 1 >= tau}] x < 3"), withk);
    REQUIRE(g.guard);
    CHECK(equal(*g.guard, F("\\forall x . (x < 0 | \\norm(x) <= 5)")));
    CHECK_THROWS_AS(axiom_instance(AxiomName::ODEDual, F("[{x'=1, tau'=1 & x >= 0 & 1 >= tau}] x < 3"), none),
                    MalformedParameters);
    // guarded instances only at the top of a succedent formula
    Sequent s({}, {F("[{x'=1, tau'=1 & x >= 0 & 1 >= tau}] x < 3")});
    RuleInstance r = rewrite(AxiomName::ODEDual);
    r.k = cst(5);
    auto ps = apply_rule(s, r);
    CHECK(ps.size() == 2);

    RuleInstance e;
    e.euler = fresh_euler_names({"x", "tau"}, 2);
    auto de = axiom_instance(AxiomName::DiaOde, F("<{x'=1, tau'=1 & 0 > -1 & \\norm(x, tau) < 4}> x > 1"), e);
    CHECK(de.rhs->kind == FormulaKind::Exists);
    CHECK(de.rhs->var == e.euler->m);
    CHECK_THROWS_AS(axiom_instance(AxiomName::DiaOde, F("<{x'=1, tau'=1 & x > 0}> x > 1"), e), SideConditionViolation);

    RuleInstance y;
    y.fresh = "y";
    auto b = axiom_instance(AxiomName::DiaOdeBound, F("<{x'=1, tau'=1}> x > 1"), y);
    CHECK(equal(b.rhs, F("\\exists y . <{x'=1, tau'=1 & 0 > -1 & \\norm(x, tau) < y}> x > 1")));
}

// hand proof of |- <x := 1> x > 0
static Certificate assign_certificate() {
    FormulaPtr goal = F("<x := 1> x > 0");
    auto root = std::make_shared<ProofNode>();
    root->conclusion = Sequent({}, {goal});
    root->rule = rewrite(AxiomName::DiaAssign);
    root->rule.fresh = "z";
    Sequent s1 = apply_rule(root->conclusion, root->rule)[0];

    auto n1 = std::make_shared<ProofNode>();
    n1->conclusion = s1;
    n1->rule = rule(RuleName::ForallR);
    n1->rule.fresh = "w";
    Sequent s2 = apply_rule(s1, n1->rule)[0];

    auto n2 = std::make_shared<ProofNode>();
    n2->conclusion = s2;
    n2->rule = rule(RuleName::ForallR);
    n2->rule.fresh = "x1";
    Sequent s3 = apply_rule(s2, n2->rule)[0];

    auto n3 = std::make_shared<ProofNode>();
    n3->conclusion = s3;
    n3->rule = rule(RuleName::RReal);
    auto d = decide_sequent(s3);
    REQUIRE(d.verdict == OracleVerdict::Valid);
    n3->oracle_trace = d.tree;

    root->premises = {n1};
    n1->premises = {n2};
    n2->premises = {n3};
    return {goal, root};
}

TEST_CASE("certificate checking") {
    Certificate c = assign_certificate();
    auto ok = check_certificate(c);
    CHECK_MESSAGE(ok.accepted, ok.reason);

    auto j = certificate_to_json(c);
    CHECK(j["version"] == "rdl-cert/1");
    CHECK(check_certificate_json(j).accepted);
    CHECK(certificate_to_json(certificate_from_json(j)) == j);

    // the second universal must be renamed: x is free in the antecedent
    auto bad = j;
    bad["tree"]["premises"][0]["premises"][0]["params"]["fresh"] = "x";
    auto r = check_certificate_json(bad);
    CHECK_FALSE(r.accepted);
    CHECK(r.reason.find("SideConditionViolation") != std::string::npos);
    CHECK(r.path == Path{0, 0});

    auto tampered = j;
    tampered["tree"]["premises"][0]["premises"][0]["premises"][0]["conclusion"]["succ"][0] = "1 > 2";
    CHECK_FALSE(check_certificate_json(tampered).accepted);

    auto notrace = j;
    notrace["tree"]["premises"][0]["premises"][0]["premises"][0].erase("oracle_trace");
    CHECK_FALSE(check_certificate_json(notrace).accepted);

    auto other_goal = j;
    other_goal["goal"] = "<x := 2> x > 0";
    CHECK_FALSE(check_certificate_json(other_goal).accepted);

    auto unknown = j;
    unknown["tree"]["params"]["axiom"] = "MyLemma";
    CHECK_FALSE(check_certificate_json(unknown).accepted);
}

TEST_CASE("rule name mutation is rejected at that node") {
    FormulaPtr goal = F("0 > 1 | 1 > 0");
    auto root = std::make_shared<ProofNode>();
    root->conclusion = Sequent({}, {goal});
    root->rule = rule(RuleName::OrR);
    auto leaf = std::make_shared<ProofNode>();
    leaf->conclusion = apply_rule(root->conclusion, root->rule)[0];
    leaf->rule = rule(RuleName::RReal);
    leaf->oracle_trace = decide_sequent(leaf->conclusion).tree;
    root->premises = {leaf};
    Certificate c{goal, root};
    CHECK(check_certificate(c).accepted);

    auto j = certificate_to_json(c);
    j["tree"]["rule"] = "AndR";
    auto r = check_certificate_json(j);
    CHECK_FALSE(r.accepted);
    CHECK(r.path.empty());
}

TEST_CASE("apply_rule is deterministic") {
    Sequent s({F("x >= 0 & 1 >= x")}, {F("<x := x + 1; {x := 2 * x}*> x > 3")});
    RuleInstance r = rewrite(AxiomName::DiaSeq);
    CHECK(apply_rule(s, r)[0] == apply_rule(s, r)[0]);
    RuleInstance z = rewrite(AxiomName::DiaAssign);
    z.fresh = "_v0";
    Sequent t = apply_rule(s, r)[0];
    CHECK(apply_rule(t, z)[0] == apply_rule(t, z)[0]);
}
