#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rdl/search.hpp"
#include "rdl/simsem.hpp"
#include "rdl/syntax.hpp"

#include <functional>

using namespace rdl;

namespace {

const char* kGoldenA = "<x := 1> x > 0";
const char* kGoldenB = "\\exists x . x*x < 1";
const char* kGoldenC = "<x := 0; {x := x + 1}*> x > 5";
const char* kGoldenD = "<x := 0; tau := 0; {x' = 1, tau' = 1}> x > 1";
const char* kGoldenE = "[x := 0; tau := 0; {x' = 0, tau' = 1 & tau <= 1 & \\norm(x, tau) <= 2}] x < 1";

void walk(const ProofPtr& p, const std::function<void(const ProofNode&)>& fn) {
    fn(*p);
    for (const auto& k : p->premises) walk(k, fn);
}

std::vector<std::string> witnesses(const Certificate& c) {
    std::vector<std::string> out;
    walk(c.tree, [&](const ProofNode& n) {
        if (n.rule.name == RuleName::ExistsR) out.push_back(pretty(n.rule.witness));
    });
    return out;
}

std::vector<int> loop_counts(const Certificate& c) {
    std::vector<int> out;
    walk(c.tree, [&](const ProofNode& n) {
        if (n.rule.name == RuleName::StarFinite) out.push_back(n.rule.n);
    });
    return out;
}

bool uses(const Certificate& c, AxiomName a) {
    bool found = false;
    walk(c.tree, [&](const ProofNode& n) {
        if (n.rule.name == RuleName::ContextRewrite && n.rule.axiom == a) found = true;
    });
    return found;
}

Certificate proved(const char* text, Schedule s = {}) {
    s.max_seconds = 60;
    ProveResult r = prove(parse_formula(text), s);
    REQUIRE(r.certificate);
    CHECK(r.stats.rank_violations == 0);
    CHECK(r.stats.rank_checks > 0);
    auto chk = check_certificate(*r.certificate);
    CHECK_MESSAGE(chk.accepted, chk.reason);
    CHECK(check_certificate_json(certificate_to_json(*r.certificate)).accepted);
    return *r.certificate;
}

// Splits a printed sequent side at top-level ", ".
std::vector<std::string> split_side(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (depth == 0 && c == ',' && i + 1 < s.size() && s[i + 1] == ' ') {
            out.push_back(cur);
            cur.clear();
            ++i;
            continue;
        }
        cur += c;
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

TEST_CASE("golden proofs") {
    Certificate a = proved(kGoldenA);
    CHECK(uses(a, AxiomName::DiaAssign));

    Certificate b = proved(kGoldenB);
    REQUIRE(witnesses(b).size() == 1);
    CHECK(witnesses(b)[0] == "0");

    Certificate c = proved(kGoldenC);
    CHECK(loop_counts(c) == std::vector<int>{6});
    // simulation agrees that six iterations suffice
    auto six = parse_formula("<x := 0; x := x + 1; x := x + 1; x := x + 1; x := x + 1; x := x + 1; x := x + 1> x > 5");
    CHECK(sample_truth({}, six) == Truth::True);

    Certificate d = proved(kGoldenD);
    CHECK(uses(d, AxiomName::DiaOdeBound));
    CHECK(uses(d, AxiomName::DiaOde));
    // forced witnesses, in order: the state bound k, then m, l, h
    CHECK(witnesses(d) == std::vector<std::string>{"2", "2", "1", "1/8"});
    CHECK(loop_counts(d) == std::vector<int>{11});

    Certificate e = proved(kGoldenE);
    CHECK(uses(e, AxiomName::ODEDual));
    CHECK(uses(e, AxiomName::BoxSeq));
    CHECK(witnesses(e) == std::vector<std::string>{"2", "2", "1", "1/8"});
    CHECK(loop_counts(e) == std::vector<int>{11});
}

TEST_CASE("offset witnesses cover a box of free values") {
    // no single constant works for every x in [0,10]
    Certificate c = proved("\\forall x in [0, 10] . \\exists y . (x < y & y < x + 1)");
    REQUIRE(witnesses(c).size() == 1);
    CHECK(witnesses(c)[0].find('x') != std::string::npos);
}

TEST_CASE("preprocess eliminates boxes") {
    auto p = preprocess(parse_formula("[?x > 0] y > 0"));
    CHECK(equal(p.result, parse_formula("!(x > 0) | y > 0")));
    REQUIRE(p.steps.size() == 1);
    CHECK(p.steps[0].axiom == AxiomName::BoxTest);

    auto q = preprocess(parse_formula(kGoldenE));
    CHECK(in_rrdl(q.result, Side::Strict).ok);
    std::function<bool(const FormulaPtr&)> box_free = [&](const FormulaPtr& f) {
        if (f->kind == FormulaKind::Box) return false;
        if (f->left && !box_free(f->left)) return false;
        if (f->right && !box_free(f->right)) return false;
        return true;
    };
    CHECK(box_free(q.result));

    CHECK_THROWS_AS(preprocess(parse_formula("[{x := x + 1}*] x > 0")), NotInFragment);
}

TEST_CASE("reduce_once cases") {
    auto r = reduce_once(Sequent({}, {parse_formula("<x := 1> x > 0 | x > 0")}));
    REQUIRE(r.kind == ReductionStep::Kind::Step);
    CHECK(r.rule.name == RuleName::OrR);
    REQUIRE(r.premises.size() == 1);
    CHECK(r.premises[0].succ.size() == 2);

    r = reduce_once(Sequent({}, {parse_formula("<x := 1 ++ x := 2> x > 0")}));
    CHECK(r.rule.name == RuleName::ContextRewrite);
    CHECK(r.rule.axiom == AxiomName::DiaChoice);

    r = reduce_once(Sequent({}, {parse_formula("<{x := x + 1}*> x > 0")}));
    CHECK(r.kind == ReductionStep::Kind::NeedsSearch);
    CHECK(r.choice == "loop");
    r = reduce_once(Sequent({}, {parse_formula("\\exists x . x > 0")}));
    CHECK(r.choice == "witness");
    r = reduce_once(Sequent({}, {parse_formula("<{x' = 1, tau' = 1}> x > 0")}));
    CHECK(r.choice == "euler");

    r = reduce_once(Sequent({parse_formula("x >= 0")}, {parse_formula("x > -1")}));
    CHECK(r.kind == ReductionStep::Kind::OracleLeaf);

    // the maximal-rank formula is reduced first
    Sequent two({}, {parse_formula("\\exists y . y > 0"), parse_formula("<x := 1> <x := 2> x > 0")});
    CHECK(two.succ[std::size_t(select_formula(two))]->kind == FormulaKind::Diamond);
}

TEST_CASE("Euler tuple grid") {
    auto t0 = euler_tuples(0);
    REQUIRE(t0.size() == 1);
    CHECK(t0[0].k == Rational(1));
    CHECK(t0[0].h == Rational(1, 2));
    CHECK(euler_tuples(1).size() == 5);
    CHECK(euler_tuples(4).size() == 70);
    // every tuple of a round is admitted again in later rounds
    auto t3 = euler_tuples(3), t4 = euler_tuples(4);
    for (std::size_t i = 0; i < t3.size(); ++i) CHECK(t3[i].h == t4[i].h);
}

TEST_CASE("fairness: proof appears once the round admits the candidate") {
    Schedule s;
    s.max_rounds = 1;
    CHECK_FALSE(prove(parse_formula(kGoldenC), s).certificate);
    s.max_rounds = 2;
    CHECK(prove(parse_formula(kGoldenC), s).certificate);

    s.max_rounds = 4;
    CHECK_FALSE(prove(parse_formula(kGoldenD), s).certificate);
    s.max_rounds = 5;
    CHECK(prove(parse_formula(kGoldenD), s).certificate);
}

TEST_CASE("timeouts and fragment errors") {
    Schedule s;
    s.max_rounds = 4;
    ProveResult r = prove(parse_formula("\\exists x . x > x"), s);
    REQUIRE(r.timeout);
    CHECK_FALSE(r.certificate);
    CHECK(r.timeout->witness_stream_exhausted);
    std::string rep = frontier_report(*r.timeout, r.stats);
    CHECK(rep.find("witness stream exhausted") != std::string::npos);
    REQUIRE_FALSE(r.timeout->frontier.empty());
    for (const auto& f : r.timeout->frontier) {
        auto cut = f.sequent.find("==>");
        REQUIRE(cut != std::string::npos);
        std::string ante = f.sequent.substr(0, cut), succ = f.sequent.substr(cut + 3);
        for (const auto& part : split_side(ante))
            if (part.find_first_not_of(' ') != std::string::npos) CHECK_NOTHROW(parse_formula(part));
        for (const auto& part : split_side(succ)) CHECK_NOTHROW(parse_formula(part));
    }

    s.max_nodes = 50;
    r = prove(parse_formula(kGoldenD), s);
    REQUIRE(r.timeout);
    CHECK(r.timeout->reason == "nodes");

    CHECK_THROWS_AS(prove(parse_formula("\\exists x . x >= 0")), NotInFragment);
    CHECK_THROWS_AS(prove(parse_formula("x > 0")), NotInFragment);
    CHECK_THROWS_AS(prove(parse_formula("<{x' = 1, tau' = 2}> x > 0")), ClockMisuse);
}

TEST_CASE("search is deterministic") {
    auto a = prove(parse_formula(kGoldenC));
    auto b = prove(parse_formula(kGoldenC));
    REQUIRE(a.certificate);
    REQUIRE(b.certificate);
    CHECK(certificate_to_json(*a.certificate) == certificate_to_json(*b.certificate));
}
