#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gen.hpp"
#include "rdl/euler.hpp"
#include "rdl/fragment.hpp"
#include "rdl/polynomial.hpp"

#include <cmath>
#include <random>

using namespace rdl;

static OdeSystem system_of(const std::string& text) {
    auto p = normalize_clock(parse_program(text));
    return p->ode;
}

// power-rule derivative computed on the expanded polynomial
static Polynomial expanded_derivative(const Polynomial& p, const std::string& x) {
    Polynomial out;
    for (const auto& [mono, c] : p.terms()) {
        Polynomial term = Polynomial::constant(c);
        bool hit = false;
        for (const auto& [v, e] : mono) {
            if (v == x) {
                hit = true;
                term = term * Polynomial::constant(Rational(long(e)));
                for (unsigned i = 1; i < e; ++i) term = term * Polynomial::variable(v);
            } else {
                for (unsigned i = 0; i < e; ++i) term = term * Polynomial::variable(v);
            }
        }
        if (hit) out = out + term;
    }
    return out;
}

static bool same_poly(const Polynomial& a, const Polynomial& b) { return (a - b).terms().empty(); }

TEST_CASE("formal derivative examples") {
    CHECK(equal(poly_derivative(parse_term("x * x"), "x"), parse_term("x * 1 + 1 * x")));
    CHECK(equal(poly_derivative(parse_term("q"), "x"), cst(0)));
    CHECK(same_poly(Polynomial::from_term(poly_derivative(parse_term("x * y + y"), "x")), Polynomial::variable("y")));
}

TEST_CASE("formal derivative agrees with the power rule and finite differences") {
    testing::Gen g(21);
    std::mt19937 rng(4);
    for (int i = 0; i < 300; ++i) {
        TermPtr t = g.term(3);
        Polynomial p = Polynomial::from_term(t);
        Polynomial d = Polynomial::from_term(poly_derivative(t, "x"));
        CHECK(same_poly(d, expanded_derivative(p, "x")));
        // the first-order Taylor remainder shrinks at least linearly in the step
        std::map<std::string, Rational> pt;
        for (std::string v : {"x", "y", "z", "u", "w"}) pt[v] = Rational(long(rng() % 9) - 4, 3);
        auto remainder = [&](const Rational& h) {
            auto q = pt;
            q["x"] = q["x"] + h;
            return abs((p.eval(q) - p.eval(pt)) / h - d.eval(pt));
        };
        Rational r1 = remainder(Rational(1, 1000)), r2 = remainder(Rational(1, 2000));
        CHECK(r2 <= r1);
    }
}

static FormulaPtr strip_bounded(FormulaPtr f, int n) {
    for (int i = 0; i < n; ++i) {
        auto m = match_bounded(f);
        REQUIRE(m);
        CHECK(m->kind == BoundedKind::ForallClosed);
        f = m->body;
    }
    return f;
}

TEST_CASE("beta encodes column sums without absolute values") {
    TermPtr k = cst(2), m = var("m"), l = var("l");
    auto b1 = strip_bounded(build_beta(system_of("{x'=1}"), k, m, l), 2);
    CHECK(equal(b1->right, land(gt(l, cst(0)), gt(l, cst(0)))));

    auto b2 = strip_bounded(build_beta(system_of("{x'=x}"), k, m, l), 2);
    CHECK(equal(b2->right, land(gt(l, cst(1)), gt(l, cst(0)))));

    auto b3 = strip_bounded(build_beta(system_of("{x'=y, y'=-x}"), k, m, l), 3);
    CHECK(equal(b3->right, conj({gt(l, cst(1)), gt(l, cst(1)), gt(l, cst(0))})));

    auto sq = system_of("{x'=x*x}");
    auto b4 = strip_bounded(build_beta(sq, k, m, l), 2);
    TermPtr d = poly_derivative(parse_term("x*x"), "x");
    CHECK(equal(b4->right->left, land(gt(l, add(cst(0), d)), gt(l, add(cst(0), neg(d))))));

    auto outer = match_bounded(build_beta(system_of("{x'=1}"), k, m, l));
    CHECK(equal(outer->lo, cst(-4)));
    CHECK(equal(outer->hi, cst(4)));
    CHECK_THROWS_AS(build_beta(system_of("{x'=1}"), var("x"), m, l), VariableClash);
    CHECK(classify_formula(build_beta(system_of("{x'=y, y'=-x}"), k, m, l)).cls == FormulaClass::Strict);
}

TEST_CASE("epsilon interior") {
    FormulaPtr f = parse_formula("x > 0");
    FormulaPtr e = eps_interior(f, {"x"}, "eps");
    TermPtr x = var("x"), ep = var("eps");
    CHECK(equal(e, desugar_bounded_quantifier(BoundedKind::ForallClosed, "_y0", sub(x, ep), add(x, ep),
                                              parse_formula("_y0 > 0"))));
    auto two = eps_interior(parse_formula("x + y > 1"), {"x", "y", "tau"}, "eps");
    auto m1 = match_bounded(two);
    REQUIRE(m1);
    auto m2 = match_bounded(m1->body);
    REQUIRE(m2);
    CHECK(equal(m2->body, parse_formula("_y0 + _y1 > 1")));
    CHECK_THROWS_AS(eps_interior(parse_formula("eps > 0"), {"x"}, "eps"), FreshnessViolation);
    CHECK(equal(eps_interior(top(), {"x"}, "eps"), top()));
    // modal bodies are renamed by assignment
    auto modal = eps_interior(parse_formula("<y := x> y > 0"), {"x"}, "eps");
    CHECK(match_bounded(modal)->body->kind == FormulaKind::Diamond);
}

// runs a straight-line Euler step exactly: tests are skipped, assignments applied in order
static std::map<std::string, Rational> run_straight(const ProgramPtr& p, std::map<std::string, Rational> s) {
    switch (p->kind) {
        case ProgramKind::Seq: return run_straight(p->right, run_straight(p->left, s));
        case ProgramKind::Test: return s;
        case ProgramKind::Assign: s[p->var] = Polynomial::from_term(p->term).eval(s); return s;
        default: FAIL("unexpected program"); return s;
    }
}

TEST_CASE("Euler step error recurrence") {
    auto sys = system_of("{x'=1}");
    auto eta = build_euler_step(sys, cst(4), var("h"), var("m"), var("l"), "eps", {"s0", "s1"});
    std::map<std::string, Rational> s{{"x", 0}, {"tau", 0}, {"eps", 0}, {"h", Rational(1, 10)}, {"m", 2}, {"l", 1}};
    s = run_straight(eta, s);
    CHECK(s["eps"] == Rational(1, 100));
    CHECK(s["x"] == Rational(1, 10));
    s = run_straight(eta, s);
    CHECK(s["eps"] == Rational(21, 1000));
    s["h"] = 0;
    auto before = s["eps"];
    CHECK(run_straight(eta, s)["eps"] == before);
    CHECK_THROWS_AS(build_euler_step(sys, cst(4), var("h"), var("m"), var("l"), "x", {"s0", "s1"}), FreshnessViolation);
    CHECK(eta->left->kind == ProgramKind::Test);
}

TEST_CASE("simultaneous update reads the pre-state") {
    auto sys = system_of("{x'=y, y'=-x}");
    auto eta = build_euler_step(sys, cst(4), cst(Rational(1, 2)), var("m"), var("l"), "eps", {"a", "b", "c"});
    std::map<std::string, Rational> s{{"x", 1}, {"y", 0}, {"tau", 0}, {"eps", 0}, {"m", 1}, {"l", 1}};
    s = run_straight(eta, s);
    CHECK(s["x"] == Rational(1));
    CHECK(s["y"] == Rational(-1, 2));
    CHECK(s["tau"] == Rational(1, 2));
}

TEST_CASE("Euler error bound dominates the true deviation") {
    struct Case {
        std::string sys;
        std::map<std::string, Rational> init;
        Rational m, l;
        std::function<std::map<std::string, double>(double)> exact;
    };
    std::vector<Case> cases = {
        {"{x'=x}", {{"x", 1}, {"tau", 0}}, 3, 1, [](double t) { return std::map<std::string, double>{{"x", std::exp(t)}}; }},
        {"{x'=y, y'=-x}", {{"x", 1}, {"y", 0}, {"tau", 0}}, 1, 1,
         [](double t) { return std::map<std::string, double>{{"x", std::cos(t)}, {"y", -std::sin(t)}}; }},
    };
    for (const auto& c : cases) {
        auto sys = system_of(c.sys);
        std::vector<std::string> snaps;
        for (std::size_t i = 0; i < sys.size(); ++i) snaps.push_back("_s" + std::to_string(i));
        for (int e = 3; e <= 8; ++e) {
            Rational h(1, 1L << e);
            auto eta = build_euler_step(sys, cst(100), cst(h), cst(c.m), cst(c.l), "eps", snaps);
            auto s = c.init;
            s["eps"] = 0;
            for (long n = 0; n < (1L << e); ++n) {
                s = run_straight(eta, s);
                auto truth = c.exact(s["tau"].to_double());
                for (const auto& [v, val] : truth)
                    CHECK(std::fabs(s[v].to_double() - val) <= s["eps"].to_double() + 1e-10);
            }
        }
    }
}

TEST_CASE("axiom instances keep strictness") {
    auto sys = system_of("{x'=1}");
    auto names = fresh_euler_names({"x", "tau"}, sys.size());
    auto e = instantiate_diaode(sys, top(), cst(5), parse_formula("x > 1"), names);
    CHECK(classify_formula(e.lhs).cls == FormulaClass::Strict);
    CHECK(classify_formula(e.rhs).cls == FormulaClass::Strict);
    CHECK(equal(e.lhs, parse_formula("<{x'=1, tau'=1 & 0 > -1 & \\norm(x, tau) < 5}> x > 1")));
    CHECK(e.rhs->kind == FormulaKind::Exists);
    CHECK_THROWS_AS(instantiate_diaode(sys, top(), cst(5), parse_formula("x >= 1"), names), SideConditionViolation);
    CHECK_THROWS_AS(instantiate_diaode(sys, top(), var("x"), parse_formula("x > 1"), names), VariableClash);
    auto clash = names;
    clash.h = "x";
    CHECK_THROWS_AS(instantiate_diaode(sys, top(), cst(5), parse_formula("x > 1"), clash), SideConditionViolation);

    auto b = instantiate_diaodebound(sys, top(), parse_formula("x > 1"), "y");
    CHECK(equal(b.rhs, parse_formula("\\exists y . <{x'=1, tau'=1 & 0 > -1 & \\norm(x, tau) < y}> x > 1")));
    CHECK(classify_formula(b.rhs).cls == FormulaClass::Strict);
    CHECK_THROWS_AS(instantiate_diaodebound(sys, top(), parse_formula("x > y"), "y"), SideConditionViolation);

    auto d = instantiate_odedual_norm(sys, parse_formula("x >= 0"), cst(2), parse_formula("x < 3"));
    CHECK(classify_formula(d.lhs).cls == FormulaClass::Strict);
    CHECK(classify_formula(d.rhs).cls == FormulaClass::Strict);
    CHECK(!d.guard);

    auto g = instantiate_odedual(sys, parse_formula("x >= 0"), cst(1), cst(2), parse_formula("x < 3"));
    REQUIRE(g.guard);
    CHECK(equal(*g.guard, parse_formula("\\forall x . (x < 0 | x >= -2 & 2 >= x)")));
    CHECK(classify_formula(g.rhs).cls == FormulaClass::Strict);

    auto v = instantiate_evd(sys, parse_formula("x > -1"), parse_formula("x > 1"), "t0");
    CHECK(equal(v.rhs, parse_formula("\\exists t0 . (<{x'=1, tau'=1}> (x > 1 & tau = t0) & "
                                     "[{x'=1, tau'=1 & t0 >= tau}] x > -1)")));
    CHECK_THROWS_AS(instantiate_diaode({{"x", cst(1)}}, top(), cst(5), parse_formula("x > 1"), names),
                    SideConditionViolation);
}

TEST_CASE("numeric flow") {
    auto lin = numeric_flow(system_of("{x'=1}"), {{"x", 0}, {"tau", 0}}, 1, 0.1);
    CHECK(lin.size() == 10);
    CHECK(std::fabs(lin.back().at("x") - 1) < 1e-12);
    auto ex = numeric_flow(system_of("{x'=x}"), {{"x", 1}, {"tau", 0}}, 1, 1e-3);
    CHECK(std::fabs(ex.back().at("x") - std::exp(1.0)) < 1e-8);
    auto circ = numeric_flow(system_of("{x'=y, y'=-x}"), {{"x", 1}, {"y", 0}, {"tau", 0}}, 6.3, 1e-3);
    for (const auto& s : circ) CHECK(std::fabs(s.at("x") * s.at("x") + s.at("y") * s.at("y") - 1) < 1e-8);
    CHECK_THROWS_AS(numeric_flow(system_of("{x'=x*x}"), {{"x", 1}, {"tau", 0}}, 2, 1e-2, 1e6), Overflow);
}
