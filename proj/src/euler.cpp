#include "rdl/euler.hpp"

#include "rdl/fragment.hpp"
#include "rdl/polynomial.hpp"

#include <cmath>
#include <set>

namespace rdl {

std::vector<std::string> ode_vars(const OdeSystem& sys) {
    std::vector<std::string> xs;
    for (const auto& p : sys) xs.push_back(p.var);
    return xs;
}

std::vector<TermPtr> ode_var_terms(const OdeSystem& sys) {
    std::vector<TermPtr> xs;
    for (const auto& p : sys) xs.push_back(var(p.var));
    return xs;
}

TermPtr poly_derivative(const TermPtr& v, const std::string& x) {
    switch (v->kind) {
        case TermKind::Var: return cst(v->name == x ? 1 : 0);
        case TermKind::Const: return cst(0);
        case TermKind::Add: return add(poly_derivative(v->lhs, x), poly_derivative(v->rhs, x));
        case TermKind::Mul:
            return add(mul(v->lhs, poly_derivative(v->rhs, x)), mul(poly_derivative(v->lhs, x), v->rhs));
    }
    return cst(0);
}

namespace {

void check_system(const OdeSystem& sys) {
    std::set<std::string> seen;
    bool clock = false;
    for (const auto& p : sys) {
        if (!seen.insert(p.var).second) throw SideConditionViolation("duplicate ODE variable " + p.var);
        if (p.var == kClock) {
            if (!is_const(p.rhs, Rational(1))) throw SideConditionViolation("clock must have rate 1");
            clock = true;
        }
    }
    if (!clock) throw SideConditionViolation("ODE system lacks the clock pair");
}

void check_free_of(const TermPtr& t, const std::vector<std::string>& xs, const char* what) {
    VarSet fv = free_vars(t);
    for (const auto& x : xs)
        if (fv.count(x)) throw VariableClash(std::string(what) + " mentions ODE variable " + x);
}

bool is_strict(const FormulaPtr& f) { return classify_formula(f).cls == FormulaClass::Strict; }
bool is_weak(const FormulaPtr& f) { return classify_formula(f).cls == FormulaClass::Weak; }

TermPtr plus_const(const TermPtr& k, long c) {
    if (k->kind == TermKind::Const) return cst(k->value + Rational(c));
    return add(k, cst(c));
}

// f[x:=y] for y fresh, on formulas without modalities
FormulaPtr rename_free(const FormulaPtr& f, const std::string& x, const std::string& y) {
    switch (f->kind) {
        case FormulaKind::Gt: return gt(term_subst(f->lhs_term, x, var(y)), term_subst(f->rhs_term, x, var(y)));
        case FormulaKind::Geq: return geq(term_subst(f->lhs_term, x, var(y)), term_subst(f->rhs_term, x, var(y)));
        case FormulaKind::And: return land(rename_free(f->left, x, y), rename_free(f->right, x, y));
        case FormulaKind::Or: return lor(rename_free(f->left, x, y), rename_free(f->right, x, y));
        case FormulaKind::Exists:
            return f->var == x ? f : exists(f->var, rename_free(f->left, x, y));
        case FormulaKind::Forall:
            return f->var == x ? f : forall(f->var, rename_free(f->left, x, y));
        default: throw std::logic_error("rename_free on a modal formula");
    }
}

VarSet vars_of(const OdeSystem& sys) {
    VarSet vs;
    for (const auto& p : sys) {
        vs.insert(p.var);
        collect_vars(p.rhs, vs);
    }
    return vs;
}

FormulaPtr norm(const OdeSystem& sys, const TermPtr& w, Strictness s) { return desugar_norm(ode_var_terms(sys), w, s); }

}  // namespace

FormulaPtr build_beta(const OdeSystem& sys, const TermPtr& k, const TermPtr& m, const TermPtr& l) {
    auto xs = ode_vars(sys);
    check_free_of(k, xs, "state bound");
    check_free_of(m, xs, "field bound");
    check_free_of(l, xs, "derivative bound");

    std::vector<TermPtr> rhs;
    for (const auto& p : sys) rhs.push_back(p.rhs);
    FormulaPtr body = desugar_norm(rhs, m, Strictness::Strict);

    std::vector<FormulaPtr> columns;
    for (const auto& xj : xs) {
        Rational fixed(0);
        std::vector<TermPtr> varying;
        for (const auto& p : sys) {
            TermPtr d = poly_derivative(p.rhs, xj);
            Polynomial dp = Polynomial::from_term(d);
            if (dp.is_constant()) fixed = fixed + abs(dp.constant_value());
            else varying.push_back(d);
        }
        // sum |a_i| < l  iff  for every sign pattern s, fixed + sum s_i a_i < l
        std::size_t patterns = std::size_t(1) << varying.size();
        std::vector<FormulaPtr> cases;
        for (std::size_t mask = 0; mask < patterns; ++mask) {
            TermPtr sum = cst(fixed);
            for (std::size_t i = 0; i < varying.size(); ++i)
                sum = add(sum, (mask >> i) & 1 ? neg(varying[i]) : varying[i]);
            cases.push_back(gt(l, sum));
        }
        columns.push_back(conj(cases));
    }
    body = land(body, conj(columns));

    TermPtr hi = plus_const(k, 2), lo = neg(hi);
    for (auto it = xs.rbegin(); it != xs.rend(); ++it)
        body = desugar_bounded_quantifier(BoundedKind::ForallClosed, *it, lo, hi, body);
    return body;
}

FormulaPtr eps_interior(const FormulaPtr& f, const std::vector<std::string>& xs, const std::string& eps,
                        const VarSet& avoid) {
    VarSet used = all_vars(f);
    if (used.count(eps)) throw FreshnessViolation("epsilon variable " + eps + " occurs in the formula");
    used.insert(avoid.begin(), avoid.end());
    used.insert(xs.begin(), xs.end());
    used.insert(eps);

    VarSet fv = free_vars(f);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& x : xs) {
        if (!fv.count(x)) continue;
        std::string y = fresh_name(used, "_y");
        used.insert(y);
        pairs.push_back({x, y});
    }
    FormulaPtr body = f;
    if (is_basic(*f)) {
        for (const auto& [x, y] : pairs) body = rename_free(body, x, y);
    } else {
        for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) body = diamond(assign(it->first, var(it->second)), body);
    }
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
        TermPtr x = var(it->first), e = var(eps);
        body = desugar_bounded_quantifier(BoundedKind::ForallClosed, it->second, sub(x, e), add(x, e), body);
    }
    return body;
}

EulerNames fresh_euler_names(const VarSet& used0, std::size_t n) {
    VarSet used = used0;
    auto take = [&](const char* prefix) {
        std::string s = fresh_name(used, prefix);
        used.insert(s);
        return s;
    };
    EulerNames e;
    e.h = take("_h");
    e.m = take("_m");
    e.l = take("_l");
    e.eps = take("_e");
    for (std::size_t i = 0; i < n; ++i) e.snap.push_back(take("_s"));
    return e;
}

ProgramPtr build_euler_step(const OdeSystem& sys, const TermPtr& k, const TermPtr& h, const TermPtr& m,
                            const TermPtr& l, const std::string& eps, const std::vector<std::string>& snap) {
    if (snap.size() != sys.size()) throw std::invalid_argument("one snapshot variable per ODE variable");
    VarSet taken = vars_of(sys);
    collect_vars(k, taken);
    collect_vars(h, taken);
    collect_vars(m, taken);
    collect_vars(l, taken);
    if (taken.count(eps)) throw FreshnessViolation("epsilon variable " + eps + " is not fresh");
    for (const auto& s : snap)
        if (taken.count(s) || s == eps) throw FreshnessViolation("snapshot variable " + s + " is not fresh");

    TermPtr e = var(eps);
    std::vector<ProgramPtr> steps;
    steps.push_back(test(norm(sys, sub(k, e), Strictness::Strict)));
    for (std::size_t i = 0; i < sys.size(); ++i) steps.push_back(assign(snap[i], var(sys[i].var)));
    for (std::size_t i = 0; i < sys.size(); ++i) {
        TermPtr v = sys[i].rhs;
        for (std::size_t j = 0; j < sys.size(); ++j) v = term_subst(v, sys[j].var, var(snap[j]));
        steps.push_back(assign(sys[i].var, add(var(snap[i]), mul(h, v))));
    }
    TermPtr grow = mul(add(cst(1), mul(h, l)), e);
    TermPtr drift = mul(mul(mul(cst(Rational(1, 2)), l), m), mul(h, h));
    steps.push_back(assign(eps, add(grow, drift)));

    ProgramPtr p = steps.back();
    for (auto it = steps.rbegin() + 1; it != steps.rend(); ++it) p = seq(*it, p);
    return p;
}

AxiomPair instantiate_diaode(const OdeSystem& sys, const FormulaPtr& rho, const TermPtr& k, const FormulaPtr& phi,
                             const EulerNames& names) {
    check_system(sys);
    auto xs = ode_vars(sys);
    check_free_of(k, xs, "state bound");
    if (!is_strict(phi) || !is_strict(rho)) throw SideConditionViolation("Euler axiom needs strict domain and postcondition");
    VarSet taken = vars_of(sys);
    for (const auto& v : all_vars(phi)) taken.insert(v);
    for (const auto& v : all_vars(rho)) taken.insert(v);
    collect_vars(k, taken);
    for (const auto& r : {names.h, names.m, names.l, names.eps})
        if (taken.count(r)) throw SideConditionViolation("reserved variable " + r + " is not fresh");

    TermPtr h = var(names.h), m = var(names.m), l = var(names.l);
    ProgramPtr eta = build_euler_step(sys, k, h, m, l, names.eps, names.snap);
    VarSet avoid = taken;
    avoid.insert(names.snap.begin(), names.snap.end());
    for (const auto& r : {names.h, names.m, names.l}) avoid.insert(r);
    ProgramPtr body = star(seq(test(eps_interior(rho, xs, names.eps, avoid)), eta));
    FormulaPtr target = land(eps_interior(phi, xs, names.eps, avoid), gt(cst(1), var(names.eps)));
    FormulaPtr reach = diamond(seq(assign(names.eps, cst(0)), body), target);
    FormulaPtr inner = exists(names.h, land(gt(h, cst(0)), reach));
    FormulaPtr rhs = exists(names.m, land(gt(m, cst(0)),
                                          exists(names.l, land(gt(l, cst(0)), land(build_beta(sys, k, m, l), inner)))));
    FormulaPtr lhs = diamond(ode(sys, land(rho, norm(sys, k, Strictness::Strict))), phi);
    return {lhs, rhs, std::nullopt};
}

AxiomPair instantiate_odedual_norm(const OdeSystem& sys, const FormulaPtr& psi, const TermPtr& k,
                                   const FormulaPtr& phi) {
    check_system(sys);
    check_free_of(k, ode_vars(sys), "state bound");
    if (!is_weak(psi) || !is_strict(phi)) throw SideConditionViolation("ODE duality needs a weak domain and strict postcondition");
    FormulaPtr dom = land(psi, norm(sys, k, Strictness::Weak));
    FormulaPtr late = gt(var(kClock), k);
    return {box(ode(sys, dom), phi), diamond(ode(sys, lor(phi, late)), lor(negate(dom), late)), std::nullopt};
}

AxiomPair instantiate_odedual(const OdeSystem& sys, const FormulaPtr& psi, const TermPtr& theta, const TermPtr& k,
                              const FormulaPtr& phi) {
    check_system(sys);
    auto xs = ode_vars(sys);
    check_free_of(k, xs, "state bound");
    check_free_of(theta, xs, "time bound");
    if (!is_weak(psi) || !is_strict(phi)) throw SideConditionViolation("ODE duality needs a weak domain and strict postcondition");
    FormulaPtr late = gt(var(kClock), theta);
    FormulaPtr lhs = box(ode(sys, land(psi, geq(theta, var(kClock)))), phi);
    FormulaPtr rhs = diamond(ode(sys, lor(phi, late)), lor(negate(psi), late));
    std::vector<TermPtr> state;
    for (const auto& x : xs)
        if (x != kClock) state.push_back(var(x));
    FormulaPtr guard = lor(negate(psi), desugar_norm(state, k, Strictness::Weak));
    for (auto it = xs.rbegin(); it != xs.rend(); ++it)
        if (*it != kClock) guard = forall(*it, guard);
    return {lhs, rhs, guard};
}

AxiomPair instantiate_diaodebound(const OdeSystem& sys, const FormulaPtr& rho, const FormulaPtr& phi,
                                  const std::string& y) {
    check_system(sys);
    VarSet taken = vars_of(sys);
    for (const auto& v : all_vars(phi)) taken.insert(v);
    for (const auto& v : all_vars(rho)) taken.insert(v);
    if (taken.count(y)) throw SideConditionViolation("bound variable " + y + " is not fresh");
    FormulaPtr lhs = diamond(ode(sys, rho), phi);
    FormulaPtr rhs = exists(y, diamond(ode(sys, land(rho, norm(sys, var(y), Strictness::Strict))), phi));
    return {lhs, rhs, std::nullopt};
}

AxiomPair instantiate_evd(const OdeSystem& sys, const FormulaPtr& rho, const FormulaPtr& phi, const std::string& t0) {
    check_system(sys);
    VarSet taken = vars_of(sys);
    for (const auto& v : free_vars(phi)) taken.insert(v);
    for (const auto& v : free_vars(rho)) taken.insert(v);
    if (taken.count(t0)) throw SideConditionViolation("time variable " + t0 + " is not fresh");
    TermPtr t = var(t0);
    FormulaPtr lhs = diamond(ode(sys, rho), phi);
    FormulaPtr rhs = exists(t0, land(diamond(ode(sys, top()), land(phi, eq(var(kClock), t))),
                                     box(ode(sys, geq(t, var(kClock))), rho)));
    return {lhs, rhs, std::nullopt};
}

// ---- numerics ----

double eval_double(const TermPtr& t, const NumState& s) {
    switch (t->kind) {
        case TermKind::Var: {
            auto it = s.find(t->name);
            if (it == s.end()) throw std::out_of_range("unbound variable " + t->name);
            return it->second;
        }
        case TermKind::Const: return t->value.to_double();
        case TermKind::Add: return eval_double(t->lhs, s) + eval_double(t->rhs, s);
        case TermKind::Mul: return eval_double(t->lhs, s) * eval_double(t->rhs, s);
    }
    return 0;
}

std::vector<NumState> numeric_flow(const OdeSystem& sys, const NumState& x0, double T, double step, double cap) {
    if (!(step > 0)) throw std::invalid_argument("step must be positive");
    auto field = [&](const NumState& s) {
        std::vector<double> d;
        for (const auto& p : sys) d.push_back(eval_double(p.rhs, s));
        return d;
    };
    auto shifted = [&](const NumState& s, const std::vector<double>& d, double c) {
        NumState r = s;
        for (std::size_t i = 0; i < sys.size(); ++i) r[sys[i].var] += c * d[i];
        return r;
    };
    std::size_t n = std::size_t(std::ceil(T / step - 1e-12));
    std::vector<NumState> out;
    NumState s = x0;
    double t = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dt = i + 1 == n ? T - t : step;
        auto k1 = field(s);
        auto k2 = field(shifted(s, k1, dt / 2));
        auto k3 = field(shifted(s, k2, dt / 2));
        auto k4 = field(shifted(s, k3, dt));
        for (std::size_t j = 0; j < sys.size(); ++j) {
            double& x = s[sys[j].var];
            x += dt / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
            if (!std::isfinite(x) || std::fabs(x) > cap) throw Overflow("flow exceeds magnitude cap at " + sys[j].var);
        }
        t += dt;
        out.push_back(s);
    }
    return out;
}

}  // namespace rdl
