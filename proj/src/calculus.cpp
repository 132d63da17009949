#include "rdl/calculus.hpp"

#include "rdl/syntax.hpp"

#include <array>
#include <functional>

namespace rdl {

namespace {

constexpr std::array<std::pair<RuleName, const char*>, 10> kRules{{
    {RuleName::RReal, "R_real"},
    {RuleName::OrR, "OrR"},
    {RuleName::AndR, "AndR"},
    {RuleName::ExistsR, "ExistsR"},
    {RuleName::ForallR, "ForallR"},
    {RuleName::CutC, "Cut_C"},
    {RuleName::StarFinite, "StarFinite"},
    {RuleName::ContextRewrite, "ContextRewrite"},
    {RuleName::WeakenL, "WeakenL"},
    {RuleName::WeakenR, "WeakenR"},
}};

constexpr std::array<std::pair<AxiomName, const char*>, 14> kAxioms{{
    {AxiomName::DiaTest, "DiaTest"},
    {AxiomName::BoxTest, "BoxTest"},
    {AxiomName::DiaChoice, "DiaChoice"},
    {AxiomName::BoxChoice, "BoxChoice"},
    {AxiomName::DiaSeq, "DiaSeq"},
    {AxiomName::BoxSeq, "BoxSeq"},
    {AxiomName::DiaStarUnfold, "DiaStarUnfold"},
    {AxiomName::BoxStarUnfold, "BoxStarUnfold"},
    {AxiomName::DiaAssign, "DiaAssign"},
    {AxiomName::BoxAssign, "BoxAssign"},
    {AxiomName::ODEDual, "ODEDual"},
    {AxiomName::DiaOde, "DiaOde"},
    {AxiomName::DiaOdeBound, "DiaOdeBound"},
    {AxiomName::EvolutionDomain, "EvolutionDomain"},
}};

[[noreturn]] void no_match(AxiomName a, const FormulaPtr& f) {
    throw PrincipalNotFound(std::string(to_string(a)) + " does not match " + pretty(f));
}

bool is_modal(const FormulaPtr& f, FormulaKind k, ProgramKind pk) {
    return f->kind == k && f->program->kind == pk;
}

}  // namespace

const char* to_string(RuleName r) {
    for (const auto& [k, s] : kRules)
        if (k == r) return s;
    return "?";
}
const char* to_string(AxiomName a) {
    for (const auto& [k, s] : kAxioms)
        if (k == a) return s;
    return "?";
}
std::optional<RuleName> rule_from_string(const std::string& s) {
    for (const auto& [k, n] : kRules)
        if (s == n) return k;
    return std::nullopt;
}
std::optional<AxiomName> axiom_from_string(const std::string& s) {
    for (const auto& [k, n] : kAxioms)
        if (s == n) return k;
    return std::nullopt;
}

// ---- axioms ----

AxiomPair axiom_instance(AxiomName a, const FormulaPtr& f, const RuleInstance& r) {
    using FK = FormulaKind;
    using PK = ProgramKind;
    auto pair = [&](FormulaPtr rhs) { return AxiomPair{f, std::move(rhs), std::nullopt}; };
    switch (a) {
        case AxiomName::DiaTest:
            if (!is_modal(f, FK::Diamond, PK::Test)) no_match(a, f);
            return pair(land(f->program->formula, f->left));
        case AxiomName::BoxTest:
            if (!is_modal(f, FK::Box, PK::Test)) no_match(a, f);
            return pair(lor(negate(f->program->formula), f->left));
        case AxiomName::DiaChoice:
            if (!is_modal(f, FK::Diamond, PK::Choice)) no_match(a, f);
            return pair(lor(diamond(f->program->left, f->left), diamond(f->program->right, f->left)));
        case AxiomName::BoxChoice:
            if (!is_modal(f, FK::Box, PK::Choice)) no_match(a, f);
            return pair(land(box(f->program->left, f->left), box(f->program->right, f->left)));
        case AxiomName::DiaSeq:
            if (!is_modal(f, FK::Diamond, PK::Seq)) no_match(a, f);
            return pair(diamond(f->program->left, diamond(f->program->right, f->left)));
        case AxiomName::BoxSeq:
            if (!is_modal(f, FK::Box, PK::Seq)) no_match(a, f);
            return pair(box(f->program->left, box(f->program->right, f->left)));
        case AxiomName::DiaStarUnfold:
            if (!is_modal(f, FK::Diamond, PK::Star)) no_match(a, f);
            return pair(lor(f->left, diamond(f->program->left, f)));
        case AxiomName::BoxStarUnfold:
            if (!is_modal(f, FK::Box, PK::Star)) no_match(a, f);
            return pair(land(f->left, box(f->program->left, f)));
        case AxiomName::DiaAssign:
        case AxiomName::BoxAssign: {
            FK want = a == AxiomName::DiaAssign ? FK::Diamond : FK::Box;
            if (!is_modal(f, want, PK::Assign)) no_match(a, f);
            if (r.fresh.empty()) throw MalformedParameters("assignment axiom needs the fresh variable z");
            const std::string& x = f->program->var;
            VarSet used = all_vars(f->left);
            collect_vars(f->program->term, used);
            used.insert(x);
            if (used.count(r.fresh)) throw SideConditionViolation("z = " + r.fresh + " is not fresh for the assignment");
            return pair(safe_subst(f->left, x, f->program->term, r.fresh));
        }
        case AxiomName::ODEDual: {
            if (!is_modal(f, FK::Box, PK::Ode)) no_match(a, f);
            const auto& sys = f->program->ode;
            if (auto nd = match_norm_domain(f->program)) {
                // the norm covers the clock, so the domain already bounds the time
                // side conditions only; the norm may list the variables in any order
                instantiate_odedual_norm(sys, nd->psi, nd->bound, f->left);
                FormulaPtr late = gt(var(kClock), nd->bound);
                return pair(diamond(ode(sys, lor(f->left, late)), lor(negate(f->program->formula), late)));
            }
            const FormulaPtr& dom = f->program->formula;
            if (!r.k) throw MalformedParameters("ODE duality without a norm domain needs the state bound k");
            if (dom->kind != FK::And || dom->right->kind != FK::Geq || dom->right->rhs_term->kind != TermKind::Var ||
                dom->right->rhs_term->name != kClock)
                throw SideConditionViolation("ODE duality needs a domain psi & |x|<=k or psi & theta >= tau");
            AxiomPair p = instantiate_odedual(sys, dom->left, dom->right->lhs_term, r.k, f->left);
            if (!equal(p.lhs, f)) no_match(a, f);
            return p;
        }
        case AxiomName::DiaOde: {
            if (!is_modal(f, FK::Diamond, PK::Ode)) no_match(a, f);
            if (!r.euler) throw MalformedParameters("Euler axiom needs its reserved names");
            const FormulaPtr& dom = f->program->formula;
            if (dom->kind != FK::And) throw SideConditionViolation("Euler axiom needs a domain rho & |x| < k");
            auto nm = match_norm(dom->right, Strictness::Strict);
            if (!nm) throw SideConditionViolation("Euler axiom needs a domain rho & |x| < k");
            AxiomPair p = instantiate_diaode(f->program->ode, dom->left, nm->second, f->left, *r.euler);
            if (!equal(p.lhs, f)) throw SideConditionViolation("norm must list the ODE variables in order");
            return p;
        }
        case AxiomName::DiaOdeBound: {
            if (!is_modal(f, FK::Diamond, PK::Ode)) no_match(a, f);
            if (r.fresh.empty()) throw MalformedParameters("bounding axiom needs the fresh variable y");
            return instantiate_diaodebound(f->program->ode, f->program->formula, f->left, r.fresh);
        }
        case AxiomName::EvolutionDomain: {
            if (!is_modal(f, FK::Diamond, PK::Ode)) no_match(a, f);
            if (r.fresh.empty()) throw MalformedParameters("evolution domain axiom needs the fresh variable t0");
            return instantiate_evd(f->program->ode, f->program->formula, f->left, r.fresh);
        }
    }
    no_match(a, f);
}

// ---- positions ----

namespace {

FormulaPtr sub_f(const FormulaPtr& f, const Path& p, std::size_t i);
FormulaPtr sub_p(const ProgramPtr& a, const Path& p, std::size_t i) {
    if (i == p.size()) throw PrincipalNotFound("position ends inside a program");
    int c = p[i];
    switch (a->kind) {
        case ProgramKind::Test:
            if (c == 0) return sub_f(a->formula, p, i + 1);
            break;
        case ProgramKind::Ode:
            if (c == 0) return sub_f(a->formula, p, i + 1);
            break;
        case ProgramKind::Choice:
        case ProgramKind::Seq:
            if (c == 0 || c == 1) return sub_p(c == 0 ? a->left : a->right, p, i + 1);
            break;
        case ProgramKind::Star:
            if (c == 0) return sub_p(a->left, p, i + 1);
            break;
        case ProgramKind::Assign: break;
    }
    throw PrincipalNotFound("no child " + std::to_string(c) + " at " + path_str(Path(p.begin(), p.begin() + i)));
}

FormulaPtr sub_f(const FormulaPtr& f, const Path& p, std::size_t i) {
    if (i == p.size()) return f;
    int c = p[i];
    switch (f->kind) {
        case FormulaKind::And:
        case FormulaKind::Or:
            if (c == 0 || c == 1) return sub_f(c == 0 ? f->left : f->right, p, i + 1);
            break;
        case FormulaKind::Exists:
        case FormulaKind::Forall:
            if (c == 0) return sub_f(f->left, p, i + 1);
            break;
        case FormulaKind::Diamond:
        case FormulaKind::Box:
            if (c == 0) return sub_p(f->program, p, i + 1);
            if (c == 1) return sub_f(f->left, p, i + 1);
            break;
        default: break;
    }
    throw PrincipalNotFound("no child " + std::to_string(c) + " at " + path_str(Path(p.begin(), p.begin() + i)));
}

FormulaPtr rep_f(const FormulaPtr& f, const Path& p, std::size_t i, const FormulaPtr& r);
ProgramPtr rep_p(const ProgramPtr& a, const Path& p, std::size_t i, const FormulaPtr& r) {
    if (i == p.size()) throw PrincipalNotFound("position ends inside a program");
    int c = p[i];
    switch (a->kind) {
        case ProgramKind::Test:
            if (c == 0) return test(rep_f(a->formula, p, i + 1, r));
            break;
        case ProgramKind::Ode:
            if (c == 0) return ode(a->ode, rep_f(a->formula, p, i + 1, r));
            break;
        case ProgramKind::Choice:
            if (c == 0) return choice(rep_p(a->left, p, i + 1, r), a->right);
            if (c == 1) return choice(a->left, rep_p(a->right, p, i + 1, r));
            break;
        case ProgramKind::Seq:
            if (c == 0) return seq(rep_p(a->left, p, i + 1, r), a->right);
            if (c == 1) return seq(a->left, rep_p(a->right, p, i + 1, r));
            break;
        case ProgramKind::Star:
            if (c == 0) return star(rep_p(a->left, p, i + 1, r));
            break;
        case ProgramKind::Assign: break;
    }
    throw PrincipalNotFound("no child " + std::to_string(c) + " in program");
}

FormulaPtr rep_f(const FormulaPtr& f, const Path& p, std::size_t i, const FormulaPtr& r) {
    if (i == p.size()) return r;
    int c = p[i];
    switch (f->kind) {
        case FormulaKind::And:
            if (c == 0) return land(rep_f(f->left, p, i + 1, r), f->right);
            if (c == 1) return land(f->left, rep_f(f->right, p, i + 1, r));
            break;
        case FormulaKind::Or:
            if (c == 0) return lor(rep_f(f->left, p, i + 1, r), f->right);
            if (c == 1) return lor(f->left, rep_f(f->right, p, i + 1, r));
            break;
        case FormulaKind::Exists:
            if (c == 0) return exists(f->var, rep_f(f->left, p, i + 1, r));
            break;
        case FormulaKind::Forall:
            if (c == 0) return forall(f->var, rep_f(f->left, p, i + 1, r));
            break;
        case FormulaKind::Diamond:
            if (c == 0) return diamond(rep_p(f->program, p, i + 1, r), f->left);
            if (c == 1) return diamond(f->program, rep_f(f->left, p, i + 1, r));
            break;
        case FormulaKind::Box:
            if (c == 0) return box(rep_p(f->program, p, i + 1, r), f->left);
            if (c == 1) return box(f->program, rep_f(f->left, p, i + 1, r));
            break;
        default: break;
    }
    throw PrincipalNotFound("no child " + std::to_string(c) + " in formula");
}

const std::vector<FormulaPtr>& side_of(const Sequent& s, int side) {
    if (side == 0) return s.ante;
    if (side == 1) return s.succ;
    throw PrincipalNotFound("side must be 0 or 1");
}

}  // namespace

FormulaPtr subformula_at(const FormulaPtr& f, const Path& p) { return sub_f(f, p, 0); }
FormulaPtr replace_at(const FormulaPtr& f, const Path& p, const FormulaPtr& r) { return rep_f(f, p, 0, r); }

FormulaPtr principal_of(const Sequent& s, const Position& pos) {
    const auto& fs = side_of(s, pos.side);
    if (pos.index < 0 || std::size_t(pos.index) >= fs.size())
        throw PrincipalNotFound("index " + std::to_string(pos.index) + " out of range");
    return fs[std::size_t(pos.index)];
}

// ---- rules ----

std::vector<Sequent> apply_rule(const Sequent& s, const RuleInstance& r) {
    using FK = FormulaKind;
    if (r.name != RuleName::ContextRewrite && !r.pos.path.empty())
        throw MalformedParameters(std::string(to_string(r.name)) + " applies at the top level only");
    if (r.name == RuleName::RReal) return {};

    FormulaPtr f = principal_of(s, r.pos);
    std::vector<FormulaPtr> ante = s.ante, succ = s.succ;
    auto& mine = r.pos.side == 0 ? ante : succ;
    mine.erase(mine.begin() + r.pos.index);
    auto need_succ = [&] {
        if (r.pos.side != 1) throw PrincipalNotFound(std::string(to_string(r.name)) + " is a succedent rule");
    };
    auto with = [&](std::vector<FormulaPtr> a, std::vector<FormulaPtr> c, std::initializer_list<FormulaPtr> more_a,
                    std::initializer_list<FormulaPtr> more_c) {
        a.insert(a.end(), more_a);
        c.insert(c.end(), more_c);
        return Sequent(std::move(a), std::move(c));
    };

    switch (r.name) {
        case RuleName::OrR:
            need_succ();
            if (f->kind != FK::Or) throw PrincipalNotFound("OrR needs a disjunction");
            return {with(ante, succ, {}, {f->left, f->right})};
        case RuleName::AndR:
            need_succ();
            if (f->kind != FK::And) throw PrincipalNotFound("AndR needs a conjunction");
            return {with(ante, succ, {}, {f->left}), with(ante, succ, {}, {f->right})};
        case RuleName::ExistsR:
            need_succ();
            if (f->kind != FK::Exists) throw PrincipalNotFound("ExistsR needs an existential");
            if (!r.witness) throw MalformedParameters("ExistsR needs a witness term");
            return {with(ante, succ, {}, {diamond(assign(f->var, r.witness), f->left)})};
        case RuleName::ForallR: {
            need_succ();
            auto m0 = match_bounded(f);
            if (!m0 || m0->kind != BoundedKind::ForallClosed)
                throw PrincipalNotFound("ForallR needs a closed bounded universal");
            if (r.fresh.empty()) throw MalformedParameters("ForallR needs a variable name");
            FormulaPtr g = f;
            if (r.fresh != m0->var) {
                try {
                    g = rename(f, m0->var, r.fresh);
                } catch (const FreshnessViolation& e) {
                    throw SideConditionViolation(std::string("ForallR rename: ") + e.what());
                }
            }
            auto m = match_bounded(g);
            VarSet bv = free_vars(m->lo);
            collect_vars(m->hi, bv);
            if (bv.count(m->var)) throw SideConditionViolation("interval bounds mention " + m->var);
            for (const auto& h : ante)
                if (free_vars(h).count(m->var)) throw SideConditionViolation(m->var + " is free in the antecedent");
            for (const auto& h : succ)
                if (free_vars(h).count(m->var)) throw SideConditionViolation(m->var + " is free in the succedent");
            return {with(ante, succ, {in_interval(m->var, m->lo, m->hi)}, {m->body})};
        }
        case RuleName::StarFinite:
            need_succ();
            if (f->kind != FK::Diamond || f->program->kind != ProgramKind::Star)
                throw PrincipalNotFound("StarFinite needs a diamond of a loop");
            if (r.n < 0) throw MalformedParameters("StarFinite needs n >= 0");
            return {with(ante, succ, {}, {diamond(iterate_upto(f->program->left, r.n), f->left)})};
        case RuleName::WeakenL:
            if (r.pos.side != 0) throw PrincipalNotFound("WeakenL is an antecedent rule");
            return {Sequent(ante, succ)};
        case RuleName::WeakenR:
            need_succ();
            return {Sequent(ante, succ)};
        case RuleName::CutC: {
            need_succ();
            if (!r.other) throw MalformedParameters("Cut_C needs the replacement formula");
            FormulaPtr iff = land(lor(negate(f), r.other), lor(negate(r.other), f));
            return {Sequent({}, {iff}), with(ante, succ, {}, {r.other})};
        }
        case RuleName::ContextRewrite: {
            FormulaPtr sub = subformula_at(f, r.pos.path);
            FormulaPtr replacement;
            AxiomPair inst;
            if (!r.reverse) {
                inst = axiom_instance(r.axiom, sub, r);
                replacement = inst.rhs;
            } else {
                if (!r.other) throw MalformedParameters("reverse rewrite needs the left side");
                inst = axiom_instance(r.axiom, r.other, r);
                if (!equal(inst.rhs, sub)) throw PrincipalNotFound("reverse rewrite: right side does not match");
                replacement = inst.lhs;
            }
            FormulaPtr g = replace_at(f, r.pos.path, replacement);
            std::vector<Sequent> out{r.pos.side == 0 ? with(ante, succ, {g}, {}) : with(ante, succ, {}, {g})};
            if (inst.guard) {
                if (r.pos.side != 1 || !r.pos.path.empty())
                    throw SideConditionViolation("a guarded instance must be applied at the top of a succedent formula");
                out.push_back(with(ante, succ, {}, {*inst.guard}));
            }
            return out;
        }
        case RuleName::RReal: break;
    }
    return {};
}

// ---- certificates ----

nlohmann::json rule_params_to_json(const RuleInstance& r) {
    nlohmann::json p = nlohmann::json::object();
    switch (r.name) {
        case RuleName::ExistsR: p["witness"] = pretty(r.witness); break;
        case RuleName::ForallR: p["fresh"] = r.fresh; break;
        case RuleName::StarFinite: p["n"] = r.n; break;
        case RuleName::CutC: p["rho"] = pretty(r.other); break;
        case RuleName::ContextRewrite:
            p["axiom"] = to_string(r.axiom);
            if (r.reverse) {
                p["reverse"] = true;
                p["lhs"] = pretty(r.other);
            }
            if (!r.fresh.empty()) p["fresh"] = r.fresh;
            if (r.k) p["k"] = pretty(r.k);
            if (r.euler)
                p["euler"] = {{"h", r.euler->h}, {"m", r.euler->m}, {"l", r.euler->l}, {"eps", r.euler->eps},
                              {"snap", r.euler->snap}};
            break;
        default: break;
    }
    return p;
}

namespace {

nlohmann::json sequent_json(const Sequent& s) {
    nlohmann::json a = nlohmann::json::array(), c = nlohmann::json::array();
    for (const auto& f : s.ante) a.push_back(pretty(f));
    for (const auto& f : s.succ) c.push_back(pretty(f));
    return {{"ante", a}, {"succ", c}};
}

Sequent sequent_from(const nlohmann::json& j) {
    std::vector<FormulaPtr> a, c;
    for (const auto& x : j.at("ante")) a.push_back(parse_formula(x.get<std::string>()));
    for (const auto& x : j.at("succ")) c.push_back(parse_formula(x.get<std::string>()));
    Sequent s(a, c);
    if (s.ante.size() != a.size() || s.succ.size() != c.size()) throw MalformedParameters("duplicate formulas in a sequent");
    return s;
}

nlohmann::json node_json(const ProofPtr& n) {
    nlohmann::json j;
    j["conclusion"] = sequent_json(n->conclusion);
    j["rule"] = to_string(n->rule.name);
    nlohmann::json pos = {n->rule.pos.side, n->rule.pos.index};
    for (int c : n->rule.pos.path) pos.push_back(c);
    j["position"] = pos;
    j["params"] = rule_params_to_json(n->rule);
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& p : n->premises) ps.push_back(node_json(p));
    j["premises"] = ps;
    if (n->oracle_trace) j["oracle_trace"] = tree_to_json(n->oracle_trace);
    return j;
}

RuleInstance rule_from(const nlohmann::json& j) {
    RuleInstance r;
    auto name = rule_from_string(j.at("rule").get<std::string>());
    if (!name) throw MalformedParameters("unknown rule " + j.at("rule").get<std::string>());
    r.name = *name;
    const auto& pos = j.at("position");
    if (!pos.is_array() || pos.size() < 2) throw MalformedParameters("position needs side and index");
    r.pos.side = pos[0].get<int>();
    r.pos.index = pos[1].get<int>();
    for (std::size_t i = 2; i < pos.size(); ++i) r.pos.path.push_back(pos[i].get<int>());
    const auto& p = j.at("params");
    static const std::set<std::string> known{"witness", "fresh", "n", "rho", "axiom", "reverse", "lhs", "k", "euler"};
    for (const auto& [key, _] : p.items())
        if (!known.count(key)) throw MalformedParameters("unknown parameter " + key);
    if (p.contains("witness")) r.witness = parse_term(p["witness"].get<std::string>());
    if (p.contains("fresh")) r.fresh = p["fresh"].get<std::string>();
    if (p.contains("n")) r.n = p["n"].get<int>();
    if (p.contains("rho")) r.other = parse_formula(p["rho"].get<std::string>());
    if (p.contains("axiom")) {
        auto a = axiom_from_string(p["axiom"].get<std::string>());
        if (!a) throw MalformedParameters("unknown axiom " + p["axiom"].get<std::string>());
        r.axiom = *a;
    }
    if (p.contains("reverse")) r.reverse = p["reverse"].get<bool>();
    if (p.contains("lhs")) r.other = parse_formula(p["lhs"].get<std::string>());
    if (p.contains("k")) r.k = parse_term(p["k"].get<std::string>());
    if (p.contains("euler")) {
        const auto& e = p["euler"];
        r.euler = EulerNames{e.at("h").get<std::string>(), e.at("m").get<std::string>(), e.at("l").get<std::string>(),
                             e.at("eps").get<std::string>(), e.at("snap").get<std::vector<std::string>>()};
    }
    return r;
}

ProofPtr node_from(const nlohmann::json& j) {
    auto n = std::make_shared<ProofNode>();
    n->conclusion = sequent_from(j.at("conclusion"));
    n->rule = rule_from(j);
    for (const auto& p : j.at("premises")) n->premises.push_back(node_from(p));
    if (j.contains("oracle_trace")) n->oracle_trace = tree_from_json(j.at("oracle_trace"));
    return n;
}

}  // namespace

nlohmann::json certificate_to_json(const Certificate& c) {
    return {{"version", kCertificateVersion}, {"goal", pretty(c.goal)}, {"tree", node_json(c.tree)}};
}

Certificate certificate_from_json(const nlohmann::json& j) {
    if (j.at("version").get<std::string>() != kCertificateVersion) throw MalformedParameters("unsupported version");
    return Certificate{parse_formula(j.at("goal").get<std::string>()), node_from(j.at("tree"))};
}

CheckResult check_certificate(const Certificate& c) {
    if (!c.goal || !c.tree) return {false, "empty certificate", {}};
    if (!free_vars(c.goal).empty()) return {false, "goal is not a sentence", {}};
    if (!(c.tree->conclusion == Sequent({}, {c.goal}))) return {false, "root conclusion is not the goal", {}};

    CheckResult res{true, "", {}};
    Path at;
    std::function<bool(const ProofPtr&)> walk = [&](const ProofPtr& n) -> bool {
        auto reject = [&](std::string why) {
            res = {false, std::move(why), at};
            return false;
        };
        if (n->rule.name == RuleName::RReal) {
            if (!n->premises.empty()) return reject("R_real has no premises");
            if (!n->oracle_trace) return reject("R_real without oracle trace");
            if (!n->rule.pos.path.empty()) return reject("R_real takes no position path");
            if (!replay_sequent(n->oracle_trace, n->conclusion)) return reject("oracle trace does not replay");
            return true;
        }
        if (n->oracle_trace) return reject("oracle trace on a non-arithmetic node");
        std::vector<Sequent> expect;
        try {
            expect = apply_rule(n->conclusion, n->rule);
        } catch (const SideConditionViolation& e) {
            return reject(std::string("SideConditionViolation: ") + e.what());
        } catch (const PrincipalNotFound& e) {
            return reject(std::string("PrincipalNotFound: ") + e.what());
        } catch (const MalformedParameters& e) {
            return reject(std::string("MalformedParameters: ") + e.what());
        } catch (const std::exception& e) {
            return reject(std::string("rule failed: ") + e.what());
        }
        if (expect.size() != n->premises.size()) return reject(std::string(to_string(n->rule.name)) + ": premise count");
        for (std::size_t i = 0; i < expect.size(); ++i)
            if (!(expect[i] == n->premises[i]->conclusion))
                return reject(std::string(to_string(n->rule.name)) + ": premise " + std::to_string(i) + " mismatch");
        for (std::size_t i = 0; i < n->premises.size(); ++i) {
            at.push_back(int(i));
            if (!walk(n->premises[i])) return false;
            at.pop_back();
        }
        return true;
    };
    walk(c.tree);
    return res;
}

CheckResult check_certificate_json(const nlohmann::json& j) {
    try {
        return check_certificate(certificate_from_json(j));
    } catch (const std::exception& e) {
        return {false, std::string("malformed certificate: ") + e.what(), {}};
    }
}

std::size_t proof_size(const ProofPtr& p) {
    std::size_t n = 1;
    for (const auto& q : p->premises) n += proof_size(q);
    return n;
}

}  // namespace rdl
