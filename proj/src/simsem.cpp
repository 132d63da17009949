#include "rdl/simsem.hpp"

#include "rdl/syntax.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rdl {

Rational eval_term(const State& w, const TermPtr& v) {
    switch (v->kind) {
        case TermKind::Var: {
            auto it = w.find(v->name);
            return it == w.end() ? Rational(0) : it->second;
        }
        case TermKind::Const: return v->value;
        case TermKind::Add: return eval_term(w, v->lhs) + eval_term(w, v->rhs);
        case TermKind::Mul: return eval_term(w, v->lhs) * eval_term(w, v->rhs);
    }
    return Rational(0);
}

const char* to_string(Truth t) {
    switch (t) {
        case Truth::False: return "False";
        case Truth::Unknown: return "Unknown";
        case Truth::True: return "True";
    }
    return "?";
}

namespace {

Truth t_not(Truth a) { return a == Truth::True ? Truth::False : a == Truth::False ? Truth::True : Truth::Unknown; }
Truth t_and(Truth a, Truth b) {
    if (a == Truth::False || b == Truth::False) return Truth::False;
    if (a == Truth::True && b == Truth::True) return Truth::True;
    return Truth::Unknown;
}
Truth t_or(Truth a, Truth b) { return t_not(t_and(t_not(a), t_not(b))); }

// canonical form so that reachable sets deduplicate: drop explicit zeros
State canon(State s) {
    for (auto it = s.begin(); it != s.end();)
        it = it->second.is_zero() ? s.erase(it) : std::next(it);
    return s;
}

std::vector<Rational> samples(const Rational& lo, const Rational& hi, int parts) {
    std::vector<Rational> v;
    if (lo == hi) return {lo};
    for (int i = 0; i <= parts; ++i) v.push_back(lo + (hi - lo) * Rational(i, parts));
    return v;
}

std::vector<Rational> unbounded_samples(const SimConfig& cfg) {
    std::vector<Rational> v{Rational(0)};
    Rational step(1, 1L << cfg.quant_steps), top = pow2(cfg.quant_range);
    for (Rational q = step; q <= top; q = q + step) {
        v.push_back(q);
        v.push_back(-q);
    }
    return v;
}

struct Sim {
    const SimConfig& cfg;

    Truth formula(const State& w, const FormulaPtr& f) {
        switch (f->kind) {
            case FormulaKind::Gt: return eval_term(w, f->lhs_term) > eval_term(w, f->rhs_term) ? Truth::True : Truth::False;
            case FormulaKind::Geq: return eval_term(w, f->lhs_term) >= eval_term(w, f->rhs_term) ? Truth::True : Truth::False;
            case FormulaKind::And: {
                Truth a = formula(w, f->left);
                return a == Truth::False ? a : t_and(a, formula(w, f->right));
            }
            case FormulaKind::Or: {
                Truth a = formula(w, f->left);
                return a == Truth::True ? a : t_or(a, formula(w, f->right));
            }
            case FormulaKind::Exists:
            case FormulaKind::Forall: return quantifier(w, f);
            case FormulaKind::Diamond:
            case FormulaKind::Box: {
                Reach r = reach(w, f->program);
                bool dia = f->kind == FormulaKind::Diamond;
                bool unknown = !r.complete;
                for (const auto& s : r.states) {
                    Truth t = formula(s, f->left);
                    if (dia && t == Truth::True) return Truth::True;
                    if (!dia && t == Truth::False) return Truth::False;
                    if (t == Truth::Unknown) unknown = true;
                }
                if (unknown) return Truth::Unknown;
                return dia ? Truth::False : Truth::True;
            }
        }
        return Truth::Unknown;
    }

    Truth quantifier(const State& w, const FormulaPtr& f) {
        bool ex = f->kind == FormulaKind::Exists;
        std::vector<Rational> pts;
        FormulaPtr body = f->left;
        bool exact = false;
        if (auto m = match_bounded(f)) {
            // sample the interval itself; open bounds only exclude the endpoints
            Rational lo = eval_term(w, m->lo), hi = eval_term(w, m->hi);
            bool open = m->kind == BoundedKind::ExistsOpen || m->kind == BoundedKind::ForallOpen;
            if (hi < lo || (open && hi == lo)) return ex ? Truth::False : Truth::True;
            pts = samples(lo, hi, cfg.bounded_samples);
            if (open) pts = std::vector<Rational>(pts.begin() + 1, pts.end() - 1);
            if (pts.empty()) pts.push_back((lo + hi) / Rational(2));
            body = m->body;
            exact = true;
        } else {
            pts = unbounded_samples(cfg);
        }
        bool unknown = false;
        for (const auto& q : pts) {
            State s = w;
            s[f->var] = q;
            Truth t = formula(s, body);
            if (ex && t == Truth::True) return Truth::True;
            if (!ex && t == Truth::False) return Truth::False;
            if (t == Truth::Unknown) unknown = true;
        }
        if (unknown || !exact) return Truth::Unknown;
        return ex ? Truth::False : Truth::True;
    }

    Reach reach(const State& w, const ProgramPtr& a) {
        Reach out;
        switch (a->kind) {
            case ProgramKind::Assign: {
                State s = w;
                s[a->var] = eval_term(w, a->term);
                out.states.push_back(canon(s));
                return out;
            }
            case ProgramKind::Test: {
                Truth t = formula(w, a->formula);
                if (t == Truth::True) out.states.push_back(w);
                if (t == Truth::Unknown) out.complete = false;
                return out;
            }
            case ProgramKind::Choice: {
                Reach l = reach(w, a->left), r = reach(w, a->right);
                out.states = std::move(l.states);
                out.states.insert(out.states.end(), r.states.begin(), r.states.end());
                out.complete = l.complete && r.complete;
                return dedupe(out);
            }
            case ProgramKind::Seq: {
                Reach l = reach(w, a->left);
                out.complete = l.complete;
                for (const auto& s : l.states) {
                    Reach r = reach(s, a->right);
                    out.complete = out.complete && r.complete;
                    out.states.insert(out.states.end(), r.states.begin(), r.states.end());
                    if (out.states.size() > cfg.max_states) {
                        out.complete = false;
                        break;
                    }
                }
                return dedupe(out);
            }
            case ProgramKind::Star: {
                std::set<State> seen{canon(w)};
                std::vector<State> frontier{canon(w)};
                for (int i = 0; i < cfg.loop_unroll && !frontier.empty(); ++i) {
                    std::vector<State> next;
                    for (const auto& s : frontier) {
                        Reach r = reach(s, a->left);
                        out.complete = out.complete && r.complete;
                        for (auto& t : r.states)
                            if (seen.insert(t).second) next.push_back(t);
                    }
                    frontier = std::move(next);
                    if (seen.size() > cfg.max_states) break;
                }
                if (!frontier.empty()) out.complete = false;
                out.states.assign(seen.begin(), seen.end());
                return out;
            }
            case ProgramKind::Ode: return flow(w, a);
        }
        return out;
    }

    Reach flow(const State& w, const ProgramPtr& a) {
        Reach out;
        Truth d0 = formula(w, a->formula);
        if (d0 != Truth::True) {
            out.complete = d0 == Truth::False;
            return out;
        }
        out.states.push_back(w);
        NumState x0;
        for (const auto& [k, v] : w) x0[k] = v.to_double();
        for (const auto& p : a->ode) x0.emplace(p.var, 0.0);
        for (const auto& p : a->ode) {
            VarSet fv = free_vars(p.rhs);
            for (const auto& v : fv) x0.emplace(v, 0.0);
        }
        std::vector<NumState> traj;
        try {
            traj = numeric_flow(a->ode, x0, cfg.ode_horizon.to_double(), cfg.ode_step.to_double());
        } catch (const Overflow&) {
            out.complete = false;
            return out;
        }
        for (const auto& ns : traj) {
            State s = w;
            for (const auto& p : a->ode) s[p.var] = Rational::from_double(ns.at(p.var));
            s = canon(s);
            Truth d = formula(s, a->formula);
            if (d == Truth::False) return out;  // left the domain: the evolution stops before here
            if (d == Truth::Unknown) {
                out.complete = false;
                return out;
            }
            out.states.push_back(s);
        }
        out.complete = false;  // the horizon cut the evolution short
        return out;
    }

    Reach dedupe(Reach r) {
        std::set<State> s(r.states.begin(), r.states.end());
        r.states.assign(s.begin(), s.end());
        return r;
    }
};

}  // namespace

Truth sample_truth(const State& w, const FormulaPtr& f, const SimConfig& cfg) {
    Sim sim{cfg};
    return sim.formula(canon(w), f);
}

Reach reachable(const State& w, const ProgramPtr& a, const SimConfig& cfg) {
    Sim sim{cfg};
    return sim.reach(canon(w), a);
}

std::vector<Rational> default_radii() {
    std::vector<Rational> r;
    for (int i = 1; i <= 10; ++i) r.push_back(Rational(1, 1L << i));
    return r;
}

OpennessReport probe_openness(const FormulaPtr& f, const State& w, const std::vector<Rational>& radii,
                              const SimConfig& cfg) {
    std::vector<std::string> vars;
    for (const auto& v : free_vars(f)) vars.push_back(v);
    std::vector<Rational> rs = radii;
    std::sort(rs.begin(), rs.end(), [](const Rational& a, const Rational& b) { return b < a; });

    OpennessReport rep;
    rep.margin = 0;
    bool found = false;
    for (const auto& r : rs) {
        bool all = true;
        std::size_t combos = 1;
        for (std::size_t i = 0; i < vars.size(); ++i) combos *= 3;
        for (std::size_t c = 0; c < combos && all; ++c) {
            State s = w;
            std::size_t code = c;
            for (const auto& v : vars) {
                int d = int(code % 3) - 1;
                code /= 3;
                auto it = w.find(v);
                Rational base = it == w.end() ? Rational(0) : it->second;
                s[v] = base + Rational(d) * r;
            }
            all = sample_truth(s, f, cfg) == Truth::True;
        }
        rep.tested.push_back({r, all});
        // the margin is the largest radius from which every smaller tested radius also passes
        if (all && !found) {
            rep.margin = r;
            found = true;
        } else if (!all) {
            found = false;
            rep.margin = 0;
        }
    }
    return rep;
}

std::string trajectory_csv(const OdeSystem& sys, const NumState& x0, double T, double step) {
    std::ostringstream out;
    out.precision(17);
    out << "step";
    for (const auto& p : sys) out << "," << p.var;
    out << "\n0";
    for (const auto& p : sys) out << "," << (x0.count(p.var) ? x0.at(p.var) : 0.0);
    out << "\n";
    auto traj = numeric_flow(sys, x0, T, step);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << i + 1;
        for (const auto& p : sys) out << "," << traj[i].at(p.var);
        out << "\n";
    }
    return out.str();
}

}  // namespace rdl
