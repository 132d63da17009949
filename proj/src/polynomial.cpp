#include "rdl/polynomial.hpp"

#include <set>

namespace rdl {

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::constant(const Rational& c) {
    Polynomial p;
    p.add_term({}, c);
    return p;
}

Polynomial Polynomial::variable(const std::string& x) {
    Polynomial p;
    p.add_term({{x, 1}}, 1);
    return p;
}

Polynomial Polynomial::from_term(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var: return variable(t->name);
        case TermKind::Const: return constant(t->value);
        case TermKind::Add: return from_term(t->lhs) + from_term(t->rhs);
        case TermKind::Mul: return from_term(t->lhs) * from_term(t->rhs);
    }
    return {};
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational Polynomial::constant_value() const {
    auto it = terms_.find({});
    return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::string> Polynomial::variables() const {
    std::set<std::string> s;
    for (const auto& [m, c] : terms_)
        for (const auto& [x, k] : m) s.insert(x);
    return {s.begin(), s.end()};
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

static Polynomial::Monomial mono_mul(const Polynomial::Monomial& a, const Polynomial::Monomial& b) {
    Polynomial::Monomial out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) out.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first) out.push_back(b[j++]);
        else {
            out.push_back({a[i].first, a[i].second + b[j].second});
            ++i;
            ++j;
        }
    }
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) r.add_term(mono_mul(m1, m2), c1 * c2);
    return r;
}

Rational Polynomial::eval(const std::map<std::string, Rational>& point) const {
    Rational sum;
    for (const auto& [m, c] : terms_) {
        Rational prod = c;
        for (const auto& [x, k] : m) {
            auto it = point.find(x);
            if (it == point.end()) throw UnboundVariable("unbound variable " + x);
            for (unsigned i = 0; i < k; ++i) prod *= it->second;
        }
        sum += prod;
    }
    return sum;
}

// ---- Horner ----

Horner::Horner(const Polynomial& p) {
    std::vector<std::pair<Polynomial::Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
    root_ = build(terms, 0);
}

std::unique_ptr<Horner::Node> Horner::build(const std::vector<std::pair<Polynomial::Monomial, Rational>>& terms,
                                            std::size_t) {
    auto n = std::make_unique<Node>();
    std::string first;
    bool any = false;
    for (const auto& [m, c] : terms)
        if (!m.empty() && (!any || m.front().first < first)) {
            first = m.front().first;
            any = true;
        }
    if (!any) {
        for (const auto& [m, c] : terms) n->value += c;
        return n;
    }
    n->leaf = false;
    n->var = first;
    std::vector<std::vector<std::pair<Polynomial::Monomial, Rational>>> groups;
    for (const auto& [m, c] : terms) {
        unsigned k = 0;
        Polynomial::Monomial rest;
        for (const auto& vp : m) {
            if (vp.first == first) k = vp.second;
            else rest.push_back(vp);
        }
        if (groups.size() <= k) groups.resize(k + 1);
        groups[k].push_back({rest, c});
    }
    for (const auto& g : groups) n->coeffs.push_back(g.empty() ? nullptr : build(g, 0));
    return n;
}

RatInterval Horner::eval_node(const Node& n, const Box& b) {
    if (n.leaf) return RatInterval(n.value);
    auto it = b.find(n.var);
    if (it == b.end()) throw UnboundVariable("unbound variable " + n.var);
    const RatInterval& x = it->second;
    RatInterval acc(0);
    for (std::size_t k = n.coeffs.size(); k-- > 0;) {
        if (k + 1 < n.coeffs.size()) acc = acc * x;
        if (n.coeffs[k]) acc = acc + eval_node(*n.coeffs[k], b);
    }
    return acc;
}

Rational Horner::eval_point(const Node& n, const std::map<std::string, Rational>& point) {
    if (n.leaf) return n.value;
    auto it = point.find(n.var);
    if (it == point.end()) throw UnboundVariable("unbound variable " + n.var);
    Rational acc;
    for (std::size_t k = n.coeffs.size(); k-- > 0;) {
        if (k + 1 < n.coeffs.size()) acc *= it->second;
        if (n.coeffs[k]) acc += eval_point(*n.coeffs[k], point);
    }
    return acc;
}

RatInterval Horner::eval(const Box& b) const { return eval_node(*root_, b); }
Rational Horner::eval(const std::map<std::string, Rational>& point) const { return eval_point(*root_, point); }

}  // namespace rdl
