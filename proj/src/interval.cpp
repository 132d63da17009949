#include "rdl/interval.hpp"

namespace rdl {

RatInterval::RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) throw std::invalid_argument("empty interval " + lo.str() + " > " + hi.str());
}

RatInterval operator+(const RatInterval& a, const RatInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    if (a.is_point() && b.is_point()) return RatInterval(a.lo * b.lo);
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Rational lo = p[0], hi = p[0];
    for (int i = 1; i < 4; ++i) {
        lo = min(lo, p[i]);
        hi = max(hi, p[i]);
    }
    return {lo, hi};
}

std::string box_str(const Box& b) {
    std::string s;
    for (const auto& [x, iv] : b) {
        if (!s.empty()) s += ", ";
        s += x + " in " + iv.str();
    }
    return s;
}

RatInterval interval_eval(const TermPtr& v, const Box& b) {
    switch (v->kind) {
        case TermKind::Var: {
            auto it = b.find(v->name);
            if (it == b.end()) throw UnboundVariable("unbound variable " + v->name);
            return it->second;
        }
        case TermKind::Const: return RatInterval(v->value);
        case TermKind::Add: return interval_eval(v->lhs, b) + interval_eval(v->rhs, b);
        case TermKind::Mul: return interval_eval(v->lhs, b) * interval_eval(v->rhs, b);
    }
    return {};
}

}  // namespace rdl
