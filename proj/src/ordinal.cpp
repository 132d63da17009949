#include "rdl/ordinal.hpp"

namespace rdl {

Ordinal Ordinal::omega_power(std::uint32_t e, std::uint64_t coef) {
    Ordinal o;
    if (coef) o.terms_.push_back({e, coef});
    return o;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].second == 0) throw std::invalid_argument("zero coefficient in CNF");
        if (i && terms[i - 1].first <= terms[i].first) throw std::invalid_argument("exponents not decreasing");
    }
    Ordinal o;
    o.terms_ = std::move(terms);
    return o;
}

std::string Ordinal::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
        if (!s.empty()) s += " + ";
        if (e == 0) s += std::to_string(c);
        else if (e == 1) s += "w*" + std::to_string(c);
        else s += "w^" + std::to_string(e) + "*" + std::to_string(c);
    }
    return s;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const auto& x = a.terms_;
    const auto& y = b.terms_;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i].first != y[i].first) return x[i].first <=> y[i].first;
        if (x[i].second != y[i].second) return x[i].second <=> y[i].second;
    }
    return x.size() <=> y.size();
}

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    std::uint32_t e = b.leading_exponent();
    std::vector<Ordinal::Term> out;
    std::uint64_t carry = 0;
    for (const auto& t : a.terms()) {
        if (t.first > e) out.push_back(t);
        else if (t.first == e) carry = t.second;
    }
    bool first = true;
    for (const auto& t : b.terms()) {
        out.push_back(first ? Ordinal::Term{t.first, t.second + carry} : t);
        first = false;
    }
    return Ordinal::from_terms(std::move(out));
}

Ordinal ord_mul_omega(const Ordinal& a) {
    if (a.is_zero()) throw ZeroOperand("0 * w");
    return Ordinal::omega_power(a.leading_exponent() + 1);
}

Cmp ord_cmp(const Ordinal& a, const Ordinal& b) {
    auto c = a <=> b;
    return c < 0 ? Cmp::LT : c > 0 ? Cmp::GT : Cmp::EQ;
}

const char* to_string(Cmp c) {
    switch (c) {
        case Cmp::LT: return "LT";
        case Cmp::EQ: return "EQ";
        case Cmp::GT: return "GT";
    }
    return "?";
}

}  // namespace rdl
