#include "rdl/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace rdl {

Rational::Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    std::string body = s.substr(i);
    mpq_class q;
    auto slash = body.find('/');
    auto dot = body.find('.');
    auto digits = [](const std::string& d) {
        if (d.empty()) return false;
        for (char c : d)
            if (c < '0' || c > '9') return false;
        return true;
    };
    if (slash != std::string::npos) {
        std::string n = body.substr(0, slash), d = body.substr(slash + 1);
        if (!digits(n) || !digits(d)) throw std::invalid_argument("bad rational literal: " + s);
        mpz_class den(d, 10);
        if (den == 0) throw std::invalid_argument("zero denominator: " + s);
        q = mpq_class(mpz_class(n, 10), den);
    } else if (dot != std::string::npos) {
        std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!digits(ip) || !digits(fp)) throw std::invalid_argument("bad decimal literal: " + s);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
        q = mpq_class(mpz_class(ip + fp, 10), den);
    } else {
        if (!digits(body)) throw std::invalid_argument("bad integer literal: " + s);
        q = mpq_class(mpz_class(body, 10));
    }
    q.canonicalize();
    if (neg) q = -q;
    return Rational(q);
}

Rational Rational::from_double(double d) {
    if (!std::isfinite(d)) throw std::domain_error("non-finite double");
    mpq_class q(d);
    return Rational(q);
}

std::size_t Rational::hash() const {
    return std::hash<std::string>{}(str());
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow2(int exponent) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent >= 0 ? Rational(mpq_class(p)) : Rational(mpq_class(mpz_class(1), p));
}

}  // namespace rdl
