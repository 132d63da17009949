#pragma once

#include "rdl/ast.hpp"
#include "rdl/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace rdl {

struct UnboundVariable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Closed interval with exact rational endpoints, lo <= hi.
struct RatInterval {
    Rational lo, hi;

    RatInterval() = default;
    RatInterval(Rational point) : lo(point), hi(point) {}
    RatInterval(Rational l, Rational h);

    bool is_point() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / Rational(2); }
    bool subset_of(const RatInterval& o) const { return o.lo <= lo && hi <= o.hi; }
    std::string str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }

    friend bool operator==(const RatInterval&, const RatInterval&) = default;
};

RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a);

using Box = std::map<std::string, RatInterval>;

std::string box_str(const Box& b);

/// Naive structural interval extension of a term.
RatInterval interval_eval(const TermPtr& v, const Box& b);

}  // namespace rdl
