#pragma once

#include "rdl/ast.hpp"
#include "rdl/interval.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace rdl {

/// Sparse multivariate polynomial with rational coefficients.  A monomial is
/// a name-sorted list of (variable, positive power).
class Polynomial {
public:
    using Monomial = std::vector<std::pair<std::string, unsigned>>;

    Polynomial() = default;
    static Polynomial constant(const Rational& c);
    static Polynomial variable(const std::string& x);
    static Polynomial from_term(const TermPtr& t);

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_constant() const;
    Rational constant_value() const;
    std::vector<std::string> variables() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Rational eval(const std::map<std::string, Rational>& point) const;

private:
    std::map<Monomial, Rational> terms_;
    void add_term(const Monomial& m, const Rational& c);
};

/// Horner form of a polynomial, nested by variable name order: the outermost
/// level is the alphabetically first variable present, each coefficient is a
/// Horner form in the remaining variables.
class Horner {
public:
    explicit Horner(const Polynomial& p);
    RatInterval eval(const Box& b) const;
    Rational eval(const std::map<std::string, Rational>& point) const;

private:
    struct Node {
        bool leaf = true;
        Rational value;
        std::string var;
        std::vector<std::unique_ptr<Node>> coeffs;  // by ascending power; null = 0
    };
    std::unique_ptr<Node> root_;
    static std::unique_ptr<Node> build(const std::vector<std::pair<Polynomial::Monomial, Rational>>& terms,
                                       std::size_t depth_hint);
    static RatInterval eval_node(const Node& n, const Box& b);
    static Rational eval_point(const Node& n, const std::map<std::string, Rational>& point);
};

}  // namespace rdl
