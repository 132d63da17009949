#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rdl {

struct ZeroOperand : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Ordinal below w^w in Cantor normal form: (exponent, coefficient) pairs with
/// strictly decreasing exponents and positive coefficients.  Empty is 0.
class Ordinal {
public:
    using Term = std::pair<std::uint32_t, std::uint64_t>;

    Ordinal() = default;
    Ordinal(std::uint64_t n) {
        if (n) terms_.push_back({0, n});
    }
    static Ordinal omega_power(std::uint32_t e, std::uint64_t coef = 1);
    /// Validates and adopts a term list.
    static Ordinal from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::uint32_t leading_exponent() const { return terms_.empty() ? 0 : terms_.front().first; }

    std::string str() const;

    friend bool operator==(const Ordinal&, const Ordinal&) = default;
    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

private:
    std::vector<Term> terms_;
};

Ordinal ord_add(const Ordinal& a, const Ordinal& b);
/// a * w.  Throws ZeroOperand on 0.
Ordinal ord_mul_omega(const Ordinal& a);

enum class Cmp { LT, EQ, GT };
Cmp ord_cmp(const Ordinal& a, const Ordinal& b);
const char* to_string(Cmp c);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return ord_add(a, b); }
inline const Ordinal& ord_max(const Ordinal& a, const Ordinal& b) { return a < b ? b : a; }

}  // namespace rdl
