// Brute-force model of ordinals below w^3 as lexicographic triples.
#pragma once

#include "rdl/ordinal.hpp"

#include <array>
#include <cstdint>

namespace rdl::testing {

using Triple = std::array<std::uint64_t, 3>;  // (w^2 coef, w coef, units)

inline Triple triple_add(const Triple& a, const Triple& b) {
    if (b[0]) return {a[0] + b[0], b[1], b[2]};
    if (b[1]) return {a[0], a[1] + b[1], b[2]};
    return {a[0], a[1], a[2] + b[2]};
}

inline Ordinal to_ordinal(const Triple& t) {
    std::vector<Ordinal::Term> terms;
    for (int i = 0; i < 3; ++i)
        if (t[i]) terms.push_back({static_cast<std::uint32_t>(2 - i), t[i]});
    return Ordinal::from_terms(terms);
}

}  // namespace rdl::testing
