#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>

namespace costar {

// Flat model: X = R^n, C = R^{n-l} = {x'' = 0}. Tangential coordinates are
// x_1..x_{n-l}, transversal x_{n-l+1}..x_n.
struct SpaceConfig {
    int n = 0;
    int l = 0;

    SpaceConfig() = default;
    SpaceConfig(int n_, int l_) : n(n_), l(l_) {
        if (n < 0 || l < 0 || l > n)
            throw std::invalid_argument("SpaceConfig requires 0 <= l <= n");
    }

    bool transversal(int coord) const { return coord > n - l; }
    bool tangential(int coord) const { return coord >= 1 && coord <= n - l; }

    friend auto operator<=>(const SpaceConfig &, const SpaceConfig &) = default;
};

// Index sets S subset of {1..n} as bitmasks (bit i-1 <-> coordinate i).
using IndexMask = uint32_t;

inline int mask_rank(IndexMask m) { return __builtin_popcount(m); }
inline bool mask_has(IndexMask m, int coord) { return (m >> (coord - 1)) & 1u; }
inline IndexMask mask_add(IndexMask m, int coord) { return m | (1u << (coord - 1)); }
inline IndexMask mask_remove(IndexMask m, int coord) { return m & ~(1u << (coord - 1)); }

// Position (0-based) of coord within the ascending enumeration of S.
inline int mask_position(IndexMask m, int coord) {
    return __builtin_popcount(m & ((1u << (coord - 1)) - 1u));
}

// Sign of e_S ^ e_T as (-1)^{inversions}; 0-overlap assumed checked by caller.
inline int merge_sign(IndexMask s, IndexMask t) {
    int sign = 1;
    for (int c = 1; c <= 32; ++c) {
        if (!mask_has(t, c))
            continue;
        // count members of s greater than c
        IndexMask higher = s & ~((2u << (c - 1)) - 1u);
        if (__builtin_popcount(higher) % 2)
            sign = -sign;
    }
    return sign;
}

} // namespace costar
