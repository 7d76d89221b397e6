// Shared helpers for the test suites.
#pragma once

#include <random>
#include <vector>

#include "monomap/linalg.hpp"
#include "monomap/poly.hpp"

namespace monomap::testing {

inline IMat3 mat(int a, int b, int c, int d, int e, int f, int g, int h, int i) {
    return IMat3(IVec3(Int(a), Int(b), Int(c)), IVec3(Int(d), Int(e), Int(f)),
                 IVec3(Int(g), Int(h), Int(i)));
}

inline IVec3 vec(int a, int b, int c) { return IVec3(Int(a), Int(b), Int(c)); }

inline IMat3 diag(int a, int b, int c) { return mat(a, 0, 0, 0, b, 0, 0, 0, c); }

// The worked example matrix used throughout the suites.
inline IMat3 example_matrix() { return mat(1, 1, 5, 4, 1, 2, 1, 5, 1); }

// Deterministic RNG so failures reproduce.
inline std::mt19937& rng() {
    static std::mt19937 gen(20260810u);
    return gen;
}

inline int rand_int(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng());
}

// Random integer matrix with entries in [lo, hi] and nonzero determinant.
inline IMat3 random_nonsingular(int lo, int hi) {
    while (true) {
        IMat3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = rand_int(lo, hi);
        if (det(m) != 0) return m;
    }
}

inline IVec3 random_primitive_ray(int lo, int hi) {
    while (true) {
        IVec3 v = vec(rand_int(lo, hi), rand_int(lo, hi), rand_int(lo, hi));
        if (!v.is_zero()) return primitive(v);
    }
}

inline RationalPoly poly_from_ints(std::vector<int> cs) {
    std::vector<Rat> rs;
    for (int c : cs) rs.emplace_back(c);
    return RationalPoly(std::move(rs));
}

}  // namespace monomap::testing
