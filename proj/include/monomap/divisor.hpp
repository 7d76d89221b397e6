// Torus-invariant divisors, their piecewise-linear support functions on
// complete simplicial fans, and the pullback along a monomial map.
#pragma once

#include <vector>

#include "monomap/errors.hpp"
#include "monomap/fan.hpp"

namespace monomap {

// D = sum a_tau D_tau with coefficients indexed like the fan's ray list.
struct TInvariantDivisor {
    std::vector<Rat> coeffs;
};

inline TInvariantDivisor ray_basis_divisor(const Fan& f, size_t ray_index) {
    TInvariantDivisor d;
    d.coeffs.assign(f.rays.size(), Rat(0));
    d.coeffs[ray_index] = 1;
    return d;
}

// psi_D: linear on each maximal cone, psi_D(v_tau) = -a_tau.
struct SupportFunction {
    const Fan* fan;
    std::vector<RVec3> covectors;  // one per maximal cone

    Rat operator()(const IVec3& x) const {
        for (size_t i = 0; i < fan->cones.size(); ++i)
            if (fan->cones[i].contains_point(x)) return dot(x, covectors[i]);
        throw InternalError("support function evaluated outside a complete fan");
    }
};

inline SupportFunction support_function(const Fan& f, const TInvariantDivisor& d) {
    if (!fan_is_simplicial(f) || !fan_is_complete(f)) throw NotSimplicial();
    if (d.coeffs.size() != f.rays.size())
        throw Error("divisor coefficients do not match the fan's rays");
    SupportFunction psi;
    psi.fan = &f;
    for (size_t ci = 0; ci < f.cones.size(); ++ci) {
        const auto& idx = f.max_cones[ci];
        RMat3 m;
        RVec3 rhs;
        for (int r = 0; r < 3; ++r) {
            const IVec3& v = f.rays[static_cast<size_t>(idx[static_cast<size_t>(r)])];
            m[r] = to_rvec(v);
            rhs[r] = -d.coeffs[static_cast<size_t>(idx[static_cast<size_t>(r)])];
        }
        auto sol = solve(m, rhs);
        if (!sol) throw InternalError("simplicial cone with dependent rays");
        psi.covectors.push_back(*sol);
    }
    return psi;
}

// f_A^*: coefficient at ray tau is -psi_D(A v_tau).
inline TInvariantDivisor divisor_pullback(const Fan& f, const IMat3& a,
                                          const TInvariantDivisor& d) {
    if (det(a) == 0) throw SingularMatrix();
    SupportFunction psi = support_function(f, d);
    TInvariantDivisor out;
    out.coeffs.reserve(f.rays.size());
    for (const auto& v : f.rays) out.coeffs.push_back(-psi(a * v));
    return out;
}

}  // namespace monomap
