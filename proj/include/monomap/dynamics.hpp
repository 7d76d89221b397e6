// The monomial map as a dynamical object on a fan: regular-mapping tests, cone
// closures, the strong-1-stability checker, 2-stability via the dual matrix,
// and the bounded eventually-stable-composition certificate.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "monomap/divisor.hpp"
#include "monomap/fan.hpp"

namespace monomap {

// If some cone of f contains A(c), returns the smallest such cone (the cone
// closure of the image); otherwise nothing, which is a valid verdict.
inline std::optional<Cone> maps_regularly(const Cone& c, const IMat3& a, const Fan& f) {
    Cone img = image_cone(a, c);
    // locate a maximal cone containing the image, then cut out the smallest
    // face with the normals vanishing on all image generators; any containing
    // maximal cone yields the same face
    for (const auto& cand : f.cones) {
        bool all = true;
        for (const auto& g : img.gens)
            if (!cand.contains_point(g)) {
                all = false;
                break;
            }
        if (!all) continue;
        std::vector<IVec3> active;
        for (const auto& n : cand.normals) {
            bool vanishes = true;
            for (const auto& g : img.gens)
                if (dot(n, g) != 0) {
                    vanishes = false;
                    break;
                }
            if (vanishes) active.push_back(n);
        }
        if (active.empty()) return cand;
        std::vector<IVec3> face_gens;
        for (const auto& gc : cand.gens) {
            bool on_all = true;
            for (const auto& n : active)
                if (dot(n, gc) != 0) {
                    on_all = false;
                    break;
                }
            if (on_all) face_gens.push_back(gc);
        }
        return cone_new(face_gens);
    }
    return std::nullopt;
}

struct OrbitLog {
    IVec3 ray;
    std::vector<Cone> closures;  // sigma_1, sigma_2, ... (sigma_0 is the ray)
    bool cycles = false;
    int cycle_start = 0;  // index into closures where the repeat points back
};

struct FailureWitness {
    IVec3 ray;        // the orbit's starting ray
    int iterate = 0;  // k such that the closure of A^k(ray) does not map regularly
    IVec3 image_point;
    Cone failing_cone;
};

struct StabilityReport {
    bool stable = false;
    std::vector<OrbitLog> orbits;  // in ray order
    std::optional<FailureWitness> witness;
};

// Theorem-style checker: f_A is strongly 1-stable on X(f) iff for every ray
// the iterated cone closures keep mapping regularly. The orbit state is a cone
// of the finite fan, so each orbit either fails or enters a cycle within
// |face_set| steps; the verdict is exact.
inline StabilityReport strong_1_stability(const Fan& f, const IMat3& a) {
    if (det(a) == 0) throw SingularMatrix();
    if (!fan_is_complete(f)) throw Error("stability checker requires a complete fan");
    StabilityReport report;
    report.stable = true;
    for (const auto& ray : f.rays) {
        OrbitLog log;
        log.ray = ray;
        Cone current = ray_cone(ray);
        std::map<Cone, int> seen;
        IVec3 point = ray;
        while (true) {
            point = a * point;
            auto next = maps_regularly(current, a, f);
            if (!next) {
                report.stable = false;
                if (!report.witness)
                    report.witness = FailureWitness{
                        ray, static_cast<int>(log.closures.size()), primitive(point), current};
                break;
            }
            auto it = seen.find(*next);
            if (it != seen.end()) {
                log.cycles = true;
                log.cycle_start = it->second;
                break;
            }
            seen.emplace(*next, static_cast<int>(log.closures.size()));
            log.closures.push_back(*next);
            current = *next;
        }
        report.orbits.push_back(std::move(log));
    }
    return report;
}

// 2-stability of f_A equals 1-stability of f_{A'} (codimension duality).
inline StabilityReport is_2_stable(const Fan& f, const IMat3& a) {
    auto [d, ap] = det_adjugate(a);
    if (d == 0) throw SingularMatrix();
    return strong_1_stability(f, ap);
}

struct PssWitness {
    int k = 0, l = 0;
    size_t ray_index = 0;
};

struct PssReport {
    bool ok = false;
    int k0 = 0, K = 0;  // bounded certificate: verified for k,l >= k0, k+l <= K
    std::optional<PssWitness> witness;
};

// Bounded check of the eventually-stable-composition condition: for every
// ray-basis divisor and all k,l >= k0 with k+l <= K, the pullback of A^{k+l}
// must equal the composition of the pullbacks of A^k and A^l. This certifies a
// window, it does not prove the condition for all k, l.
inline PssReport verify_pss(const Fan& f, const IMat3& a, int k0, int K) {
    if (k0 < 1 || K < 2 * k0) throw Error("verify_pss requires k0 >= 1 and K >= 2*k0");
    if (det(a) == 0) throw SingularMatrix();
    PssReport rep;
    rep.k0 = k0;
    rep.K = K;
    rep.ok = true;
    for (size_t ri = 0; ri < f.rays.size(); ++ri) {
        TInvariantDivisor d = ray_basis_divisor(f, ri);
        for (int k = k0; k + k0 <= K; ++k)
            for (int l = k0; k + l <= K; ++l) {
                TInvariantDivisor lhs =
                    divisor_pullback(f, pow(a, static_cast<unsigned>(k + l)), d);
                TInvariantDivisor inner =
                    divisor_pullback(f, pow(a, static_cast<unsigned>(l)), d);
                TInvariantDivisor rhs =
                    divisor_pullback(f, pow(a, static_cast<unsigned>(k)), inner);
                if (lhs.coeffs != rhs.coeffs) {
                    rep.ok = false;
                    rep.witness = PssWitness{k, l, ri};
                    return rep;
                }
            }
    }
    return rep;
}

}  // namespace monomap
