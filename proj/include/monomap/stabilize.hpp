// Stabilization constructions and obstruction detectors: the equal-moduli
// orbit-fan construction, the two-real-moduli plane-capture construction, the
// checker-certified search for absolutely isolated spectra, the Case-2 subcase
// classifier with its attraction tests, and the fan-independent verdicts.
// Every positive outcome is re-verified with the stability checker; nothing is
// trusted on construction alone.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "monomap/dynamics.hpp"
#include "monomap/errors.hpp"
#include "monomap/fan.hpp"
#include "monomap/spectra.hpp"

namespace monomap {

struct StabilizeBudget {
    int subdivisions = 50;       // star subdivisions in the certified search
    int capture_iterations = 200;  // 2D invariant-cone capture rounds
    int k0_scan = 24;            // candidate powers scanned for k0 / ell0
};

enum class StabilizeVerdict { StabilizedFan, NoModelExists, NotByRefinement, SearchExhausted };

inline std::string verdict_name(StabilizeVerdict v) {
    switch (v) {
        case StabilizeVerdict::StabilizedFan: return "StabilizedFan";
        case StabilizeVerdict::NoModelExists: return "NoModelExists";
        case StabilizeVerdict::NotByRefinement: return "NotByRefinement";
        case StabilizeVerdict::SearchExhausted: return "SearchExhausted";
    }
    throw InternalError("unknown verdict");
}

struct StabilizationOutcome {
    StabilizeVerdict verdict;
    std::optional<Fan> fan;  // for StabilizedFan
    int k0 = 0;
    bool certified_1stable = false;
    bool certified_2stable = false;
    std::string reason;
    std::optional<int> subcase;  // Case-2 subcase when applicable
    std::vector<std::string> log;
};

namespace stab_detail {

inline std::string vec_str(const IVec3& v) {
    return "(" + v[0].str() + "," + v[1].str() + "," + v[2].str() + ")";
}

// Certify that A^k is strongly 1-stable (and 2-stable when require_2stable)
// for every k in [k0, 2k0].
inline bool certify_power_window(const Fan& f, const IMat3& a, int k0, bool require_2stable) {
    for (int k = k0; k <= 2 * k0; ++k) {
        IMat3 ak = pow(a, static_cast<unsigned>(k));
        if (!strong_1_stability(f, ak).stable) return false;
        if (require_2stable && !is_2_stable(f, ak).stable) return false;
    }
    return true;
}

inline std::optional<int> scan_k0(const Fan& f, const IMat3& a, int k0_max,
                                  bool require_2stable) {
    for (int k0 = 1; k0 <= k0_max; ++k0)
        if (certify_power_window(f, a, k0, require_2stable)) return k0;
    return std::nullopt;
}

}  // namespace stab_detail

// ---- Equal moduli: resolution of indeterminacy of the pair -----------------

// All eigenvalues share one modulus and every ratio is a root of unity, so the
// powers of A are finite modulo positive scalars. Build the hyperplane
// arrangement fan, intersect its orbit under those powers, and make the result
// simplicial without new rays. The output is invariant, so rays map onto rays
// and both stability checks must pass with k0 = 1.
inline StabilizationOutcome stabilize_equal_moduli(const Fan& f, const IMat3& a,
                                                   const StabilizeBudget& budget = {}) {
    auto cls = classify_case(a);
    if (cls.label != CaseLabel::EqualModuli)
        throw WrongCase("stabilize_equal_moduli needs the equal-moduli case, got " +
                        case_label_name(cls.label));
    StabilizationOutcome out{StabilizeVerdict::StabilizedFan, std::nullopt, 1, false, false,
                             "", std::nullopt, {}};

    // powers of A modulo positive scalars
    std::vector<IMat3> group = {IMat3::identity()};
    IMat3 acc = a;
    for (int k = 1; k <= 100; ++k) {
        IMat3 rep = matrix_content_normalized(acc);
        if (rep == IMat3::identity()) break;
        if (std::find(group.begin(), group.end(), rep) != group.end()) break;
        group.push_back(rep);
        acc = acc * a;
    }
    out.log.push_back("group size modulo positive scalars: " + std::to_string(group.size()));

    Fan sigma1 = hyperplane_fan(f);
    out.log.push_back("hyperplane arrangement fan: " + std::to_string(sigma1.cones.size()) +
                      " maximal cones");
    Fan orbit = orbit_intersection_fan(sigma1, group);
    out.log.push_back("orbit intersection fan: " + std::to_string(orbit.cones.size()) +
                      " maximal cones");
    Fan result = simplicialize_preserving_rays(orbit);
    result.projective_flag = orbit.projective_flag;
    out.log.push_back("simplicialized: " + std::to_string(result.cones.size()) +
                      " maximal cones, " + std::to_string(result.rays.size()) + " rays");

    if (!stab_detail::certify_power_window(result, a, 1, true))
        throw NotInvariant("equal-moduli construction failed verification");
    (void)budget;
    out.fan = std::move(result);
    out.k0 = 1;
    out.certified_1stable = true;
    out.certified_2stable = true;
    return out;
}

// ---- Invariant-plane capture -------------------------------------------------

namespace stab_detail {

struct Plane2x2 {
    Int a, b, c, d;  // row-major
    IVec2 apply(const IVec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    bool is_scalar() const { return b == 0 && c == 0 && a == d; }
};

struct PlaneSystem {
    std::vector<Fan2D> planes;
    std::vector<int> next;                 // image plane under the map
    std::vector<std::vector<IVec2>> rays;  // evolving ray sets, cyclically sorted
};

inline int find_plane(const PlaneSystem& ps, const IVec3& canonical_normal) {
    for (size_t i = 0; i < ps.planes.size(); ++i)
        if (ps.planes[i].normal == canonical_normal) return static_cast<int>(i);
    return -1;
}

inline void insert_ray(std::vector<IVec2>& rays, const IVec2& r) {
    if (std::find(rays.begin(), rays.end(), r) != rays.end()) return;
    rays.push_back(r);
    std::sort(rays.begin(), rays.end(), cyclic_less);
}

// The sector of the cyclically sorted ray list containing x; -1 when x is a
// ray itself. x must be nonzero.
inline int sector_of(const std::vector<IVec2>& rays, const IVec2& x) {
    IVec2 p = primitive2(x);
    size_t n = rays.size();
    for (size_t i = 0; i < n; ++i)
        if (rays[i] == p) return -1;
    for (size_t i = 0; i < n; ++i) {
        const IVec2& a = rays[i];
        const IVec2& b = rays[(i + 1) % n];
        if (cross2(a, p) > 0 && cross2(p, b) > 0) return static_cast<int>(i);
    }
    throw InternalError("direction not located in a complete 2D fan");
}

// Restriction of an integer matrix preserving the plane to plane coordinates.
inline Plane2x2 restrict_to_plane(const Fan2D& pf, const IMat3& m) {
    IVec2 c1 = to_plane_coords(pf, m * pf.basis[0]);
    IVec2 c2 = to_plane_coords(pf, m * pf.basis[1]);
    return Plane2x2{c1.x, c2.x, c1.y, c2.y};
}

// Map a direction of plane `from` to coordinates of plane `to` under m.
inline IVec2 push_direction(const PlaneSystem& ps, int from, int to, const IMat3& m,
                            const IVec2& v) {
    IVec3 x = m * from_plane_coords(ps.planes[static_cast<size_t>(from)], v);
    return to_plane_coords(ps.planes[static_cast<size_t>(to)], x);
}

struct CaptureResult {
    bool ok = false;
    std::vector<IVec3> new_rays;  // rays to add to the 3D fan, sorted
    std::vector<std::string> log;
};

// Refine the section fans of an invariant plane family until, under the map
// and under its dual, every 2D ray maps to a ray or into a sector whose
// forward sector-chain is eventually periodic (each image staying inside a
// single sector). That is exactly the structure the stability checker needs
// on the plane, so a ray orbit entering such a sector keeps mapping regularly.
inline CaptureResult capture_plane_system(const Fan& f, const IMat3& a,
                                          const std::vector<IVec3>& seed_normals,
                                          const StabilizeBudget& budget) {
    CaptureResult res;
    IMat3 at_adj = det_adjugate(a).second.transposed();

    // close the plane family under the map
    std::vector<IVec3> normals;
    for (IVec3 n0 : seed_normals) {
        IVec3 n = detail::canonical_plane_normal(n0);
        for (int guard = 0; guard < 64; ++guard) {
            if (std::find(normals.begin(), normals.end(), n) != normals.end()) break;
            normals.push_back(n);
            n = detail::canonical_plane_normal(at_adj * n);
        }
    }
    if (normals.empty()) {
        res.ok = true;
        return res;
    }

    PlaneSystem ps;
    for (const auto& n : normals) ps.planes.push_back(plane_section_fan(f, n));
    for (const auto& pf : ps.planes) {
        IVec3 img = detail::canonical_plane_normal(at_adj * pf.normal);
        int j = find_plane(ps, img);
        if (j < 0) throw InternalError("plane family not closed under the map");
        ps.next.push_back(j);
    }
    std::vector<int> prev(ps.next.size());
    for (size_t i = 0; i < ps.next.size(); ++i)
        prev[static_cast<size_t>(ps.next[i])] = static_cast<int>(i);
    IMat3 a_dual = det_adjugate(a).second;

    // seed each plane with the eigenrays of a suitable positive power of the
    // restricted map, when the restriction is not already a homothety
    for (size_t pi = 0; pi < ps.planes.size(); ++pi) {
        const Fan2D& pf = ps.planes[pi];
        std::vector<IVec2> rays = pf.rays;
        if (ps.next[pi] == static_cast<int>(pi)) {
            for (int m = 1; m <= 18; ++m) {
                Plane2x2 b2 = restrict_to_plane(pf, pow(a, static_cast<unsigned>(m)));
                if (b2.is_scalar()) break;
                Int tr = b2.a + b2.d, dt = b2.a * b2.d - b2.b * b2.c;
                Int disc = tr * tr - 4 * dt;
                if (disc <= 0) continue;
                auto roots = rational_roots(
                    RationalPoly({Rat(dt), Rat(-tr), Rat(1)}));
                if (roots.size() != 2) continue;
                if (roots[0] <= 0 || roots[1] <= 0) continue;
                for (const Rat& lam : roots) {
                    Int m00 = b2.a - num(lam), m01 = b2.b, m10 = b2.c, m11 = b2.d - num(lam);
                    IVec2 k = (m00 != 0 || m01 != 0) ? IVec2{-m01, m00} : IVec2{-m11, m10};
                    if (k.is_zero()) continue;
                    k = primitive2(k);
                    insert_ray(rays, k);
                    insert_ray(rays, -k);
                }
                break;
            }
        }
        std::sort(rays.begin(), rays.end(), cyclic_less);
        ps.rays.push_back(std::move(rays));
    }

    // resolution loop: within one round sector indices are stable, so the
    // sector-chain walk can be memoized by (plane, sector) state
    auto pass = [&](const IMat3& m, const std::vector<int>& step,
                    std::vector<std::pair<int, IVec2>>& additions) {
        std::map<std::pair<int, int>, int> state_verdict;  // -1 unknown, 0 bad, 1 good
        size_t total_states = 0;
        for (const auto& r : ps.rays) total_states += r.size();
        auto chain_resolved = [&](int plane0, int sector0) {
            std::vector<std::pair<int, int>> path;
            int plane = plane0, sector = sector0;
            while (true) {
                auto key = std::make_pair(plane, sector);
                auto it = state_verdict.find(key);
                if (it != state_verdict.end() && it->second >= 0) {
                    for (const auto& st : path) state_verdict[st] = it->second;
                    return it->second == 1;
                }
                if (std::find(path.begin(), path.end(), key) != path.end()) {
                    for (const auto& st : path) state_verdict[st] = 1;
                    return true;  // entered a periodic sector chain
                }
                path.push_back(key);
                if (path.size() > 2 * total_states + 4)
                    throw InternalError("sector chain walk did not close");
                const auto& rays_here = ps.rays[static_cast<size_t>(plane)];
                size_t n = rays_here.size();
                IVec2 ga = rays_here[static_cast<size_t>(sector)];
                IVec2 gb = rays_here[(static_cast<size_t>(sector) + 1) % n];
                int to = step[static_cast<size_t>(plane)];
                IVec2 ia = push_direction(ps, plane, to, m, ga);
                IVec2 ib = push_direction(ps, plane, to, m, gb);
                const auto& trays = ps.rays[static_cast<size_t>(to)];
                size_t tn = trays.size();
                int found = -1;
                for (size_t si = 0; si < tn; ++si) {
                    const IVec2& sa = trays[si];
                    const IVec2& sb = trays[(si + 1) % tn];
                    auto inside = [&](const IVec2& p) {
                        return cross2(sa, p) >= 0 && cross2(p, sb) >= 0;
                    };
                    if (inside(primitive2(ia)) && inside(primitive2(ib))) {
                        found = static_cast<int>(si);
                        break;
                    }
                }
                if (found < 0) {
                    for (const auto& st : path) state_verdict[st] = 0;
                    return false;
                }
                plane = to;
                sector = found;
            }
        };
        for (size_t pi = 0; pi < ps.planes.size(); ++pi) {
            int qi = step[pi];
            for (const IVec2& w : ps.rays[pi]) {
                IVec2 x = push_direction(ps, static_cast<int>(pi), qi, m, w);
                int sector = sector_of(ps.rays[static_cast<size_t>(qi)], x);
                if (sector < 0) continue;  // maps to a ray
                if (!chain_resolved(qi, sector)) additions.emplace_back(qi, primitive2(x));
            }
        }
    };

    bool captured = false;
    for (int round = 0; round < budget.capture_iterations && !captured; ++round) {
        std::vector<std::pair<int, IVec2>> additions;
        pass(a, ps.next, additions);
        pass(a_dual, prev, additions);
        if (additions.empty()) {
            captured = true;
            break;
        }
        for (const auto& [qi, r] : additions)
            insert_ray(ps.rays[static_cast<size_t>(qi)], r);
    }
    if (!captured) return res;  // ok = false

    for (size_t pi = 0; pi < ps.planes.size(); ++pi)
        for (const IVec2& r : ps.rays[pi]) {
            IVec3 g = primitive(from_plane_coords(ps.planes[pi], r));
            if (detail::ray_index(f.rays, g) < 0) res.new_rays.push_back(g);
        }
    detail::sort_unique(res.new_rays);
    res.ok = true;
    res.log.push_back("captured " + std::to_string(ps.planes.size()) + " invariant planes, " +
                      std::to_string(res.new_rays.size()) + " new rays");
    return res;
}

}  // namespace stab_detail

// ---- Two real moduli: plane sections and invariant-cone capture -------------

// Reduce to a power B = A^ell with two distinct positive integer eigenvalues,
// collect the invariant planes spanned by ray orbits (and the 2-dimensional
// eigenspace if present), refine each plane's section fan by invariant-cone
// capture, then star-subdivide the fan at all constructed rays and certify the
// smallest working power.
inline StabilizationOutcome stabilize_two_moduli(const Fan& f, const IMat3& a,
                                                 const StabilizeBudget& budget = {}) {
    auto cls = classify_case(a);
    if (cls.label != CaseLabel::TwoModuliHighPair && cls.label != CaseLabel::TwoModuliLowPair)
        throw WrongCase("stabilize_two_moduli needs a two-moduli case, got " +
                        case_label_name(cls.label));
    StabilizationOutcome out{StabilizeVerdict::StabilizedFan, std::nullopt, 1, false, false,
                             "", std::nullopt, {}};
    using stab_detail::vec_str;

    // find ell with A^ell of two distinct positive integer eigenvalues
    int ell = 0;
    Int lambda1, lambda2;  // lambda1 > lambda2 > 0
    for (int cand = 1; cand <= budget.k0_scan; ++cand) {
        IMat3 b = pow(a, static_cast<unsigned>(cand));
        auto factors = factor_over_Q(char_poly(b));
        std::vector<Rat> values;
        bool all_linear = true;
        for (const auto& fac : factors) {
            if (fac.factor.degree() != 1) {
                all_linear = false;
                break;
            }
            values.push_back(-fac.factor.coeffs[0]);
        }
        if (!all_linear || values.size() != 2) continue;
        if (values[0] <= 0 || values[1] <= 0) continue;
        Rat hi = std::max(values[0], values[1]), lo = std::min(values[0], values[1]);
        lambda1 = num(hi);
        lambda2 = num(lo);
        ell = cand;
        break;
    }
    if (ell == 0) {
        out.verdict = StabilizeVerdict::SearchExhausted;
        out.reason = "no power with two distinct positive real eigenvalues within the scan";
        return out;
    }
    IMat3 b = pow(a, static_cast<unsigned>(ell));
    out.log.push_back("ell = " + std::to_string(ell) + ", eigenvalues " + lambda1.str() +
                      " > " + lambda2.str());

    IMat3 b_minus_l1 = b + IMat3::scalar(-lambda1);
    IMat3 b_minus_l2 = b + IMat3::scalar(-lambda2);
    auto is_eigen = [&](const IVec3& v) {
        return (b_minus_l1 * v).is_zero() || (b_minus_l2 * v).is_zero();
    };

    // invariant planes: orbit planes of the non-eigen rays plus the
    // 2-dimensional eigenspace when present
    std::vector<IVec3> seed_normals;
    for (const auto& ray : f.rays)
        if (!is_eigen(ray)) seed_normals.push_back(cross(ray, b * ray));
    for (const IMat3& bm : {b_minus_l1, b_minus_l2}) {
        auto ker = int_kernel(bm);
        if (ker.size() == 2) seed_normals.push_back(cross(ker[0], ker[1]));
    }

    auto capture = stab_detail::capture_plane_system(f, a, seed_normals, budget);
    if (!capture.ok) {
        out.verdict = StabilizeVerdict::SearchExhausted;
        out.reason = "2D invariant-cone capture did not certify within the iteration budget";
        return out;
    }
    for (const auto& l : capture.log) out.log.push_back(l);

    Fan result = f;
    for (const auto& r : capture.new_rays) {
        result = star_subdivide(result, r);
        out.log.push_back("star " + vec_str(r));
    }

    auto k0 = stab_detail::scan_k0(result, a, budget.k0_scan, true);
    if (!k0) {
        out.verdict = StabilizeVerdict::SearchExhausted;
        out.reason = "no power certified on the constructed fan within the scan";
        return out;
    }
    out.fan = std::move(result);
    out.k0 = *k0;
    out.certified_1stable = true;
    out.certified_2stable = true;
    out.log.push_back("certified k0 = " + std::to_string(*k0));
    return out;
}

// ---- Absolutely isolated spectrum: checker-certified search -----------------

// The cited adapted-systems construction is replaced by a verified search:
// seed with the rational eigenrays, capture the invariant planes spanned by
// eigendirection pairs, then star-subdivide along failing orbit images until
// the checker certifies both codimensions or the budget runs out. Success is
// exactly the checker's certificate, nothing more.
inline StabilizationOutcome stabilize_search(const Fan& f, const IMat3& a,
                                             const StabilizeBudget& budget = {}) {
    auto cls = classify_case(a);
    if (cls.label != CaseLabel::AbsIsolated)
        throw WrongCase("stabilize_search needs the absolutely isolated case, got " +
                        case_label_name(cls.label));
    StabilizationOutcome out{StabilizeVerdict::StabilizedFan, std::nullopt, 1, false, false,
                             "", std::nullopt, {}};
    using stab_detail::vec_str;

    // rational eigendirections (an irrational one leaves its invariant data
    // unavailable for subdivision; the witness loop still applies)
    std::vector<IVec3> eigendirs;
    for (const auto& e : cls.spectral.real_eigs) {
        if (!e.rational) continue;
        auto ker = int_kernel(a + IMat3::scalar(-num(e.value)));
        if (ker.size() == 1) eigendirs.push_back(primitive(ker[0]));
    }

    Fan current = f;
    auto certified = [&](Fan&& fan, int k0, const std::string& note) {
        out.fan = std::move(fan);
        out.k0 = k0;
        out.certified_1stable = true;
        out.certified_2stable = true;
        out.log.push_back(note);
        return out;
    };

    // construction stages, cheapest first; each is followed by a fresh check
    for (int stage = 0; stage <= 3; ++stage) {
        if (stab_detail::certify_power_window(current, a, 1, true))
            return certified(std::move(current), 1, "certified with k0 = 1 at stage " +
                                                        std::to_string(stage));
        if (stage == 0) {
            // the rational eigenrays, both signs
            for (const auto& d : eigendirs)
                for (const IVec3& r : {d, IVec3() - d}) {
                    if (detail::ray_index(current.rays, r) >= 0) continue;
                    current = star_subdivide(current, r);
                    out.log.push_back("seed eigenray " + vec_str(r));
                }
        } else if (stage == 1) {
            // invariant planes of eigendirection pairs (the invariant-subspace
            // section rays)
            std::vector<IVec3> seed_normals;
            for (size_t i = 0; i < eigendirs.size(); ++i)
                for (size_t j = i + 1; j < eigendirs.size(); ++j)
                    seed_normals.push_back(cross(eigendirs[i], eigendirs[j]));
            if (!seed_normals.empty()) {
                auto capture =
                    stab_detail::capture_plane_system(current, a, seed_normals, budget);
                if (capture.ok) {
                    for (const auto& l : capture.log) out.log.push_back(l);
                    for (const auto& r : capture.new_rays) {
                        current = star_subdivide(current, r);
                        out.log.push_back("star " + vec_str(r) + " (plane capture)");
                    }
                }
            }
        } else if (stage == 2 && eigendirs.size() == 3) {
            // full rational eigenbasis: refine by the braid arrangement fan in
            // eigen-coordinates; its cells funnel every direction orbit toward
            // the dominant eigendirections, for the dual matrix as well, so
            // some power certifies on the refinement
            std::vector<IVec3> covs;
            for (const auto& e : cls.spectral.real_eigs) {
                auto ker = int_kernel(a.transposed() + IMat3::scalar(-num(e.value)));
                if (ker.size() == 1) covs.push_back(primitive(ker[0]));
            }
            if (covs.size() == 3) {
                std::vector<IVec3> planes;
                for (size_t i = 0; i < 3; ++i) {
                    planes.push_back(covs[i]);
                    for (size_t j = i + 1; j < 3; ++j) {
                        planes.push_back(covs[i] + covs[j]);
                        planes.push_back(covs[i] - covs[j]);
                    }
                }
                for (auto& p : planes) p = detail::canonical_plane_normal(p);
                detail::sort_unique(planes);
                Fan braid = fan_from_cones(arrangement_cells(planes), true);
                braid.complete_memo = true;
                current = common_refinement(current, braid);
                out.log.push_back("refined by the eigenbasis order fan: " +
                                  std::to_string(current.cones.size()) + " cones");
            }
        }
    }

    // a higher power may certify on the constructed fan
    if (auto k0 = stab_detail::scan_k0(current, a, budget.k0_scan, true))
        return certified(std::move(current), *k0, "certified k0 = " + std::to_string(*k0));

    // last resort: star-subdivide along failing orbit images
    int used = 0;
    while (used < budget.subdivisions) {
        auto r1 = strong_1_stability(current, a);
        auto r2 = r1.stable ? is_2_stable(current, a) : StabilityReport{};
        if (r1.stable && r2.stable && stab_detail::certify_power_window(current, a, 1, true))
            return certified(std::move(current), 1,
                             "certified after " + std::to_string(used) + " subdivisions");
        const auto& witness = r1.stable ? r2.witness : r1.witness;
        if (!witness) break;
        IVec3 candidate = witness->image_point;
        if (detail::ray_index(current.rays, candidate) >= 0) {
            // fall back to an interior ray of the failing image cone
            IVec3 sum(0, 0, 0);
            const IMat3& m = r1.stable ? det_adjugate(a).second : a;
            for (const auto& g : witness->failing_cone.gens) sum = sum + m * g;
            candidate = primitive(sum);
            if (detail::ray_index(current.rays, candidate) >= 0) break;
        }
        current = star_subdivide(current, candidate);
        out.log.push_back("star " + vec_str(candidate) +
                          (r1.stable ? " (codim 2 witness)" : " (codim 1 witness)"));
        ++used;
    }
    if (auto k0 = stab_detail::scan_k0(current, a, budget.k0_scan, true))
        return certified(std::move(current), *k0,
                         "certified k0 = " + std::to_string(*k0) + " after budget");
    out.verdict = StabilizeVerdict::SearchExhausted;
    out.reason = "subdivision budget exhausted without a certificate";
    return out;
}

// ---- Case 2 subcases --------------------------------------------------------

struct Case2Report {
    int subcase = 0;  // 1..5
    bool gamma_is_rational = true;
    IVec3 gamma;                         // the chosen orientation when rational
    std::optional<IVec3> ray_in_plane;   // subcase 2 witness
    std::optional<Cone> witness_cone;    // subcase 3: the 2-cone; 1/5: a 3-cone
    std::optional<IVec3> attracted_ray;  // subcase 4 witness
    std::string note;
    StabilizationOutcome outcome;
};

namespace stab_detail {

// Eigendata of the dominated-pair case: nu (the dominant real eigenvalue),
// the right eigendirection v and the left eigencovector l, all exact. The
// invariant plane of the pair is ker l.
struct Case2Eigendata {
    bool rational;
    IVec3 v_rat, l_rat;
    AVec3 v_alg, l_alg;
    std::shared_ptr<const RealAlgebraic> gen;

    AVec3 v_avec() const { return rational ? to_avec(v_rat) : v_alg; }
    AVec3 l_avec() const { return rational ? to_avec(l_rat) : l_alg; }
};

inline AVec3 alg_row_kernel(const M3<AlgNum>& m) {
    // cross product of two independent rows (rank 2 exactly)
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            AVec3 c = cross(m[i], m[j]);
            if (!is_zero_vec(c)) return c;
        }
    throw InternalError("expected a rank-2 matrix");
}

inline Case2Eigendata case2_eigendata(const IMat3& a, const SpectralClass& sc) {
    Case2Eigendata e;
    const RealEigenvalue& nu = sc.real_eigs.at(0);
    e.rational = nu.rational;
    if (nu.rational) {
        Int nv = num(nu.value);
        auto vk = int_kernel(a + IMat3::scalar(-nv));
        auto lk = int_kernel(a.transposed() + IMat3::scalar(-nv));
        if (vk.size() != 1 || lk.size() != 1)
            throw InternalError("dominant eigenvalue is not simple");
        e.v_rat = primitive(vk[0]);
        e.l_rat = primitive(lk[0]);
    } else {
        e.gen = sc.cubic_gen;
        AlgNum nu_alg(e.gen, RationalPoly({Rat(0), Rat(1)}));
        M3<AlgNum> m, mt;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                AlgNum entry(Rat(a.at(i, j)));
                if (i == j) entry = entry - nu_alg;
                m[i][j] = entry;
                mt[j][i] = entry;
            }
        e.v_alg = alg_row_kernel(m);
        e.l_alg = alg_row_kernel(mt);
    }
    return e;
}

inline AVec3 neg(const AVec3& v) { return AVec3(-v[0], -v[1], -v[2]); }

}  // namespace stab_detail

// Classifies the dominated-pair case into the five fan-geometric subcases and
// carries out the per-subcase verdict: obstruction (NotByRefinement), the
// one-sided-cones refinement with an ell0 scan, or the k0 scan on the fan
// itself. The attraction test decomposes a ray generator r = c w + u with u in
// the invariant plane; r is attracted to the gamma orientation w exactly when
// c > 0, applied to A^2 when nu < 0.
inline Case2Report case2_subclassify(const Fan& f, const IMat3& a,
                                     const StabilizeBudget& budget = {}) {
    auto cls = classify_case(a);
    if (cls.label != CaseLabel::IrrationalPairDominated)
        throw WrongCase("case2_subclassify needs the dominated-pair case, got " +
                        case_label_name(cls.label));
    if (!fan_is_complete(f)) throw Error("case2_subclassify requires a complete fan");

    Case2Report rep;
    auto eig = stab_detail::case2_eigendata(a, cls.spectral);
    rep.gamma_is_rational = eig.rational;
    AVec3 l = eig.l_avec();
    AVec3 v_plus = eig.v_avec();
    AVec3 v_minus = stab_detail::neg(v_plus);

    auto l_pairing = [&](const IVec3& r) { return alg_sign(dot(r, l)); };

    // subcase 2: a ray of the fan inside the invariant plane
    for (const auto& r : f.rays)
        if (l_pairing(r) == 0) {
            rep.subcase = 2;
            rep.ray_in_plane = r;
            rep.note = "ray " + stab_detail::vec_str(r) + " lies in the invariant plane";
            rep.outcome = {StabilizeVerdict::NotByRefinement, std::nullopt, 0, false, false,
                           rep.note, 2, {}};
            return rep;
        }

    // locate both orientations of the eigendirection
    auto locate = [&](const AVec3& d) {
        auto c = smallest_containing_cone(f, d);
        if (!c) throw InternalError("eigendirection outside a complete fan");
        return *c;
    };
    Cone loc_plus = locate(v_plus);
    Cone loc_minus = locate(v_minus);

    // subcase 3: an orientation in the relative interior of a 2-cone
    for (const Cone* loc : {&loc_plus, &loc_minus})
        if (loc->dim == 2) {
            rep.subcase = 3;
            rep.witness_cone = *loc;
            rep.note = "eigendirection in the relative interior of " + cone_to_string(*loc);
            rep.outcome = {StabilizeVerdict::NotByRefinement, std::nullopt, 0, false, false,
                           rep.note, 3, {}};
            return rep;
        }

    // sign of c in r = c w + u: positive means attracted to the w orientation
    int sign_l_at_vplus = alg_sign(v_plus[0] * l[0] + v_plus[1] * l[1] + v_plus[2] * l[2]);
    if (sign_l_at_vplus == 0) throw InternalError("eigendirection pairing with its covector is zero");
    auto attracted_to = [&](const IVec3& r, bool plus_orientation) {
        int c_sign = l_pairing(r) * (plus_orientation ? sign_l_at_vplus : -sign_l_at_vplus);
        if (c_sign == 0)
            throw InternalError("ray outside the plane with zero eigencomponent");
        return c_sign > 0;
    };

    // ray orientations of gamma (only possible when the direction is rational)
    bool plus_is_ray = loc_plus.dim == 1;
    bool minus_is_ray = loc_minus.dim == 1;

    if (plus_is_ray || minus_is_ray) {
        for (bool plus : {true, false}) {
            if ((plus && !plus_is_ray) || (!plus && !minus_is_ray)) continue;
            IVec3 gamma_ray = plus ? (eig.rational ? primitive(eig.v_rat) : IVec3())
                                   : (eig.rational ? primitive(-eig.v_rat) : IVec3());
            for (const auto& r : f.rays) {
                if (r == gamma_ray || r == -gamma_ray) continue;
                if (attracted_to(r, plus)) {
                    rep.subcase = 4;
                    rep.gamma = gamma_ray;
                    rep.attracted_ray = r;
                    rep.note = "ray " + stab_detail::vec_str(r) + " is attracted to the fan ray " +
                               stab_detail::vec_str(gamma_ray);
                    rep.outcome = {StabilizeVerdict::NotByRefinement, std::nullopt, 0,
                                   false,  false, rep.note, 4, {}};
                    return rep;
                }
            }
        }
        // a ray orientation with no attracted ray: subcase 5; the opposite
        // orientation must sit inside a 3-cone
        bool plus = plus_is_ray;
        const Cone& other = plus ? loc_minus : loc_plus;
        if (other.dim != 3)
            throw InternalError("subcase-5 geometry with both orientations on rays");
        rep.subcase = 5;
        rep.gamma = plus ? primitive(eig.v_rat) : primitive(-eig.v_rat);
        rep.witness_cone = other;
        auto k0 = stab_detail::scan_k0(f, a, budget.k0_scan, false);
        if (k0) {
            rep.note = "A^k is 1-stable on the fan itself for k >= " + std::to_string(*k0);
            rep.outcome = {StabilizeVerdict::StabilizedFan, f, *k0, true, false,
                           rep.note, 5, {}};
        } else {
            rep.note = "no power certified within the scan";
            rep.outcome = {StabilizeVerdict::SearchExhausted, std::nullopt, 0, false, false,
                           rep.note, 5, {}};
        }
        return rep;
    }

    // subcase 1: both orientations interior to 3-cones, no ray in the plane
    rep.subcase = 1;
    rep.witness_cone = loc_plus;
    Fan refined = f;
    std::vector<std::string> log;

    // refine until the cones containing both orientations are strictly on one
    // side of the invariant plane
    auto one_sided = [&](const Cone& c, int side) {
        for (const auto& g : c.gens)
            if (l_pairing(g) != side) return false;
        return true;
    };
    int round = 0;
    while (round < budget.capture_iterations) {
        Cone cp = locate_in(refined, v_plus);
        Cone cm = locate_in(refined, v_minus);
        if (cp.dim != 3 || cm.dim != 3)
            throw InternalError("eigendirection left the interior during refinement");
        bool ok_p = one_sided(cp, sign_l_at_vplus);
        bool ok_m = one_sided(cm, -sign_l_at_vplus);
        if (ok_p && ok_m) break;
        const Cone& bad = ok_p ? cm : cp;
        int want = ok_p ? -sign_l_at_vplus : sign_l_at_vplus;
        const AVec3& dir = ok_p ? v_minus : v_plus;
        // a rational ray close to the eigendirection on the correct side
        IVec3 wrong = bad.gens.front();
        for (const auto& g : bad.gens)
            if (l_pairing(g) != want) wrong = g;
        std::optional<IVec3> star_ray;
        if (eig.rational) {
            IVec3 base = want == sign_l_at_vplus ? primitive(eig.v_rat) : primitive(-eig.v_rat);
            Int K = 1;
            for (int doublings = 0; doublings < 64; ++doublings, K = K * 2) {
                IVec3 cand = primitive(K * base + wrong);
                if (l_pairing(cand) != want) continue;
                if (detail::ray_index(refined.rays, cand) >= 0) continue;
                star_ray = cand;
                break;
            }
        } else {
            // rational approximation of the algebraic direction from its
            // generator's isolating interval, pulled slightly toward the
            // offending generator to keep the eigendirection interior
            RealAlgebraic g = *eig.gen;
            for (int refines = 0; refines < 200 && !star_ray; ++refines) {
                g.refine();
                Rat mid = (g.lo + g.hi) / 2;
                RVec3 approx;
                for (int i = 0; i < 3; ++i) approx[i] = dir[i].rep(mid);
                if (approx[0] == 0 && approx[1] == 0 && approx[2] == 0) continue;
                IVec3 cand = primitive(approx);
                if (l_pairing(cand) != want) continue;
                if (!bad.contains_point(cand)) continue;
                if (detail::ray_index(refined.rays, cand) >= 0) continue;
                star_ray = cand;
            }
        }
        if (!star_ray) break;
        refined = star_subdivide(refined, *star_ray);
        log.push_back("star " + stab_detail::vec_str(*star_ray));
        ++round;
    }

    Cone cp = locate_in(refined, v_plus);
    Cone cm = locate_in(refined, v_minus);
    bool sided = cp.dim == 3 && cm.dim == 3 && one_sided(cp, sign_l_at_vplus) &&
                 one_sided(cm, -sign_l_at_vplus);
    if (sided) {
        auto ell0 = stab_detail::scan_k0(refined, a, budget.k0_scan, false);
        if (ell0) {
            rep.note = "one-sided cones achieved; A^ell is 1-stable for ell >= " +
                       std::to_string(*ell0);
            rep.outcome = {StabilizeVerdict::StabilizedFan, refined, *ell0, true, false,
                           rep.note, 1, log};
            return rep;
        }
    }
    rep.note = sided ? "one-sided cones achieved but no power certified within the scan"
                     : "one-sided refinement did not complete within the budget";
    rep.outcome = {StabilizeVerdict::SearchExhausted, std::nullopt, 0, false, false, rep.note,
                   1, log};
    return rep;
}

// ---- Fan-independent verdicts ------------------------------------------------

// Case 1 (dominant pair): no toric birational model is 1-stable; the
// 2-stability question is the dual matrix's fan-dependent Case 2. Case 3
// (equal moduli with irrational angle): no model is 1- or 2-stable for any
// iterate on any complete fan.
inline StabilizationOutcome case_verdict(const IMat3& a) {
    auto cls = classify_case(a);
    StabilizationOutcome out{StabilizeVerdict::NoModelExists, std::nullopt, 0, false, false,
                             "", std::nullopt, {}};
    if (cls.label == CaseLabel::IrrationalPairDominant) {
        out.reason =
            "dominant irrational-angle pair: no complete toric model makes the map 1-stable; "
            "2-stability is the dual matrix's 1-stability question (dominated case, "
            "fan-dependent)";
        return out;
    }
    if (cls.label == CaseLabel::IrrationalPairEqual) {
        out.reason =
            "equal-modulus irrational-angle pair: no iterate is 1-stable or 2-stable on any "
            "complete toric model";
        return out;
    }
    throw WrongCase("case_verdict applies to the irrational-pair dominant/equal cases, got " +
                    case_label_name(cls.label));
}

}  // namespace monomap
