// Fans of strictly convex rational cones in rank 3: validation against the fan
// axioms, completeness/simpliciality/regularity predicates, common refinements,
// hyperplane-arrangement fans, orbit-intersection fans, stellar subdivision and
// ray-preserving simplicialization, and plane-section fans.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monomap/cone.hpp"
#include "monomap/errors.hpp"
#include "monomap/linalg.hpp"

namespace monomap {

struct Fan {
    std::vector<IVec3> rays;                   // primitive ray generators, sorted
    std::vector<std::vector<int>> max_cones;   // ray indices per maximal cone
    std::vector<Cone> cones;                   // maximal cone objects (parallel)
    std::vector<Cone> face_set;                // every face of every cone, sorted
    // Construction provenance: set when the fan arises from a full hyperplane
    // arrangement (and is preserved by arrangement-respecting refinements).
    // Recorded, not verified by an ampleness computation.
    bool projective_flag = false;
    // memoized completeness verdict; fans are immutable once built
    mutable std::optional<bool> complete_memo;
};

namespace detail {

inline int ray_index(const std::vector<IVec3>& rays, const IVec3& v) {
    auto it = std::lower_bound(rays.begin(), rays.end(), v);
    if (it == rays.end() || !(*it == v)) return -1;
    return static_cast<int>(it - rays.begin());
}

}  // namespace detail

// Assemble a fan from maximal cone candidates: absorbs cones that are faces of
// others, derives the ray list, checks the pairwise-face axiom, and builds the
// face closure.
inline Fan fan_from_cones(std::vector<Cone> input, bool projective_flag = false) {
    std::sort(input.begin(), input.end());
    input.erase(std::unique(input.begin(), input.end()), input.end());
    input.erase(std::remove_if(input.begin(), input.end(),
                               [](const Cone& c) { return c.is_zero(); }),
                input.end());
    if (input.empty()) throw BadFan("no cones");

    // absorb cones that are faces of other cones
    std::vector<Cone> maximal;
    for (size_t i = 0; i < input.size(); ++i) {
        bool absorbed = false;
        for (size_t j = 0; j < input.size() && !absorbed; ++j)
            if (i != j && input[i].gens != input[j].gens && is_face_of(input[i], input[j]))
                absorbed = true;
        if (!absorbed) maximal.push_back(input[i]);
    }

    // the pairwise-face axiom
    for (size_t i = 0; i < maximal.size(); ++i)
        for (size_t j = i + 1; j < maximal.size(); ++j) {
            Cone inter = cone_intersect(maximal[i], maximal[j]);
            if (!is_face_of(inter, maximal[i]) || !is_face_of(inter, maximal[j]))
                throw BadFan("intersection of " + cone_to_string(maximal[i]) + " and " +
                             cone_to_string(maximal[j]) + " is not a common face");
        }

    Fan f;
    f.projective_flag = projective_flag;
    f.cones = std::move(maximal);
    for (const auto& c : f.cones)
        for (const auto& g : c.gens) f.rays.push_back(g);
    detail::sort_unique(f.rays);
    for (const auto& c : f.cones) {
        std::vector<int> idx;
        for (const auto& g : c.gens) idx.push_back(detail::ray_index(f.rays, g));
        std::sort(idx.begin(), idx.end());
        f.max_cones.push_back(std::move(idx));
    }
    // canonical order of maximal cones
    std::vector<size_t> order(f.cones.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return f.cones[a] < f.cones[b]; });
    std::vector<Cone> cs;
    std::vector<std::vector<int>> mc;
    for (size_t i : order) {
        cs.push_back(f.cones[i]);
        mc.push_back(f.max_cones[i]);
    }
    f.cones = std::move(cs);
    f.max_cones = std::move(mc);

    for (const auto& c : f.cones) {
        auto fs = faces_of(c);
        f.face_set.insert(f.face_set.end(), fs.begin(), fs.end());
    }
    std::sort(f.face_set.begin(), f.face_set.end());
    f.face_set.erase(std::unique(f.face_set.begin(), f.face_set.end()), f.face_set.end());
    return f;
}

// Build a fan from an explicit ray list and maximal cones given as ray index
// sets; rejects ray lists inconsistent with the fan's actual 1-skeleton.
inline Fan fan_new(const std::vector<IVec3>& rays, const std::vector<std::vector<int>>& max_cones) {
    std::vector<IVec3> prim;
    for (const auto& r : rays) {
        if (r.is_zero()) throw BadFan("zero ray");
        prim.push_back(primitive(r));
    }
    {
        auto sorted = prim;
        detail::sort_unique(sorted);
        if (sorted.size() != prim.size()) throw BadFan("rays not pairwise distinct");
    }
    std::vector<Cone> cones;
    for (const auto& idx : max_cones) {
        std::vector<IVec3> gens;
        for (int i : idx) {
            if (i < 0 || static_cast<size_t>(i) >= prim.size())
                throw BadFan("cone references ray index out of range");
            gens.push_back(prim[static_cast<size_t>(i)]);
        }
        cones.push_back(cone_new(gens));
        if (cones.back().gens.size() != gens.size())
            throw BadFan("listed ray is not an extreme ray of its cone");
    }
    Fan f = fan_from_cones(std::move(cones));
    std::vector<IVec3> declared = prim;
    detail::sort_unique(declared);
    if (f.rays != declared) throw BadFan("declared rays do not match the fan's rays");
    return f;
}

inline bool fan_equal(const Fan& a, const Fan& b) {
    return a.rays == b.rays && a.cones == b.cones;
}

// ---- Standard fans ----------------------------------------------------------

// Fan of P^3: rays e1, e2, e3, (-1,-1,-1); all four triples are maximal cones.
inline Fan p3_fan() {
    std::vector<IVec3> rays = {IVec3(1, 0, 0), IVec3(0, 1, 0), IVec3(0, 0, 1),
                               IVec3(-1, -1, -1)};
    return fan_new(rays, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

// Fan of the eight coordinate octants (P^1 x P^1 x P^1).
inline Fan octant_fan() {
    std::vector<Cone> cones;
    for (int sx : {1, -1})
        for (int sy : {1, -1})
            for (int sz : {1, -1})
                cones.push_back(
                    cone_new({IVec3(sx, 0, 0), IVec3(0, sy, 0), IVec3(0, 0, sz)}));
    return fan_from_cones(std::move(cones));
}

// ---- Queries ----------------------------------------------------------------

inline bool support_contains(const Fan& f, const IVec3& x) {
    for (const auto& c : f.cones)
        if (c.contains_point(x)) return true;
    return false;
}

// Smallest cone of the fan containing x, if any.
template <typename Point>
std::optional<Cone> smallest_containing_cone(const Fan& f, const Point& x) {
    std::optional<Cone> best;
    for (const auto& c : f.face_set) {
        if (c.is_zero()) continue;
        if (cone_contains(c, x).kind == Containment::Outside) continue;
        if (!best || c.dim < best->dim) best = c;
    }
    return best;
}

template <typename Point>
Cone locate_in(const Fan& f, const Point& x) {
    auto c = smallest_containing_cone(f, x);
    if (!c) throw InternalError("point outside a complete fan");
    return *c;
}

// ---- Predicates -------------------------------------------------------------

struct FanPredicates {
    bool complete = false;
    bool simplicial = false;
    bool regular = false;
};

namespace detail {

inline IVec3 canonical_plane_normal(const IVec3& n) {
    IVec3 p = primitive(n);
    for (int i = 0; i < 3; ++i) {
        if (p[i] > 0) return p;
        if (p[i] < 0) return -p;
    }
    throw InternalError("zero plane normal");
}

// Facet planes of all maximal cones, deduplicated up to sign.
inline std::vector<IVec3> facet_planes(const Fan& f) {
    std::vector<IVec3> planes;
    for (const auto& c : f.cones)
        for (const auto& n : c.normals) planes.push_back(canonical_plane_normal(n));
    sort_unique(planes);
    return planes;
}

inline bool positively_spans_pointed(const std::vector<IVec3>& vs) {
    try {
        cone_new(vs);
        return true;
    } catch (const NotStrictlyConvex&) {
        return false;
    }
}

}  // namespace detail

// Full-dimensional cells of the central arrangement of the given planes.
// Cells are enumerated by sign vectors; a branch is pruned when the chosen
// halfspaces can no longer bound a full-dimensional region (their normals stop
// being a pointed configuration, by Gordan's theorem).
inline std::vector<Cone> arrangement_cells(const std::vector<IVec3>& planes) {
    std::vector<Cone> cells;
    std::vector<IVec3> signed_normals;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == planes.size()) {
            Cone cell = cone_from_constraints({}, signed_normals);
            if (cell.dim != 3) throw InternalError("arrangement cell not full-dimensional");
            cells.push_back(std::move(cell));
            return;
        }
        for (int s : {1, -1}) {
            signed_normals.push_back(s == 1 ? planes[i] : -planes[i]);
            if (detail::positively_spans_pointed(signed_normals)) rec(i + 1);
            signed_normals.pop_back();
        }
    };
    if (planes.empty()) throw InternalError("arrangement of no planes");
    rec(0);
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

inline bool fan_is_complete(const Fan& f) {
    if (f.complete_memo) return *f.complete_memo;
    f.complete_memo = false;
    // every maximal cone full-dimensional
    for (const auto& c : f.cones)
        if (c.dim != 3) return false;
    // perfect pairing: each 2-face belongs to exactly two maximal cones
    std::map<Cone, int> face_count;
    for (const auto& c : f.cones)
        for (const auto& n : c.normals) face_count[face_by_normals(c, {n})] += 1;
    for (const auto& [face, count] : face_count)
        if (count != 2) return false;
    // probe: the interior point of every arrangement region must be covered
    // (pairing alone misses disconnected pathologies)
    auto planes = detail::facet_planes(f);
    for (const auto& cell : arrangement_cells(planes)) {
        IVec3 witness(0, 0, 0);
        for (const auto& g : cell.gens) witness = witness + g;
        bool covered = false;
        for (const auto& c : f.cones)
            if (c.contains_point(witness)) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    f.complete_memo = true;
    return true;
}

inline bool fan_is_simplicial(const Fan& f) {
    for (const auto& c : f.cones)
        if (static_cast<int>(c.gens.size()) != c.dim) return false;
    return true;
}

inline bool cone_is_regular(const Cone& c) {
    if (static_cast<int>(c.gens.size()) != c.dim) return false;
    switch (c.dim) {
        case 3:
            return abs(det3(c.gens[0], c.gens[1], c.gens[2])) == 1;
        case 2: {
            // the two generators extend to a lattice basis iff the gcd of the
            // 2x2 minors of their coordinate matrix is 1
            IVec3 m = cross(c.gens[0], c.gens[1]);
            return gcd(gcd(abs(m[0]), abs(m[1])), abs(m[2])) == 1;
        }
        default:
            return true;  // primitive rays and the zero cone
    }
}

inline bool fan_is_regular(const Fan& f) {
    for (const auto& c : f.cones)
        if (!cone_is_regular(c)) return false;
    return true;
}

inline FanPredicates fan_predicates(const Fan& f) {
    FanPredicates p;
    p.simplicial = fan_is_simplicial(f);
    p.regular = p.simplicial && fan_is_regular(f);
    p.complete = fan_is_complete(f);
    return p;
}

// ---- Refinements ------------------------------------------------------------

// True when every maximal cone of fine is contained in some cone of coarse.
inline bool refines(const Fan& fine, const Fan& coarse) {
    for (const auto& c : fine.cones) {
        bool inside = false;
        for (const auto& d : coarse.cones) {
            bool all = true;
            for (const auto& g : c.gens)
                if (!d.contains_point(g)) {
                    all = false;
                    break;
                }
            if (all) {
                inside = true;
                break;
            }
        }
        if (!inside) return false;
    }
    return true;
}

// Common refinement of two complete fans: all pairwise intersections.
inline Fan common_refinement(const Fan& f1, const Fan& f2) {
    if (!fan_is_complete(f1) || !fan_is_complete(f2)) throw SupportMismatch();
    std::vector<Cone> pieces;
    for (const auto& a : f1.cones)
        for (const auto& b : f2.cones) {
            Cone i = cone_intersect(a, b);
            if (i.dim == 3) pieces.push_back(std::move(i));
        }
    Fan out = fan_from_cones(std::move(pieces), f1.projective_flag && f2.projective_flag);
    // full-dimensional intersections of two complete fans tile all of space
    out.complete_memo = true;
    return out;
}

// The complete fan of the arrangement of all hyperplanes spanned by the
// 2-dimensional cones of f. Refines f; the result is projective by
// construction (it contains all hyperplanes spanned by its own 2-cones), which
// is recorded as a provenance flag.
inline Fan hyperplane_fan(const Fan& f) {
    if (!fan_is_complete(f)) throw Error("hyperplane_fan requires a complete fan");
    auto planes = detail::facet_planes(f);
    Fan out = fan_from_cones(arrangement_cells(planes), true);
    if (!refines(out, f)) throw InternalError("arrangement fan does not refine input");
    out.complete_memo = true;  // arrangement cells tile all of space
    return out;
}

// Image fan g(f) for g with det != 0.
inline Fan image_fan(const IMat3& g, const Fan& f) {
    std::vector<Cone> cones;
    for (const auto& c : f.cones) cones.push_back(image_cone(g, c));
    Fan out = fan_from_cones(std::move(cones), false);
    out.complete_memo = f.complete_memo;  // invertible images preserve the support
    return out;
}

// Common refinement of { g(f) : g in group }, verified invariant under every
// group element: each maximal cone must map onto a maximal cone.
inline Fan orbit_intersection_fan(const Fan& f, const std::vector<IMat3>& group) {
    if (!fan_is_complete(f)) throw Error("orbit_intersection_fan requires a complete fan");
    Fan out = f;
    bool first = true;
    for (const auto& g : group) {
        if (det(g) == 0) throw SingularMatrix();
        Fan img = image_fan(g, f);
        out = first ? img : common_refinement(out, img);
        first = false;
    }
    for (const auto& g : group)
        for (const auto& c : out.cones) {
            Cone img = image_cone(g, c);
            if (!std::binary_search(out.cones.begin(), out.cones.end(), img))
                throw NotInvariant("image of " + cone_to_string(c) + " is not a cone of the fan");
        }
    return out;
}

// Stellar subdivision at a primitive ray r in |f|: every cone containing r is
// replaced by the joins of r with its facets not containing r.
inline Fan star_subdivide(const Fan& f, const IVec3& r_in) {
    IVec3 r = primitive(r_in);
    if (!support_contains(f, r)) throw Error("star_subdivide: ray outside the fan support");
    if (detail::ray_index(f.rays, r) >= 0) return f;
    std::vector<Cone> cones;
    for (const auto& c : f.cones) {
        if (!c.contains_point(r)) {
            cones.push_back(c);
            continue;
        }
        std::vector<Cone> facets;
        if (c.dim == 3)
            for (const auto& n : c.normals) facets.push_back(face_by_normals(c, {n}));
        else if (c.dim == 2)
            for (const auto& g : c.gens) facets.push_back(ray_cone(g));
        else
            throw InternalError("star ray inside a ray cone should be that ray");
        for (const auto& facet : facets) {
            if (facet.contains_point(r)) continue;
            std::vector<IVec3> gens = facet.gens;
            gens.push_back(r);
            cones.push_back(cone_new(gens));
        }
    }
    Fan out = fan_from_cones(std::move(cones), f.projective_flag);
    std::vector<IVec3> expected = f.rays;
    expected.push_back(r);
    detail::sort_unique(expected);
    if (out.rays != expected) throw InternalError("star subdivision changed the ray set");
    out.complete_memo = f.complete_memo;  // subdivision preserves the support
    return out;
}

// Simplicial refinement with the identical ray set: each non-simplicial cone
// is triangulated from its lexicographically smallest ray.
inline Fan simplicialize_preserving_rays(const Fan& f) {
    std::vector<Cone> cones;
    for (const auto& c : f.cones) {
        if (static_cast<int>(c.gens.size()) == c.dim) {
            cones.push_back(c);
            continue;
        }
        if (c.dim != 3) throw InternalError("non-simplicial cone of dimension < 3");
        const IVec3& apex = c.gens.front();  // gens sorted, so front is lex-smallest
        for (const auto& n : c.normals) {
            Cone facet = face_by_normals(c, {n});
            if (facet.contains_point(apex)) continue;
            std::vector<IVec3> gens = facet.gens;
            gens.push_back(apex);
            cones.push_back(cone_new(gens));
        }
    }
    Fan out = fan_from_cones(std::move(cones), f.projective_flag);
    if (out.rays != f.rays) throw InternalError("simplicialization changed the ray set");
    if (!fan_is_simplicial(out)) throw InternalError("simplicialization failed");
    out.complete_memo = f.complete_memo;  // triangulation preserves the support
    return out;
}

// ---- Plane sections ---------------------------------------------------------

struct IVec2 {
    Int x, y;
    friend bool operator==(const IVec2& a, const IVec2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const IVec2& a, const IVec2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
    IVec2 operator-() const { return {-x, -y}; }
    bool is_zero() const { return x == 0 && y == 0; }
};

inline Int cross2(const IVec2& a, const IVec2& b) { return a.x * b.y - a.y * b.x; }

inline IVec2 primitive2(const IVec2& v) {
    Int g = gcd(abs(v.x), abs(v.y));
    if (g == 0) throw InternalError("primitive2 of zero vector");
    return {v.x / g, v.y / g};
}

// Strict cyclic order on primitive directions, starting at (1,0) and going
// counterclockwise.
inline bool cyclic_less(const IVec2& a, const IVec2& b) {
    auto half = [](const IVec2& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross2(a, b) > 0;
}

// A complete fan inside a rational plane, in a fixed lattice basis of the
// plane. Sectors are the cones between cyclically consecutive rays.
struct Fan2D {
    IVec3 normal;                  // primitive, canonical sign
    std::array<IVec3, 2> basis;    // lattice basis of plane ∩ N
    std::vector<IVec2> rays;       // primitive, cyclically sorted
};

inline IVec3 from_plane_coords(const Fan2D& pf, const IVec2& v) {
    return v.x * pf.basis[0] + v.y * pf.basis[1];
}

inline IVec2 to_plane_coords(const Fan2D& pf, const IVec3& g) {
    const IVec3 &b1 = pf.basis[0], &b2 = pf.basis[1];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Int d = b1[i] * b2[j] - b1[j] * b2[i];
            if (d == 0) continue;
            Int ax = g[i] * b2[j] - g[j] * b2[i];
            Int ay = b1[i] * g[j] - b1[j] * g[i];
            if (ax % d != 0 || ay % d != 0)
                throw InternalError("plane coordinates not integral");
            IVec2 v{ax / d, ay / d};
            if (!(v.x * b1 + v.y * b2 == g))
                throw InternalError("plane coordinate solve failed");
            return v;
        }
    throw InternalError("degenerate plane basis");
}

// The induced complete fan { sigma ∩ Γ } inside the plane Γ.
inline Fan2D plane_section_fan(const Fan& f, const IVec3& plane_normal) {
    if (!fan_is_complete(f)) throw Error("plane_section_fan requires a complete fan");
    Fan2D pf;
    pf.normal = detail::canonical_plane_normal(plane_normal);
    auto basis = covector_kernel_basis(pf.normal);
    pf.basis = {basis[0], basis[1]};

    std::vector<std::pair<IVec2, IVec2>> sectors;
    std::vector<IVec2> rays;
    for (const auto& c : f.cones) {
        std::vector<IVec3> eqs = c.span_eqs;
        eqs.push_back(pf.normal);
        Cone k = cone_from_constraints(eqs, c.normals);
        if (k.dim != 2) continue;
        std::vector<IVec2> gs;
        for (const auto& g : k.gens) gs.push_back(to_plane_coords(pf, g));
        if (gs.size() != 2) throw InternalError("plane section piece is not a sector");
        if (cross2(gs[0], gs[1]) < 0) std::swap(gs[0], gs[1]);
        sectors.emplace_back(gs[0], gs[1]);
        rays.push_back(gs[0]);
        rays.push_back(gs[1]);
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    std::sort(rays.begin(), rays.end(), cyclic_less);
    std::sort(sectors.begin(), sectors.end());
    sectors.erase(std::unique(sectors.begin(), sectors.end()), sectors.end());
    if (sectors.size() != rays.size())
        throw InternalError("plane section does not tile the plane");
    pf.rays = std::move(rays);
    return pf;
}

}  // namespace monomap
