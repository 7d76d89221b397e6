// Strictly convex rational polyhedral cones in rank 3, with both generator and
// facet descriptions. The double description is computed directly from
// pairwise cross products, which is complete for cones of rank <= 3.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "monomap/algebraic.hpp"
#include "monomap/errors.hpp"
#include "monomap/linalg.hpp"

namespace monomap {

struct Cone {
    // Minimal generating set: primitive extreme ray generators, sorted.
    std::vector<IVec3> gens;
    // Facet inequalities <n, x> >= 0 (for lower-dimensional cones these are
    // facets within the span), primitive, sorted.
    std::vector<IVec3> normals;
    // Equations <e, x> = 0 cutting out the linear span; empty for full cones.
    std::vector<IVec3> span_eqs;
    int dim = 0;

    bool is_zero() const { return gens.empty(); }

    friend bool operator==(const Cone& a, const Cone& b) { return a.gens == b.gens; }
    friend bool operator<(const Cone& a, const Cone& b) { return a.gens < b.gens; }

    // Membership of a rational point (no face computation).
    bool contains_point(const IVec3& x) const {
        for (const auto& e : span_eqs)
            if (dot(e, x) != 0) return false;
        for (const auto& n : normals)
            if (dot(n, x) < 0) return false;
        return true;
    }
};

namespace detail {

inline void sort_unique(std::vector<IVec3>& vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

}  // namespace detail

// Construct the cone generated by the given vectors. Computes the dual
// description, reduces the generators to the minimal set of primitive extreme
// rays, and rejects cones containing a line. An empty generator list yields
// the zero cone.
inline Cone cone_new(const std::vector<IVec3>& raw_gens) {
    Cone c;
    std::vector<IVec3> gens;
    for (const auto& g : raw_gens) {
        if (g.is_zero()) throw Error("cone generator must be nonzero");
        gens.push_back(primitive(g));
    }
    detail::sort_unique(gens);

    int r = rank_of(gens);
    c.dim = r;

    // span equations
    switch (r) {
        case 3:
            break;
        case 2: {
            for (size_t i = 0; i < gens.size() && c.span_eqs.empty(); ++i)
                for (size_t j = i + 1; j < gens.size(); ++j) {
                    IVec3 n = cross(gens[i], gens[j]);
                    if (!n.is_zero()) {
                        c.span_eqs.push_back(primitive(n));
                        break;
                    }
                }
            break;
        }
        case 1: {
            auto b = covector_kernel_basis(gens[0]);
            c.span_eqs = {b[0], b[1]};
            detail::sort_unique(c.span_eqs);
            break;
        }
        case 0:
            c.span_eqs = {IVec3(1, 0, 0), IVec3(0, 1, 0), IVec3(0, 0, 1)};
            return c;  // zero cone
    }

    // candidate facet normals
    std::vector<IVec3> cands;
    if (r == 3) {
        for (size_t i = 0; i < gens.size(); ++i)
            for (size_t j = i + 1; j < gens.size(); ++j) {
                IVec3 n = cross(gens[i], gens[j]);
                if (n.is_zero()) continue;
                n = primitive(n);
                cands.push_back(n);
                cands.push_back(-n);
            }
    } else if (r == 2) {
        const IVec3& e = c.span_eqs[0];
        for (const auto& g : gens) {
            IVec3 n = primitive(cross(e, g));
            cands.push_back(n);
            cands.push_back(-n);
        }
    } else {  // r == 1
        cands.push_back(gens[0]);
        cands.push_back(-gens[0]);
    }
    detail::sort_unique(cands);

    for (const auto& n : cands) {
        bool valid = true, strict = false;
        for (const auto& g : gens) {
            Int s = dot(n, g);
            if (s < 0) {
                valid = false;
                break;
            }
            if (s > 0) strict = true;
        }
        if (valid && strict) c.normals.push_back(n);
    }

    // strict convexity: the valid normals together with the span equations
    // must span the whole dual space
    std::vector<IVec3> span_test = c.normals;
    span_test.insert(span_test.end(), c.span_eqs.begin(), c.span_eqs.end());
    if (rank_of(span_test) != 3) throw NotStrictlyConvex();

    // extreme rays: active normals (plus span equations) cut a 1-dimensional face
    for (const auto& g : gens) {
        std::vector<IVec3> active = c.span_eqs;
        for (const auto& n : c.normals)
            if (dot(n, g) == 0) active.push_back(n);
        if (rank_of(active) == 2) c.gens.push_back(g);
    }
    detail::sort_unique(c.gens);
    return c;
}

inline Cone ray_cone(const IVec3& v) { return cone_new({v}); }

// V-description of { x : <e,x> = 0 for e in eqs, <n,x> >= 0 for n in ineqs }.
// Valid for pointed results only, which covers every use in this library
// (faces and intersections of strictly convex cones, plane sections).
inline Cone cone_from_constraints(const std::vector<IVec3>& eqs, const std::vector<IVec3>& ineqs) {
    std::vector<IVec3> all = eqs;
    all.insert(all.end(), ineqs.begin(), ineqs.end());
    std::vector<IVec3> cands;
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) {
            IVec3 n = cross(all[i], all[j]);
            if (n.is_zero()) continue;
            n = primitive(n);
            cands.push_back(n);
            cands.push_back(-n);
        }
    detail::sort_unique(cands);
    std::vector<IVec3> valid;
    for (const auto& v : cands) {
        bool ok = true;
        for (const auto& e : eqs)
            if (dot(e, v) != 0) {
                ok = false;
                break;
            }
        if (!ok) continue;
        for (const auto& n : ineqs)
            if (dot(n, v) < 0) {
                ok = false;
                break;
            }
        if (ok) valid.push_back(v);
    }
    return cone_new(valid);
}

inline Cone cone_intersect(const Cone& a, const Cone& b) {
    std::vector<IVec3> eqs = a.span_eqs;
    eqs.insert(eqs.end(), b.span_eqs.begin(), b.span_eqs.end());
    std::vector<IVec3> ineqs = a.normals;
    ineqs.insert(ineqs.end(), b.normals.begin(), b.normals.end());
    detail::sort_unique(eqs);
    detail::sort_unique(ineqs);
    return cone_from_constraints(eqs, ineqs);
}

// The face of c cut out by turning the given normals into equations.
inline Cone face_by_normals(const Cone& c, const std::vector<IVec3>& active) {
    std::vector<IVec3> eqs = c.span_eqs;
    eqs.insert(eqs.end(), active.begin(), active.end());
    return cone_from_constraints(eqs, c.normals);
}

// The generators of a face of c are exactly the generators of c on which the
// face's active normals vanish; this avoids recomputing a dual description.
inline bool is_face_of(const Cone& f, const Cone& c) {
    if (f.is_zero()) return true;
    for (const auto& g : f.gens)
        if (!c.contains_point(g)) return false;
    std::vector<IVec3> active;
    for (const auto& n : c.normals) {
        bool all_zero = true;
        for (const auto& g : f.gens)
            if (dot(n, g) != 0) {
                all_zero = false;
                break;
            }
        if (all_zero) active.push_back(n);
    }
    std::vector<IVec3> face_gens;
    for (const auto& g : c.gens) {
        bool on_all = true;
        for (const auto& n : active)
            if (dot(n, g) != 0) {
                on_all = false;
                break;
            }
        if (on_all) face_gens.push_back(g);
    }
    return face_gens == f.gens;
}

// All faces of c (including c itself and the zero cone).
inline std::vector<Cone> faces_of(const Cone& c) {
    std::vector<Cone> out;
    out.push_back(c);
    if (c.dim == 3) {
        for (const auto& n : c.normals) out.push_back(face_by_normals(c, {n}));
    }
    if (c.dim >= 1)
        for (const auto& g : c.gens) out.push_back(ray_cone(g));
    out.push_back(cone_new({}));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Image of a cone under an integer matrix with det != 0.
inline Cone image_cone(const IMat3& m, const Cone& c) {
    std::vector<IVec3> gens;
    gens.reserve(c.gens.size());
    for (const auto& g : c.gens) gens.push_back(m * g);
    return cone_new(gens);
}

// ---- Containment with face identification ----------------------------------

enum class Containment { Interior, OnFace, Outside };

struct ContainResult {
    Containment kind;
    std::optional<Cone> face;  // smallest face containing x, set when kind == OnFace
};

namespace detail {

template <typename SignFn>
ContainResult contains_impl(const Cone& c, SignFn&& sgn) {
    for (const auto& e : c.span_eqs)
        if (sgn(e) != 0) return {Containment::Outside, std::nullopt};
    std::vector<IVec3> active;
    for (const auto& n : c.normals) {
        int s = sgn(n);
        if (s < 0) return {Containment::Outside, std::nullopt};
        if (s == 0) active.push_back(n);
    }
    if (active.empty()) return {Containment::Interior, std::nullopt};
    return {Containment::OnFace, face_by_normals(c, active)};
}

}  // namespace detail

// Interior means the relative interior for lower-dimensional cones.
inline ContainResult cone_contains(const Cone& c, const IVec3& x) {
    if (x.is_zero()) throw Error("cone_contains: point must be nonzero");
    return detail::contains_impl(c, [&](const IVec3& n) { return sign(dot(n, x)); });
}

inline ContainResult cone_contains(const Cone& c, const RVec3& x) {
    return cone_contains(c, primitive(x));
}

inline ContainResult cone_contains(const Cone& c, const AVec3& x) {
    if (is_zero_vec(x)) throw Error("cone_contains: point must be nonzero");
    return detail::contains_impl(c, [&](const IVec3& n) { return alg_sign(dot(n, x)); });
}

inline std::string cone_to_string(const Cone& c) {
    std::string s = "cone{";
    for (size_t i = 0; i < c.gens.size(); ++i) {
        if (i) s += ", ";
        s += "(" + c.gens[i][0].str() + "," + c.gens[i][1].str() + "," + c.gens[i][2].str() + ")";
    }
    return s + "}";
}

}  // namespace monomap
