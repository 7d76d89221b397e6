// Lattice polytopes in the dual lattice with exact rational arithmetic:
// hull reduction, Euclidean volume, Minkowski sums, mixed volumes, the degree
// functionals computed from transformed ample polytopes, and the independent
// homogenization oracle for the first degree on P^3.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <utility>
#include <vector>

#include "monomap/errors.hpp"
#include "monomap/linalg.hpp"

namespace monomap {

struct LatticePolytope {
    std::vector<RVec3> vertices;  // extreme points only, sorted

    friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
        return a.vertices == b.vertices;
    }
};

namespace hull_detail {

inline RVec3 sub(const RVec3& a, const RVec3& b) { return a - b; }

inline Rat orient(const RVec3& a, const RVec3& b, const RVec3& c, const RVec3& d) {
    return det3(sub(b, a), sub(c, a), sub(d, a));
}

// Affine rank of a deduplicated point set (0..3).
inline int affine_rank(const std::vector<RVec3>& pts) {
    if (pts.empty()) return -1;
    std::vector<IVec3> dirs;
    for (size_t i = 1; i < pts.size(); ++i) {
        RVec3 d = sub(pts[i], pts[0]);
        if (!(d[0] == 0 && d[1] == 0 && d[2] == 0)) dirs.push_back(primitive(d));
    }
    return rank_of(dirs);
}

struct Triangle {
    size_t a, b, c;  // outward oriented: orient(a,b,c,interior) < 0
};

// Incremental convex hull of a full-dimensional point set. Returns outward
// oriented triangles covering the boundary (possibly with coplanar pieces).
inline std::vector<Triangle> hull3d_triangles(const std::vector<RVec3>& pts) {
    // initial affinely independent 4-tuple
    size_t n = pts.size();
    size_t i1 = 1;
    while (i1 < n && pts[i1] == pts[0]) ++i1;
    size_t i2 = i1 + 1;
    while (i2 < n) {
        RVec3 cr = cross(sub(pts[i1], pts[0]), sub(pts[i2], pts[0]));
        if (!(cr[0] == 0 && cr[1] == 0 && cr[2] == 0)) break;
        ++i2;
    }
    size_t i3 = i2 + 1;
    while (i3 < n && orient(pts[0], pts[i1], pts[i2], pts[i3]) == 0) ++i3;
    if (i3 >= n) throw InternalError("hull3d on degenerate input");

    size_t a = 0, b = i1, c = i2, d = i3;
    if (orient(pts[a], pts[b], pts[c], pts[d]) > 0) std::swap(b, c);
    std::vector<Triangle> faces = {{a, b, c}, {a, c, d}, {a, d, b}, {b, d, c}};

    for (size_t p = 0; p < n; ++p) {
        if (p == a || p == b || p == c || p == d) continue;
        std::vector<char> visible(faces.size(), 0);
        bool any = false;
        for (size_t fi = 0; fi < faces.size(); ++fi) {
            if (orient(pts[faces[fi].a], pts[faces[fi].b], pts[faces[fi].c], pts[p]) > 0) {
                visible[fi] = 1;
                any = true;
            }
        }
        if (!any) continue;  // p inside or on the boundary
        // horizon: directed edges of visible faces whose reverse is not visible
        std::map<std::pair<size_t, size_t>, int> edge_count;
        for (size_t fi = 0; fi < faces.size(); ++fi) {
            if (!visible[fi]) continue;
            const auto& f = faces[fi];
            std::array<std::pair<size_t, size_t>, 3> edges = {
                std::make_pair(f.a, f.b), std::make_pair(f.b, f.c), std::make_pair(f.c, f.a)};
            for (auto& e : edges) edge_count[e] += 1;
        }
        std::vector<Triangle> next;
        for (size_t fi = 0; fi < faces.size(); ++fi)
            if (!visible[fi]) next.push_back(faces[fi]);
        for (const auto& [e, cnt] : edge_count) {
            (void)cnt;
            if (edge_count.count({e.second, e.first})) continue;  // interior edge
            next.push_back(Triangle{e.first, e.second, p});
        }
        faces = std::move(next);
    }
    return faces;
}

// Extreme points of a planar or lower-dimensional set.
inline std::vector<RVec3> extreme_points_lowdim(const std::vector<RVec3>& pts, int rank) {
    if (rank <= 0) return {pts[0]};
    if (rank == 1) {
        RVec3 lo = pts[0], hi = pts[0];
        for (const auto& p : pts) {
            if (p < lo) lo = p;
            if (hi < p) hi = p;
        }
        if (lo == hi) return {lo};
        return {lo, hi};
    }
    // rank 2: project to a coordinate pair where the plane is non-degenerate
    IVec3 normal;
    for (size_t i = 1; i < pts.size() && normal.is_zero(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            RVec3 cr = cross(sub(pts[i], pts[0]), sub(pts[j], pts[0]));
            if (!(cr[0] == 0 && cr[1] == 0 && cr[2] == 0)) {
                normal = primitive(cr);
                break;
            }
        }
    int drop = 0;
    for (int k = 0; k < 3; ++k)
        if (normal[k] != 0) drop = k;
    int u = (drop + 1) % 3, v = (drop + 2) % 3;

    std::vector<size_t> idx(pts.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t x, size_t y) {
        if (pts[x][u] != pts[y][u]) return pts[x][u] < pts[y][u];
        return pts[x][v] < pts[y][v];
    });
    auto cross2d = [&](size_t o, size_t p, size_t q) {
        return (pts[p][u] - pts[o][u]) * (pts[q][v] - pts[o][v]) -
               (pts[p][v] - pts[o][v]) * (pts[q][u] - pts[o][u]);
    };
    // monotone chain with strict turns, so collinear points are dropped
    std::vector<size_t> hull;
    for (int pass = 0; pass < 2; ++pass) {
        size_t start = hull.size();
        for (size_t ii = 0; ii < idx.size(); ++ii) {
            size_t i = idx[pass == 0 ? ii : idx.size() - 1 - ii];
            while (hull.size() >= start + 2 &&
                   cross2d(hull[hull.size() - 2], hull[hull.size() - 1], i) <= 0)
                hull.pop_back();
            hull.push_back(i);
        }
        hull.pop_back();
    }
    std::vector<RVec3> out;
    for (size_t i : hull) out.push_back(pts[i]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace hull_detail

// Hull-reduce a point set to its extreme points.
inline LatticePolytope polytope_from_points(std::vector<RVec3> pts) {
    if (pts.empty()) throw Error("polytope needs at least one point");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    int rank = hull_detail::affine_rank(pts);
    LatticePolytope P;
    if (rank < 3) {
        P.vertices = hull_detail::extreme_points_lowdim(pts, rank);
        return P;
    }
    auto faces = hull_detail::hull3d_triangles(pts);
    // collect supporting planes of non-degenerate triangles
    std::vector<std::pair<IVec3, Rat>> planes;
    for (const auto& f : faces) {
        RVec3 cr = cross(hull_detail::sub(pts[f.b], pts[f.a]),
                         hull_detail::sub(pts[f.c], pts[f.a]));
        if (cr[0] == 0 && cr[1] == 0 && cr[2] == 0) continue;
        IVec3 n = primitive(cr);
        planes.emplace_back(n, dot(n, pts[f.a]));
    }
    std::sort(planes.begin(), planes.end());
    planes.erase(std::unique(planes.begin(), planes.end()), planes.end());
    // a point is a vertex iff its active facet normals span everything
    for (const auto& p : pts) {
        std::vector<IVec3> active;
        for (const auto& [n, off] : planes)
            if (dot(n, p) == off) active.push_back(n);
        if (rank_of(active) == 3) P.vertices.push_back(p);
    }
    std::sort(P.vertices.begin(), P.vertices.end());
    return P;
}

inline LatticePolytope polytope_from_int_points(const std::vector<IVec3>& pts) {
    std::vector<RVec3> rp;
    rp.reserve(pts.size());
    for (const auto& p : pts) rp.push_back(to_rvec(p));
    return polytope_from_points(std::move(rp));
}

// conv{0, e1*, e2*, e3*}: the ample polytope of the hyperplane class on P^3.
inline LatticePolytope standard_simplex() {
    return polytope_from_int_points(
        {IVec3(0, 0, 0), IVec3(1, 0, 0), IVec3(0, 1, 0), IVec3(0, 0, 1)});
}

inline int polytope_dim(const LatticePolytope& P) {
    return hull_detail::affine_rank(P.vertices);
}

// Exact Euclidean volume; 0 for polytopes of dimension < 3. Computed by the
// tetrahedral decomposition over the hull facets from the lexicographically
// smallest vertex.
inline Rat volume(const LatticePolytope& P) {
    if (polytope_dim(P) < 3) return Rat(0);
    auto faces = hull_detail::hull3d_triangles(P.vertices);
    const RVec3& v0 = P.vertices.front();  // vertices sorted, front is lex-smallest
    Rat six_vol(0);
    for (const auto& f : faces)
        six_vol += det3(hull_detail::sub(P.vertices[f.a], v0),
                        hull_detail::sub(P.vertices[f.b], v0),
                        hull_detail::sub(P.vertices[f.c], v0));
    return abs(six_vol) / 6;
}

inline LatticePolytope minkowski_sum(const LatticePolytope& P, const LatticePolytope& Q) {
    std::vector<RVec3> sums;
    sums.reserve(P.vertices.size() * Q.vertices.size());
    for (const auto& p : P.vertices)
        for (const auto& q : Q.vertices) sums.push_back(p + q);
    return polytope_from_points(std::move(sums));
}

// Symmetric Minkowski-multilinear functional normalized so that
// MV(P,P,P) = Vol(P); 3! MV is the alternating sum of volumes of sub-sums.
inline Rat mixed_volume(const LatticePolytope& P1, const LatticePolytope& P2,
                        const LatticePolytope& P3) {
    auto vol12 = volume(minkowski_sum(P1, P2));
    auto vol13 = volume(minkowski_sum(P1, P3));
    auto vol23 = volume(minkowski_sum(P2, P3));
    auto vol123 = volume(minkowski_sum(minkowski_sum(P1, P2), P3));
    Rat six_mv = vol123 - vol12 - vol13 - vol23 + volume(P1) + volume(P2) + volume(P3);
    return six_mv / 6;
}

inline LatticePolytope transform(const IMat3& m, const LatticePolytope& P) {
    std::vector<RVec3> pts;
    pts.reserve(P.vertices.size());
    RMat3 rm = to_rmat(m);
    for (const auto& v : P.vertices) pts.push_back(rm * v);
    return polytope_from_points(std::move(pts));
}

// deg_{D,p}(f_A) = 3! MV with p copies of tA·P and 3-p copies of P, where P is
// the ample polytope of D (the transpose acts on the dual lattice).
inline Rat degree_p(const IMat3& a, const LatticePolytope& P, int p) {
    if (p != 1 && p != 2) throw Error("degree_p: p must be 1 or 2");
    if (det(a) == 0) throw SingularMatrix();
    if (polytope_dim(P) != 3) throw DegeneratePolytope();
    LatticePolytope Q = transform(a.transposed(), P);
    Rat mv = (p == 1) ? mixed_volume(Q, P, P) : mixed_volume(Q, Q, P);
    return 6 * mv;
}

// Degree sequence deg_{D,p}(f_A^k), k = 1..K, each iterate computed from A^k
// independently (composing pullbacks is exactly what fails for unstable maps).
struct DegreeSequence {
    int p = 1;
    std::vector<Rat> values;  // index k-1 holds deg(f_A^k)
    std::string provenance;
};

inline DegreeSequence degree_sequence(const IMat3& a, const LatticePolytope& P, int p, int K) {
    if (K < 1) throw Error("degree_sequence: K must be positive");
    DegreeSequence s;
    s.p = p;
    s.provenance = "polytope";
    for (int k = 1; k <= K; ++k)
        s.values.push_back(degree_p(pow(a, static_cast<unsigned>(k)), P, p));
    return s;
}

// Independent oracle for deg_1 on P^3: write the monomial map in homogeneous
// coordinates, cancel the common monomial factor, and read off the common
// total degree of the four coordinates.
inline Int homogenization_oracle(const IMat3& a) {
    if (det(a) == 0) throw SingularMatrix();
    // exponent vectors in (X0, X1, X2, X3) of the homogenized coordinates
    std::array<std::array<Int, 4>, 4> exponents{};
    for (int i = 0; i < 3; ++i) {
        Int row_sum = a.at(i, 0) + a.at(i, 1) + a.at(i, 2);
        exponents[static_cast<size_t>(i + 1)][0] = -row_sum;
        for (int j = 0; j < 3; ++j)
            exponents[static_cast<size_t>(i + 1)][static_cast<size_t>(j + 1)] = a.at(i, j);
    }
    Int degree = 0;
    for (size_t j = 0; j < 4; ++j) {
        Int mn = exponents[0][j];
        for (size_t i = 1; i < 4; ++i) mn = std::min(mn, exponents[i][j]);
        degree -= mn;  // subtracting the componentwise minimum clears denominators
    }
    return degree;
}

}  // namespace monomap
