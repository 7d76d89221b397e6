// Exact 3x3 integer/rational linear algebra: vectors, matrices, determinants,
// adjugates, characteristic polynomials, integer kernels and lattice bases.
#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "monomap/errors.hpp"
#include "monomap/rational.hpp"

namespace monomap {

template <typename T>
struct V3 {
    std::array<T, 3> c{};

    V3() = default;
    V3(T a, T b, T d) : c{std::move(a), std::move(b), std::move(d)} {}

    T& operator[](int i) { return c[static_cast<size_t>(i)]; }
    const T& operator[](int i) const { return c[static_cast<size_t>(i)]; }

    friend V3 operator+(const V3& a, const V3& b) {
        return V3(a[0] + b[0], a[1] + b[1], a[2] + b[2]);
    }
    friend V3 operator-(const V3& a, const V3& b) {
        return V3(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
    }
    friend V3 operator-(const V3& a) { return V3(-a[0], -a[1], -a[2]); }
    friend V3 operator*(const T& s, const V3& a) { return V3(s * a[0], s * a[1], s * a[2]); }
    friend bool operator==(const V3& a, const V3& b) { return a.c == b.c; }
    friend bool operator!=(const V3& a, const V3& b) { return !(a == b); }
    friend bool operator<(const V3& a, const V3& b) { return a.c < b.c; }  // lexicographic

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }
};

using IVec3 = V3<Int>;
using RVec3 = V3<Rat>;

template <typename T>
T dot(const V3<T>& a, const V3<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Rat dot(const IVec3& a, const RVec3& b) {
    return Rat(a[0]) * b[0] + Rat(a[1]) * b[1] + Rat(a[2]) * b[2];
}

template <typename T>
V3<T> cross(const V3<T>& a, const V3<T>& b) {
    return V3<T>(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

inline IVec3 to_ivec(const V3<int>& v) { return IVec3(v[0], v[1], v[2]); }

inline RVec3 to_rvec(const IVec3& v) { return RVec3(Rat(v[0]), Rat(v[1]), Rat(v[2])); }

// First lattice point on the ray through v (direction preserved).
inline IVec3 primitive(const IVec3& v) {
    Int g = gcd(gcd(abs(v[0]), abs(v[1])), abs(v[2]));
    if (g == 0) throw InternalError("primitive of zero vector");
    return IVec3(v[0] / g, v[1] / g, v[2] / g);
}

// Primitive integer vector parallel to a rational one.
inline IVec3 primitive(const RVec3& v) {
    Int d = den(v[0]) * den(v[1]) * den(v[2]);
    return primitive(IVec3(num(v[0] * d), num(v[1] * d), num(v[2] * d)));
}

template <typename T>
struct M3 {
    std::array<V3<T>, 3> row{};

    M3() = default;
    M3(V3<T> r0, V3<T> r1, V3<T> r2) : row{std::move(r0), std::move(r1), std::move(r2)} {}

    static M3 identity() {
        M3 m;
        m.row[0][0] = 1;
        m.row[1][1] = 1;
        m.row[2][2] = 1;
        return m;
    }
    static M3 scalar(const T& s) {
        M3 m;
        m.row[0][0] = s;
        m.row[1][1] = s;
        m.row[2][2] = s;
        return m;
    }

    V3<T>& operator[](int i) { return row[static_cast<size_t>(i)]; }
    const V3<T>& operator[](int i) const { return row[static_cast<size_t>(i)]; }
    const T& at(int i, int j) const { return row[static_cast<size_t>(i)][j]; }

    friend bool operator==(const M3& a, const M3& b) { return a.row == b.row; }
    friend bool operator<(const M3& a, const M3& b) { return a.row < b.row; }

    friend V3<T> operator*(const M3& m, const V3<T>& v) {
        return V3<T>(dot(m[0], v), dot(m[1], v), dot(m[2], v));
    }
    friend M3 operator*(const M3& a, const M3& b) {
        M3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        return r;
    }
    friend M3 operator+(const M3& a, const M3& b) {
        M3 r;
        for (int i = 0; i < 3; ++i) r[i] = a[i] + b[i];
        return r;
    }
    friend M3 operator*(const T& s, const M3& a) {
        M3 r;
        for (int i = 0; i < 3; ++i) r[i] = s * a[i];
        return r;
    }

    M3 transposed() const {
        M3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i][j] = at(j, i);
        return r;
    }

    bool is_zero() const {
        return row[0].is_zero() && row[1].is_zero() && row[2].is_zero();
    }
};

using IMat3 = M3<Int>;
using RMat3 = M3<Rat>;

template <typename T>
T det(const M3<T>& m) {
    return m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
           m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
           m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
}

template <typename T>
T det3(const V3<T>& a, const V3<T>& b, const V3<T>& c) {
    return det(M3<T>(a, b, c));
}

// Classical adjoint: A * adjugate(A) = det(A) * I.
template <typename T>
M3<T> adjugate(const M3<T>& m) {
    M3<T> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r1 = (j + 1) % 3, r2 = (j + 2) % 3;
            int c1 = (i + 1) % 3, c2 = (i + 2) % 3;
            r[i][j] = m.at(r1, c1) * m.at(r2, c2) - m.at(r1, c2) * m.at(r2, c1);
        }
    return r;
}

template <typename T>
M3<T> pow(const M3<T>& m, unsigned k) {
    M3<T> r = M3<T>::identity();
    M3<T> b = m;
    while (k > 0) {
        if (k & 1u) r = r * b;
        b = b * b;
        k >>= 1u;
    }
    return r;
}

// A' = sgn(det A) * adjugate(A) = |det A| * A^{-1} when det != 0.
// Defined for det = 0 as well; returns the determinant alongside.
inline std::pair<Int, IMat3> det_adjugate(const IMat3& a) {
    Int d = det(a);
    IMat3 adj = adjugate(a);
    if (d < 0) adj = Int(-1) * adj;
    return {d, adj};
}

// Coefficients of det(xI - A), ascending degree: {-det, m2, -trace, 1}.
inline std::array<Int, 4> char_poly_coeffs(const IMat3& a) {
    Int tr = a.at(0, 0) + a.at(1, 1) + a.at(2, 2);
    Int m2 = a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1) +
             a.at(0, 0) * a.at(2, 2) - a.at(0, 2) * a.at(2, 0) +
             a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    return {-det(a), m2, -tr, Int(1)};
}

inline RMat3 to_rmat(const IMat3& m) {
    RMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = Rat(m.at(i, j));
    return r;
}

// Solve M x = b exactly; nullopt when det(M) = 0.
inline std::optional<RVec3> solve(const RMat3& m, const RVec3& b) {
    Rat d = det(m);
    if (d == 0) return std::nullopt;
    RVec3 x = adjugate(m) * b;
    return RVec3(x[0] / d, x[1] / d, x[2] / d);
}

// Rank of a set of integer vectors (0..3).
inline int rank_of(const std::vector<IVec3>& vs) {
    size_t i = 0;
    while (i < vs.size() && vs[i].is_zero()) ++i;
    if (i == vs.size()) return 0;
    const IVec3& first = vs[i];
    // look for a vector independent of `first`
    size_t j = i + 1;
    IVec3 c;
    for (; j < vs.size(); ++j) {
        c = cross(first, vs[j]);
        if (!c.is_zero()) break;
    }
    if (j == vs.size()) return 1;
    for (size_t k = j + 1; k < vs.size(); ++k)
        if (dot(c, vs[k]) != 0) return 3;
    return 2;
}

// Divide matrix entries by the gcd of their absolute values ("mod positive
// scalars" normal form). Zero matrix is returned unchanged.
inline IMat3 matrix_content_normalized(const IMat3& m) {
    Int g = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g = gcd(g, abs(m.at(i, j)));
    if (g == 0 || g == 1) return m;
    IMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = m.at(i, j) / g;
    return r;
}

namespace detail {

// Extended gcd: returns g = gcd(a,b) and x,y with a x + b y = g.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        x = a < 0 ? -1 : 1;
        y = 0;
        return abs(a);
    }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace detail

// Hermite-style row reduction of a list of integer vectors: returns a basis of
// the lattice they generate (at most 3 rows).
inline std::vector<IVec3> lattice_row_basis(std::vector<IVec3> rows) {
    std::vector<IVec3> basis;
    int pivot_col = 0;
    while (pivot_col < 3 && !rows.empty()) {
        // gcd-eliminate column pivot_col across all rows
        std::optional<size_t> nz;
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i][pivot_col] != 0) {
                nz = i;
                break;
            }
        if (!nz) {
            ++pivot_col;
            continue;
        }
        // combine rows pairwise until a single row carries the column gcd
        for (size_t i = *nz + 1; i < rows.size(); ++i) {
            while (rows[i][pivot_col] != 0) {
                Int q = rows[*nz][pivot_col] / rows[i][pivot_col];
                rows[*nz] = rows[*nz] - q * rows[i];
                std::swap(rows[*nz], rows[i]);
            }
        }
        basis.push_back(rows[*nz]);
        rows.erase(rows.begin() + static_cast<long>(*nz));
        // clear the pivot column from remaining rows
        for (auto& r : rows) {
            if (r[pivot_col] != 0) {
                Int q = r[pivot_col] / basis.back()[pivot_col];
                r = r - q * basis.back();
            }
        }
        ++pivot_col;
    }
    return basis;
}

// Basis of the rank-2 lattice { x in Z^3 : <u, x> = 0 } for u != 0.
inline std::array<IVec3, 2> covector_kernel_basis(const IVec3& u_in) {
    IVec3 u = primitive(u_in);
    // find w with <u, w> = 1
    Int x, y;
    Int g12 = detail::ext_gcd(u[0], u[1], x, y);
    Int s, t;
    Int g = detail::ext_gcd(g12, u[2], s, t);
    if (g != 1) throw InternalError("covector_kernel_basis: non-primitive input");
    IVec3 w(s * x, s * y, t);
    // project the standard basis onto the kernel and reduce
    std::vector<IVec3> gens;
    for (int i = 0; i < 3; ++i) {
        IVec3 e;
        e[i] = 1;
        gens.push_back(e - dot(u, e) * w);
    }
    auto basis = lattice_row_basis(gens);
    if (basis.size() != 2) throw InternalError("covector kernel is not rank 2");
    return {basis[0], basis[1]};
}

// Integer kernel of a 3x3 integer matrix together with its rank.
// Diagonalizable use cases only need ranks 1 and 2.
inline std::vector<IVec3> int_kernel(const IMat3& m) {
    std::vector<IVec3> rows = {m[0], m[1], m[2]};
    int r = rank_of(rows);
    if (r == 3) return {};
    if (r == 0) {
        return {IVec3(1, 0, 0), IVec3(0, 1, 0), IVec3(0, 0, 1)};
    }
    if (r == 2) {
        // kernel is spanned by the cross product of two independent rows
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                IVec3 c = cross(m[i], m[j]);
                if (!c.is_zero()) return {primitive(c)};
            }
        throw InternalError("rank-2 matrix without independent row pair");
    }
    // rank 1: all rows parallel; kernel = plane orthogonal to that row
    for (int i = 0; i < 3; ++i)
        if (!m[i].is_zero()) {
            auto b = covector_kernel_basis(m[i]);
            return {b[0], b[1]};
        }
    throw InternalError("unreachable");
}

}  // namespace monomap
