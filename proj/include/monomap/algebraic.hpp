// Real algebraic numbers of degree <= 3 over Q: a squarefree irreducible
// minimal polynomial plus an isolating interval. Signs of polynomial
// expressions in one generator are decided exactly by Sturm counting and
// interval bisection.
#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "monomap/linalg.hpp"
#include "monomap/poly.hpp"

namespace monomap {

struct RealAlgebraic {
    RationalPoly minpoly;  // monic, irreducible over Q
    Rat lo, hi;            // isolating interval; endpoints are not roots

    static RealAlgebraic from_rational(const Rat& r) {
        RealAlgebraic a;
        a.minpoly = RationalPoly::linear_root(r);
        a.lo = r - 1;
        a.hi = r + 1;
        return a;
    }

    static RealAlgebraic root_in_interval(const RationalPoly& irreducible, Rat lo, Rat hi) {
        RealAlgebraic a;
        a.minpoly = irreducible.monic();
        a.lo = std::move(lo);
        a.hi = std::move(hi);
        if (a.minpoly.degree() == 1) {
            Rat r = -a.minpoly.coeffs[0];
            a.lo = r - 1;
            a.hi = r + 1;
        }
        return a;
    }

    bool is_rational() const { return minpoly.degree() == 1; }
    Rat rational_value() const { return -minpoly.coeffs[0]; }

    // Halve the isolating interval (value unchanged).
    void refine() {
        if (is_rational()) {
            Rat r = rational_value();
            lo = r - (r - lo) / 2;
            hi = r + (hi - r) / 2;
            return;
        }
        Rat m = (lo + hi) / 2;
        if (minpoly(m) == 0) throw InternalError("irreducible minpoly with rational root");
        if (sign(minpoly(lo)) != sign(minpoly(m)))
            hi = m;
        else
            lo = m;
    }

    double approx() const { return to_double((lo + hi) / 2); }  // diagnostics only
};

// Exact sign of expr(alpha) where alpha is the generator. Terminates because
// expr mod minpoly is either identically zero or has finitely many roots, all
// eventually excluded from the shrinking isolating interval.
inline int alg_sign(const RationalPoly& expr, const RealAlgebraic& alpha) {
    if (alpha.is_rational()) return sign(expr(alpha.rational_value()));
    RationalPoly r = divmod(expr, alpha.minpoly).second;
    if (r.is_zero()) return 0;
    if (r.degree() == 0) return sign(r.coeffs[0]);
    auto chain = sturm_chain(r);
    RealAlgebraic a = alpha;
    while (true) {
        if (r(a.lo) != 0 && r(a.hi) != 0 && count_roots(chain, a.lo, a.hi) == 0)
            return sign(r(a.lo));
        a.refine();
    }
}

inline int sign_of(const RealAlgebraic& a) {
    return alg_sign(RationalPoly({Rat(0), Rat(1)}), a);
}

inline RealAlgebraic negated(const RealAlgebraic& a) {
    if (a.is_rational()) return RealAlgebraic::from_rational(-a.rational_value());
    std::vector<Rat> cs = a.minpoly.coeffs;
    for (size_t i = 0; i < cs.size(); ++i)
        if (i % 2 == 1) cs[i] = -cs[i];
    RealAlgebraic r;
    r.minpoly = RationalPoly(std::move(cs)).monic();
    r.lo = -a.hi;
    r.hi = -a.lo;
    return r;
}

inline RealAlgebraic abs_value(const RealAlgebraic& a) {
    return sign_of(a) >= 0 ? a : negated(a);
}

// Exact order comparison of two real algebraic numbers, possibly with
// different minimal polynomials. Equality can only happen when the (monic,
// irreducible) minimal polynomials coincide and both intervals isolate the
// same root; everything else separates under bisection.
inline int compare(const RealAlgebraic& a_in, const RealAlgebraic& b_in) {
    if (a_in.is_rational() && b_in.is_rational()) {
        Rat d = a_in.rational_value() - b_in.rational_value();
        return sign(d);
    }
    if (a_in.is_rational())
        return -alg_sign(RationalPoly({-a_in.rational_value(), Rat(1)}), b_in);
    if (b_in.is_rational())
        return alg_sign(RationalPoly({-b_in.rational_value(), Rat(1)}), a_in);
    RealAlgebraic a = a_in, b = b_in;
    bool same_minpoly = a.minpoly == b.minpoly;
    auto chain = same_minpoly ? sturm_chain(a.minpoly) : std::vector<RationalPoly>{};
    while (true) {
        if (a.hi <= b.lo) return -1;
        if (b.hi <= a.lo) return 1;
        if (same_minpoly) {
            Rat lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
            if (a.minpoly(lo) != 0 && a.minpoly(hi) != 0 && count_roots(chain, lo, hi) == 1)
                return 0;  // both intervals isolate the same root
        }
        a.refine();
        b.refine();
    }
}

// Compare absolute values.
inline int compare_abs(const RealAlgebraic& a, const RealAlgebraic& b) {
    return compare(abs_value(a), abs_value(b));
}

// ---- Elements of Q(alpha) ---------------------------------------------------

// A number in the field generated by one real algebraic generator, stored as a
// polynomial in the generator reduced mod its minimal polynomial. A null
// generator denotes a plain rational.
struct AlgNum {
    std::shared_ptr<const RealAlgebraic> gen;
    RationalPoly rep;

    AlgNum() : rep(RationalPoly::constant(Rat(0))) { rep.trim(); }
    explicit AlgNum(const Rat& r) { rep = RationalPoly({r}); }
    AlgNum(std::shared_ptr<const RealAlgebraic> g, RationalPoly p) : gen(std::move(g)) {
        rep = gen ? divmod(p, gen->minpoly).second : std::move(p);
    }

    bool is_zero() const { return rep.is_zero(); }
    bool is_rational() const { return !gen || rep.degree() <= 0; }
    Rat rational_value() const { return rep.is_zero() ? Rat(0) : rep.coeffs[0]; }
};

namespace detail {
inline std::shared_ptr<const RealAlgebraic> merge_gen(const AlgNum& a, const AlgNum& b) {
    if (a.gen && b.gen && a.gen != b.gen && !(a.gen->minpoly == b.gen->minpoly))
        throw InternalError("mixing algebraic numbers from different fields");
    return a.gen ? a.gen : b.gen;
}
}  // namespace detail

inline AlgNum operator+(const AlgNum& a, const AlgNum& b) {
    return AlgNum(detail::merge_gen(a, b), a.rep + b.rep);
}
inline AlgNum operator-(const AlgNum& a, const AlgNum& b) {
    return AlgNum(detail::merge_gen(a, b), a.rep - b.rep);
}
inline AlgNum operator-(const AlgNum& a) { return AlgNum(a.gen, Rat(-1) * a.rep); }
inline AlgNum operator*(const AlgNum& a, const AlgNum& b) {
    return AlgNum(detail::merge_gen(a, b), a.rep * b.rep);
}
inline AlgNum operator*(const Rat& s, const AlgNum& a) { return AlgNum(a.gen, s * a.rep); }

inline int alg_sign(const AlgNum& a) {
    if (a.is_rational()) return sign(a.rational_value());
    return alg_sign(a.rep, *a.gen);
}

// 3-vector with coordinates in one shared field Q(alpha).
using AVec3 = V3<AlgNum>;

inline AVec3 to_avec(const IVec3& v) {
    return AVec3(AlgNum(Rat(v[0])), AlgNum(Rat(v[1])), AlgNum(Rat(v[2])));
}

inline AlgNum dot(const IVec3& a, const AVec3& b) {
    return AlgNum(Rat(a[0])) * b[0] + AlgNum(Rat(a[1])) * b[1] + AlgNum(Rat(a[2])) * b[2];
}

inline bool is_zero_vec(const AVec3& v) {
    return v[0].is_zero() && v[1].is_zero() && v[2].is_zero();
}

}  // namespace monomap
