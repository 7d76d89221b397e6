// Exact spectral analysis of 3x3 integer matrices and the classification of
// the associated monomial map by eigenvalue moduli and the root-of-unity ratio
// condition. All modulus comparisons are exact: rational when possible,
// otherwise decided through algebraic sign evaluation.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "monomap/algebraic.hpp"
#include "monomap/errors.hpp"
#include "monomap/linalg.hpp"
#include "monomap/poly.hpp"

namespace monomap {

struct RealEigenvalue {
    bool rational = true;
    Rat value;            // when rational
    RealAlgebraic alg;    // when irrational
    int multiplicity = 1;

    RealAlgebraic as_algebraic() const {
        return rational ? RealAlgebraic::from_rational(value) : alg;
    }
};

// The conjugate pair mu, conj(mu): p = mu + conj(mu), q = mu * conj(mu).
// Entries are rational, or polynomials in the real eigenvalue's generator when
// the characteristic polynomial is an irreducible cubic.
struct ComplexPairData {
    AlgNum p, q;  // q is the modulus squared of the pair
};

struct SpectralClass {
    std::vector<RealEigenvalue> real_eigs;
    std::optional<ComplexPairData> pair;
    // generator of the field housing algebraic data (the irreducible-cubic
    // real root), null when everything is rational or quadratic
    std::shared_ptr<const RealAlgebraic> cubic_gen;
    bool all_real = false;
    bool has_complex_pair = false;
    Int trace, determinant;
};

enum class CaseLabel {
    AbsIsolated,
    TwoModuliHighPair,
    TwoModuliLowPair,
    EqualModuli,
    IrrationalPairDominant,
    IrrationalPairDominated,
    IrrationalPairEqual,
};

inline std::string case_label_name(CaseLabel c) {
    switch (c) {
        case CaseLabel::AbsIsolated: return "AbsIsolated";
        case CaseLabel::TwoModuliHighPair: return "TwoModuliHighPair";
        case CaseLabel::TwoModuliLowPair: return "TwoModuliLowPair";
        case CaseLabel::EqualModuli: return "EqualModuli";
        case CaseLabel::IrrationalPairDominant: return "IrrationalPairDominant";
        case CaseLabel::IrrationalPairDominated: return "IrrationalPairDominated";
        case CaseLabel::IrrationalPairEqual: return "IrrationalPairEqual";
    }
    throw InternalError("unknown case label");
}

struct ClassificationCase {
    CaseLabel label;
    SpectralClass spectral;
    bool ratio_is_root_of_unity = false;  // meaningful when a pair is present
};

// Exact eigenvalue inventory of a nonsingular diagonalizable matrix.
inline SpectralClass spectral_classify(const IMat3& a) {
    if (det(a) == 0) throw SingularMatrix();
    if (!is_diagonalizable(a)) throw NotDiagonalizable();

    SpectralClass sc;
    sc.trace = a.at(0, 0) + a.at(1, 1) + a.at(2, 2);
    sc.determinant = det(a);
    RationalPoly cp = char_poly(a);
    auto factors = factor_over_Q(cp);

    for (const auto& f : factors) {
        if (f.factor.degree() == 1) {
            RealEigenvalue e;
            e.rational = true;
            e.value = -f.factor.coeffs[0];
            e.multiplicity = f.multiplicity;
            sc.real_eigs.push_back(std::move(e));
        } else if (f.factor.degree() == 2) {
            Rat b = f.factor.coeffs[1], c = f.factor.coeffs[0];
            Rat disc = b * b - 4 * c;
            if (disc < 0) {
                sc.pair = ComplexPairData{AlgNum(-b), AlgNum(c)};
            } else {
                // irreducible real quadratic: two conjugate irrational roots
                for (const auto& iv : isolate_real_roots(f.factor)) {
                    RealEigenvalue e;
                    e.rational = false;
                    e.alg = RealAlgebraic::root_in_interval(f.factor, iv.first, iv.second);
                    sc.real_eigs.push_back(std::move(e));
                }
            }
        } else {  // irreducible cubic
            auto roots = isolate_real_roots(f.factor);
            if (roots.size() == 1) {
                // one real root nu and a complex pair living in Q(nu)
                auto gen = std::make_shared<const RealAlgebraic>(
                    RealAlgebraic::root_in_interval(f.factor, roots[0].first, roots[0].second));
                sc.cubic_gen = gen;
                RealEigenvalue e;
                e.rational = false;
                e.alg = *gen;
                sc.real_eigs.push_back(std::move(e));
                Rat tr(sc.trace);
                // p = trace - nu; q = det/nu = nu^2 - trace*nu + m2
                Rat m2 = cp.coeffs[1];
                sc.pair = ComplexPairData{AlgNum(gen, RationalPoly({tr, Rat(-1)})),
                                          AlgNum(gen, RationalPoly({m2, -tr, Rat(1)}))};
            } else {
                for (const auto& iv : roots) {
                    RealEigenvalue e;
                    e.rational = false;
                    e.alg = RealAlgebraic::root_in_interval(f.factor, iv.first, iv.second);
                    sc.real_eigs.push_back(std::move(e));
                }
            }
        }
    }
    sc.has_complex_pair = sc.pair.has_value();
    sc.all_real = !sc.has_complex_pair;
    return sc;
}

// Decides whether mu/conj(mu) is a root of unity for the pair with trace p and
// norm q, via d_1 = 1, d_2 = p, d_k = p d_{k-1} - q d_{k-2}, so that
// d_k = (mu^k - conj(mu)^k)/(mu - conj(mu)). The ratio has finite order m iff
// d_m = 0; since p, q live in a field of degree <= 3 the order satisfies
// phi(m) <= 6, so m <= 18 suffices.
inline bool ratio_root_of_unity(const AlgNum& p, const AlgNum& q) {
    if (alg_sign(p * p - Rat(4) * q) >= 0) throw NotComplexPair();
    AlgNum d_prev(Rat(1));
    AlgNum d = p;
    for (int m = 2; m <= 18; ++m) {
        if (d.is_zero()) return true;
        AlgNum next = p * d - q * d_prev;
        d_prev = d;
        d = next;
    }
    return d.is_zero();  // m = 18
}

inline bool ratio_root_of_unity(const Rat& p, const Rat& q) {
    return ratio_root_of_unity(AlgNum(p), AlgNum(q));
}

namespace detail {

// Exact comparison |x|^2 vs the pair modulus squared q (same field).
inline int compare_realsq_vs_q(const SpectralClass& sc, const RealEigenvalue& e) {
    const AlgNum& q = sc.pair->q;
    if (e.rational) {
        if (!q.is_rational())
            throw InternalError("rational eigenvalue with algebraic pair data");
        Rat d = e.value * e.value - q.rational_value();
        return sign(d);
    }
    // irrational real eigenvalue: must be the cubic generator
    AlgNum nu(sc.cubic_gen, RationalPoly({Rat(0), Rat(1)}));
    return alg_sign(nu * nu - q);
}

// Exact comparison of |a| vs |b| for two real eigenvalues.
inline int compare_real_abs(const RealEigenvalue& a, const RealEigenvalue& b) {
    return compare_abs(a.as_algebraic(), b.as_algebraic());
}

}  // namespace detail

// Assigns the classification case: all-real or root-of-unity-ratio spectra
// fall into the four modulus-comparison cases; an irrational-angle pair is
// classified against the third (real) eigenvalue's modulus.
inline ClassificationCase classify_case(const IMat3& a) {
    ClassificationCase out{CaseLabel::AbsIsolated, spectral_classify(a), false};
    SpectralClass& sc = out.spectral;

    if (sc.has_complex_pair) {
        out.ratio_is_root_of_unity = ratio_root_of_unity(sc.pair->p, sc.pair->q);
        if (!out.ratio_is_root_of_unity) {
            if (sc.real_eigs.size() != 1 || sc.real_eigs[0].multiplicity != 1)
                throw InternalError("complex pair with unexpected real spectrum");
            int cmp = detail::compare_realsq_vs_q(sc, sc.real_eigs[0]);
            // cmp: |nu|^2 vs |mu|^2
            if (cmp < 0)
                out.label = CaseLabel::IrrationalPairDominant;  // |mu| > |nu|
            else if (cmp > 0)
                out.label = CaseLabel::IrrationalPairDominated;  // |mu| < |nu|
            else
                out.label = CaseLabel::IrrationalPairEqual;
            return out;
        }
    }

    // Theorem-style cases by exact modulus comparison. Real eigenvalues pass
    // the ratio condition vacuously.
    // Count the modulus classes with multiplicity.
    struct Mod {
        bool is_pair;
        const RealEigenvalue* eig;
        int mult;
    };
    std::vector<Mod> mods;
    for (const auto& e : sc.real_eigs) mods.push_back({false, &e, e.multiplicity});
    if (sc.has_complex_pair) mods.push_back({true, nullptr, 2});

    auto cmp_mods = [&](const Mod& x, const Mod& y) -> int {  // sign of |x| - |y|
        if (x.is_pair && y.is_pair) return 0;
        if (x.is_pair) return -detail::compare_realsq_vs_q(sc, *y.eig);
        if (y.is_pair) return detail::compare_realsq_vs_q(sc, *x.eig);
        return detail::compare_real_abs(*x.eig, *y.eig);
    };
    // sort descending by modulus (at most 3 entries)
    for (size_t i = 0; i < mods.size(); ++i)
        for (size_t j = i + 1; j < mods.size(); ++j)
            if (cmp_mods(mods[i], mods[j]) < 0) std::swap(mods[i], mods[j]);

    // flatten multiplicities into the three moduli |mu1| >= |mu2| >= |mu3|
    std::vector<int> eq;  // eq[i] = 1 if modulus i equals modulus i+1
    std::vector<const Mod*> flat;
    for (const auto& m : mods)
        for (int k = 0; k < m.mult; ++k) flat.push_back(&m);
    if (flat.size() != 3) throw InternalError("modulus multiplicities do not sum to 3");
    bool eq12 = (flat[0] == flat[1]) || cmp_mods(*flat[0], *flat[1]) == 0;
    bool eq23 = (flat[1] == flat[2]) || cmp_mods(*flat[1], *flat[2]) == 0;

    if (eq12 && eq23)
        out.label = CaseLabel::EqualModuli;
    else if (eq12)
        out.label = CaseLabel::TwoModuliHighPair;
    else if (eq23)
        out.label = CaseLabel::TwoModuliLowPair;
    else
        out.label = CaseLabel::AbsIsolated;
    return out;
}

inline ClassificationCase classify_dual_case(const IMat3& a) {
    auto [d, ap] = det_adjugate(a);
    if (d == 0) throw SingularMatrix();
    return classify_case(ap);
}

}  // namespace monomap
