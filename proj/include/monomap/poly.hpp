// Univariate polynomials over Q: arithmetic, gcd, squarefree parts, Sturm
// sequences, real root isolation and degree<=3 factorization.
#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "monomap/linalg.hpp"
#include "monomap/rational.hpp"

namespace monomap {

// Coefficients ascending by degree; normalized so the leading coefficient is
// nonzero (empty vector = zero polynomial).
struct RationalPoly {
    std::vector<Rat> coeffs;

    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rat> cs) : coeffs(std::move(cs)) { trim(); }
    static RationalPoly constant(const Rat& c) { return RationalPoly({c}); }
    // x - r
    static RationalPoly linear_root(const Rat& r) { return RationalPoly({-r, Rat(1)}); }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }
    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }  // -1 for zero poly
    const Rat& leading() const { return coeffs.back(); }

    Rat operator()(const Rat& x) const {
        Rat acc(0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
        return a.coeffs == b.coeffs;
    }

    friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
        std::vector<Rat> c(std::max(a.coeffs.size(), b.coeffs.size()), Rat(0));
        for (size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
        for (size_t i = 0; i < b.coeffs.size(); ++i) c[i] += b.coeffs[i];
        return RationalPoly(std::move(c));
    }
    friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
        std::vector<Rat> c(std::max(a.coeffs.size(), b.coeffs.size()), Rat(0));
        for (size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
        for (size_t i = 0; i < b.coeffs.size(); ++i) c[i] -= b.coeffs[i];
        return RationalPoly(std::move(c));
    }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> c(a.coeffs.size() + b.coeffs.size() - 1, Rat(0));
        for (size_t i = 0; i < a.coeffs.size(); ++i)
            for (size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
        return RationalPoly(std::move(c));
    }
    friend RationalPoly operator*(const Rat& s, const RationalPoly& a) {
        std::vector<Rat> c = a.coeffs;
        for (auto& x : c) x *= s;
        return RationalPoly(std::move(c));
    }

    RationalPoly derivative() const {
        if (coeffs.size() <= 1) return {};
        std::vector<Rat> c(coeffs.size() - 1);
        for (size_t i = 1; i < coeffs.size(); ++i) c[i - 1] = Rat(Int(i)) * coeffs[i];
        return RationalPoly(std::move(c));
    }

    // Monic multiple (same roots).
    RationalPoly monic() const {
        if (is_zero()) return {};
        return Rat(1) / leading() * (*this);
    }
};

// Euclidean division: returns (quotient, remainder).
inline std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
    if (b.is_zero()) throw InternalError("polynomial division by zero");
    RationalPoly r = a;
    std::vector<Rat> q(a.coeffs.size() > b.coeffs.size() - 1 ? a.coeffs.size() - b.coeffs.size() + 1
                                                             : 0,
                       Rat(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Rat f = r.leading() / b.leading();
        int d = r.degree() - b.degree();
        q[static_cast<size_t>(d)] = f;
        // r -= f * x^d * b
        for (size_t i = 0; i < b.coeffs.size(); ++i)
            r.coeffs[i + static_cast<size_t>(d)] -= f * b.coeffs[i];
        r.trim();
    }
    return {RationalPoly(std::move(q)), r};
}

inline RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

// p / gcd(p, p'): the squarefree polynomial with the same root set.
inline RationalPoly squarefree_part(const RationalPoly& p) {
    if (p.degree() <= 0) return p;
    RationalPoly g = poly_gcd(p, p.derivative());
    if (g.degree() <= 0) return p;
    return divmod(p, g).first;
}

// Evaluate p at a 3x3 rational matrix.
inline RMat3 eval_at_matrix(const RationalPoly& p, const RMat3& m) {
    RMat3 acc;  // zero
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
        acc = acc * m + RMat3::scalar(*it);
    return acc;
}

// ---- Sturm sequences and root isolation -----------------------------------

// Signed-remainder (Sturm) chain of p.
inline std::vector<RationalPoly> sturm_chain(const RationalPoly& p) {
    std::vector<RationalPoly> chain;
    if (p.is_zero()) return chain;
    chain.push_back(p);
    RationalPoly d = p.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (true) {
        const RationalPoly& a = chain[chain.size() - 2];
        const RationalPoly& b = chain[chain.size() - 1];
        RationalPoly r = divmod(a, b).second;
        if (r.is_zero()) break;
        chain.push_back(Rat(-1) * r);
    }
    return chain;
}

inline int sign_changes(const std::vector<RationalPoly>& chain, const Rat& x) {
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign(p(x));
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

// Number of distinct real roots of the squarefree p in the half-open interval
// (a, b], via Sturm's theorem.
inline int count_roots(const std::vector<RationalPoly>& chain, const Rat& a, const Rat& b) {
    return sign_changes(chain, a) - sign_changes(chain, b);
}

// Cauchy bound: all real roots lie in (-M, M).
inline Rat root_bound(const RationalPoly& p) {
    Rat m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rat v = abs(p.coeffs[static_cast<size_t>(i)] / p.leading());
        if (v > m) m = v;
    }
    return m + 1;
}

// Isolating intervals (lo, hi) for every real root of a squarefree p, with
// endpoints that are not roots, ordered increasingly.
inline std::vector<std::pair<Rat, Rat>> isolate_real_roots(const RationalPoly& p) {
    std::vector<std::pair<Rat, Rat>> out;
    if (p.degree() <= 0) return out;
    auto chain = sturm_chain(p);
    Rat bound = root_bound(p);
    std::vector<std::pair<Rat, Rat>> work = {{-bound, bound}};
    while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        int n = count_roots(chain, a, b);
        if (n == 0) continue;
        if (n == 1 && p(b) != 0) {
            out.emplace_back(a, b);
            continue;
        }
        Rat m = (a + b) / 2;
        if (p(m) == 0) {
            // nudge the split point off the root
            Rat eps = (b - a) / 1024;
            work.emplace_back(a, m - eps);
            work.emplace_back(m - eps, m + eps);
            work.emplace_back(m + eps, b);
        } else {
            work.emplace_back(a, m);
            work.emplace_back(m, b);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- Factorization for degree <= 3 -----------------------------------------

// Rational roots of an integer-coefficient polynomial via divisor search.
inline std::vector<Rat> rational_roots(const RationalPoly& p_in) {
    std::vector<Rat> roots;
    RationalPoly p = p_in;
    if (p.degree() <= 0) return roots;
    // clear denominators
    Int lcm(1);
    for (const auto& c : p.coeffs) lcm = lcm / gcd(lcm, den(c)) * den(c);
    std::vector<Int> ic;
    for (const auto& c : p.coeffs) ic.push_back(num(c) * (lcm / den(c)));
    // strip powers of x
    size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;
    if (low > 0) roots.push_back(Rat(0));
    if (low + 1 >= ic.size()) return roots;
    Int a0 = abs(ic[low]), an = abs(ic.back());
    auto divisors = [](const Int& n) {
        std::vector<Int> ds;
        for (Int d = 1; d * d <= n; ++d)
            if (n % d == 0) {
                ds.push_back(d);
                if (d * d != n) ds.push_back(n / d);
            }
        return ds;
    };
    for (const Int& pn : divisors(a0))
        for (const Int& qn : divisors(an)) {
            if (gcd(pn, qn) != 1) continue;
            for (int s : {1, -1}) {
                Rat r(s * pn, qn);
                if (p_in(r) == 0) roots.push_back(r);
            }
        }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// Monic integer-coefficient characteristic polynomial det(xI - A).
inline RationalPoly char_poly(const IMat3& a) {
    auto cs = char_poly_coeffs(a);
    return RationalPoly({Rat(cs[0]), Rat(cs[1]), Rat(cs[2]), Rat(cs[3])});
}

// A is diagonalizable iff its minimal polynomial is squarefree, tested via the
// squarefree part s of the characteristic polynomial: s(A) = 0.
inline bool is_diagonalizable(const IMat3& a) {
    RationalPoly s = squarefree_part(char_poly(a));
    return eval_at_matrix(s, to_rmat(a)).is_zero();
}

struct PolyFactor {
    RationalPoly factor;  // monic irreducible over Q
    int multiplicity;
};

// Factor a polynomial of degree <= 3 into monic irreducible rational factors.
// Rational-root extraction; a residual quadratic or cubic with no rational
// root is irreducible and kept whole.
inline std::vector<PolyFactor> factor_over_Q(const RationalPoly& p_in) {
    if (p_in.degree() > 3) throw InternalError("factor_over_Q limited to degree <= 3");
    std::vector<PolyFactor> out;
    if (p_in.degree() <= 0) return out;
    RationalPoly rest = p_in.monic();
    for (const Rat& r : rational_roots(p_in)) {
        RationalPoly lin = RationalPoly::linear_root(r);
        int mult = 0;
        while (true) {
            auto [q, rem] = divmod(rest, lin);
            if (!rem.is_zero()) break;
            rest = q;
            ++mult;
        }
        if (mult > 0) out.push_back({lin, mult});
    }
    if (rest.degree() >= 1) out.push_back({rest, 1});
    std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        return a.factor.coeffs < b.factor.coeffs;
    });
    return out;
}

}  // namespace monomap
