#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "monomap/algebraic.hpp"

using namespace monomap;
using namespace monomap::testing;

namespace {

// Independent oracle: refine the generator's isolating interval until its
// width drops below 10^-100, then read the sign of expr off the interval
// endpoints. Only conclusive when both endpoint signs agree and are nonzero,
// which the refinement loop enforces.
int interval_sign_oracle(const RationalPoly& expr, RealAlgebraic alpha) {
    Rat width_target = Rat(1, Int("1" + std::string(100, '0')));
    for (int i = 0; i < 4000; ++i) {
        int slo = sign(expr(alpha.lo));
        int shi = sign(expr(alpha.hi));
        if (alpha.hi - alpha.lo < width_target && slo == shi && slo != 0) return slo;
        alpha.refine();
    }
    FAIL("interval oracle did not converge; expr may vanish at the generator");
    return 0;
}

}  // namespace

TEST_CASE("alg_sign trivial cases") {
    auto sqrt2 = RealAlgebraic::root_in_interval(poly_from_ints({-2, 0, 1}), Rat(1), Rat(2));
    CHECK(alg_sign(RationalPoly{}, sqrt2) == 0);
    CHECK(alg_sign(poly_from_ints({-1, 1}), sqrt2) == 1);  // sqrt(2) - 1 > 0
    // expression that is a multiple of the minimal polynomial vanishes
    CHECK(alg_sign(poly_from_ints({-2, 0, 1}), sqrt2) == 0);
    CHECK(alg_sign(poly_from_ints({0, -2, 0, 1}), sqrt2) == 0);  // x(x^2-2)
}

TEST_CASE("alg_sign at the real cube root of 2") {
    auto cbrt2 = RealAlgebraic::root_in_interval(poly_from_ints({-2, 0, 0, 1}), Rat(1), Rat(2));
    RationalPoly expr = poly_from_ints({-1, -1, 1});  // x^2 - x - 1
    // frozen from the interval-refinement oracle: 2^(1/3) is below the golden
    // ratio, so the expression is negative there
    int expected = interval_sign_oracle(expr, cbrt2);
    CHECK(expected == -1);
    CHECK(alg_sign(expr, cbrt2) == expected);
}

TEST_CASE("alg_sign agrees with the interval oracle on randomized inputs") {
    std::vector<RealAlgebraic> gens;
    for (int d : {2, 3, 5, 6, 7, 10}) {
        // sqrt(d)
        gens.push_back(
            RealAlgebraic::root_in_interval(poly_from_ints({-d, 0, 1}), Rat(0), Rat(d)));
        // cbrt(d)
        gens.push_back(
            RealAlgebraic::root_in_interval(poly_from_ints({-d, 0, 0, 1}), Rat(0), Rat(d)));
    }
    gens.push_back(RealAlgebraic::from_rational(Rat(-3, 2)));
    for (int trial = 0; trial < 120; ++trial) {
        const auto& g = gens[static_cast<size_t>(rand_int(0, static_cast<int>(gens.size()) - 1))];
        RationalPoly expr = poly_from_ints(
            {rand_int(-9, 9), rand_int(-9, 9), rand_int(-9, 9), rand_int(-9, 9)});
        int s = alg_sign(expr, g);
        if (s == 0) {
            if (g.is_rational())
                CHECK(expr(g.rational_value()) == 0);
            else
                CHECK(divmod(expr, g.minpoly).second.is_zero());
        } else {
            CHECK(s == interval_sign_oracle(expr, g));
        }
    }
}

TEST_CASE("ordering of real algebraic numbers across generators") {
    auto sqrt2 = RealAlgebraic::root_in_interval(poly_from_ints({-2, 0, 1}), Rat(1), Rat(2));
    auto cbrt3 = RealAlgebraic::root_in_interval(poly_from_ints({-3, 0, 0, 1}), Rat(1), Rat(2));
    // 2^(1/2) = 1.414..., 3^(1/3) = 1.442...
    CHECK(compare(sqrt2, cbrt3) == -1);
    CHECK(compare(cbrt3, sqrt2) == 1);
    CHECK(compare(sqrt2, sqrt2) == 0);
    CHECK(compare(sqrt2, RealAlgebraic::from_rational(Rat(3, 2))) == -1);
    CHECK(compare(sqrt2, RealAlgebraic::from_rational(Rat(7, 5))) == 1);

    // two roots of the same minimal polynomial
    auto pos = RealAlgebraic::root_in_interval(poly_from_ints({-2, 0, 1}), Rat(1), Rat(2));
    auto neg = RealAlgebraic::root_in_interval(poly_from_ints({-2, 0, 1}), Rat(-2), Rat(-1));
    CHECK(compare(neg, pos) == -1);
    CHECK(compare_abs(neg, pos) == 0);
    CHECK(sign_of(neg) == -1);
    CHECK(compare(negated(neg), pos) == 0);
}

TEST_CASE("field arithmetic in Q(alpha)") {
    auto gen = std::make_shared<const RealAlgebraic>(
        RealAlgebraic::root_in_interval(poly_from_ints({-2, 0, 0, 1}), Rat(1), Rat(2)));
    AlgNum a(gen, poly_from_ints({0, 1}));     // alpha
    AlgNum b(gen, poly_from_ints({0, 0, 1}));  // alpha^2
    CHECK((a * b).is_rational());              // alpha^3 = 2
    CHECK((a * b).rational_value() == Rat(2));
    CHECK((a * a - b).is_zero());
    CHECK(alg_sign(a - AlgNum(Rat(1))) == 1);
    CHECK(alg_sign(a - AlgNum(Rat(2))) == -1);
    CHECK(alg_sign(AlgNum(Rat(0))) == 0);

    AVec3 v(a, b, AlgNum(Rat(1)));
    CHECK(alg_sign(dot(vec(1, 1, 1), v) - AlgNum(Rat(4))) == -1);  // alpha+alpha^2+1 < 4
    CHECK(alg_sign(dot(vec(1, 1, 1), v) - AlgNum(Rat(3))) == 1);
}
