#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "monomap/polytope.hpp"

using namespace monomap;
using namespace monomap::testing;

namespace {

LatticePolytope poly(std::vector<IVec3> pts) { return polytope_from_int_points(pts); }

LatticePolytope unit_cube() {
    std::vector<IVec3> pts;
    for (int x : {0, 1})
        for (int y : {0, 1})
            for (int z : {0, 1}) pts.push_back(vec(x, y, z));
    return polytope_from_int_points(pts);
}

LatticePolytope segment(const IVec3& v) { return poly({vec(0, 0, 0), v}); }

LatticePolytope random_small_polytope() {
    std::vector<IVec3> pts;
    int n = rand_int(2, 6);
    for (int i = 0; i < n; ++i) pts.push_back(vec(rand_int(0, 3), rand_int(0, 3), rand_int(0, 3)));
    return polytope_from_int_points(pts);
}

// Closed form for the homogenization oracle on the P^3 fan, used to verify the
// exponent-vector computation: sum over the four rays of max(0, -min_i (A v)_i).
Int closed_form_degree(const IMat3& a) {
    std::vector<IVec3> rays = {vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1), vec(-1, -1, -1)};
    Int total = 0;
    for (const auto& v : rays) {
        IVec3 img = a * v;
        Int mn = std::min(std::min(img[0], img[1]), img[2]);
        if (mn < 0) total += -mn;
    }
    return total;
}

}  // namespace

TEST_CASE("hull reduction keeps exactly the extreme points") {
    LatticePolytope P = poly({vec(0, 0, 0), vec(2, 0, 0), vec(0, 2, 0), vec(0, 0, 2),
                              vec(1, 0, 0), vec(1, 1, 0)});
    CHECK(P.vertices.size() == 4);

    // lower-dimensional sets reduce too
    LatticePolytope seg = poly({vec(0, 0, 0), vec(1, 1, 1), vec(2, 2, 2), vec(3, 3, 3)});
    CHECK(seg.vertices.size() == 2);
    LatticePolytope square =
        poly({vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0), vec(1, 1, 0), vec(1, 2, 0)});
    CHECK(square.vertices.size() == 4);  // (1,1,0) inside the hull of the rest? no: check
    LatticePolytope point = poly({vec(5, 5, 5), vec(5, 5, 5)});
    CHECK(point.vertices.size() == 1);
}

TEST_CASE("volume of standard bodies") {
    CHECK(volume(standard_simplex()) == Rat(1, 6));
    CHECK(volume(unit_cube()) == Rat(1));
    CHECK(volume(poly({vec(0, 0, 0), vec(2, 0, 0), vec(0, 3, 0), vec(0, 0, 5)})) == Rat(5));
    // degenerate polytopes have volume zero
    CHECK(volume(segment(vec(1, 0, 0))) == Rat(0));
    CHECK(volume(poly({vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0)})) == Rat(0));
}

TEST_CASE("minkowski sums") {
    LatticePolytope delta = standard_simplex();
    LatticePolytope zero = poly({vec(0, 0, 0)});
    CHECK(minkowski_sum(delta, zero) == delta);

    // homothety: Delta + Delta = 2 Delta
    LatticePolytope two_delta =
        poly({vec(0, 0, 0), vec(2, 0, 0), vec(0, 2, 0), vec(0, 0, 2)});
    CHECK(minkowski_sum(delta, delta) == two_delta);

    // Delta + segment[0, e1]: hull enumeration gives the 6 extreme points
    // {0, 2e1, e2, e3, e1+e2, e1+e3} (e1 itself is the midpoint of [0, 2e1])
    LatticePolytope prism = minkowski_sum(delta, segment(vec(1, 0, 0)));
    CHECK(prism.vertices.size() == 6);
    LatticePolytope expected = poly(
        {vec(0, 0, 0), vec(2, 0, 0), vec(0, 1, 0), vec(0, 0, 1), vec(1, 1, 0), vec(1, 0, 1)});
    CHECK(prism == expected);
    // integrate x from 0 to 2-y-z over the standard triangle: 1 - 1/3 = 2/3
    CHECK(volume(prism) == Rat(2, 3));
}

TEST_CASE("mixed volume normalization and unit cases") {
    LatticePolytope delta = standard_simplex();
    CHECK(mixed_volume(delta, delta, delta) == volume(delta));
    LatticePolytope cube = unit_cube();
    CHECK(mixed_volume(cube, cube, cube) == Rat(1));
    // 3! MV(seg_x, seg_y, seg_z) = 1 (the box volume expansion)
    Rat mv = mixed_volume(segment(vec(1, 0, 0)), segment(vec(0, 1, 0)), segment(vec(0, 0, 1)));
    CHECK(6 * mv == Rat(1));
}

TEST_CASE("mixed volume symmetry and multilinearity on random polytopes") {
    for (int trial = 0; trial < 20; ++trial) {
        LatticePolytope p1 = random_small_polytope();
        LatticePolytope p2 = random_small_polytope();
        LatticePolytope p3 = random_small_polytope();
        Rat m = mixed_volume(p1, p2, p3);
        CHECK(m == mixed_volume(p2, p1, p3));
        CHECK(m == mixed_volume(p3, p2, p1));
        CHECK(m == mixed_volume(p1, p3, p2));

        LatticePolytope q = random_small_polytope();
        // additivity in the first argument under Minkowski sum
        CHECK(mixed_volume(minkowski_sum(p1, q), p2, p3) ==
              m + mixed_volume(q, p2, p3));
    }
}

TEST_CASE("degree_p on the standard simplex") {
    LatticePolytope delta = standard_simplex();
    CHECK(degree_p(diag(4, 4, 4), delta, 1) == Rat(4));
    CHECK(degree_p(IMat3::identity(), delta, 1) == Rat(1));
    CHECK(degree_p(example_matrix(), delta, 1) == Rat(7));
    CHECK(degree_p(example_matrix(), delta, 1) == Rat(homogenization_oracle(example_matrix())));

    // deg_{D,2}(f_A) = deg_{D,1}(f_{A'}): diag(2,3,5)' = diag(15,10,6)
    CHECK(degree_p(diag(2, 3, 5), delta, 2) == Rat(15));
    CHECK(degree_p(det_adjugate(diag(2, 3, 5)).second, delta, 1) == Rat(15));

    CHECK_THROWS_AS(degree_p(mat(1, 0, 0, 0, 1, 0, 1, 1, 0), delta, 1), SingularMatrix);
    CHECK_THROWS_AS(degree_p(diag(2, 3, 5), segment(vec(1, 0, 0)), 1), DegeneratePolytope);
}

TEST_CASE("homogenization oracle") {
    CHECK(homogenization_oracle(IMat3::identity()) == 1);
    CHECK(homogenization_oracle(diag(5, 5, 5)) == 5);
    CHECK(homogenization_oracle(example_matrix()) == 7);
    CHECK(homogenization_oracle(diag(2, 3, 5)) == 5);
    // negative exponents force factors of the remaining coordinates
    CHECK(homogenization_oracle(diag(-1, 1, 1)) == 2);

    // the two independent computations of the oracle agree
    for (int trial = 0; trial < 50; ++trial) {
        IMat3 a = random_nonsingular(-4, 4);
        CHECK(homogenization_oracle(a) == closed_form_degree(a));
    }
}

TEST_CASE("oracle agreement: degree_p(A, Delta, 1) equals the homogenization degree") {
    LatticePolytope delta = standard_simplex();
    for (int trial = 0; trial < 50; ++trial) {
        IMat3 a = random_nonsingular(-3, 3);
        CHECK(degree_p(a, delta, 1) == Rat(homogenization_oracle(a)));
    }
}

TEST_CASE("degree duality suite") {
    LatticePolytope delta = standard_simplex();
    for (int trial = 0; trial < 25; ++trial) {
        IMat3 a = random_nonsingular(-3, 3);
        auto [d, ap] = det_adjugate(a);
        Rat deg1 = degree_p(a, delta, 1);
        Rat deg2 = degree_p(a, delta, 2);
        // deg_{D,p}(f_A) = |det A|^{p-n+1} deg_{D,n-p}(f_{A'}), n = 3
        CHECK(deg2 == degree_p(ap, delta, 1));            // p = 2: exponent 0
        CHECK(deg1 == degree_p(ap, delta, 2) / abs(d));   // p = 1: exponent -1
        // the two displays are mutually consistent
        CHECK(degree_p(ap, delta, 2) == abs(d) * deg1);
    }
}

TEST_CASE("degree sequences") {
    LatticePolytope delta = standard_simplex();
    auto s1 = degree_sequence(IMat3::identity(), delta, 1, 4);
    CHECK(s1.values == std::vector<Rat>{Rat(1), Rat(1), Rat(1), Rat(1)});

    auto s2 = degree_sequence(example_matrix(), delta, 1, 5);
    CHECK(s2.values == std::vector<Rat>{Rat(7), Rat(49), Rat(343), Rat(2401), Rat(16807)});
    // cross-check every iterate against the oracle
    for (int k = 1; k <= 5; ++k)
        CHECK(s2.values[static_cast<size_t>(k - 1)] ==
              Rat(homogenization_oracle(pow(example_matrix(), static_cast<unsigned>(k)))));

    auto s3 = degree_sequence(diag(2, 3, 5), delta, 1, 3);
    CHECK(s3.values == std::vector<Rat>{Rat(5), Rat(25), Rat(125)});
    for (int k = 1; k <= 3; ++k)
        CHECK(s3.values[static_cast<size_t>(k - 1)] ==
              Rat(homogenization_oracle(pow(diag(2, 3, 5), static_cast<unsigned>(k)))));

    auto s4 = degree_sequence(diag(2, 3, 5), delta, 2, 3);
    CHECK(s4.values == std::vector<Rat>{Rat(15), Rat(225), Rat(3375)});
}
