#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "monomap/linalg.hpp"
#include "monomap/poly.hpp"

using namespace monomap;
using namespace monomap::testing;

TEST_CASE("det_adjugate identity and diagonal cases") {
    auto [d1, p1] = det_adjugate(IMat3::identity());
    CHECK(d1 == 1);
    CHECK(p1 == IMat3::identity());

    auto [d2, p2] = det_adjugate(diag(2, 3, 5));
    CHECK(d2 == 30);
    CHECK(p2 == diag(15, 10, 6));
}

TEST_CASE("det_adjugate of the worked example matrix") {
    IMat3 a = example_matrix();
    auto [d, ap] = det_adjugate(a);
    CHECK(d == 84);
    CHECK(ap == mat(-9, 24, -3, -2, -4, 18, 19, -4, -3));
    // oracle: direct multiplication gives |det| * I
    CHECK(a * ap == IMat3::scalar(Int(84)));
}

TEST_CASE("adjugate identity A*A' = |det A|*I and det(A') = sgn(det A)*det(A)^2") {
    for (int trial = 0; trial < 30; ++trial) {
        IMat3 a = random_nonsingular(-5, 5);
        auto [d, ap] = det_adjugate(a);
        CHECK(a * ap == IMat3::scalar(abs(d)));
        // det(A') = |det A|^3 / det A; in odd dimension the sign of det A
        // survives, so det(A') = det(A)^2 exactly when det A > 0
        Int expected = d > 0 ? Int(d * d) : Int(-(d * d));
        CHECK(det(ap) == expected);
    }
}

TEST_CASE("dual matrix commutes with powers: (A^k)' = (A')^k for k <= 5") {
    for (int trial = 0; trial < 25; ++trial) {
        IMat3 a = random_nonsingular(-3, 3);
        IMat3 ap = det_adjugate(a).second;
        for (unsigned k = 1; k <= 5; ++k) {
            IMat3 lhs = det_adjugate(pow(a, k)).second;
            CHECK(lhs == pow(ap, k));
        }
    }
}

TEST_CASE("char_poly known expansions") {
    CHECK(char_poly(IMat3::identity()) == poly_from_ints({-1, 3, -3, 1}));
    CHECK(char_poly(diag(2, 3, 5)) == poly_from_ints({-30, 31, -10, 1}));
    // (x-7)(x^2+4x+12) = x^3 - 3x^2 - 16x - 84; trace 3, det 84
    RationalPoly cp = char_poly(example_matrix());
    CHECK(cp == poly_from_ints({-84, -16, -3, 1}));
    CHECK(cp.coeffs[2] == Rat(-3));   // -trace
    CHECK(cp.coeffs[0] == Rat(-84));  // -det
}

TEST_CASE("Cayley-Hamilton: char_poly(A)(A) = 0") {
    for (int trial = 0; trial < 25; ++trial) {
        IMat3 a = random_nonsingular(-6, 6);
        CHECK(eval_at_matrix(char_poly(a), to_rmat(a)).is_zero());
    }
}

TEST_CASE("is_diagonalizable") {
    CHECK(is_diagonalizable(IMat3::identity()));
    CHECK_FALSE(is_diagonalizable(mat(1, 1, 0, 0, 1, 0, 0, 0, 2)));  // Jordan block
    // squarefree characteristic polynomial forces diagonalizability
    CHECK(squarefree_part(char_poly(example_matrix())) == char_poly(example_matrix()).monic());
    CHECK(is_diagonalizable(example_matrix()));
}

TEST_CASE("primitive and kernels") {
    CHECK(primitive(vec(4, -6, 8)) == vec(2, -3, 4));
    CHECK(primitive(RVec3(Rat(1, 2), Rat(0), Rat(3, 2))) == vec(1, 0, 3));

    auto kb = covector_kernel_basis(vec(26, 31, 32));
    CHECK(dot(vec(26, 31, 32), kb[0]) == 0);
    CHECK(dot(vec(26, 31, 32), kb[1]) == 0);
    CHECK(!cross(kb[0], kb[1]).is_zero());
    // the basis generates the whole kernel lattice: the cross product of the
    // two basis vectors must be the primitive normal again
    CHECK((primitive(cross(kb[0], kb[1])) == vec(26, 31, 32) ||
           primitive(cross(kb[0], kb[1])) == vec(-26, -31, -32)));

    // eigenvector kernels
    IMat3 a = example_matrix();
    IMat3 a_minus_7 = a + IMat3::scalar(Int(-7));
    auto ker = int_kernel(a_minus_7);
    REQUIRE(ker.size() == 1);
    CHECK((primitive(ker[0]) == vec(1, 1, 1) || primitive(ker[0]) == vec(-1, -1, -1)));
}

TEST_CASE("rank_of") {
    CHECK(rank_of({}) == 0);
    CHECK(rank_of({vec(0, 0, 0)}) == 0);
    CHECK(rank_of({vec(1, 2, 3), vec(2, 4, 6)}) == 1);
    CHECK(rank_of({vec(1, 0, 0), vec(0, 1, 0), vec(3, 5, 0)}) == 2);
    CHECK(rank_of({vec(1, 0, 0), vec(0, 1, 0), vec(0, 1, 1)}) == 3);
}
