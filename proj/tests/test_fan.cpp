#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "monomap/fan.hpp"

using namespace monomap;
using namespace monomap::testing;

TEST_CASE("fan_new validates the fan axioms") {
    Fan p3 = p3_fan();
    CHECK(p3.rays.size() == 4);
    CHECK(p3.cones.size() == 4);

    // a single octant is a valid (incomplete) fan
    Fan oct = fan_new({vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)}, {{0, 1, 2}});
    CHECK(oct.cones.size() == 1);

    // two cones overlapping improperly: intersection is not a common face
    CHECK_THROWS_AS(fan_new({vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1), vec(1, 1, 1)},
                            {{0, 1, 2}, {0, 1, 3}}),
                    BadFan);

    // a declared ray that is interior to its cone is rejected
    CHECK_THROWS_AS(fan_new({vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1), vec(1, 1, 1)},
                            {{0, 1, 2, 3}}),
                    BadFan);

    // duplicate rays are rejected
    CHECK_THROWS_AS(fan_new({vec(1, 0, 0), vec(2, 0, 0)}, {{0}, {1}}), BadFan);
}

TEST_CASE("fan predicates on standard fans") {
    auto p = fan_predicates(p3_fan());
    CHECK(p.complete);
    CHECK(p.simplicial);
    CHECK(p.regular);

    auto q = fan_predicates(octant_fan());
    CHECK(q.complete);
    CHECK(q.simplicial);
    CHECK(q.regular);

    // octant alone: not complete
    Fan oct = fan_new({vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)}, {{0, 1, 2}});
    auto r = fan_predicates(oct);
    CHECK_FALSE(r.complete);
    CHECK(r.simplicial);
    CHECK(r.regular);

    // octant subdivided by the ray (1,1,2): a cone with |det| = 2 appears
    Fan sub = star_subdivide(octant_fan(), vec(1, 1, 2));
    auto s = fan_predicates(sub);
    CHECK(s.complete);
    CHECK(s.simplicial);
    CHECK_FALSE(s.regular);
}

TEST_CASE("star subdivision") {
    Fan p3 = p3_fan();
    // subdividing at an existing ray changes nothing
    CHECK(fan_equal(star_subdivide(p3, vec(1, 0, 0)), p3));
    CHECK(fan_equal(star_subdivide(p3, vec(2, 0, 0)), p3));

    // at (1,1,1) only the positive octant is subdivided: 3 + 3 = 6 cones
    Fan sub = star_subdivide(p3, vec(1, 1, 1));
    CHECK(sub.cones.size() == 6);
    CHECK(sub.rays.size() == 5);
    CHECK(refines(sub, p3));
    CHECK(fan_is_complete(sub));

    // standard stellar subdivision of a single octant
    Fan oct = fan_new({vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)}, {{0, 1, 2}});
    Fan oct_sub = star_subdivide(oct, vec(1, 1, 1));
    CHECK(oct_sub.cones.size() == 3);
    for (const auto& c : oct_sub.cones) CHECK(c.dim == 3);

    // subdividing at a ray on a shared 2-face splits both neighbors
    Fan sub2 = star_subdivide(octant_fan(), vec(1, 1, 0));
    CHECK(sub2.cones.size() == 10);

    CHECK_THROWS_AS(star_subdivide(oct, vec(-1, 0, 0)), Error);
}

TEST_CASE("common refinement") {
    Fan p3 = p3_fan();
    Fan oct = octant_fan();
    CHECK(fan_equal(common_refinement(p3, p3), p3));
    CHECK(fan_equal(common_refinement(oct, oct), oct));

    // P^3 fan with the octant fan; count verified by enumerating pairwise
    // full-dimensional intersections: the positive octant survives whole and
    // each of the three other P^3 cones splits into four octant pieces
    Fan cr = common_refinement(p3, oct);
    CHECK(cr.cones.size() == 13);
    CHECK(fan_is_complete(cr));
    CHECK(refines(cr, p3));
    CHECK(refines(cr, oct));
    CHECK_FALSE(fan_is_simplicial(cr));  // pieces over squares appear

    // commutative up to cone-set equality
    CHECK(fan_equal(cr, common_refinement(oct, p3)));

    // associativity sample
    Fan braid = hyperplane_fan(p3);
    Fan lhs = common_refinement(common_refinement(p3, oct), braid);
    Fan rhs = common_refinement(p3, common_refinement(oct, braid));
    CHECK(fan_equal(lhs, rhs));

    Fan single = fan_new({vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)}, {{0, 1, 2}});
    CHECK_THROWS_AS(common_refinement(p3, single), SupportMismatch);
}

TEST_CASE("hyperplane arrangement fan") {
    // octant fan is its own arrangement fan (planes x=0, y=0, z=0)
    Fan oct = octant_fan();
    CHECK(fan_equal(hyperplane_fan(oct), oct));

    // P^3: arrangement of {x=0, y=0, z=0, x=y, y=z, x=z} has 24 regions
    Fan p3 = p3_fan();
    Fan braid = hyperplane_fan(p3);
    CHECK(braid.cones.size() == 24);
    CHECK(braid.projective_flag);
    CHECK(refines(braid, p3));
    auto pr = fan_predicates(braid);
    CHECK(pr.complete);
    CHECK(pr.simplicial);

    // idempotent
    CHECK(fan_equal(hyperplane_fan(braid), braid));
}

TEST_CASE("orbit intersection fan") {
    Fan p3 = p3_fan();
    CHECK(fan_equal(orbit_intersection_fan(p3, {IMat3::identity()}), p3));

    // the octant fan is already invariant under coordinate permutations
    IMat3 cyc = mat(0, 0, 1, 1, 0, 0, 0, 1, 0);
    Fan oct = octant_fan();
    CHECK(fan_equal(orbit_intersection_fan(oct, {IMat3::identity(), cyc, cyc * cyc}), oct));

    // the braid arrangement fan is invariant under the cyclic permutation
    Fan braid = hyperplane_fan(p3);
    Fan inv = orbit_intersection_fan(braid, {IMat3::identity(), cyc, cyc * cyc});
    CHECK(inv.cones.size() == 24);
    CHECK(fan_equal(inv, braid));
}

TEST_CASE("simplicialization preserving rays") {
    Fan p3 = p3_fan();
    CHECK(fan_equal(simplicialize_preserving_rays(p3), p3));

    // cone over a square: split into two simplicial cones through the
    // lexicographically smallest ray (0,1,0); the shared 2-face is then
    // cone{(0,1,0),(1,0,1)}
    Fan sq = fan_new({vec(1, 0, 0), vec(0, 1, 0), vec(1, 0, 1), vec(0, 1, 1)}, {{0, 1, 2, 3}});
    CHECK_FALSE(fan_is_simplicial(sq));
    Fan tri = simplicialize_preserving_rays(sq);
    CHECK(fan_is_simplicial(tri));
    CHECK(tri.rays == sq.rays);
    CHECK(tri.cones.size() == 2);
    Cone shared = cone_intersect(tri.cones[0], tri.cones[1]);
    CHECK(shared == cone_new({vec(0, 1, 0), vec(1, 0, 1)}));

    // the 13-cone refinement has cones over squares; simplicialization keeps
    // completeness and the ray set
    Fan cr = common_refinement(p3, octant_fan());
    Fan crs = simplicialize_preserving_rays(cr);
    CHECK(fan_is_simplicial(crs));
    CHECK(crs.rays == cr.rays);
    CHECK(fan_is_complete(crs));
    CHECK(refines(crs, cr));
}

TEST_CASE("plane section fans") {
    // octant fan cut by z = 0: the four quadrants
    Fan2D quad = plane_section_fan(octant_fan(), vec(0, 0, 1));
    CHECK(quad.rays.size() == 4);

    // P^3 fan cut by z = 0: rays e1, e2, (-1,-1) in the induced basis
    Fan2D tri = plane_section_fan(p3_fan(), vec(0, 0, 1));
    REQUIRE(tri.rays.size() == 3);
    std::vector<IVec3> rays3;
    for (const auto& r : tri.rays) rays3.push_back(primitive(from_plane_coords(tri, r)));
    std::sort(rays3.begin(), rays3.end());
    CHECK(rays3 == std::vector<IVec3>{vec(-1, -1, 0), vec(0, 1, 0), vec(1, 0, 0)});

    // support of the output is the whole plane: rays alternate around the
    // circle, which the construction asserts internally; spot-check coords
    for (const auto& r : tri.rays) {
        IVec3 g = from_plane_coords(tri, r);
        CHECK(dot(vec(0, 0, 1), g) == 0);
    }
}

TEST_CASE("refinement operations re-validate and preserve support") {
    // randomized star subdivisions of the octant fan stay valid and complete
    for (int trial = 0; trial < 10; ++trial) {
        Fan f = octant_fan();
        int subs = rand_int(1, 3);
        for (int s = 0; s < subs; ++s) f = star_subdivide(f, random_primitive_ray(-3, 3));
        CHECK(fan_is_complete(f));
        CHECK(refines(f, octant_fan()));
    }
}
