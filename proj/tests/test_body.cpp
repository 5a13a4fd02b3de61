#include "doctest.h"
#include "selectra/body.hpp"
#include "selectra/errors.hpp"
#include "test_util.hpp"

using namespace selectra;
using selectra::testing::q;

namespace {
const ExtRational kInf = ExtRational::pos_inf();
const ExtRational kNegInf = ExtRational::neg_inf();
}  // namespace

TEST_CASE("interval membership with margins") {
  auto m = membership(open_interval(0, 1), {q(1, 2)});
  CHECK(m.position == Position::Inside);
  CHECK(m.margin == ExtRational(q(1, 2)));
  CHECK(membership(closed_interval(0, 1), {q(0)}).position == Position::Boundary);
  CHECK(contains(closed_interval(0, 1), {q(0)}));
  CHECK_FALSE(contains(open_interval(0, 1), {q(0)}));
  auto f = fatten(closed_vpolytope({{q(0)}}), q(1), true);
  CHECK(f == open_interval(-1, 1));
  CHECK_FALSE(contains(f, {q(1)}));
  CHECK(membership(open_interval(kNegInf, kInf), {q(5)}).margin == kInf);
  CHECK_THROWS_AS(open_interval(1, 1), Error);
  CHECK_NOTHROW(closed_interval(1, 1));
}

TEST_CASE("fattening boxes is closed form") {
  auto b = fatten(closed_box({0, 0}, {1, 1}), q(1, 2), true);
  CHECK(b == open_box({q(-1, 2), q(-1, 2)}, {q(3, 2), q(3, 2)}));
  CHECK_THROWS_AS(fatten(open_hpolytope(1, {{{q(1)}, q(1)}}), q(1), true), Error);
  // an open body plus a closed ball is still open
  CHECK(fatten(open_interval(0, 1), q(1), false) == open_interval(-1, 2));
  CHECK(fatten(closed_interval(0, 1), q(1), false) == closed_interval(-1, 2));
}

TEST_CASE("fattening a fattened body adds the radii") {
  auto tri = closed_vpolytope({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}});
  CHECK(fatten(fatten(tri, q(1, 4), true), q(1, 2), false) == fatten(tri, q(3, 4), true));
  CHECK(fatten(fatten(tri, q(1, 4), false), q(1, 2), false) == fatten(tri, q(3, 4), false));
}

TEST_CASE("fattened V-polytope membership is exact") {
  auto tri = closed_vpolytope({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}});
  auto f = fatten(tri, q(1, 2), true);
  CHECK(f.as<Fattened>() != nullptr);
  // (1,1) is at ℓ∞ distance 1/2 from the triangle.
  CHECK(distance(tri, {q(1), q(1)}) == q(1, 2));
  CHECK(membership(f, {q(1), q(1)}).position == Position::Boundary);
  CHECK(membership(f, {q(3, 4), q(3, 4)}).position == Position::Inside);
  CHECK(membership(f, {q(3, 4), q(3, 4)}).margin == ExtRational(q(1, 4)));
  CHECK(support(f, {q(1), q(1)}) == ExtRational(q(2)));
}

TEST_CASE("V-polytope hull reduction and H-description") {
  auto sq = ClosedVPolytope::create({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}, {q(1, 2), q(1, 2)}});
  CHECK(sq.vertices().size() == 4);
  CHECK(sq.hrep().size() == 4);
  CHECK(sq.full_dimensional());
  auto seg = ClosedVPolytope::create({{q(0), q(0)}, {q(1), q(1)}});
  CHECK_FALSE(seg.full_dimensional());
  CHECK(contains(ConvexBody(seg), {q(1, 3), q(1, 3)}));
  CHECK_FALSE(contains(ConvexBody(seg), {q(1, 3), q(1, 2)}));
  auto cube = ClosedVPolytope::create({{q(0), q(0), q(0)}, {q(1), q(0), q(0)}, {q(0), q(1), q(0)}, {q(0), q(0), q(1)},
                                       {q(1), q(1), q(0)}, {q(1), q(0), q(1)}, {q(0), q(1), q(1)}, {q(1), q(1), q(1)}});
  CHECK(cube.hrep().size() == 6);
}

TEST_CASE("open H-polytopes") {
  // Triangle y1 > 0, y2 > 0, y1 + y2 < 1.
  auto h = OpenHPolytope::create(2, {{{q(-1), q(0)}, q(0)}, {{q(0), q(-1)}, q(0)}, {{q(1), q(1)}, q(1)}});
  CHECK(h.bounded());
  CHECK(h.closure_vertices().size() == 3);
  CHECK(h.interior_point() == Vec{q(1, 3), q(1, 3)});
  auto half = OpenHPolytope::create(2, {{{q(1), q(0)}, q(0)}});
  CHECK_FALSE(half.bounded());
  CHECK(contains(ConvexBody(half), half.interior_point()));
  CHECK_THROWS_AS(OpenHPolytope::create(1, {{{q(1)}, q(0)}, {{q(-1)}, q(0)}}), Error);
  CHECK(closure(ConvexBody(h)) == closed_vpolytope({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}));
  CHECK_THROWS_AS(closure(ConvexBody(half)), Error);
}

TEST_CASE("containment witnesses") {
  CHECK_FALSE(containment_witness(open_interval(0, 1), open_interval(-1, 2)));
  auto w = containment_witness(open_interval(0, 3), open_interval(0, 1));
  REQUIRE(w);
  CHECK(contains(open_interval(0, 3), *w));
  CHECK_FALSE(contains(open_interval(0, 1), *w));
  auto w2 = containment_witness(closed_interval(0, 2), closed_interval(0, 1));
  REQUIRE(w2);
  CHECK(*w2 == Vec{q(2)});
  // Unbounded inner.
  auto w3 = containment_witness(open_interval(0, kInf), open_interval(-1, 5));
  REQUIRE(w3);
  CHECK((*w3)[0] > 5);
  // Fattened outer.
  auto tri = closed_vpolytope({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}});
  auto ftri = fatten(tri, q(1, 2), true);
  CHECK_FALSE(containment_witness(tri, ftri));
  CHECK_FALSE(containment_witness(fatten(tri, q(1, 4), true), ftri));
  CHECK_FALSE(containment_witness(open_box({0, 0}, {1, 1}), ftri));
  auto w4 = containment_witness(open_box({0, 0}, {2, 1}), ftri);
  REQUIRE(w4);
  CHECK(contains(open_box({0, 0}, {2, 1}), *w4));
  CHECK_FALSE(contains(ftri, *w4));
  CHECK(distance(ftri, *w4) > 0);
  auto w5 = containment_witness(fatten(closed_vpolytope({{q(0), q(0)}, {q(2), q(0)}}), q(1, 2), true), ftri);
  REQUIRE(w5);
  CHECK(distance(ftri, *w5) > 0);
}
