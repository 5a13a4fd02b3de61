#include "doctest.h"
#include "selectra/errors.hpp"
#include "selectra/relations.hpp"
#include "test_util.hpp"

using namespace selectra;
using selectra::testing::q;
using selectra::testing::segment;
using selectra::testing::triangle;

namespace {

const ExtRational kInf = ExtRational::pos_inf();
const ExtRational kNegInf = ExtRational::neg_inf();

// Segment cells in id order: {0}, {0,1}, {1}.
ConvexCellRelation seg_relation(ConvexBody v0, ConvexBody e, ConvexBody v1) {
  return ConvexCellRelation(segment(), v0.dim(), {v0, e, v1});
}

ScalarCellField seg_field(ExtRational v0, ExtRational e, ExtRational v1) {
  return ScalarCellField(segment(), {v0, e, v1});
}

}  // namespace

TEST_CASE("scalar classification") {
  auto a = classify_scalar(seg_field(1, 0, 1));
  CHECK(a.is_usc());
  CHECK_FALSE(a.is_lsc());
  auto b = classify_scalar(seg_field(2, 2, 2));
  CHECK(b.is_usc());
  CHECK(b.is_lsc());
  auto c = classify_scalar(seg_field(0, 1, 0));
  CHECK(c.is_lsc());
  CHECK_FALSE(c.is_usc());
}

TEST_CASE("open relation classifier") {
  CHECK(is_open_relation(seg_relation(open_interval(0, 1), open_interval(-1, 2), open_interval(0, 1))));
  auto v = is_open_relation(seg_relation(open_interval(0, 3), open_interval(0, 1), open_interval(0, 1)));
  REQUIRE_FALSE(v);
  CHECK(v.witness->face == 0);
  CHECK(v.witness->coface == 1);
  const Vec y = *v.witness->point;
  CHECK(contains(open_interval(0, 3), y));
  CHECK_FALSE(contains(open_interval(0, 1), y));
  try {
    is_open_relation(seg_relation(closed_interval(0, 1), open_interval(-1, 2), open_interval(0, 1)));
    FAIL("expected NotOpenForm");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotOpenForm);
  }
}

TEST_CASE("lsc relation classifier") {
  CHECK(is_lsc_relation(seg_relation(closed_interval(0, 0), closed_interval(0, 1), closed_interval(1, 1))));
  auto v = is_lsc_relation(seg_relation(closed_interval(0, 2), closed_interval(0, 1), closed_interval(1, 1)));
  REQUIRE_FALSE(v);
  CHECK(v.witness->point->at(0) > 1);
  CHECK(v.witness->point->at(0) <= 2);
  // Open intervals: the two classifiers agree.
  auto phi = seg_relation(open_interval(0, 1), open_interval(0, 1), open_interval(0, 2));
  CHECK(is_open_relation(phi).holds == is_lsc_relation(phi).holds);
}

TEST_CASE("increasing covers and min-index fields") {
  auto s = segment();
  const std::vector<CellId> v0{0};
  IndexedCover inc(s, {open_star(*s, v0), OpenCellSet(*s, CellSet::all(3))});
  CHECK(is_increasing_cover(inc));
  const std::vector<CellId> v1{2};
  IndexedCover stars(s, {open_star(*s, v0), open_star(*s, v1)});
  CHECK_FALSE(is_increasing_cover(stars));
  CHECK(classify_scalar(min_index_field(inc)).is_usc());
  CHECK_THROWS_AS(IndexedCover(s, {open_star(*s, v0)}), Error);
}

TEST_CASE("composition with the order relation") {
  auto s = segment();
  // α(v0) = 2, α(e) = α(v1) = 0.
  const std::vector<CellId> right{1, 2};
  const auto low = open_star(*s, std::vector<CellId>{2});
  IndexedCover omega(s, {low, low, OpenCellSet(*s, CellSet::all(3))});
  auto phi = compose(omega, order_relation(3));
  CHECK(phi[0] == open_interval(2, kInf));
  CHECK(phi[1] == open_interval(0, kInf));
  CHECK(is_open_relation(phi));
  IndexedCover single(s, {OpenCellSet(*s, CellSet::all(3))});
  auto c = compose(single, {open_box({0, 0}, {1, 1})});
  for (const auto& b : c.bodies) CHECK(b == open_box({0, 0}, {1, 1}));
  IndexedCover two(s, {OpenCellSet(*s, CellSet::all(3)), OpenCellSet(*s, CellSet::all(3))});
  CHECK_THROWS_AS(compose(two, {open_interval(0, 1), open_interval(2, 3)}), Error);
  CHECK(compose(two, {open_interval(0, 2), open_interval(1, 3)})[0] == open_interval(0, 3));
}

TEST_CASE("fattening, closure, bounds") {
  auto phi = seg_relation(closed_interval(0, 0), closed_interval(0, 1), closed_interval(1, 1));
  auto f = fatten(phi, q(1), true);
  CHECK(f[0] == open_interval(-1, 1));
  CHECK(is_open_relation(f));
  auto open = seg_relation(open_interval(0, 1), open_interval(0, 1), open_interval(0, 1));
  auto cl = pointwise_closure(open);
  CHECK(cl[1] == closed_interval(0, 1));
  CHECK(pointwise_closure(cl) == cl);
  auto [xi, eta] = bounds_of(open);
  CHECK(xi.values == std::vector<ExtRational>(3, ExtRational(0)));
  CHECK(eta.values == std::vector<ExtRational>(3, ExtRational(1)));
  CHECK(from_bounds(xi, eta) == open);
  CHECK_THROWS_AS(from_bounds(xi, xi), Error);
}

TEST_CASE("convex hulls of finite fields") {
  auto s = segment();
  FiniteSetCellField two(s, 1, std::vector<std::vector<Vec>>(3, {{q(0)}, {q(1)}}));
  auto h = convex_hull_relation(two);
  CHECK(contains(h[1], {q(1, 2)}));
  CHECK(is_lsc_relation(h));
  FiniteSetCellField single(s, 1, std::vector<std::vector<Vec>>(3, {{q(3)}}));
  CHECK(convex_hull_relation(single)[0] == closed_vpolytope({{q(3)}}));
}

TEST_CASE("separation gadget and covers from relations") {
  auto s = segment();
  auto g = separation_gadget(s, CellSet::of(3, std::vector<CellId>{0}), CellSet::of(3, std::vector<CellId>{2}));
  CHECK(g[0] == open_interval(kNegInf, -1));
  CHECK(g[1] == open_interval(kNegInf, kInf));
  CHECK(g[2] == open_interval(1, kInf));
  CHECK(is_open_relation(g));
  auto only_b = separation_gadget(s, CellSet(3), CellSet::of(3, std::vector<CellId>{2}));
  CHECK(only_b[0] == open_interval(kNegInf, kInf));
  CHECK_THROWS_AS(separation_gadget(s, CellSet::of(3, std::vector<CellId>{0}), CellSet::of(3, std::vector<CellId>{0})),
                  Error);

  auto phi = seg_relation(open_interval(0, 1), open_interval(0, 1), open_interval(0, 1));
  auto cover = cover_from_relation(phi, {{q(1, 2)}});
  CHECK(cover.size() == 1);
  try {
    cover_from_relation(phi, {{q(2)}});
    FAIL("expected NotACover");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotACover);
  }
  auto m = membership(phi, 0, {q(1, 2)});
  CHECK(m.position == Position::Inside);
  CHECK(m.margin == ExtRational(q(1, 2)));
}

TEST_CASE("transport preserves classification") {
  auto t = triangle();
  std::vector<ExtRational> vals;
  for (CellId c = 0; c < t->num_cells(); ++c) vals.push_back(Rational(3 - t->cell_dim(c)));
  ScalarCellField f(t, vals);
  REQUIRE(classify_scalar(f).is_usc());
  auto r = barycentric_subdivide(t);
  auto ft = transport(f, r);
  CHECK(classify_scalar(ft).is_usc());
  CHECK_FALSE(classify_scalar(ft).is_lsc());
}
