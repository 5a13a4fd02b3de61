#include <set>

#include "doctest.h"
#include "selectra/complex.hpp"
#include "selectra/errors.hpp"
#include "selectra/random.hpp"
#include "test_util.hpp"

using namespace selectra;
using selectra::testing::q;
using selectra::testing::segment;
using selectra::testing::triangle;

TEST_CASE("segment and triangle cell counts") {
  auto s = segment();
  CHECK(s->num_cells() == 3);
  CHECK(s->cell(0) == Cell{0});
  CHECK(s->cell(1) == Cell{0, 1});
  CHECK(s->cell(2) == Cell{1});
  auto t = triangle();
  CHECK(t->num_cells() == 7);
  CHECK(t->dimension() == 2);
  CHECK(t->maximal_cells().size() == 1);
}

TEST_CASE("degenerate and overlapping simplices are rejected") {
  try {
    build_complex({{q(0)}, {q(0)}}, {{0, 1}});
    FAIL("expected DegenerateSimplex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSimplex);
  }
  try {
    build_complex({{q(0)}, {q(2)}, {q(1)}, {q(3)}}, {{0, 1}, {2, 3}});
    FAIL("expected OverlappingInteriors");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverlappingInteriors);
  }
  // Two triangles sharing an edge on the same side overlap.
  try {
    build_complex({{q(0), q(0)}, {q(2), q(0)}, {q(0), q(2)}, {q(1), q(1, 2)}}, {{0, 1, 2}, {0, 1, 3}});
    FAIL("expected OverlappingInteriors");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverlappingInteriors);
  }
  // A square split along a diagonal is fine, as is a triangle touching at a vertex.
  CHECK_NOTHROW(build_complex({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}}, {{0, 1, 3}, {0, 2, 3}}));
  CHECK_NOTHROW(build_complex({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}, {q(2), q(0)}, {q(2), q(1)}},
                              {{0, 1, 2}, {1, 3, 4}}));
}

TEST_CASE("faces and cofaces are reflexive") {
  auto s = segment();
  const CellId e = s->id_of({0, 1});
  auto f = faces(*s, e);
  CHECK(f.size() == 3);
  auto cf = cofaces(*s, s->id_of({0}));
  CHECK(cf == std::vector<CellId>{s->id_of({0}), e});
  CHECK(cofaces(*s, e) == std::vector<CellId>{e});
  CHECK_THROWS_AS(faces(*s, 99), Error);
}

TEST_CASE("carrier and evaluation") {
  auto s = segment();
  auto c = carrier(*s, {q(1, 2)});
  CHECK(s->cell(c.cell) == Cell{0, 1});
  CHECK(c.barycentric == Vec{q(1, 2), q(1, 2)});
  auto c0 = carrier(*s, {q(0)});
  CHECK(s->cell(c0.cell) == Cell{0});
  CHECK(c0.barycentric == Vec{q(1)});
  try {
    carrier(*s, {q(2)});
    FAIL("expected PointOutsideComplex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointOutsideComplex);
  }
  auto f = make_pl_function(s, {q(0), q(2)});
  CHECK(eval_pl(f, {q(1, 4)}) == Vec{q(1, 2)});
  auto t = triangle();
  auto g = make_pl_function(t, {q(0), q(1), q(2)});
  CHECK(eval_pl(g, {q(1, 3), q(1, 3)}) == Vec{q(1)});
}

TEST_CASE("barycentric subdivision") {
  auto r = barycentric_subdivide(segment());
  CHECK(r.fine->num_vertices() == 3);
  CHECK(r.fine->maximal_cells().size() == 2);
  auto rt = barycentric_subdivide(triangle());
  CHECK(rt.fine->maximal_cells().size() == 6);
  CHECK(rt.fine->num_vertices() == 7);
  // Parent of each fine vertex is the old cell it is the barycenter of.
  for (VertexId v = 0; v < rt.fine->num_vertices(); ++v) {
    CHECK(rt.parent[rt.fine->vertex_cell(v)] == v);
  }
}

TEST_CASE("transport through subdivision preserves evaluation") {
  auto t = triangle();
  auto g = make_pl_function(t, {q(0), q(1), q(2)});
  auto first = barycentric_subdivide(t);
  auto r = compose(first, barycentric_subdivide(first.fine));
  auto gf = transport(g, r);
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Vec x = random_point(rng, *t);
    REQUIRE(eval_pl(gf, x) == eval_pl(g, x));
  }
  // Carriers reproduce x with positive weights.
  for (int i = 0; i < 200; ++i) {
    const Vec x = random_point(rng, *r.fine);
    auto c = carrier(*r.fine, x);
    Vec y(2);
    for (std::size_t j = 0; j < c.barycentric.size(); ++j) {
      CHECK(c.barycentric[j] > 0);
      y = y + c.barycentric[j] * r.fine->vertex(r.fine->cell(c.cell)[j]);
    }
    CHECK(y == x);
    // Parent cell contains the fine carrier.
    CHECK(carrier(*t, x).cell == r.parent[c.cell]);
  }
}

TEST_CASE("level cuts") {
  auto s = segment();
  auto f = make_pl_function(s, {q(0), q(2)});
  auto r = subdivide_by_levels(s, f, {q(1)});
  CHECK(r.fine->num_vertices() == 3);
  CHECK(r.fine->vertex(2) == Vec{q(1, 2)});
  auto same = subdivide_by_levels(s, f, {q(5)});
  CHECK(same.fine->num_cells() == 3);

  auto t = triangle();
  auto g = make_pl_function(t, {q(0), q(1), q(2)});
  auto rt = subdivide_by_levels(t, g, {q(3, 2)});
  auto gt = transport(g, rt);
  for (CellId c = 0; c < rt.fine->num_cells(); ++c) {
    bool above = false, below = false;
    for (VertexId v : rt.fine->cell(c)) {
      if (scalar_at(gt, v) > q(3, 2)) above = true;
      if (scalar_at(gt, v) < q(3, 2)) below = true;
    }
    CHECK_FALSE((above && below));
  }
}

TEST_CASE("products") {
  auto ss = product_complex(segment(), segment());
  CHECK(ss.product->num_vertices() == 4);
  CHECK(ss.product->maximal_cells().size() == 2);
  auto st = product_complex(segment(), triangle());
  CHECK(st.product->maximal_cells().size() == 3);
  CHECK(st.product->dim_ambient() == 3);
  auto pt = build_complex({{q(0)}}, {{0}});
  auto pl = product_complex(pt, triangle());
  CHECK(pl.product->num_cells() == triangle()->num_cells());
  // Projections reproduce coordinates.
  for (VertexId v = 0; v < st.product->num_vertices(); ++v) {
    Vec x = st.project_left.at(v);
    const Vec& y = st.project_right.at(v);
    x.insert(x.end(), y.begin(), y.end());
    CHECK(x == st.product->vertex(v));
  }
}

TEST_CASE("open star and oscillation") {
  auto s = segment();
  const std::vector<CellId> v0{s->id_of({0})};
  auto star = open_star(*s, v0);
  CHECK(star.ids() == std::vector<CellId>{s->id_of({0}), s->id_of({0, 1})});
  auto c = make_pl_function(s, {q(3), q(3)});
  CHECK(oscillation(c, OpenCellSet(*s, CellSet::all(3))) == 0);
  auto f = make_pl_function(s, {q(0), q(2)});
  CHECK(oscillation(f, OpenCellSet(*s, CellSet::all(3))) == 2);
  CHECK_THROWS_AS(OpenCellSet(*s, CellSet::of(3, v0)), Error);
}
