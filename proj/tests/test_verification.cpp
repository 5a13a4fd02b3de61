#include "doctest.h"
#include "selectra/errors.hpp"
#include "selectra/generators.hpp"
#include "selectra/verification.hpp"
#include "test_util.hpp"

using namespace selectra;
using selectra::testing::q;
using selectra::testing::segment;
using selectra::testing::triangle;

namespace {

const Sampler kSampler{7, 200, 10};

}  // namespace

TEST_CASE("oracle_open agrees on nested intervals and finds the escaping value") {
  auto s = segment();
  ConvexCellRelation good(s, 1, {open_interval(0, 1), open_interval(-1, 2), open_interval(0, 1)});
  auto v = oracle_open(good, kSampler);
  CHECK(v.holds);
  CHECK(v.pairs_tested > 0);

  ConvexCellRelation bad(s, 1, {open_interval(0, 3), open_interval(0, 1), open_interval(0, 1)});
  auto w = oracle_open(bad, kSampler);
  REQUIRE_FALSE(w.holds);
  REQUIRE(w.witness);
  CHECK(w.witness->cell == 0);
  CHECK(w.witness->coface == 1);
  CHECK(contains(bad[0], w.witness->y));
  CHECK(!contains(bad[1], w.witness->y_escape));
  CHECK(carrier(*s, w.witness->x_escape).cell == 1);
  CHECK(dist_inf(w.witness->x, w.witness->x_escape) <= pow2(-10));
}

TEST_CASE("oracle_open rejects closed values through the value direction") {
  auto s = segment();
  ConvexCellRelation closed(s, 1, {closed_interval(0, 1), closed_interval(0, 1), closed_interval(0, 1)});
  auto w = oracle_open(closed, kSampler);
  REQUIRE_FALSE(w.holds);
  CHECK(!contains(closed[w.witness->coface], w.witness->y_escape));
}

TEST_CASE("oracle_lsc agrees with the classifier on small cases") {
  auto s = segment();
  // Closed values, face body inside the edge body: l.s.c. but not open.
  ConvexCellRelation lsc(s, 1, {closed_interval(0, 1), closed_interval(0, 2), closed_interval(1, 2)});
  CHECK(is_lsc_relation(lsc).holds);
  CHECK(oracle_lsc(lsc, kSampler).holds);

  ConvexCellRelation bad(s, 1, {closed_interval(0, 3), closed_interval(0, 1), closed_interval(0, 1)});
  CHECK_FALSE(is_lsc_relation(bad).holds);
  auto w = oracle_lsc(bad, kSampler);
  REQUIRE_FALSE(w.holds);
  CHECK(distance(bad[w.witness->coface], w.witness->y) >= w.witness->radius);

  // (0,1) on the vertex, [0,1] on the edge: l.s.c. through the closure.
  ConvexCellRelation mixed(s, 1, {open_interval(0, 1), closed_interval(0, 1), closed_interval(0, 1)});
  CHECK(is_lsc_relation(mixed).holds);
  CHECK(oracle_lsc(mixed, kSampler).holds);
}

TEST_CASE("check_selection") {
  auto s = segment();
  ConvexCellRelation phi(s, 1, {open_interval(0, 1), open_interval(-1, 2), open_interval(0, 1)});
  auto sel = select_pou(phi);
  auto rep = check_selection(sel.map, sel.refinement, phi);
  CHECK(rep.passed());

  PLMap five(s, 1, {{q(5)}, {q(5)}});
  auto bad = check_selection(five, identity_refinement(s), phi);
  CHECK_FALSE(bad.passed());
  CHECK(bad.checks.back().witness.find("cell 0") != std::string::npos);

  ScalarCellField xi(s, {0, -1, 0}), eta(s, {2, 3, 1});
  auto ins = insert(xi, eta);
  CHECK(check_selection(ins.map, ins.refinement, from_bounds(xi, eta)).passed());

  auto t = triangle();
  PLMap other(t, 1, {{q(0)}, {q(0)}, {q(0)}});
  CHECK_THROWS_AS(check_selection(other, identity_refinement(t), phi), Error);
}

TEST_CASE("check_selection with a tolerance on closed values") {
  auto s = segment();
  ConvexCellRelation phi(s, 1, {closed_interval(0, 1), closed_interval(0, 1), closed_interval(0, 1)});
  PLMap near(s, 1, {{q(33, 32)}, {q(1, 2)}});
  CHECK_FALSE(check_selection(near, identity_refinement(s), phi).passed());
  auto rep = check_selection(near, identity_refinement(s), phi, q(1, 32));
  CHECK(rep.passed());
  CHECK(rep.checks.back().metrics.at("max_distance") == "1/32");
}

TEST_CASE("check_pou") {
  auto s = segment();
  IndexedCover two(s, {open_star(*s, std::vector<CellId>{0}), OpenCellSet(*s, CellSet::all(3))});
  auto pou = pou_from_cover(two);
  CHECK(check_pou(pou, two).passed());

  auto tampered = pou;
  auto values = tampered.functions[0].values();
  values.back() = {q(1, 2)};
  tampered.functions[0] = PLMap(tampered.functions[0].complex(), 1, values);
  CHECK_FALSE(check_pou(tampered, two).passed());

  IndexedCover single(s, {OpenCellSet(*s, CellSet::all(3))});
  CHECK(check_pou(pou_from_cover(single), single).passed());
}

TEST_CASE("check_refinement") {
  auto s = segment();
  IndexedCover omega(s, {open_star(*s, std::vector<CellId>{0}), OpenCellSet(*s, CellSet::all(3))});
  auto r = refine_countable(omega);
  CHECK(check_refinement(r.phi, r.omega_fine, r.order_bound).passed());

  auto self = check_refinement(omega, omega);
  CHECK(self.passed());
  CHECK(self.checks.back().metrics.at("order") == std::to_string(omega.order()));

  std::vector<OpenCellSet> dropped{omega.members[0], OpenCellSet(*s, CellSet(3))};
  auto rep = check_refinement(dropped, omega);
  CHECK_FALSE(rep.passed());
  CHECK_FALSE(rep.checks[1].passed);

  IndexedCover one(s, {OpenCellSet(*s, CellSet::all(3))});
  CHECK_THROWS_AS(check_refinement(one, omega), Error);
}

TEST_CASE("check_insertion") {
  auto s = segment();
  ScalarCellField xi(s, {0, -1, 0}), eta(s, {2, 3, 1});
  auto ins = insert(xi, eta);
  CHECK(check_insertion(ins.map, ins.refinement, xi, eta, kSampler).passed());

  PLMap at_xi(s, 1, {{q(0)}, {q(0)}});
  CHECK_FALSE(check_insertion(at_xi, identity_refinement(s), xi, eta, kSampler).passed());

  ScalarCellField lo(s, {1, 1, 1}), hi(s, {2, 2, 2});
  auto mid = insert(lo, hi);
  CHECK(mid.map.at(0) == Vec{q(3, 2)});
  CHECK(check_insertion(mid.map, mid.refinement, lo, hi, kSampler).passed());
}

TEST_CASE("equivalence suite") {
  SuiteOptions opts;
  opts.seed = 11;
  opts.instances = 4;
  opts.samples = 50;
  auto rep = equivalence_suite(opts);
  CHECK_MESSAGE(rep.passed(), rep.to_text());
  CHECK(equivalence_suite(opts).to_json() == rep.to_json());

  opts.adversarial = true;
  auto adv = equivalence_suite(opts);
  CHECK(adv.passed());
  CHECK(adv.checks[0].metrics.at("lsc_false") != "0");

  opts.instances = 0;
  CHECK(equivalence_suite(opts).passed());
}

TEST_CASE("report rendering") {
  Report r{"demo", {}, {}};
  r.add({"a", true, Strength::Exact, "", {{"n", "3"}}});
  r.add({"b", false, Strength::Sampled, "cell 0-1", {}});
  r.timings.emplace_back("a", 0.5);
  CHECK_FALSE(r.passed());
  CHECK(r.to_json().find("\"passed\": false") != std::string::npos);
  CHECK(r.to_json().find("0.5") == std::string::npos);
  CHECK(r.to_text().find("FAIL b [sampled]") != std::string::npos);
  CHECK(r.to_text(true).find("time a") != std::string::npos);
}
