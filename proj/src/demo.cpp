#include "selectra/demo.hpp"

#include "selectra/errors.hpp"

namespace selectra {

namespace {

Rational r(long p, long q = 1) { return make_rational(p, q); }

ComplexPtr unit_segment() { return build_complex({{r(0)}, {r(1)}}, {{0, 1}}); }

ComplexPtr unit_triangle() { return build_complex({{r(0), r(0)}, {r(1), r(0)}, {r(0), r(1)}}, {{0, 1, 2}}); }

void add_all(Report& out, const std::string& prefix, const Report& part) {
  for (auto c : part.checks) {
    c.name = prefix + ": " + c.name;
    out.add(std::move(c));
  }
}

}  // namespace

Report run_demo() {
  Report out{"demo", {}, {}};
  const Sampler sampler{1, 200, 10};
  const auto seg = unit_segment();
  const auto tri = unit_triangle();

  // Insertion between a jump from above and a jump from below.
  {
    ScalarCellField xi(seg, {ExtRational(r(1, 2)), ExtRational(r(0)), ExtRational(r(0))});
    ScalarCellField eta(seg, {ExtRational(r(1)), ExtRational(r(2)), ExtRational(r(3, 2))});
    const auto sel = insert(xi, eta);
    add_all(out, "insert", check_insertion(sel.map, sel.refinement, xi, eta, sampler));
  }
  // POU selection of nested open boxes over a triangle.
  {
    std::vector<ConvexBody> bodies;
    for (CellId c = 0; c < tri->num_cells(); ++c) {
      const Rational w = r(tri->cell_dim(c) + 1, 2);
      bodies.push_back(open_box({-w, -w}, {w, w}));
    }
    const ConvexCellRelation phi(tri, 2, bodies);
    const auto sel = select_pou(phi);
    add_all(out, "select", check_selection(sel.map, sel.refinement, phi));
  }
  // Successive approximation for the closed triangle relation P(σ) = σ.
  {
    std::vector<ConvexBody> bodies;
    for (CellId c = 0; c < tri->num_cells(); ++c) {
      std::vector<Vec> pts;
      for (VertexId v : tri->cell(c)) pts.push_back(tri->vertex(v));
      bodies.push_back(closed_vpolytope(pts));
    }
    const ConvexCellRelation phi(tri, 2, bodies);
    const Rational tol = pow2(-6);
    const auto m = select_michael(phi, tol);
    add_all(out, "michael", check_selection(m.selection.map, m.selection.refinement, phi, tol));
    CheckResult steps{"michael: step bounds", true, Strength::Exact, {}, {}};
    for (const auto& st : m.trace) {
      if (st.step_norm > st.bound && steps.passed) {
        steps.passed = false;
        steps.witness = "step " + std::to_string(st.n) + " norm " + format_rational(st.step_norm);
      }
    }
    steps.metrics["steps"] = std::to_string(m.trace.size());
    out.add(std::move(steps));
  }
  // Extension of a value given at one end of the segment.
  {
    const ConvexCellRelation phi(seg, 1, {open_interval(0, 1), open_interval(-1, 5), open_interval(3, 4)});
    const CellSet a = CellSet::of(seg->num_cells(), std::vector<CellId>{0});
    const auto e = extend_selection(phi, a, {{0, {r(1, 2)}}});
    add_all(out, "extend", check_selection(e.map, e.refinement, phi));
    CheckResult on_a{"extend: agrees on A", eval_pl(e.map, {r(0)}) == Vec{r(1, 2)}, Strength::Exact, {}, {}};
    if (!on_a.passed) on_a.witness = "value at 0 is " + format_vec(eval_pl(e.map, {r(0)}));
    out.add(std::move(on_a));
  }
  // Partition of unity and both cover refinements for an increasing cover.
  {
    const auto low = open_star(*seg, std::vector<CellId>{2});
    const IndexedCover omega(seg, {low, low, OpenCellSet(*seg, CellSet::all(3))});
    add_all(out, "pou", check_pou(pou_from_cover(omega), omega));
    const auto rc = refine_countable(omega);
    add_all(out, "refine", check_refinement(rc.phi, rc.omega_fine, rc.order_bound));
    const auto r0 = refine_c0(omega);
    add_all(out, "refine-c0", check_refinement(r0.phi, r0.omega_fine, r0.order_bound));
  }
  // Product lifting on segment × segment and its curried evaluator.
  {
    const auto pc = product_complex(seg, seg);
    std::vector<ConvexBody> bodies;
    for (CellId c = 0; c < pc.product->num_cells(); ++c) {
      const Vec& p = pc.product->vertex(pc.product->cell(c)[0]);
      bodies.push_back(pc.product->cell_dim(c) == 0 ? open_interval(p[0] + p[1], p[0] + p[1] + 1)
                                                    : open_interval(-5, 5));
    }
    const ConvexCellRelation phi(pc.product, 1, bodies);
    const auto lifted = lift_product(pc, phi);
    add_all(out, "lift", check_selection(lifted.selection.map, lifted.selection.refinement, phi));
    CheckResult eval{"lift: curried evaluator", true, Strength::Exact, {}, {}};
    for (long i = 0; i <= 4 && eval.passed; ++i) {
      for (long j = 0; j <= 4; ++j) {
        const Vec x{r(i, 4)}, y{r(j, 4)};
        if (lifted.curry(x)(y) != eval_pl(lifted.selection.map, {x[0], y[0]})) {
          eval.passed = false;
          eval.witness = "(" + format_vec(x) + ", " + format_vec(y) + ")";
          break;
        }
      }
    }
    eval.metrics["modulus"] = format_rational(lifted.modulus);
    out.add(std::move(eval));
  }
  // Separation of the two endpoints.
  {
    const auto a = CellSet::of(3, std::vector<CellId>{0});
    const auto b = CellSet::of(3, std::vector<CellId>{2});
    const auto sel = separate_sets(seg, a, b);
    add_all(out, "separate", check_selection(sel.map, sel.refinement, separation_gadget(seg, a, b)));
  }
  // Fattening an l.s.c. closed relation gives an open one.
  {
    const ConvexCellRelation phi(seg, 1, {closed_interval(0, 1), closed_interval(0, 2), closed_interval(1, 2)});
    CheckResult fat{"fatten: l.s.c. to open", true, Strength::Exact, {}, {}};
    fat.passed = is_lsc_relation(phi).holds && is_open_relation(fatten(phi, r(1, 3), true)).holds;
    out.add(std::move(fat));
  }
  return out;
}

}  // namespace selectra
