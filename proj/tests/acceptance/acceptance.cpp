// Acceptance run: one PASS/FAIL line per criterion. Every criterion draws its
// instances from a seeded Rng; the seed comes from argv[1], SELECTRA_SEED or
// defaults to 1. Exit status is 0 iff every line is PASS.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "selectra/errors.hpp"
#include "selectra/generators.hpp"
#include "selectra/io.hpp"
#include "selectra/verification.hpp"

using namespace selectra;

namespace {

// Wall-clock limits, in seconds.
constexpr double kLimitOracle = 60, kLimitFatten = 30, kLimitInsert = 120, kLimitBounds = 30, kLimitPou = 60,
                 kLimitMichael = 300, kLimitExtend = 60, kLimitRefine = 60, kLimitLift = 60;

// Instance counts and sizes.
constexpr std::size_t kOracleInstances = 50, kOracleCells = 200, kOracleSamples = 200;
constexpr std::size_t kFattenInstances = 50, kInsertInstances = 100, kInsertCells = 500;
constexpr std::size_t kBoundsInstances = 50, kPouInstances = 50, kMichaelInstances = 25;
constexpr std::size_t kExtendInstances = 25, kRefineInstances = 50, kLiftInstances = 5, kLiftPoints = 1000;
constexpr int kMichaelDepth = 12;
const Rational kMichaelTol = make_rational(1, 64);

struct Outcome {
  Report report;
  std::string outputs;  // serialized engine outputs, compared byte for byte on rerun
};

struct Criterion {
  int id;
  std::string name;
  double limit;
  std::function<Outcome(std::uint64_t)> run;
};

std::string str(std::size_t v) { return std::to_string(v); }

CheckResult check(const std::string& name, Strength s = Strength::Exact) { return {name, true, s, {}, {}}; }

void fail(CheckResult& c, const std::string& why) {
  if (!c.passed) return;
  c.passed = false;
  c.witness = why;
}

BodyKind pick_kind(Rng& rng, std::size_t n, bool allow_h) {
  std::vector<BodyKind> kinds{BodyKind::Box, BodyKind::VPolytope};
  if (n == 1) kinds.push_back(BodyKind::Interval);
  if (allow_h) kinds.push_back(BodyKind::HPolytope);
  return rng.pick(kinds);
}

std::string first_witness(const Report& r) {
  for (const auto& c : r.checks) {
    if (!c.passed) return c.name + ": " + c.witness;
  }
  return {};
}

std::string selection_bytes(const Selection& s) {
  nlohmann::json j = selection_to_json("phi", s.map);
  j["refinement"] = refinement_to_json(s.refinement);
  j["certificate"] = certificate_to_json(*s.refinement.fine, *s.refinement.coarse, s.certificate);
  return j.dump() + "\n";
}

Rational ceil_of(const Rational& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(q);
}

// 1. Classifiers against the oracles.
Outcome classifier_oracle(std::uint64_t seed) {
  Rng rng(seed * 1000 + 1);
  auto agree = check("verdicts agree", Strength::Sampled);
  auto exact = check("no exact-witness contradictions");
  std::size_t open_true = 0, lsc_true = 0, pairs = 0, inconclusive = 0, witnesses = 0, rejected = 0;
  std::string out;
  for (std::size_t i = 0; i < kOracleInstances; ++i) {
    const auto k = random_complex(rng, 2, kOracleCells);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 2));
    ConvexCellRelation phi;
    switch (i % 3) {
      case 0: phi = random_open_relation(rng, k, n, pick_kind(rng, n, true)); break;
      case 1: phi = perturb_relation(rng, random_open_relation(rng, k, n, pick_kind(rng, n, true))); break;
      default: {
        phi = random_closed_relation(rng, k, n, pick_kind(rng, n, false));
        if (rng.coin()) phi = perturb_relation(rng, phi);
      }
    }
    const Sampler sampler{seed * 1000 + i, kOracleSamples, 10};
    // The openness classifier only accepts open forms; a closed-form relation
    // is rejected outright, which counts as "not open".
    const bool open_form = std::all_of(phi.bodies.begin(), phi.bodies.end(),
                                       [](const ConvexBody& b) { return b.is_open(); });
    const Verdict open = open_form ? is_open_relation(phi) : Verdict{false, std::nullopt};
    rejected += !open_form;
    const auto lsc = is_lsc_relation(phi);
    const auto o_open = oracle_open(phi, sampler);
    const auto o_lsc = oracle_lsc(phi, sampler);
    open_true += open.holds;
    lsc_true += lsc.holds;
    pairs += o_open.pairs_tested + o_lsc.pairs_tested;
    inconclusive += o_open.inconclusive + o_lsc.inconclusive;
    const std::string tag = "instance " + str(i) + ": ";
    if (open.holds != o_open.holds || lsc.holds != o_lsc.holds) {
      fail(agree, tag + "classifier open=" + str(open.holds) + " lsc=" + str(lsc.holds) +
                      ", oracle open=" + str(o_open.holds) + " lsc=" + str(o_lsc.holds));
    }
    // An oracle witness is a proof of failure; so is a classifier witness
    // that survives exact membership tests.
    if (open.holds && o_open.witness) fail(exact, tag + "oracle refutes openness the classifier accepted");
    if (lsc.holds && o_lsc.witness) fail(exact, tag + "oracle refutes l.s.c. the classifier accepted");
    for (const auto* v : {&open, &lsc}) {
      if (v->holds || !v->witness) continue;
      ++witnesses;
      const auto& w = *v->witness;
      if (!w.point || !k->is_face(w.face, w.coface) || !contains(phi[w.face], *w.point)) {
        fail(exact, tag + "classifier witness is not a face value");
        continue;
      }
      const bool escapes = v == &open ? !contains(phi[w.coface], *w.point) : distance(phi[w.coface], *w.point) > 0;
      if (!escapes) fail(exact, tag + "classifier witness stays in the coface");
    }
    out += str(i) + " " + str(open.holds) + str(lsc.holds) + str(o_open.holds) + str(o_lsc.holds) + "\n";
  }
  agree.metrics = {{"instances", str(kOracleInstances)}, {"open_true", str(open_true)},
                   {"lsc_true", str(lsc_true)},          {"pairs", str(pairs)},
                   {"inconclusive", str(inconclusive)}, {"closed_form", str(rejected)}};
  exact.metrics = {{"classifier_witnesses", str(witnesses)}};
  Report r{"classifier oracle agreement", {}, {}};
  r.add(agree);
  r.add(exact);
  return {r, out};
}

// 2. is_lsc(Φ) ⟺ is_open(O_ε[Φ]).
Outcome fattening(std::uint64_t seed) {
  Rng rng(seed * 1000 + 2);
  auto forward = check("l.s.c. implies open fattening");
  auto backward = check("open fattening implies l.s.c.");
  std::size_t lsc_true = 0, lsc_false = 0;
  std::string out;
  for (std::size_t i = 0; i < kFattenInstances; ++i) {
    const auto k = random_complex(rng, 2, 100);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 2));
    auto phi = i % 2 ? random_open_relation(rng, k, n, pick_kind(rng, n, false))
                     : random_closed_relation(rng, k, n, pick_kind(rng, n, false));
    if (rng.coin()) phi = perturb_relation(rng, phi);
    const bool lsc = is_lsc_relation(phi).holds;
    (lsc ? lsc_true : lsc_false)++;
    for (const Rational& eps : {Rational(1), make_rational(1, 2), make_rational(1, 3)}) {
      const bool open = is_open_relation(fatten(phi, eps, true)).holds;
      const std::string tag = "instance " + str(i) + " eps=" + format_rational(eps);
      if (lsc && !open) fail(forward, tag + ": fattening is not open");
      if (open && !lsc) fail(backward, tag + ": fattening is open but the relation is not l.s.c.");
      out += str(i) + " " + format_rational(eps) + " " + str(lsc) + str(open) + "\n";
    }
  }
  // Both directions must actually be exercised.
  if (lsc_true == 0) fail(forward, "no l.s.c. instance drawn");
  if (lsc_false == 0) fail(backward, "no non-l.s.c. instance drawn");
  forward.metrics = {{"instances", str(lsc_true)}};
  backward.metrics = {{"instances", str(lsc_false)}};
  Report r{"fattening equivalence", {}, {}};
  r.add(forward);
  r.add(backward);
  return {r, out};
}

// 3. Strict PL insertion between random envelopes.
Outcome insertion(std::uint64_t seed) {
  Rng rng(seed * 1000 + 3);
  auto certified = check("certified strict insertion");
  auto sampled = check("sampled carriers", Strength::Sampled);
  std::size_t max_cells = 0;
  ExtRational min_margin = ExtRational::pos_inf();
  std::string out;
  for (std::size_t i = 0; i < kInsertInstances; ++i) {
    const auto k = random_complex(rng, 3, kInsertCells);
    max_cells = std::max(max_cells, k->num_cells());
    const auto [xi, eta] = random_envelopes(rng, k, true);
    const auto sel = insert(xi, eta);
    const std::string tag = "instance " + str(i) + ": ";
    if (k->num_cells() > kInsertCells) fail(certified, tag + "complex too large");
    if (!sel.certificate.valid) fail(certified, tag + "certificate invalid");
    for (const auto& c : sel.certificate.cells) {
      if (!(c.margin > ExtRational(0))) fail(certified, tag + "zero margin on " + sel.map.complex()->cell_name(c.cell));
      min_margin = std::min(min_margin, c.margin);
    }
    const auto chk = check_insertion(sel.map, sel.refinement, xi, eta, Sampler{seed * 1000 + i, 100, 10});
    for (const auto& c : chk.checks) {
      if (!c.passed) fail(c.strength == Strength::Exact ? certified : sampled, tag + c.name + ": " + c.witness);
    }
    out += selection_bytes(sel);
  }
  certified.metrics = {{"instances", str(kInsertInstances)}, {"max_cells", str(max_cells)},
                       {"min_margin", format_ext(min_margin)}};
  Report r{"insertion", {}, {}};
  r.add(certified);
  r.add(sampled);
  return {r, out};
}

// 4. from_bounds / bounds_of round trip and insertion as selection.
Outcome bounds(std::uint64_t seed) {
  Rng rng(seed * 1000 + 4);
  auto trip = check("bounds round trip");
  auto select = check("insertion selects the interval relation");
  std::string out;
  for (std::size_t i = 0; i < kBoundsInstances; ++i) {
    const auto k = random_complex(rng, 2, 100);
    const auto phi = random_open_relation(rng, k, 1, BodyKind::Interval);
    const auto [xi, eta] = bounds_of(phi);
    const std::string tag = "instance " + str(i) + ": ";
    if (!(from_bounds(xi, eta) == phi)) fail(trip, tag + "from_bounds(bounds_of(phi)) != phi");
    const auto [lo, hi] = bounds_of(from_bounds(xi, eta));
    if (!(lo == xi && hi == eta)) fail(trip, tag + "bounds_of(from_bounds(xi, eta)) != (xi, eta)");
    const auto sel = insert(xi, eta);
    const auto chk = check_selection(sel.map, sel.refinement, phi);
    if (!chk.passed()) fail(select, tag + first_witness(chk));
    out += selection_bytes(sel);
  }
  trip.metrics = {{"instances", str(kBoundsInstances)}};
  Report r{"insertion and selection", {}, {}};
  r.add(trip);
  r.add(select);
  return {r, out};
}

// 5. select_pou on open convex relations.
Outcome pou_selection(std::uint64_t seed) {
  Rng rng(seed * 1000 + 5);
  auto res = check("certified strict selection");
  std::map<std::string, std::size_t> kinds;
  ExtRational min_margin = ExtRational::pos_inf();
  std::string out;
  for (std::size_t i = 0; i < kPouInstances; ++i) {
    const auto k = random_complex(rng, 2, 100);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    const BodyKind kind = pick_kind(rng, n, false);
    const auto phi = random_open_relation(rng, k, n, kind);
    kinds[kind == BodyKind::Interval ? "interval" : kind == BodyKind::Box ? "box" : "vpolytope"]++;
    const auto sel = select_pou(phi);
    const auto chk = check_selection(sel.map, sel.refinement, phi);
    const std::string tag = "instance " + str(i) + ": ";
    if (!chk.passed()) fail(res, tag + first_witness(chk));
    if (!(sel.certificate.min_margin > ExtRational(0))) fail(res, tag + "margin not strict");
    min_margin = std::min(min_margin, sel.certificate.min_margin);
    out += selection_bytes(sel);
  }
  res.metrics = {{"instances", str(kPouInstances)}, {"min_margin", format_ext(min_margin)}};
  for (const auto& [name, count] : kinds) res.metrics["kind_" + name] = str(count);
  Report r{"partition of unity selection", {}, {}};
  r.add(res);
  return {r, out};
}

// 6. Successive approximation on closed convex l.s.c. relations.
Outcome michael(std::uint64_t seed) {
  Rng rng(seed * 1000 + 6);
  auto steps = check("step bounds");
  auto final_check = check("final distance within tolerance");
  std::size_t total_steps = 0;
  int max_subdivisions = 0;
  std::string out;
  for (std::size_t i = 0; i < kMichaelInstances; ++i) {
    const auto k = random_complex(rng, 2, 80);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto phi = random_closed_relation(rng, k, n, pick_kind(rng, n, false));
    const std::string tag = "instance " + str(i) + ": ";
    if (!is_lsc_relation(phi)) {
      fail(final_check, tag + "generator produced a non-l.s.c. relation");
      continue;
    }
    try {
      const auto res = select_michael(phi, kMichaelTol, kMichaelDepth);
      for (const auto& s : res.trace) {
        ++total_steps;
        max_subdivisions = std::max(max_subdivisions, s.subdivisions);
        if (s.step_norm > s.bound) {
          fail(steps, tag + "step " + std::to_string(s.n) + " norm " + format_rational(s.step_norm) + " > " +
                          format_rational(s.bound));
        }
      }
      const auto chk = check_selection(res.selection.map, res.selection.refinement, phi, kMichaelTol);
      if (!chk.passed()) fail(final_check, tag + first_witness(chk));
      out += selection_bytes(res.selection);
    } catch (const Error& e) {
      fail(final_check, tag + e.what());
    }
  }
  steps.metrics = {{"steps", str(total_steps)}, {"max_subdivisions", std::to_string(max_subdivisions)}};
  final_check.metrics = {{"instances", str(kMichaelInstances)}, {"tolerance", format_rational(kMichaelTol)}};
  Report r{"michael iteration", {}, {}};
  r.add(steps);
  r.add(final_check);
  return {r, out};
}

// 7. Extension of a selection given on a subcomplex.
Outcome extension(std::uint64_t seed) {
  Rng rng(seed * 1000 + 7);
  auto on_a = check("restriction to A equals g");
  auto global = check("certified global selection");
  std::size_t compared = 0;
  std::string out;
  for (std::size_t i = 0; i < kExtendInstances; ++i) {
    const auto k = random_complex(rng, 2, 100);
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 2));
    const auto phi = random_open_relation(rng, k, n, pick_kind(rng, n, false));
    const auto a = random_subcomplex(rng, *k);
    const auto g = random_vertex_selection(rng, phi, a);
    const std::string tag = "instance " + str(i) + ": ";
    try {
      const auto sel = extend_selection(phi, a, g);
      // Every fine vertex lying in |A| must carry the affine interpolation of g.
      const auto& fine = *sel.refinement.fine;
      for (VertexId v = 0; v < fine.num_vertices(); ++v) {
        const auto c = carrier(*k, fine.vertex(v));
        if (!a.contains(c.cell)) continue;
        Vec expect(phi.dim);
        const Cell& cell = k->cell(c.cell);
        for (std::size_t j = 0; j < cell.size(); ++j) expect = expect + c.barycentric[j] * g.at(cell[j]);
        ++compared;
        if (sel.map.at(v) != expect) {
          fail(on_a, tag + "vertex " + str(v) + " has " + format_vec(sel.map.at(v)) + ", g gives " +
                         format_vec(expect));
        }
      }
      const auto chk = check_selection(sel.map, sel.refinement, phi);
      if (!chk.passed()) fail(global, tag + first_witness(chk));
      out += selection_bytes(sel);
    } catch (const Error& e) {
      fail(global, tag + e.what());
    }
  }
  on_a.metrics = {{"vertices_compared", str(compared)}};
  global.metrics = {{"instances", str(kExtendInstances)}};
  Report r{"extension", {}, {}};
  r.add(on_a);
  r.add(global);
  return {r, out};
}

// 8. Refinements of increasing covers.
Outcome refinement(std::uint64_t seed) {
  Rng rng(seed * 1000 + 8);
  Report r{"refinement extraction", {}, {}};
  std::string out;
  for (const bool c0 : {false, true}) {
    auto res = check(c0 ? "refine_c0" : "refine_countable");
    std::size_t max_order = 0, max_bound = 0;
    for (std::size_t i = 0; i < kRefineInstances; ++i) {
      const auto k = random_complex(rng, 2, 100);
      const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 5));
      const auto omega = random_increasing_cover(rng, k, m);
      const auto cr = c0 ? refine_c0(omega) : refine_countable(omega);
      const std::string tag = "instance " + str(i) + ": ";
      const auto chk = check_refinement(cr.phi, cr.omega_fine, cr.order_bound);
      if (!chk.passed()) fail(res, tag + first_witness(chk));
      if (!c0) {
        Rational top(0);
        for (VertexId v = 0; v < cr.f.complex()->num_vertices(); ++v) top = std::max(top, scalar_at(cr.f, v));
        if (Rational(static_cast<long>(cr.order_bound)) > ceil_of(top)) {
          fail(res, tag + "order bound " + str(cr.order_bound) + " exceeds ceil(max f) = " +
                        format_rational(ceil_of(top)));
        }
      }
      for (const auto& c : chk.checks) {
        if (auto it = c.metrics.find("order"); it != c.metrics.end()) {
          max_order = std::max<std::size_t>(max_order, std::stoul(it->second));
        }
      }
      max_bound = std::max(max_bound, cr.order_bound);
      out += cover_to_json(cr.phi).dump() + "\n";
    }
    res.metrics = {{"instances", str(kRefineInstances)}, {"max_order", str(max_order)},
                   {"max_bound", str(max_bound)}};
    r.add(res);
  }
  return {r, out};
}

ComplexPtr triangle() {
  const Rational z(0), o(1);
  return build_complex({{z, z}, {o, z}, {z, o}}, {{0, 1, 2}});
}

// Cells of K×L whose left and right vertex sets span cells of a and b.
CellSet sub_product(const ProductComplex& pc, const CellSet& a, const CellSet& b) {
  const auto& k = *pc.product;
  const std::size_t nr = pc.right->num_vertices();
  CellSet out(k.num_cells());
  for (CellId c = 0; c < k.num_cells(); ++c) {
    Cell l, r;
    for (VertexId v : k.cell(c)) {
      l.push_back(static_cast<VertexId>(v / nr));
      r.push_back(static_cast<VertexId>(v % nr));
    }
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    const auto lc = pc.left->find(l), rc = pc.right->find(r);
    if (lc && rc && a.contains(*lc) && b.contains(*rc)) out.insert(c);
  }
  return out;
}

// 9. Lifting through products and separation of sub-products.
Outcome lifting(std::uint64_t seed) {
  Rng rng(seed * 1000 + 9);
  auto lift = check("certified lifted selection");
  auto eval = check("curried evaluator consistency");
  auto sep = check("separation of disjoint sub-products");
  std::size_t points = 0;
  std::string out;
  for (const bool tri : {false, true}) {
    for (std::size_t i = 0; i < kLiftInstances; ++i) {
      const auto left = tri ? triangle() : path_complex(static_cast<std::size_t>(rng.uniform(1, 3)));
      const auto right = path_complex(static_cast<std::size_t>(rng.uniform(1, 3)));
      const auto pc = product_complex(left, right);
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 2));
      const auto phi = random_open_relation(rng, pc.product, n, pick_kind(rng, n, true));
      const std::string tag = std::string(tri ? "triangle" : "segment") + " x segment " + str(i) + ": ";
      const auto cs = lift_product(pc, phi);
      const auto chk = check_selection(cs.selection.map, cs.selection.refinement, phi);
      if (!chk.passed()) fail(lift, tag + first_witness(chk));

      const std::size_t per = kLiftPoints / kLiftInstances;
      const auto xs = Sampler{seed * 1000 + i, per, 10}.base_points(*left);
      const auto ys = Sampler{seed * 1000 + i + 500, per, 10}.base_points(*right);
      for (std::size_t p = 0; p < per; ++p) {
        const Vec& x = xs[xs.size() - per + p];
        const Vec& y = ys[ys.size() - 1 - p];
        Vec xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        const Vec direct = eval_pl(cs.selection.map, xy);
        ++points;
        if (cs.evaluate(x, y) != direct || cs.curry(x)(y) != direct) {
          fail(eval, tag + "mismatch at x=" + format_vec(x) + " y=" + format_vec(y));
        }
      }

      // A = {v}×A₂ and B = (cells avoiding v)×B₂ are disjoint closed sub-products.
      const VertexId v = static_cast<VertexId>(rng.uniform(0, static_cast<long>(left->num_vertices()) - 1));
      CellSet a1(left->num_cells()), b1(left->num_cells());
      a1.insert(left->vertex_cell(v));
      for (CellId c = 0; c < left->num_cells(); ++c) {
        const Cell& cell = left->cell(c);
        if (std::find(cell.begin(), cell.end(), v) == cell.end()) b1.insert(c);
      }
      const auto a = sub_product(pc, a1, random_subcomplex(rng, *right));
      const auto b = sub_product(pc, b1, random_subcomplex(rng, *right));
      const auto s = separate_sets(pc.product, a, b);
      const auto sc = check_selection(s.map, s.refinement, separation_gadget(pc.product, a, b));
      if (!sc.passed()) fail(sep, tag + first_witness(sc));
      const auto& k = *pc.product;
      for (VertexId w = 0; w < k.num_vertices(); ++w) {
        const Rational y = s.map.at(w)[0];
        if (a.contains(k.vertex_cell(w)) && y > -1) fail(sep, tag + "f > -1 at A vertex " + str(w));
        if (b.contains(k.vertex_cell(w)) && y < 1) fail(sep, tag + "f < 1 at B vertex " + str(w));
      }
      out += selection_bytes(cs.selection) + format_rational(cs.modulus) + "\n" + selection_bytes(s);
    }
  }
  lift.metrics = {{"instances", str(2 * kLiftInstances)}};
  eval.metrics = {{"points", str(points)}};
  Report r{"product lifting", {}, {}};
  r.add(lift);
  r.add(eval);
  r.add(sep);
  return {r, out};
}

std::uint64_t seed_from(int argc, char** argv) {
  const char* s = argc > 1 ? argv[1] : std::getenv("SELECTRA_SEED");
  if (!s || !*s) return 1;
  char* end = nullptr;
  const auto v = std::strtoull(s, &end, 10);
  if (*end) {
    std::fprintf(stderr, "seed is not an unsigned integer: %s\n", s);
    std::exit(2);
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = seed_from(argc, argv);
  const std::vector<Criterion> criteria{
      {1, "classifier-oracle agreement", kLimitOracle, classifier_oracle},
      {2, "fattening equivalence", kLimitFatten, fattening},
      {3, "strict insertion", kLimitInsert, insertion},
      {4, "insertion and selection", kLimitBounds, bounds},
      {5, "partition of unity selection", kLimitPou, pou_selection},
      {6, "michael iteration", kLimitMichael, michael},
      {7, "extension from a subcomplex", kLimitExtend, extension},
      {8, "refinement extraction", kLimitRefine, refinement},
      {9, "product lifting and separation", kLimitLift, lifting},
  };
  using clock = std::chrono::steady_clock;
  bool all = true;
  std::vector<std::string> first_bytes;
  for (const auto& c : criteria) {
    const auto t0 = clock::now();
    Outcome o;
    std::string error;
    try {
      o = c.run(seed);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    const bool ok = error.empty() && o.report.passed() && secs < c.limit;
    all = all && ok;
    first_bytes.push_back(o.report.to_json() + o.outputs);
    std::printf("%s %2d %s time=%.2fs limit=%.0fs\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, c.limit);
    for (const auto& chk : o.report.checks) {
      std::printf("        %s %s", chk.passed ? "ok  " : "FAIL", chk.name.c_str());
      for (const auto& [key, val] : chk.metrics) std::printf(" %s=%s", key.c_str(), val.c_str());
      if (!chk.passed) std::printf(" | %s", chk.witness.c_str());
      std::printf("\n");
    }
    if (!error.empty()) std::printf("        error: %s\n", error.c_str());
    if (secs >= c.limit) std::printf("        over the time limit\n");
    std::fflush(stdout);
  }

  // 10. Same seed, same bytes.
  std::size_t differing = 0;
  std::string which;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run(seed);
    } catch (const std::exception&) {
    }
    if (o.report.to_json() + o.outputs != first_bytes[i]) {
      ++differing;
      which += " " + std::to_string(criteria[i].id);
    }
  }
  const bool det = differing == 0;
  all = all && det;
  std::printf("%s 10 determinism reruns=%zu differing=%zu%s\n", det ? "PASS" : "FAIL", criteria.size(), differing,
              which.c_str());
  std::printf("seed=%llu %s\n", static_cast<unsigned long long>(seed), all ? "ALL PASS" : "SOME FAILED");
  return all ? 0 : 1;
}
