#include "selectra/engines.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "selectra/errors.hpp"
#include "selectra/linalg.hpp"
#include "selectra/lp.hpp"

namespace selectra {

namespace {

std::string face_pair(const SimplicialComplex& k, const FaceViolation& w) {
  std::string out = k.cell_name(w.face) + " <= " + k.cell_name(w.coface);
  if (w.point) out += " at y=" + format_vec(*w.point);
  return out;
}

void require_open_relation(const ConvexCellRelation& phi) {
  const auto v = is_open_relation(phi);
  if (!v) throw Error(ErrorCode::NotOpenRelation, face_pair(*phi.complex, *v.witness));
}

}  // namespace

SelectionCertificate certify_selection(const PLMap& f, const Refinement& r, const ConvexCellRelation& phi,
                                       const Rational& tolerance) {
  if (r.coarse != phi.complex || f.complex() != r.fine) {
    throw Error(ErrorCode::MeshMismatch, "map is not defined on a refinement of the relation's complex");
  }
  if (f.target_dim() != phi.dim) throw Error(ErrorCode::MeshMismatch, "map and relation have different targets");
  SelectionCertificate cert;
  cert.tolerance = tolerance;
  std::map<std::pair<VertexId, CellId>, std::pair<ExtRational, Rational>> cache;
  const auto& fine = *r.fine;
  for (CellId c = 0; c < fine.num_cells(); ++c) {
    const CellId p = r.parent[c];
    const ConvexBody& body = phi[p];
    CellCertificate cc{c, p, body.is_open(), ExtRational::pos_inf(), Rational(0)};
    bool ok = true;
    for (VertexId v : fine.cell(c)) {
      auto it = cache.find({v, p});
      if (it == cache.end()) {
        std::pair<ExtRational, Rational> entry;
        if (body.is_open()) {
          const auto m = membership(body, f.at(v));
          entry.first = m.position == Position::Inside ? m.margin : ExtRational(0);
        } else {
          entry.second = distance(body, f.at(v));
        }
        it = cache.emplace(std::make_pair(v, p), entry).first;
      }
      if (body.is_open()) {
        cc.margin = min(cc.margin, it->second.first);
        ok = ok && it->second.first > ExtRational(0);
      } else {
        cc.distance = std::max(cc.distance, it->second.second);
        ok = ok && it->second.second <= tolerance;
      }
    }
    if (body.is_open()) {
      cert.min_margin = min(cert.min_margin, cc.margin);
    } else {
      cert.max_distance = std::max(cert.max_distance, cc.distance);
    }
    if (!ok && cert.valid) {
      cert.valid = false;
      cert.failing_cell = c;
    }
    cert.cells.push_back(std::move(cc));
  }
  return cert;
}

// ---------------------------------------------------------------------------

PartitionOfUnity pou_from_cover(const IndexedCover& omega) {
  const auto& k = *omega.complex;
  PartitionOfUnity pou;
  pou.refinement = barycentric_subdivide(omega.complex);
  const auto& fine = pou.refinement.fine;
  pou.assignment.resize(fine->num_vertices());
  for (VertexId v = 0; v < fine->num_vertices(); ++v) {
    // Fine vertex v is the barycenter of coarse cell v.
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < omega.size() && !idx; ++i) {
      if (omega.members[i].contains(v)) idx = i;
    }
    if (!idx) throw Error(ErrorCode::NotACover, "cell " + k.cell_name(v) + " is uncovered");
    pou.assignment[v] = *idx;
  }
  for (std::size_t i = 0; i < omega.size(); ++i) {
    std::vector<Rational> values(fine->num_vertices());
    for (VertexId v = 0; v < values.size(); ++v) values[v] = pou.assignment[v] == i ? 1 : 0;
    pou.functions.push_back(make_pl_function(fine, values));
  }
  return pou;
}

Selection select_pou(const ConvexCellRelation& phi) {
  require_open_relation(phi);
  const auto& k = *phi.complex;
  std::vector<Vec> values;
  for (VertexId v = 0; v < k.num_vertices(); ++v) {
    const ConvexBody& body = phi[k.vertex_cell(v)];
    Vec a = interior_point(body);
    if (membership(body, a).position != Position::Inside) {
      throw Error(ErrorCode::InfeasibleInteriorPoint, "no interior point for vertex " + std::to_string(v));
    }
    values.push_back(std::move(a));
  }
  Selection s;
  s.refinement = identity_refinement(phi.complex);
  s.map = PLMap(phi.complex, phi.dim, std::move(values));
  s.certificate = certify_selection(s.map, s.refinement, phi);
  return s;
}

Selection insert(const ScalarCellField& xi, const ScalarCellField& eta) {
  if (xi.complex != eta.complex) throw Error(ErrorCode::MeshMismatch, "bounds live on different complexes");
  const auto& k = *xi.complex;
  const auto cx = classify_scalar(xi);
  if (!cx.is_usc()) throw Error(ErrorCode::NotUSC, "xi fails at " + face_pair(k, *cx.usc.witness));
  const auto ce = classify_scalar(eta);
  if (!ce.is_lsc()) throw Error(ErrorCode::NotLSC, "eta fails at " + face_pair(k, *ce.lsc.witness));
  for (CellId c = 0; c < k.num_cells(); ++c) {
    if (!(xi[c] < eta[c])) {
      throw Error(ErrorCode::GapViolated, "cell " + k.cell_name(c) + ": xi=" + format_ext(xi[c]) +
                                              " eta=" + format_ext(eta[c]));
    }
  }
  const auto phi = from_bounds(xi, eta);
  std::vector<Vec> values;
  for (VertexId v = 0; v < k.num_vertices(); ++v) values.push_back(interior_point(phi[k.vertex_cell(v)]));
  Selection s;
  s.refinement = identity_refinement(xi.complex);
  s.map = PLMap(xi.complex, 1, std::move(values));
  s.certificate = certify_selection(s.map, s.refinement, phi);
  return s;
}

// ---------------------------------------------------------------------------

namespace {

// Point a with ‖a − f‖ ≤ step − s and dist(a, cl body) ≤ reach − s, s > 0,
// s ≤ cap; among those with the largest s, the one closest to f.
std::optional<Vec> michael_vertex(const Vec& f, const ConvexBody& body, const Rational& step,
                                  const Rational& reach, const Rational& cap) {
  const std::size_t n = f.size();
  std::vector<Vec> gens;
  Rational bump(0);
  const auto box = body.as<Box>();
  const auto interval = body.as<Interval>();
  if (auto v = body.as<ClosedVPolytope>()) {
    gens = v->vertices();
  } else if (auto fat = body.as<Fattened>()) {
    gens = fat->base.vertices();
    bump = fat->radius;
  } else if (!box && !interval) {
    throw Error(ErrorCode::UnsupportedForm, "unsupported body " + form_name(body));
  }
  // Layout: a (n), z (n), λ (|gens|), s, t.
  const std::size_t za = n, la = 2 * n, sa = 2 * n + gens.size(), ta = sa + 1, total = ta + 1;
  auto build = [&](std::optional<Rational> fixed_s) {
    lp::Problem p(total);
    for (std::size_t j = 0; j < gens.size(); ++j) p.set_nonnegative(la + j);
    for (std::size_t i = 0; i < n; ++i) {
      Vec r1(total), r2(total), r3(total), r4(total), r5(total), r6(total);
      r1[i] = 1, r1[sa] = 1;  // a − f + s ≤ step
      p.add_le(r1, f[i] + step);
      r2[i] = -1, r2[sa] = 1;
      p.add_le(r2, step - f[i]);
      r3[i] = 1, r3[za + i] = -1, r3[sa] = 1;  // a − z + s ≤ reach + bump
      p.add_le(r3, reach + bump);
      r4[i] = -1, r4[za + i] = 1, r4[sa] = 1;
      p.add_le(r4, reach + bump);
      r5[i] = 1, r5[ta] = -1;  // |a − f| ≤ t
      p.add_le(r5, f[i]);
      r6[i] = -1, r6[ta] = -1;
      p.add_le(r6, -f[i]);
    }
    if (!gens.empty()) {
      for (std::size_t i = 0; i < n; ++i) {
        Vec row(total);
        row[za + i] = 1;
        for (std::size_t j = 0; j < gens.size(); ++j) row[la + j] = -gens[j][i];
        p.add_eq(row, 0);
      }
      Vec sum(total);
      for (std::size_t j = 0; j < gens.size(); ++j) sum[la + j] = 1;
      p.add_eq(sum, 1);
    } else {
      const Box b = box ? *box : Box{{interval->lo}, {interval->hi}, interval->open};
      for (std::size_t i = 0; i < n; ++i) {
        if (b.lo[i].is_finite()) p.lower_bound(za + i, b.lo[i].value());
        if (b.hi[i].is_finite()) p.upper_bound(za + i, b.hi[i].value());
      }
    }
    if (fixed_s) {
      Vec row(total);
      row[sa] = 1;
      p.add_eq(row, *fixed_s);
    } else {
      p.upper_bound(sa, cap);
    }
    return p;
  };
  auto first = build(std::nullopt);
  Vec obj(total);
  obj[sa] = 1;
  first.maximize(obj);
  const auto s1 = first.solve();
  if (s1.status != lp::Status::Optimal || sgn(s1.objective) <= 0) return std::nullopt;
  auto second = build(s1.objective);
  Vec obj2(total);
  obj2[ta] = -1;
  second.maximize(obj2);
  const auto s2 = second.solve();
  if (s2.status != lp::Status::Optimal) return std::nullopt;
  return Vec(s2.x.begin(), s2.x.begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace

MichaelResult select_michael(const ConvexCellRelation& phi, const Rational& tol, int max_depth) {
  if (sgn(tol) <= 0) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  for (CellId c = 0; c < phi.bodies.size(); ++c) {
    if (phi[c].is_open()) {
      throw Error(ErrorCode::UnsupportedForm, "cell " + phi.complex->cell_name(c) + " carries an open body");
    }
  }
  const auto lsc = is_lsc_relation(phi);
  if (!lsc) throw Error(ErrorCode::NotLSCRelation, face_pair(*phi.complex, *lsc.witness));

  MichaelResult out;
  const auto first = select_pou(fatten(phi, Rational(1, 2), true));
  Refinement r = first.refinement;
  PLMap f = first.map;
  int n = 1;
  int depth = 0;
  while (pow2(-n) > tol) {
    const Rational step = pow2(-n);
    const Rational reach = pow2(-(n + 1));
    const Rational cap = pow2(-(n + 4));
    int subdivisions = 0;
    std::vector<Vec> next;
    for (;;) {
      next.clear();
      std::optional<VertexId> stuck;
      const auto& fine = *r.fine;
      for (VertexId v = 0; v < fine.num_vertices(); ++v) {
        const ConvexBody& body = phi[r.parent[fine.vertex_cell(v)]];
        auto a = michael_vertex(f.at(v), body, step, reach, cap);
        if (!a) {
          stuck = v;
          break;
        }
        next.push_back(std::move(*a));
      }
      if (!stuck) break;
      if (depth >= max_depth) {
        throw Error(ErrorCode::SubdivisionLimitExceeded,
                    "step " + std::to_string(n) + ": no admissible value at vertex " + std::to_string(*stuck) + " " +
                        format_vec(fine.vertex(*stuck)) + " after " + std::to_string(depth) + " subdivisions");
      }
      const auto sub = barycentric_subdivide(r.fine);
      f = transport(f, sub);
      r = compose(r, sub);
      ++depth;
      ++subdivisions;
    }
    PLMap g(r.fine, phi.dim, std::move(next));
    MichaelStep st{n, 0, pow2(-n + 1), 0, r.fine->num_vertices(), subdivisions};
    for (VertexId v = 0; v < r.fine->num_vertices(); ++v) {
      st.step_norm = std::max(st.step_norm, dist_inf(g.at(v), f.at(v)));
      st.distance = std::max(st.distance, distance(phi[r.parent[r.fine->vertex_cell(v)]], g.at(v)));
    }
    out.trace.push_back(st);
    f = std::move(g);
    ++n;
  }
  out.selection.refinement = r;
  out.selection.map = f;
  out.selection.certificate = certify_selection(f, r, phi, tol);
  return out;
}

// ---------------------------------------------------------------------------

Selection extend_selection(const ConvexCellRelation& phi, const CellSet& a, const std::map<VertexId, Vec>& g,
                           int max_depth) {
  require_open_relation(phi);
  const auto& k = *phi.complex;
  if (a.universe() != k.num_cells() || !is_downward_closed(k, a)) {
    throw Error(ErrorCode::InvalidArgument, "A must be a subcomplex");
  }
  std::vector<std::optional<Vec>> tilde(k.num_vertices());
  for (CellId c : a.ids()) {
    for (VertexId v : k.cell(c)) {
      auto it = g.find(v);
      if (it == g.end()) throw Error(ErrorCode::InvalidArgument, "g is missing vertex " + std::to_string(v));
      if (it->second.size() != phi.dim) throw Error(ErrorCode::InvalidArgument, "g has the wrong target dimension");
      tilde[v] = it->second;
    }
  }
  for (CellId c : a.ids()) {
    for (VertexId v : k.cell(c)) {
      if (membership(phi[c], *tilde[v]).position != Position::Inside) {
        throw Error(ErrorCode::NotASelectionOnA, "cell " + k.cell_name(c) + ": g(" + std::to_string(v) +
                                                     ")=" + format_vec(*tilde[v]) + " not in " + describe(phi[c]));
      }
    }
  }

  // Breadth-first averaging away from A.
  std::vector<VertexId> layer;
  for (VertexId v = 0; v < k.num_vertices(); ++v) {
    if (tilde[v]) layer.push_back(v);
  }
  while (!layer.empty()) {
    std::set<VertexId> frontier;
    for (VertexId v : layer) {
      for (VertexId w : k.neighbours(v)) {
        if (!tilde[w]) frontier.insert(w);
      }
    }
    std::vector<std::pair<VertexId, Vec>> assigned;
    for (VertexId w : frontier) {
      Vec sum(phi.dim);
      long count = 0;
      for (VertexId u : k.neighbours(w)) {
        if (tilde[u]) {
          sum = sum + *tilde[u];
          ++count;
        }
      }
      assigned.emplace_back(w, Rational(1, count) * sum);
    }
    layer.clear();
    for (auto& [w, val] : assigned) {
      tilde[w] = std::move(val);
      layer.push_back(w);
    }
  }
  std::vector<Vec> tv;
  for (auto& t : tilde) tv.push_back(t ? *t : Vec(phi.dim));
  PLMap gt(phi.complex, phi.dim, std::move(tv));

  // Refine until g̃ selects Φ on the open star of A.
  Refinement r = identity_refinement(phi.complex);
  PLMap gf = gt;
  for (int depth = 0;; ++depth) {
    const auto& fine = *r.fine;
    const CellSet a_fine = transport_cells(a, r);
    const auto star = open_star(fine, a_fine.ids());
    std::optional<CellId> bad;
    for (CellId c : star.ids()) {
      const ConvexBody& body = phi[r.parent[c]];
      for (VertexId v : fine.cell(c)) {
        if (membership(body, gf.at(v)).position != Position::Inside) bad = c;
      }
      if (bad) break;
    }
    if (!bad) break;
    if (depth >= max_depth) {
      throw Error(ErrorCode::SubdivisionLimitExceeded,
                  "extension not certified near A at cell " + fine.cell_name(*bad) + " after " +
                      std::to_string(depth) + " subdivisions");
    }
    const auto sub = barycentric_subdivide(r.fine);
    gf = transport(gf, sub);
    r = compose(r, sub);
  }
  // One more subdivision so that the support of the Urysohn function stays
  // inside the certified star.
  const auto sub = barycentric_subdivide(r.fine);
  gf = transport(gf, sub);
  r = compose(r, sub);

  const auto& fine = *r.fine;
  const CellSet a_fine = transport_cells(a, r);
  std::vector<bool> in_a(fine.num_vertices(), false);
  for (CellId c : a_fine.ids()) {
    for (VertexId v : fine.cell(c)) in_a[v] = true;
  }
  const PLMap h = transport(select_pou(phi).map, r);
  std::vector<Vec> values;
  for (VertexId v = 0; v < fine.num_vertices(); ++v) values.push_back(in_a[v] ? gf.at(v) : h.at(v));
  Selection s;
  s.refinement = r;
  s.map = PLMap(r.fine, phi.dim, std::move(values));
  s.certificate = certify_selection(s.map, s.refinement, phi);
  return s;
}

// ---------------------------------------------------------------------------

namespace {

void require_increasing(const IndexedCover& omega) {
  const auto v = is_increasing_cover(omega);
  if (!v) {
    throw Error(ErrorCode::NotIncreasing, "cell " + omega.complex->cell_name(v.witness->face) + " is in member " +
                                              format_vec(*v.witness->point) + " but not the next one");
  }
}

Rational ceil_of(const Rational& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(q);
}

}  // namespace

CoverRefinement refine_countable(const IndexedCover& omega) {
  require_increasing(omega);
  const auto alpha = min_index_field(omega);
  const auto& k = *omega.complex;
  std::vector<Rational> fv;
  for (VertexId v = 0; v < k.num_vertices(); ++v) fv.push_back(alpha[k.vertex_cell(v)].value() + 1);
  const PLMap f = make_pl_function(omega.complex, fv);
  std::vector<Rational> levels;
  for (std::size_t i = 1; i <= omega.size(); ++i) levels.emplace_back(static_cast<long>(i));

  CoverRefinement out;
  out.refinement = subdivide_by_levels(omega.complex, f, levels);
  out.f = transport(f, out.refinement);
  out.omega_fine = transport(omega, out.refinement);
  const auto& fine = *out.refinement.fine;
  const auto alpha_fine = transport(alpha, out.refinement);
  std::vector<OpenCellSet> members;
  Rational top(0);
  for (VertexId v = 0; v < fine.num_vertices(); ++v) top = std::max(top, scalar_at(out.f, v));
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const Rational level(static_cast<long>(i));
    CellSet s(fine.num_cells());
    for (CellId c = 0; c < fine.num_cells(); ++c) {
      if (alpha_fine[c] > ExtRational(level)) continue;
      Rational hi = scalar_at(out.f, fine.cell(c).front());
      for (VertexId v : fine.cell(c)) hi = std::max(hi, scalar_at(out.f, v));
      if (hi > level) s.insert(c);
    }
    members.emplace_back(fine, std::move(s));
  }
  out.phi = IndexedCover(out.refinement.fine, std::move(members));
  out.order_bound = static_cast<std::size_t>(ceil_of(top).get_num().get_ui());
  return out;
}

CoverRefinement refine_c0(const IndexedCover& omega) {
  require_increasing(omega);
  const std::size_t m = omega.size();
  const auto alpha = min_index_field(omega);
  const auto& k = *omega.complex;
  // Φ(x) = { y : y_j > 2 for j ≤ α(x) } and the selection a_v.
  std::vector<ConvexBody> bodies;
  for (CellId c = 0; c < k.num_cells(); ++c) {
    std::vector<ExtRational> lo(m, ExtRational::neg_inf()), hi(m, ExtRational::pos_inf());
    for (std::size_t j = 0; ExtRational(static_cast<long>(j)) <= alpha[c]; ++j) lo[j] = 2;
    bodies.push_back(open_box(lo, hi));
  }
  const ConvexCellRelation phi(omega.complex, m, std::move(bodies));
  std::vector<Vec> values;
  for (VertexId v = 0; v < k.num_vertices(); ++v) {
    Vec a(m);
    for (std::size_t j = 0; ExtRational(static_cast<long>(j)) <= alpha[k.vertex_cell(v)]; ++j) a[j] = 3;
    values.push_back(std::move(a));
  }
  const PLMap f(omega.complex, m, std::move(values));
  if (!certify_selection(f, identity_refinement(omega.complex), phi).valid) {
    throw Error(ErrorCode::InfeasibleInteriorPoint, "coordinate selection failed");
  }

  // Cut every coordinate at multiples of 1/2 so each closed vertex star has
  // oscillation ≤ 1.
  std::vector<Rational> levels;
  for (long i = 1; i < 6; ++i) levels.push_back(make_rational(i, 2));
  Refinement r = identity_refinement(omega.complex);
  PLMap fr = f;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Rational> coord;
    for (VertexId v = 0; v < r.fine->num_vertices(); ++v) coord.push_back(fr.at(v)[j]);
    const auto cut = subdivide_by_levels(r.fine, make_pl_function(r.fine, coord), levels);
    fr = transport(fr, cut);
    r = compose(r, cut);
  }

  CoverRefinement out;
  out.refinement = r;
  out.f = fr;
  out.omega_fine = transport(omega, r);
  const auto& fine = *r.fine;
  std::vector<CellSet> sets(m, CellSet(fine.num_cells()));
  for (VertexId v = 0; v < fine.num_vertices(); ++v) {
    std::size_t pick = m - 1;
    for (std::size_t j = 0; j < m; ++j) {
      if (fr.at(v)[j] < 1) {
        pick = j;
        break;
      }
    }
    const std::vector<CellId> seed{fine.vertex_cell(v)};
    sets[pick] = sets[pick].united(open_star(fine, seed).cells());
  }
  std::vector<OpenCellSet> members;
  for (auto& s : sets) members.emplace_back(fine, std::move(s));
  out.phi = IndexedCover(r.fine, std::move(members));
  out.order_bound = std::min<std::size_t>(m, static_cast<std::size_t>(fine.dimension() + 1));
  return out;
}

// ---------------------------------------------------------------------------

Vec CurriedSelection::evaluate(const Vec& x, const Vec& y) const {
  const auto cx = carrier(*product.left, x);
  const auto cy = carrier(*product.right, y);
  const Cell& sx = product.left->cell(cx.cell);
  const Cell& sy = product.right->cell(cy.cell);
  Vec out(selection.map.target_dim());
  for (const auto& w : staircase_coordinates(cx.barycentric, cy.barycentric)) {
    out = out + w.weight * selection.map.at(product.vertex(sx[w.left_index], sy[w.right_index]));
  }
  return out;
}

std::function<Vec(const Vec&)> CurriedSelection::curry(const Vec& x) const {
  return [this, x](const Vec& y) { return evaluate(x, y); };
}

CurriedSelection lift_product(const ProductComplex& pc, const ConvexCellRelation& phi) {
  if (phi.complex != pc.product) throw Error(ErrorCode::MeshMismatch, "relation does not live on the product");
  CurriedSelection out;
  out.product = pc;
  out.selection = select_pou(phi);
  const auto& k = *pc.product;
  const std::size_t dx = pc.left->dim_ambient();
  const PLMap& g = out.selection.map;
  for (CellId top : k.maximal_cells()) {
    const Cell& s = k.cell(top);
    if (s.size() < 2) continue;
    // Solve G·D = Δg row by row; any solution bounds the local slope.
    linalg::Matrix dt;
    for (std::size_t i = 1; i < s.size(); ++i) dt.push_back(k.vertex(s[i]) - k.vertex(s[0]));
    for (std::size_t row = 0; row < g.target_dim(); ++row) {
      linalg::Matrix aug = dt;
      for (std::size_t i = 1; i < s.size(); ++i) aug[i - 1].push_back(g.at(s[i])[row] - g.at(s[0])[row]);
      const auto pivots = linalg::rref(aug);
      const std::size_t cols = k.dim_ambient();
      Vec grad(cols);
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] < cols) grad[pivots[i]] = aug[i][cols];
      }
      Rational slope(0);
      for (std::size_t j = 0; j < dx; ++j) slope += abs(grad[j]);
      out.modulus = std::max(out.modulus, slope);
    }
  }
  return out;
}

Selection separate_sets(const ComplexPtr& k, const CellSet& a, const CellSet& b) {
  return select_pou(separation_gadget(k, a, b));
}

}  // namespace selectra
