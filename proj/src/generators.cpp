#include "selectra/generators.hpp"

#include <algorithm>

#include "selectra/errors.hpp"

namespace selectra {

ComplexPtr path_complex(std::size_t segments) {
  if (segments == 0) throw Error(ErrorCode::InvalidArgument, "a path needs at least one segment");
  std::vector<Vec> points;
  std::vector<Cell> tops;
  for (std::size_t i = 0; i <= segments; ++i) points.push_back({Rational(static_cast<long>(i))});
  for (VertexId i = 0; i < segments; ++i) tops.push_back({i, i + 1});
  return build_complex(std::move(points), tops, {.validate_embedding = false});
}

ComplexPtr kuhn_grid(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw Error(ErrorCode::InvalidArgument, "empty grid");
  ComplexPtr k = path_complex(sizes[0]);
  for (std::size_t i = 1; i < sizes.size(); ++i) k = product_complex(k, path_complex(sizes[i])).product;
  return k;
}

ComplexPtr sub_complex(const SimplicialComplex& k, const std::vector<CellId>& tops) {
  std::vector<VertexId> used;
  for (CellId c : tops) used.insert(used.end(), k.cell(c).begin(), k.cell(c).end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<Vec> points;
  for (VertexId v : used) points.push_back(k.vertex(v));
  std::vector<Cell> cells;
  for (CellId c : tops) {
    Cell s;
    for (VertexId v : k.cell(c)) {
      s.push_back(static_cast<VertexId>(std::lower_bound(used.begin(), used.end(), v) - used.begin()));
    }
    cells.push_back(std::move(s));
  }
  return build_complex(std::move(points), cells, {.validate_embedding = false});
}

ComplexPtr random_complex(Rng& rng, int max_dim, std::size_t max_cells) {
  const int d = static_cast<int>(rng.uniform(1, max_dim));
  const long cap = d == 1 ? 8 : d == 2 ? 5 : 3;
  std::vector<std::size_t> sizes;
  for (int i = 0; i < d; ++i) sizes.push_back(static_cast<std::size_t>(rng.uniform(1, cap)));
  ComplexPtr k = kuhn_grid(sizes);
  while (k->num_cells() > max_cells) {
    auto it = std::max_element(sizes.begin(), sizes.end());
    if (*it == 1) throw Error(ErrorCode::InvalidArgument, "cell budget below a single cube");
    --*it;
    k = kuhn_grid(sizes);
  }
  const auto& tops = k->maximal_cells();
  if (tops.size() > 2 && rng.uniform(0, 2) == 0) {
    std::vector<CellId> keep;
    for (CellId c : tops) {
      if (rng.uniform(0, 3) != 0) keep.push_back(c);
    }
    if (keep.empty()) keep.push_back(tops.front());
    k = sub_complex(*k, keep);
  }
  return k;
}

namespace {

Rational grow(const SimplicialComplex& k, CellId c) { return make_rational(k.cell_dim(c) + 1, 4); }

std::vector<std::vector<Vec>> vertex_clouds(Rng& rng, const SimplicialComplex& k, std::size_t n) {
  std::vector<std::vector<Vec>> clouds(k.num_vertices());
  for (auto& cloud : clouds) {
    Vec centre(n);
    for (auto& x : centre) x = rng.rational(-2, 2, 4);
    cloud.push_back(centre);
    const long extra = rng.uniform(0, 2);
    for (long j = 0; j < extra; ++j) {
      Vec p = centre;
      for (auto& x : p) x += make_rational(rng.uniform(-2, 2), 4);
      cloud.push_back(std::move(p));
    }
  }
  return clouds;
}

std::vector<Vec> cell_cloud(const SimplicialComplex& k, CellId c, const std::vector<std::vector<Vec>>& clouds) {
  std::vector<Vec> pts;
  for (VertexId v : k.cell(c)) pts.insert(pts.end(), clouds[v].begin(), clouds[v].end());
  return pts;
}

std::vector<Vec> fixed_normals(std::size_t n) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (int s : {1, -1}) {
      Vec a(n);
      a[i] = s;
      out.push_back(std::move(a));
    }
  }
  if (n >= 2) {
    const std::size_t combos = std::size_t{1} << n;
    for (std::size_t mask = 0; mask < combos; ++mask) {
      Vec a(n);
      for (std::size_t i = 0; i < n; ++i) a[i] = (mask >> i) & 1u ? -1 : 1;
      out.push_back(std::move(a));
    }
  }
  return out;
}

// Cells in the open star of a random vertex, or nothing.
CellSet maybe_star(Rng& rng, const SimplicialComplex& k) {
  if (rng.uniform(0, 2) != 0) return CellSet(k.num_cells());
  const VertexId v = static_cast<VertexId>(rng.uniform(0, static_cast<long>(k.num_vertices()) - 1));
  const CellId c = k.vertex_cell(v);
  return open_star(k, std::span<const CellId>(&c, 1)).cells();
}

std::pair<Vec, Vec> coordinate_range(const std::vector<Vec>& pts) {
  Vec lo = pts.front(), hi = pts.front();
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  return {lo, hi};
}

ConvexBody make_body(const std::vector<Vec>& pts, std::size_t n, BodyKind kind, bool open, const Rational& eps,
                     bool lo_inf, bool hi_inf) {
  switch (kind) {
    case BodyKind::Interval:
    case BodyKind::Box: {
      auto [lo, hi] = coordinate_range(pts);
      std::vector<ExtRational> elo, ehi;
      for (std::size_t i = 0; i < n; ++i) {
        elo.push_back(lo_inf ? ExtRational::neg_inf() : ExtRational(open ? Rational(lo[i] - eps) : lo[i]));
        ehi.push_back(hi_inf ? ExtRational::pos_inf() : ExtRational(open ? Rational(hi[i] + eps) : hi[i]));
      }
      if (kind == BodyKind::Interval) return open ? open_interval(elo[0], ehi[0]) : closed_interval(elo[0], ehi[0]);
      return open ? open_box(elo, ehi) : closed_box(elo, ehi);
    }
    case BodyKind::VPolytope:
      return open ? fattened(closed_vpolytope(pts), eps, true) : closed_vpolytope(pts);
    case BodyKind::HPolytope: {
      if (!open) throw Error(ErrorCode::InvalidArgument, "H-polytopes are open");
      std::vector<Halfspace> hs;
      for (const auto& a : fixed_normals(n)) {
        Rational best = dot(a, pts.front());
        for (const auto& p : pts) best = std::max(best, dot(a, p));
        hs.push_back({a, best + eps});
      }
      return open_hpolytope(n, std::move(hs));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown body kind");
}

ConvexCellRelation nested_relation(Rng& rng, const ComplexPtr& k, std::size_t n, BodyKind kind, bool open) {
  if (kind == BodyKind::Interval && n != 1) throw Error(ErrorCode::InvalidArgument, "intervals need n = 1");
  const auto clouds = vertex_clouds(rng, *k, n);
  const bool axis = kind == BodyKind::Interval || kind == BodyKind::Box;
  const CellSet lo_inf = axis && open ? maybe_star(rng, *k) : CellSet(k->num_cells());
  const CellSet hi_inf = axis && open ? maybe_star(rng, *k) : CellSet(k->num_cells());
  std::vector<ConvexBody> bodies;
  for (CellId c = 0; c < k->num_cells(); ++c) {
    bodies.push_back(make_body(cell_cloud(*k, c, clouds), n, kind, open, grow(*k, c), lo_inf.contains(c),
                               hi_inf.contains(c)));
  }
  return ConvexCellRelation(k, n, std::move(bodies));
}

}  // namespace

ConvexCellRelation random_open_relation(Rng& rng, const ComplexPtr& k, std::size_t n, BodyKind kind) {
  return nested_relation(rng, k, n, kind, true);
}

ConvexCellRelation random_closed_relation(Rng& rng, const ComplexPtr& k, std::size_t n, BodyKind kind) {
  return nested_relation(rng, k, n, kind, false);
}

ConvexCellRelation perturb_relation(Rng& rng, const ConvexCellRelation& phi) {
  const auto& k = *phi.complex;
  std::vector<CellId> candidates;
  for (CellId c = 0; c < k.num_cells(); ++c) {
    if (k.cell_dim(c) > 0) candidates.push_back(c);
  }
  if (candidates.empty()) return phi;
  const CellId target = rng.pick(candidates);
  const auto& fs = k.facets(target);
  const CellId source = rng.pick(fs);
  auto bodies = phi.bodies;
  bodies[target] = phi[source];
  return ConvexCellRelation(phi.complex, phi.dim, std::move(bodies));
}

std::pair<ScalarCellField, ScalarCellField> random_envelopes(Rng& rng, const ComplexPtr& k, bool allow_infinite) {
  std::vector<Rational> h(k->num_vertices()), g(k->num_vertices());
  for (VertexId v = 0; v < h.size(); ++v) {
    h[v] = rng.rational(-4, 4, 4);
    g[v] = h[v] + make_rational(rng.uniform(1, 8), 4);
  }
  std::vector<Rational> low(k->num_cells()), high(k->num_cells());
  for (CellId c = 0; c < k->num_cells(); ++c) {
    Rational lo = h[k->cell(c).front()], hi = g[k->cell(c).front()];
    for (VertexId v : k->cell(c)) {
      lo = std::min(lo, h[v]);
      hi = std::max(hi, g[v]);
    }
    low[c] = lo - make_rational(rng.uniform(0, 2), 4);
    high[c] = hi + make_rational(rng.uniform(0, 2), 4);
  }
  const CellSet xi_inf = allow_infinite ? maybe_star(rng, *k) : CellSet(k->num_cells());
  const CellSet eta_inf = allow_infinite ? maybe_star(rng, *k) : CellSet(k->num_cells());
  std::vector<ExtRational> xi, eta;
  for (CellId c = 0; c < k->num_cells(); ++c) {
    // Minimum / maximum over all faces keeps ξ u.s.c. and η l.s.c.
    Rational lo = low[c], hi = high[c];
    for (CellId f : faces(*k, c)) {
      lo = std::min(lo, low[f]);
      hi = std::max(hi, high[f]);
    }
    xi.push_back(xi_inf.contains(c) ? ExtRational::neg_inf() : ExtRational(lo));
    eta.push_back(eta_inf.contains(c) ? ExtRational::pos_inf() : ExtRational(hi));
  }
  return {ScalarCellField(k, std::move(xi)), ScalarCellField(k, std::move(eta))};
}

IndexedCover random_increasing_cover(Rng& rng, const ComplexPtr& k, std::size_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "a cover needs at least one member");
  std::vector<long> r(k->num_cells());
  for (auto& x : r) x = rng.uniform(0, static_cast<long>(m) - 1);
  std::vector<long> alpha(k->num_cells());
  for (CellId c = 0; c < k->num_cells(); ++c) {
    alpha[c] = r[c];
    for (CellId f : faces(*k, c)) alpha[c] = std::min(alpha[c], r[f]);
  }
  std::vector<OpenCellSet> members;
  for (std::size_t i = 0; i < m; ++i) {
    CellSet s(k->num_cells());
    for (CellId c = 0; c < k->num_cells(); ++c) {
      if (alpha[c] <= static_cast<long>(i)) s.insert(c);
    }
    members.emplace_back(*k, std::move(s));
  }
  return IndexedCover(k, std::move(members));
}

CellSet random_subcomplex(Rng& rng, const SimplicialComplex& k) {
  CellSet seeds(k.num_cells());
  const long count = rng.uniform(1, 3);
  for (long i = 0; i < count; ++i) seeds.insert(static_cast<CellId>(rng.uniform(0, static_cast<long>(k.num_cells()) - 1)));
  return downward_closure(k, seeds);
}

Vec random_member(Rng& rng, const ConvexBody& body) {
  const Vec c = interior_point(body);
  const std::size_t n = c.size();
  if (body.is_bounded()) {
    const auto gens = closure_generators(body);
    const Vec w = random_barycentric(rng, gens.size(), 8);
    Vec p(n);
    for (std::size_t j = 0; j < gens.size(); ++j) p = p + w[j] * gens[j];
    const Rational t = make_rational(rng.uniform(0, 7), 8);
    return c + t * (p - c);
  }
  Vec y = c;
  for (auto& x : y) x += make_rational(rng.uniform(-4, 4), 4);
  const auto m = membership(body, y);
  const bool ok = body.is_open() ? m.position == Position::Inside : m.position != Position::Outside;
  return ok ? y : c;
}

std::map<VertexId, Vec> random_vertex_selection(Rng& rng, const ConvexCellRelation& phi, const CellSet& a) {
  const auto& k = *phi.complex;
  std::map<VertexId, Vec> g;
  for (VertexId v = 0; v < k.num_vertices(); ++v) {
    if (a.contains(k.vertex_cell(v))) g[v] = random_member(rng, phi[k.vertex_cell(v)]);
  }
  return g;
}

}  // namespace selectra
