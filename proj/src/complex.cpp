#include "selectra/complex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "selectra/errors.hpp"
#include "selectra/linalg.hpp"
#include "selectra/lp.hpp"

namespace selectra {

struct ComplexBuilder {
  static ComplexPtr finalize(std::size_t dim_ambient, std::vector<Vec> vertices, std::vector<Cell> cells) {
    auto k = std::shared_ptr<SimplicialComplex>(new SimplicialComplex());
    k->dim_ambient_ = dim_ambient;
    k->vertices_ = std::move(vertices);
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    k->cells_ = std::move(cells);
    const std::size_t n = k->cells_.size();
    k->facets_.assign(n, {});
    k->cofacets_.assign(n, {});
    k->vertex_cell_.assign(k->vertices_.size(), 0);
    for (CellId c = 0; c < n; ++c) {
      const Cell& cell = k->cells_[c];
      k->dimension_ = std::max(k->dimension_, static_cast<int>(cell.size()) - 1);
      if (cell.size() == 1) {
        k->vertex_cell_[cell[0]] = c;
        continue;
      }
      for (std::size_t drop = 0; drop < cell.size(); ++drop) {
        Cell face;
        face.reserve(cell.size() - 1);
        for (std::size_t i = 0; i < cell.size(); ++i) {
          if (i != drop) face.push_back(cell[i]);
        }
        const CellId f = *k->find(face);
        k->facets_[c].push_back(f);
        k->cofacets_[f].push_back(c);
      }
    }
    for (CellId c = 0; c < n; ++c) {
      std::sort(k->facets_[c].begin(), k->facets_[c].end());
      std::sort(k->cofacets_[c].begin(), k->cofacets_[c].end());
      if (k->cofacets_[c].empty()) k->maximal_.push_back(c);
    }
    return k;
  }
};

std::optional<CellId> SimplicialComplex::find(const Cell& c) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
  if (it == cells_.end() || *it != c) return std::nullopt;
  return static_cast<CellId>(it - cells_.begin());
}

CellId SimplicialComplex::id_of(const Cell& c) const {
  auto id = find(c);
  if (!id) throw Error(ErrorCode::UnknownCell, "cell " + cell_name(c) + " is not in the complex");
  return *id;
}

std::vector<VertexId> SimplicialComplex::neighbours(VertexId v) const {
  std::vector<VertexId> out;
  for (CellId e : cofacets_.at(vertex_cell_.at(v))) {
    const Cell& edge = cells_[e];
    out.push_back(edge[0] == v ? edge[1] : edge[0]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string SimplicialComplex::cell_name(CellId c) const { return cell_name(cells_.at(c)); }

std::string SimplicialComplex::cell_name(const Cell& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += "-";
    out += std::to_string(c[i]);
  }
  return out;
}

CellId SimplicialComplex::parse_cell_name(const std::string& name) const {
  Cell cell;
  std::size_t start = 0;
  while (start <= name.size()) {
    const auto dash = name.find('-', start);
    const std::string part = name.substr(start, dash == std::string::npos ? std::string::npos : dash - start);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorCode::ParseError, "malformed cell id '" + name + "'");
    }
    cell.push_back(static_cast<VertexId>(std::stoul(part)));
    if (dash == std::string::npos) break;
    start = dash + 1;
  }
  if (!std::is_sorted(cell.begin(), cell.end()) ||
      std::adjacent_find(cell.begin(), cell.end()) != cell.end()) {
    throw Error(ErrorCode::ParseError, "cell id '" + name + "' is not a strictly increasing vertex tuple");
  }
  return id_of(cell);
}

Vec SimplicialComplex::barycenter(CellId c) const {
  const Cell& cell = cells_.at(c);
  Vec b(dim_ambient_);
  for (VertexId v : cell) b = b + vertices_[v];
  return Rational(1, static_cast<unsigned long>(cell.size())) * b;
}

bool SimplicialComplex::is_face(CellId face, CellId coface) const {
  const Cell& a = cells_.at(face);
  const Cell& b = cells_.at(coface);
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------------------

namespace {

void bbox(const std::vector<Vec>& pts, const Cell& c, Vec& lo, Vec& hi) {
  lo = pts[c[0]];
  hi = pts[c[0]];
  for (VertexId v : c) {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (pts[v][i] < lo[i]) lo[i] = pts[v][i];
      if (pts[v][i] > hi[i]) hi[i] = pts[v][i];
    }
  }
}

bool boxes_meet(const Vec& alo, const Vec& ahi, const Vec& blo, const Vec& bhi) {
  for (std::size_t i = 0; i < alo.size(); ++i) {
    if (ahi[i] < blo[i] || bhi[i] < alo[i]) return false;
  }
  return true;
}

// Two full-dimensional simplices sharing a facet meet properly iff their
// apexes lie strictly on opposite sides of the facet hyperplane.
std::optional<bool> facet_neighbour_test(const std::vector<Vec>& pts, const Cell& a, const Cell& b, std::size_t d) {
  if (a.size() != d + 1 || b.size() != d + 1) return std::nullopt;
  Cell shared;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
  if (shared.size() != d) return std::nullopt;
  VertexId apex_a = 0, apex_b = 0;
  for (VertexId v : a) {
    if (!std::binary_search(shared.begin(), shared.end(), v)) apex_a = v;
  }
  for (VertexId v : b) {
    if (!std::binary_search(shared.begin(), shared.end(), v)) apex_b = v;
  }
  auto orient = [&](VertexId apex) {
    linalg::Matrix m;
    for (std::size_t i = 1; i < shared.size(); ++i) m.push_back(pts[shared[i]] - pts[shared[0]]);
    m.push_back(pts[apex] - pts[shared[0]]);
    return sgn(linalg::determinant(std::move(m)));
  };
  return orient(apex_a) * orient(apex_b) < 0;
}

// conv(a) ∩ conv(b) must equal conv(a ∩ b).
bool meets_properly(const std::vector<Vec>& pts, const Cell& a, const Cell& b, std::size_t d) {
  Cell shared;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
  const std::size_t na = a.size(), nb = b.size();
  lp::Problem prob(na + nb);
  for (std::size_t i = 0; i < na + nb; ++i) prob.set_nonnegative(i);
  for (std::size_t k = 0; k < d; ++k) {
    Vec row(na + nb);
    for (std::size_t i = 0; i < na; ++i) row[i] = pts[a[i]][k];
    for (std::size_t j = 0; j < nb; ++j) row[na + j] = -pts[b[j]][k];
    prob.add_eq(std::move(row), 0);
  }
  Vec sa(na + nb), sb(na + nb), obj(na + nb);
  for (std::size_t i = 0; i < na; ++i) {
    sa[i] = 1;
    if (!std::binary_search(shared.begin(), shared.end(), a[i])) obj[i] = 1;
  }
  for (std::size_t j = 0; j < nb; ++j) sb[na + j] = 1;
  prob.add_eq(std::move(sa), 1);
  prob.add_eq(std::move(sb), 1);
  prob.maximize(std::move(obj));
  const auto sol = prob.solve();
  if (sol.status == lp::Status::Infeasible) return true;
  return sgn(sol.objective) == 0;
}

void validate_embedding(const SimplicialComplex& k) {
  const auto& pts = k.vertices();
  const auto& maxes = k.maximal_cells();
  std::vector<Vec> lo(maxes.size()), hi(maxes.size());
  for (std::size_t i = 0; i < maxes.size(); ++i) bbox(pts, k.cell(maxes[i]), lo[i], hi[i]);
  for (std::size_t i = 0; i < maxes.size(); ++i) {
    for (std::size_t j = i + 1; j < maxes.size(); ++j) {
      if (!boxes_meet(lo[i], hi[i], lo[j], hi[j])) continue;
      const Cell& a = k.cell(maxes[i]);
      const Cell& b = k.cell(maxes[j]);
      auto quick = facet_neighbour_test(pts, a, b, k.dim_ambient());
      const bool ok = quick ? *quick : meets_properly(pts, a, b, k.dim_ambient());
      if (!ok) {
        throw Error(ErrorCode::OverlappingInteriors,
                    "simplices " + SimplicialComplex::cell_name(a) + " and " +
                        SimplicialComplex::cell_name(b) + " overlap");
      }
    }
  }
}

void enumerate_faces(const Cell& top, std::vector<Cell>& out) {
  const std::size_t n = top.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    Cell f;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) f.push_back(top[i]);
    }
    out.push_back(std::move(f));
  }
}

}  // namespace

ComplexPtr build_complex(std::vector<Vec> points, const std::vector<Cell>& top_simplices, BuildOptions options) {
  const std::size_t d = points.empty() ? 0 : points.front().size();
  for (const auto& p : points) {
    if (p.size() != d) throw Error(ErrorCode::InvalidArgument, "points have inconsistent dimension");
  }
  std::vector<Cell> cells;
  for (VertexId v = 0; v < points.size(); ++v) cells.push_back({v});
  for (Cell top : top_simplices) {
    if (top.empty()) throw Error(ErrorCode::InvalidArgument, "empty simplex");
    if (top.size() > 20) throw Error(ErrorCode::InvalidArgument, "simplex dimension too large");
    for (VertexId v : top) {
      if (v >= points.size()) {
        throw Error(ErrorCode::InvalidArgument, "vertex index " + std::to_string(v) + " out of range");
      }
    }
    std::sort(top.begin(), top.end());
    if (std::adjacent_find(top.begin(), top.end()) != top.end()) {
      throw Error(ErrorCode::DegenerateSimplex, "repeated vertex in " + SimplicialComplex::cell_name(top));
    }
    std::vector<Vec> pts;
    for (VertexId v : top) pts.push_back(points[v]);
    if (linalg::affine_rank(pts) != static_cast<int>(top.size()) - 1) {
      throw Error(ErrorCode::DegenerateSimplex,
                  "vertices of " + SimplicialComplex::cell_name(top) + " are affinely dependent");
    }
    enumerate_faces(top, cells);
  }
  auto k = ComplexBuilder::finalize(d, std::move(points), std::move(cells));
  if (options.validate_embedding && d <= 3) validate_embedding(*k);
  return k;
}

std::vector<CellId> faces(const SimplicialComplex& k, CellId c) {
  if (c >= k.num_cells()) throw Error(ErrorCode::UnknownCell, "cell id out of range");
  std::vector<Cell> all;
  enumerate_faces(k.cell(c), all);
  std::vector<CellId> out;
  for (const auto& f : all) out.push_back(k.id_of(f));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CellId> cofaces(const SimplicialComplex& k, CellId c) {
  if (c >= k.num_cells()) throw Error(ErrorCode::UnknownCell, "cell id out of range");
  std::set<CellId> seen{c};
  std::deque<CellId> queue{c};
  while (!queue.empty()) {
    const CellId cur = queue.front();
    queue.pop_front();
    for (CellId up : k.cofacets(cur)) {
      if (seen.insert(up).second) queue.push_back(up);
    }
  }
  return {seen.begin(), seen.end()};
}

namespace {

// Barycentric coordinates of x with respect to `cell`, or nullopt when x is
// not in the affine hull.
std::optional<Vec> barycentric_in(const SimplicialComplex& k, const Cell& cell, const Vec& x) {
  const Vec& p0 = k.vertex(cell[0]);
  const std::size_t m = cell.size() - 1;
  linalg::Matrix a(k.dim_ambient(), Vec(m));
  for (std::size_t i = 0; i < m; ++i) {
    const Vec& pi = k.vertex(cell[i + 1]);
    for (std::size_t r = 0; r < k.dim_ambient(); ++r) a[r][i] = pi[r] - p0[r];
  }
  Vec rhs = x - p0;
  std::optional<Vec> mu;
  if (m == 0) {
    if (sgn(norm_inf(rhs)) != 0) return std::nullopt;
    mu = Vec{};
  } else {
    mu = linalg::solve_unique(a, rhs);
    if (!mu) return std::nullopt;
  }
  Vec lambda(cell.size());
  Rational rest(1);
  for (std::size_t i = 0; i < m; ++i) {
    lambda[i + 1] = (*mu)[i];
    rest -= (*mu)[i];
  }
  lambda[0] = rest;
  return lambda;
}

}  // namespace

Carrier carrier(const SimplicialComplex& k, const Vec& x) {
  if (x.size() != k.dim_ambient()) {
    throw Error(ErrorCode::PointOutsideComplex, "point has dimension " + std::to_string(x.size()));
  }
  for (CellId m : k.maximal_cells()) {
    const Cell& cell = k.cell(m);
    bool outside_box = false;
    for (std::size_t r = 0; r < x.size() && !outside_box; ++r) {
      bool below = true, above = true;
      for (VertexId v : cell) {
        if (k.vertex(v)[r] <= x[r]) below = false;
        if (k.vertex(v)[r] >= x[r]) above = false;
      }
      outside_box = below || above;
    }
    if (outside_box) continue;
    auto lambda = barycentric_in(k, cell, x);
    if (!lambda) continue;
    if (std::any_of(lambda->begin(), lambda->end(), [](const Rational& l) { return sgn(l) < 0; })) continue;
    Cell face;
    Vec coords;
    for (std::size_t i = 0; i < cell.size(); ++i) {
      if (sgn((*lambda)[i]) > 0) {
        face.push_back(cell[i]);
        coords.push_back((*lambda)[i]);
      }
    }
    return {k.id_of(face), std::move(coords)};
  }
  throw Error(ErrorCode::PointOutsideComplex, "point " + format_vec(x) + " is not in |K|");
}

// ---------------------------------------------------------------------------

CellSet CellSet::all(std::size_t universe) {
  CellSet s(universe);
  s.mask_.assign(universe, true);
  return s;
}

CellSet CellSet::of(std::size_t universe, std::span<const CellId> ids) {
  CellSet s(universe);
  for (CellId c : ids) s.insert(c);
  return s;
}

std::size_t CellSet::count() const { return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true)); }

std::vector<CellId> CellSet::ids() const {
  std::vector<CellId> out;
  for (CellId c = 0; c < mask_.size(); ++c) {
    if (mask_[c]) out.push_back(c);
  }
  return out;
}

bool CellSet::subset_of(const CellSet& other) const {
  for (CellId c = 0; c < mask_.size(); ++c) {
    if (mask_[c] && !other.mask_.at(c)) return false;
  }
  return true;
}

CellSet CellSet::united(const CellSet& other) const {
  CellSet s = *this;
  for (CellId c = 0; c < mask_.size(); ++c) {
    if (other.mask_.at(c)) s.mask_[c] = true;
  }
  return s;
}

CellSet CellSet::intersected(const CellSet& other) const {
  CellSet s = *this;
  for (CellId c = 0; c < mask_.size(); ++c) {
    if (!other.mask_.at(c)) s.mask_[c] = false;
  }
  return s;
}

bool is_upward_closed(const SimplicialComplex& k, const CellSet& s) {
  for (CellId c = 0; c < k.num_cells(); ++c) {
    if (!s.contains(c)) continue;
    for (CellId up : k.cofacets(c)) {
      if (!s.contains(up)) return false;
    }
  }
  return true;
}

bool is_downward_closed(const SimplicialComplex& k, const CellSet& s) {
  for (CellId c = 0; c < k.num_cells(); ++c) {
    if (!s.contains(c)) continue;
    for (CellId down : k.facets(c)) {
      if (!s.contains(down)) return false;
    }
  }
  return true;
}

CellSet downward_closure(const SimplicialComplex& k, const CellSet& s) {
  CellSet out = s;
  for (int dim = k.dimension(); dim > 0; --dim) {
    for (CellId c = 0; c < k.num_cells(); ++c) {
      if (k.cell_dim(c) != dim || !out.contains(c)) continue;
      for (CellId f : k.facets(c)) out.insert(f);
    }
  }
  return out;
}

OpenCellSet::OpenCellSet(const SimplicialComplex& k, CellSet cells) : cells_(std::move(cells)) {
  if (cells_.universe() != k.num_cells()) throw Error(ErrorCode::InvalidArgument, "cell set has wrong universe");
  if (!is_upward_closed(k, cells_)) throw Error(ErrorCode::InvalidArgument, "cell set is not upward closed");
}

OpenCellSet open_star(const SimplicialComplex& k, std::span<const CellId> cells) {
  CellSet s(k.num_cells());
  std::deque<CellId> queue;
  for (CellId c : cells) {
    if (c >= k.num_cells()) throw Error(ErrorCode::UnknownCell, "cell id out of range");
    if (!s.contains(c)) {
      s.insert(c);
      queue.push_back(c);
    }
  }
  while (!queue.empty()) {
    const CellId cur = queue.front();
    queue.pop_front();
    for (CellId up : k.cofacets(cur)) {
      if (!s.contains(up)) {
        s.insert(up);
        queue.push_back(up);
      }
    }
  }
  return OpenCellSet(k, std::move(s));
}

std::vector<VertexId> closed_star_vertices(const SimplicialComplex& k, VertexId v) {
  std::set<VertexId> out{v};
  for (CellId c : cofaces(k, k.vertex_cell(v))) {
    if (k.cofacets(c).empty()) out.insert(k.cell(c).begin(), k.cell(c).end());
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------

PLMap::PLMap(ComplexPtr complex, std::size_t target_dim, std::vector<Vec> values)
    : complex_(std::move(complex)), target_dim_(target_dim), values_(std::move(values)) {
  if (!complex_) throw Error(ErrorCode::InvalidArgument, "PL map without complex");
  if (values_.size() != complex_->num_vertices()) {
    throw Error(ErrorCode::InvalidArgument, "PL map needs exactly one value per vertex");
  }
  for (const auto& v : values_) {
    if (v.size() != target_dim_) throw Error(ErrorCode::InvalidArgument, "PL map value has wrong dimension");
  }
}

PLMap make_pl_function(ComplexPtr complex, const std::vector<Rational>& values) {
  std::vector<Vec> vs;
  vs.reserve(values.size());
  for (const auto& v : values) vs.push_back(Vec{v});
  return PLMap(std::move(complex), 1, std::move(vs));
}

Rational scalar_at(const PLMap& f, VertexId v) { return f.at(v).at(0); }

Vec eval_in_cell(const PLMap& f, CellId cell, const Vec& barycentric) {
  const Cell& c = f.complex()->cell(cell);
  Vec out(f.target_dim());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec& val = f.at(c[i]);
    for (std::size_t r = 0; r < out.size(); ++r) out[r] += barycentric[i] * val[r];
  }
  return out;
}

Vec eval_pl(const PLMap& f, const Vec& x) {
  const auto car = carrier(*f.complex(), x);
  return eval_in_cell(f, car.cell, car.barycentric);
}

Rational oscillation_on_vertices(const PLMap& f, std::span<const VertexId> vertices) {
  Rational best(0);
  for (std::size_t r = 0; r < f.target_dim(); ++r) {
    if (vertices.empty()) break;
    Rational lo = f.at(vertices[0])[r], hi = lo;
    for (VertexId v : vertices) {
      const Rational& x = f.at(v)[r];
      if (x < lo) lo = x;
      if (x > hi) hi = x;
    }
    if (hi - lo > best) best = hi - lo;
  }
  return best;
}

Rational oscillation(const PLMap& f, const OpenCellSet& s) {
  std::set<VertexId> verts;
  for (CellId c : s.ids()) {
    const Cell& cell = f.complex()->cell(c);
    verts.insert(cell.begin(), cell.end());
  }
  std::vector<VertexId> vs(verts.begin(), verts.end());
  return oscillation_on_vertices(f, vs);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<CellId> parents_from_weights(const SimplicialComplex& coarse, const SimplicialComplex& fine,
                                         const std::vector<std::vector<std::pair<VertexId, Rational>>>& w) {
  std::vector<CellId> parent(fine.num_cells());
  for (CellId c = 0; c < fine.num_cells(); ++c) {
    std::set<VertexId> support;
    for (VertexId v : fine.cell(c)) {
      for (const auto& [cv, weight] : w[v]) support.insert(cv);
    }
    parent[c] = coarse.id_of(Cell(support.begin(), support.end()));
  }
  return parent;
}

}  // namespace

Refinement identity_refinement(const ComplexPtr& k) {
  Refinement r;
  r.coarse = k;
  r.fine = k;
  r.weights.resize(k->num_vertices());
  for (VertexId v = 0; v < k->num_vertices(); ++v) r.weights[v] = {{v, Rational(1)}};
  r.parent.resize(k->num_cells());
  std::iota(r.parent.begin(), r.parent.end(), 0);
  return r;
}

Refinement compose(const Refinement& inner, const Refinement& outer) {
  if (outer.coarse != inner.fine) throw Error(ErrorCode::MeshMismatch, "refinements do not chain");
  Refinement r;
  r.coarse = inner.coarse;
  r.fine = outer.fine;
  r.weights.resize(outer.weights.size());
  for (std::size_t u = 0; u < outer.weights.size(); ++u) {
    std::map<VertexId, Rational> acc;
    for (const auto& [mid, w] : outer.weights[u]) {
      for (const auto& [cv, w2] : inner.weights[mid]) acc[cv] += w * w2;
    }
    for (auto& [cv, w] : acc) {
      if (sgn(w) != 0) r.weights[u].emplace_back(cv, w);
    }
  }
  r.parent.resize(outer.parent.size());
  for (std::size_t c = 0; c < outer.parent.size(); ++c) r.parent[c] = inner.parent[outer.parent[c]];
  return r;
}

PLMap transport(const PLMap& f, const Refinement& r) {
  if (f.complex() != r.coarse) throw Error(ErrorCode::MeshMismatch, "map does not live on the coarse complex");
  std::vector<Vec> values(r.fine->num_vertices(), Vec(f.target_dim()));
  for (VertexId u = 0; u < values.size(); ++u) {
    for (const auto& [cv, w] : r.weights[u]) {
      const Vec& val = f.at(cv);
      for (std::size_t i = 0; i < val.size(); ++i) values[u][i] += w * val[i];
    }
  }
  return PLMap(r.fine, f.target_dim(), std::move(values));
}

CellSet transport_cells(const CellSet& s, const Refinement& r) {
  CellSet out(r.fine->num_cells());
  for (CellId c = 0; c < r.parent.size(); ++c) {
    if (s.contains(r.parent[c])) out.insert(c);
  }
  return out;
}

OpenCellSet transport(const OpenCellSet& s, const Refinement& r) {
  return OpenCellSet(*r.fine, transport_cells(s.cells(), r));
}

Refinement barycentric_subdivide(const ComplexPtr& k) {
  std::vector<Vec> points;
  points.reserve(k->num_cells());
  Refinement r;
  r.coarse = k;
  r.weights.resize(k->num_cells());
  for (CellId c = 0; c < k->num_cells(); ++c) {
    points.push_back(k->barycenter(c));
    const Rational w(1, static_cast<unsigned long>(k->cell(c).size()));
    for (VertexId v : k->cell(c)) r.weights[c].emplace_back(v, w);
  }
  std::vector<Cell> tops;
  for (CellId m : k->maximal_cells()) {
    Cell perm = k->cell(m);
    do {
      Cell chain;
      Cell prefix;
      for (VertexId v : perm) {
        prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
        chain.push_back(k->id_of(prefix));
      }
      std::sort(chain.begin(), chain.end());
      tops.push_back(std::move(chain));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  r.fine = build_complex(std::move(points), tops, {.validate_embedding = false});
  r.parent = parents_from_weights(*k, *r.fine, r.weights);
  return r;
}

Refinement subdivide_by_levels(const ComplexPtr& k, const PLMap& f, std::vector<Rational> levels) {
  if (f.complex() != k || f.target_dim() != 1) {
    throw Error(ErrorCode::InvalidArgument, "subdivide_by_levels needs a scalar PL function on the complex");
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<Vec> points = k->vertices();
  std::vector<Rational> value;
  std::vector<std::vector<std::pair<VertexId, Rational>>> weights(points.size());
  for (VertexId v = 0; v < points.size(); ++v) {
    value.push_back(scalar_at(f, v));
    weights[v] = {{v, Rational(1)}};
  }
  std::vector<Cell> simplices;
  for (CellId m : k->maximal_cells()) simplices.push_back(k->cell(m));
  std::vector<std::vector<std::size_t>> incident(points.size());
  for (std::size_t s = 0; s < simplices.size(); ++s) {
    for (VertexId v : simplices[s]) incident[v].push_back(s);
  }

  for (const Rational& level : levels) {
    std::set<std::pair<VertexId, VertexId>> crossing;
    for (const auto& s : simplices) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          if (sgn(value[s[i]] - level) * sgn(value[s[j]] - level) < 0) crossing.emplace(s[i], s[j]);
        }
      }
    }
    for (const auto& [a, b] : crossing) {
      const Rational t = (level - value[a]) / (value[b] - value[a]);
      const VertexId m = static_cast<VertexId>(points.size());
      points.push_back(points[a] + t * (points[b] - points[a]));
      value.push_back(level);
      std::map<VertexId, Rational> acc;
      for (const auto& [cv, w] : weights[a]) acc[cv] += (1 - t) * w;
      for (const auto& [cv, w] : weights[b]) acc[cv] += t * w;
      weights.emplace_back(acc.begin(), acc.end());
      incident.emplace_back();
      std::vector<std::size_t> containing;
      for (std::size_t s : incident[a]) {
        if (std::binary_search(simplices[s].begin(), simplices[s].end(), b)) containing.push_back(s);
      }
      for (std::size_t s : containing) {
        Cell keep_a = simplices[s];
        Cell keep_b = simplices[s];
        std::replace(keep_a.begin(), keep_a.end(), b, m);
        std::replace(keep_b.begin(), keep_b.end(), a, m);
        std::sort(keep_a.begin(), keep_a.end());
        std::sort(keep_b.begin(), keep_b.end());
        // keep_a replaces s in place; keep_b is appended.
        auto& inc_b = incident[b];
        inc_b.erase(std::remove(inc_b.begin(), inc_b.end(), s), inc_b.end());
        simplices[s] = std::move(keep_a);
        incident[m].push_back(s);
        const std::size_t ns = simplices.size();
        for (VertexId v : keep_b) incident[v].push_back(ns);
        simplices.push_back(std::move(keep_b));
      }
    }
  }

  Refinement r;
  r.coarse = k;
  r.fine = build_complex(std::move(points), simplices, {.validate_embedding = false});
  r.weights = std::move(weights);
  r.parent = parents_from_weights(*k, *r.fine, r.weights);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

void staircase_paths(std::size_t p, std::size_t q, std::size_t i, std::size_t j,
                     std::vector<std::pair<std::size_t, std::size_t>>& path,
                     std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& out) {
  path.emplace_back(i, j);
  if (i == p && j == q) {
    out.push_back(path);
  } else {
    if (i < p) staircase_paths(p, q, i + 1, j, path, out);
    if (j < q) staircase_paths(p, q, i, j + 1, path, out);
  }
  path.pop_back();
}

}  // namespace

ProductComplex product_complex(const ComplexPtr& left, const ComplexPtr& right) {
  ProductComplex pc;
  pc.left = left;
  pc.right = right;
  const std::size_t nl = left->num_vertices(), nr = right->num_vertices();
  std::vector<Vec> points;
  points.reserve(nl * nr);
  std::vector<Vec> proj_l, proj_r;
  for (VertexId v = 0; v < nl; ++v) {
    for (VertexId w = 0; w < nr; ++w) {
      Vec p = left->vertex(v);
      p.insert(p.end(), right->vertex(w).begin(), right->vertex(w).end());
      points.push_back(std::move(p));
      proj_l.push_back(left->vertex(v));
      proj_r.push_back(right->vertex(w));
    }
  }
  std::vector<Cell> tops;
  for (CellId a : left->maximal_cells()) {
    for (CellId b : right->maximal_cells()) {
      const Cell& sa = left->cell(a);
      const Cell& sb = right->cell(b);
      std::vector<std::vector<std::pair<std::size_t, std::size_t>>> paths;
      std::vector<std::pair<std::size_t, std::size_t>> scratch;
      staircase_paths(sa.size() - 1, sb.size() - 1, 0, 0, scratch, paths);
      for (const auto& path : paths) {
        Cell s;
        for (auto [i, j] : path) s.push_back(static_cast<VertexId>(sa[i] * nr + sb[j]));
        std::sort(s.begin(), s.end());
        tops.push_back(std::move(s));
      }
    }
  }
  pc.product = build_complex(std::move(points), tops, {.validate_embedding = false});
  pc.project_left = PLMap(pc.product, left->dim_ambient(), std::move(proj_l));
  pc.project_right = PLMap(pc.product, right->dim_ambient(), std::move(proj_r));
  return pc;
}

std::vector<StaircaseWeight> staircase_coordinates(const Vec& left_bary, const Vec& right_bary) {
  const std::size_t p = left_bary.size() - 1, q = right_bary.size() - 1;
  Vec f(p + 1), g(q + 1);
  Rational acc(0);
  for (std::size_t i = 0; i <= p; ++i) f[i] = (acc += left_bary[i]);
  acc = 0;
  for (std::size_t j = 0; j <= q; ++j) g[j] = (acc += right_bary[j]);
  std::vector<StaircaseWeight> out;
  std::size_t i = 0, j = 0;
  Rational prev(0);
  while (i < p || j < q) {
    const bool step_left = i < p && (j >= q || f[i] <= g[j]);
    const Rational next = step_left ? f[i] : g[j];
    if (next > prev) out.push_back({i, j, Rational(next - prev)});
    prev = next;
    if (step_left) ++i; else ++j;
  }
  if (prev < 1) out.push_back({p, q, Rational(1 - prev)});
  return out;
}

}  // namespace selectra
