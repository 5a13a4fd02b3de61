#include "selectra/relations.hpp"

#include <algorithm>

#include "selectra/errors.hpp"

namespace selectra {

ScalarCellField::ScalarCellField(ComplexPtr k, std::vector<ExtRational> v) : complex(std::move(k)), values(std::move(v)) {
  if (!complex || values.size() != complex->num_cells()) {
    throw Error(ErrorCode::InvalidArgument, "scalar field needs one value per cell");
  }
}

ConvexCellRelation::ConvexCellRelation(ComplexPtr k, std::size_t n, std::vector<ConvexBody> b)
    : complex(std::move(k)), dim(n), bodies(std::move(b)) {
  if (!complex || bodies.size() != complex->num_cells()) {
    throw Error(ErrorCode::InvalidArgument, "relation needs one body per cell");
  }
  for (CellId c = 0; c < bodies.size(); ++c) {
    if (bodies[c].dim() != dim) {
      throw Error(ErrorCode::InvalidArgument, "body on cell " + complex->cell_name(c) + " has the wrong dimension");
    }
  }
}

IndexedCover::IndexedCover(ComplexPtr k, std::vector<OpenCellSet> m) : complex(std::move(k)), members(std::move(m)) {
  if (!complex) throw Error(ErrorCode::InvalidArgument, "cover without complex");
  std::vector<std::string> missing;
  for (CellId c = 0; c < complex->num_cells(); ++c) {
    bool covered = false;
    for (const auto& mem : members) {
      if (mem.cells().universe() != complex->num_cells()) {
        throw Error(ErrorCode::InvalidArgument, "cover member has wrong universe");
      }
      covered = covered || mem.contains(c);
    }
    if (!covered) missing.push_back(complex->cell_name(c));
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw Error(ErrorCode::NotACover, "uncovered cells: " + list);
  }
}

std::size_t IndexedCover::order() const {
  std::size_t best = 0;
  for (CellId c = 0; c < complex->num_cells(); ++c) {
    std::size_t n = 0;
    for (const auto& m : members) n += m.contains(c) ? 1 : 0;
    best = std::max(best, n);
  }
  return best;
}

FiniteSetCellField::FiniteSetCellField(ComplexPtr k, std::size_t n, std::vector<std::vector<Vec>> s)
    : complex(std::move(k)), dim(n), sets(std::move(s)) {
  if (!complex || sets.size() != complex->num_cells()) {
    throw Error(ErrorCode::InvalidArgument, "finite-set field needs one set per cell");
  }
  for (CellId c = 0; c < sets.size(); ++c) {
    if (sets[c].empty()) throw Error(ErrorCode::InvalidArgument, "empty set on cell " + complex->cell_name(c));
    for (const auto& p : sets[c]) {
      if (p.size() != dim) throw Error(ErrorCode::InvalidArgument, "point of wrong dimension");
    }
  }
}

// ---------------------------------------------------------------------------

ScalarClassification classify_scalar(const ScalarCellField& f) {
  ScalarClassification out;
  const auto& k = *f.complex;
  for (CellId tau = 0; tau < k.num_cells(); ++tau) {
    for (CellId sigma : k.facets(tau)) {
      if (out.usc.holds && f[sigma] < f[tau]) out.usc = {false, FaceViolation{sigma, tau, std::nullopt}};
      if (out.lsc.holds && f[sigma] > f[tau]) out.lsc = {false, FaceViolation{sigma, tau, std::nullopt}};
    }
  }
  return out;
}

namespace {

Verdict face_inclusions(const ConvexCellRelation& phi) {
  const auto& k = *phi.complex;
  for (CellId tau = 0; tau < k.num_cells(); ++tau) {
    for (CellId sigma : k.facets(tau)) {
      if (auto y = containment_witness(phi[sigma], phi[tau])) return {false, FaceViolation{sigma, tau, *y}};
    }
  }
  return {};
}

}  // namespace

Verdict is_open_relation(const ConvexCellRelation& phi) {
  for (CellId c = 0; c < phi.bodies.size(); ++c) {
    if (!phi[c].is_open()) {
      throw Error(ErrorCode::NotOpenForm,
                  "cell " + phi.complex->cell_name(c) + " carries the closed form " + form_name(phi[c]));
    }
  }
  // Open convex bodies satisfy A ⊆ C ⟺ cl A ⊆ cl C.
  return face_inclusions(phi);
}

Verdict is_lsc_relation(const ConvexCellRelation& phi) { return face_inclusions(phi); }

Verdict is_increasing_cover(const IndexedCover& omega) {
  for (std::size_t k = 0; k + 1 < omega.size(); ++k) {
    for (CellId c : omega.members[k].ids()) {
      if (!omega.members[k + 1].contains(c)) {
        return {false, FaceViolation{c, c, Vec{Rational(static_cast<long>(k))}}};
      }
    }
  }
  return {};
}

ScalarCellField min_index_field(const IndexedCover& omega) {
  std::vector<ExtRational> alpha(omega.complex->num_cells(), ExtRational::pos_inf());
  for (std::size_t k = omega.size(); k-- > 0;) {
    for (CellId c : omega.members[k].ids()) alpha[c] = Rational(static_cast<long>(k));
  }
  return {omega.complex, std::move(alpha)};
}

namespace {

bool subset(const ConvexBody& a, const ConvexBody& b) {
  return !containment_witness(a, b) && (!b.is_open() || a.is_open());
}

std::optional<ConvexBody> merge_intervals(std::vector<Interval> parts) {
  const bool open = parts.front().open;
  for (const auto& p : parts) {
    if (p.open != open) return std::nullopt;
  }
  std::sort(parts.begin(), parts.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  Interval hull = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const Interval& p = parts[i];
    const bool connected = open ? p.lo < hull.hi : p.lo <= hull.hi;
    if (!connected) return std::nullopt;
    hull.hi = max(hull.hi, p.hi);
  }
  return ConvexBody(hull);
}

}  // namespace

ConvexCellRelation compose(const IndexedCover& omega, const std::vector<ConvexBody>& psi) {
  if (psi.size() < omega.size()) throw Error(ErrorCode::InvalidArgument, "psi must be defined on every index");
  const auto& k = *omega.complex;
  const std::size_t n = psi.empty() ? 0 : psi.front().dim();
  std::vector<ConvexBody> bodies;
  for (CellId c = 0; c < k.num_cells(); ++c) {
    std::vector<const ConvexBody*> parts;
    for (std::size_t i = 0; i < omega.size(); ++i) {
      if (omega.members[i].contains(c)) parts.push_back(&psi[i]);
    }
    const ConvexBody* largest = nullptr;
    for (const ConvexBody* cand : parts) {
      if (std::all_of(parts.begin(), parts.end(), [&](const ConvexBody* p) { return subset(*p, *cand); })) {
        largest = cand;
        break;
      }
    }
    if (largest) {
      bodies.push_back(*largest);
      continue;
    }
    std::vector<Interval> intervals;
    for (const ConvexBody* p : parts) {
      if (auto i = p->as<Interval>()) intervals.push_back(*i);
    }
    std::optional<ConvexBody> merged;
    if (intervals.size() == parts.size()) merged = merge_intervals(intervals);
    if (!merged) throw Error(ErrorCode::NonConvexUnion, "union on cell " + k.cell_name(c) + " is not convex");
    bodies.push_back(*merged);
  }
  return {omega.complex, n, std::move(bodies)};
}

std::vector<ConvexBody> order_relation(std::size_t m) {
  std::vector<ConvexBody> out;
  for (std::size_t k = 0; k < m; ++k) out.push_back(open_interval(Rational(static_cast<long>(k)), ExtRational::pos_inf()));
  return out;
}

ConvexCellRelation fatten(const ConvexCellRelation& phi, const Rational& eps, bool strict) {
  std::vector<ConvexBody> bodies;
  for (const auto& b : phi.bodies) bodies.push_back(fatten(b, eps, strict));
  return {phi.complex, phi.dim, std::move(bodies)};
}

ConvexCellRelation pointwise_closure(const ConvexCellRelation& phi) {
  std::vector<ConvexBody> bodies;
  for (const auto& b : phi.bodies) bodies.push_back(closure(b));
  return {phi.complex, phi.dim, std::move(bodies)};
}

std::pair<ScalarCellField, ScalarCellField> bounds_of(const ConvexCellRelation& phi) {
  std::vector<ExtRational> lo, hi;
  for (CellId c = 0; c < phi.bodies.size(); ++c) {
    const auto* i = phi[c].as<Interval>();
    if (!i) throw Error(ErrorCode::UnsupportedForm, "cell " + phi.complex->cell_name(c) + " is not interval-valued");
    lo.push_back(i->lo);
    hi.push_back(i->hi);
  }
  return {ScalarCellField(phi.complex, std::move(lo)), ScalarCellField(phi.complex, std::move(hi))};
}

ConvexCellRelation from_bounds(const ScalarCellField& xi, const ScalarCellField& eta) {
  if (xi.complex != eta.complex) throw Error(ErrorCode::MeshMismatch, "bounds live on different complexes");
  std::vector<ConvexBody> bodies;
  for (CellId c = 0; c < xi.values.size(); ++c) {
    if (!(xi[c] < eta[c])) {
      throw Error(ErrorCode::EmptyInterval, "cell " + xi.complex->cell_name(c) + ": " + format_ext(xi[c]) +
                                                " >= " + format_ext(eta[c]));
    }
    bodies.push_back(open_interval(xi[c], eta[c]));
  }
  return {xi.complex, 1, std::move(bodies)};
}

ConvexCellRelation convex_hull_relation(const FiniteSetCellField& phi) {
  std::vector<ConvexBody> bodies;
  for (const auto& s : phi.sets) bodies.push_back(closed_vpolytope(s));
  return {phi.complex, phi.dim, std::move(bodies)};
}

ConvexCellRelation separation_gadget(const ComplexPtr& k, const CellSet& a, const CellSet& b) {
  if (a.universe() != k->num_cells() || b.universe() != k->num_cells()) {
    throw Error(ErrorCode::InvalidArgument, "subcomplex has wrong universe");
  }
  if (!is_downward_closed(*k, a) || !is_downward_closed(*k, b)) {
    throw Error(ErrorCode::InvalidArgument, "A and B must be subcomplexes");
  }
  for (CellId c : a.ids()) {
    if (b.contains(c)) throw Error(ErrorCode::NotDisjoint, "cell " + k->cell_name(c) + " lies in A and B");
  }
  std::vector<ConvexBody> bodies;
  for (CellId c = 0; c < k->num_cells(); ++c) {
    if (a.contains(c)) {
      bodies.push_back(open_interval(ExtRational::neg_inf(), -1));
    } else if (b.contains(c)) {
      bodies.push_back(open_interval(1, ExtRational::pos_inf()));
    } else {
      bodies.push_back(open_interval(ExtRational::neg_inf(), ExtRational::pos_inf()));
    }
  }
  return {k, 1, std::move(bodies)};
}

IndexedCover cover_from_relation(const ConvexCellRelation& phi, const std::vector<Vec>& samples) {
  const auto v = is_open_relation(phi);
  if (!v) {
    throw Error(ErrorCode::NotOpenRelation, "face " + phi.complex->cell_name(v.witness->face) + " < " +
                                                phi.complex->cell_name(v.witness->coface));
  }
  const auto& k = *phi.complex;
  std::vector<OpenCellSet> members;
  for (const auto& y : samples) {
    CellSet s(k.num_cells());
    for (CellId c = 0; c < k.num_cells(); ++c) {
      if (contains(phi[c], y)) s.insert(c);
    }
    members.emplace_back(k, std::move(s));
  }
  return {phi.complex, std::move(members)};
}

Membership membership(const ConvexCellRelation& phi, CellId cell, const Vec& y) {
  return membership(phi[cell], y);
}

ScalarCellField transport(const ScalarCellField& f, const Refinement& r) {
  if (f.complex != r.coarse) throw Error(ErrorCode::MeshMismatch, "field does not live on the coarse complex");
  return {r.fine, transport_cells(f.values, r)};
}

ConvexCellRelation transport(const ConvexCellRelation& phi, const Refinement& r) {
  if (phi.complex != r.coarse) throw Error(ErrorCode::MeshMismatch, "relation does not live on the coarse complex");
  return {r.fine, phi.dim, transport_cells(phi.bodies, r)};
}

IndexedCover transport(const IndexedCover& omega, const Refinement& r) {
  if (omega.complex != r.coarse) throw Error(ErrorCode::MeshMismatch, "cover does not live on the coarse complex");
  std::vector<OpenCellSet> members;
  for (const auto& m : omega.members) members.push_back(transport(m, r));
  return {r.fine, std::move(members)};
}

}  // namespace selectra
