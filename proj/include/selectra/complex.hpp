#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "selectra/rational.hpp"

namespace selectra {

using VertexId = std::uint32_t;
using CellId = std::uint32_t;

/// A cell is identified by its sorted vertex tuple.
using Cell = std::vector<VertexId>;

/// Finite geometric simplicial complex with rational vertex coordinates.
///
/// Cells are stored in lexicographic order of their vertex tuples and a
/// CellId is the position in that order. Every nonempty subset of a cell is
/// itself a cell. Instances are immutable and shared through ComplexPtr.
class SimplicialComplex {
 public:
  std::size_t dim_ambient() const { return dim_ambient_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const Vec& vertex(VertexId v) const { return vertices_.at(v); }

  std::size_t num_cells() const { return cells_.size(); }
  const Cell& cell(CellId c) const { return cells_.at(c); }
  int cell_dim(CellId c) const { return static_cast<int>(cells_.at(c).size()) - 1; }
  /// Maximum cell dimension (−1 for the empty complex).
  int dimension() const { return dimension_; }

  std::optional<CellId> find(const Cell& c) const;
  /// Throws UnknownCell.
  CellId id_of(const Cell& c) const;
  CellId vertex_cell(VertexId v) const { return vertex_cell_.at(v); }

  /// Codimension-one faces / cofaces, sorted by CellId.
  const std::vector<CellId>& facets(CellId c) const { return facets_.at(c); }
  const std::vector<CellId>& cofacets(CellId c) const { return cofacets_.at(c); }
  const std::vector<CellId>& maximal_cells() const { return maximal_; }

  /// Vertex ids adjacent to v through an edge.
  std::vector<VertexId> neighbours(VertexId v) const;

  /// "0-1-2" style identifier.
  std::string cell_name(CellId c) const;
  static std::string cell_name(const Cell& c);
  /// Inverse of cell_name. Throws ParseError / UnknownCell.
  CellId parse_cell_name(const std::string& name) const;

  /// Barycenter of a cell (exact).
  Vec barycenter(CellId c) const;

  /// Whether `face` ≤ `coface` in the face order (reflexive).
  bool is_face(CellId face, CellId coface) const;

 private:
  friend struct ComplexBuilder;
  std::size_t dim_ambient_ = 0;
  int dimension_ = -1;
  std::vector<Vec> vertices_;
  std::vector<Cell> cells_;
  std::vector<CellId> vertex_cell_;
  std::vector<std::vector<CellId>> facets_;
  std::vector<std::vector<CellId>> cofacets_;
  std::vector<CellId> maximal_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

struct BuildOptions {
  /// Pairwise interior-disjointness check for ambient dimension ≤ 3.
  /// Constructions that are valid by design (subdivisions, products) skip it.
  bool validate_embedding = true;
};

/// Face-closed complex spanned by the given top simplices. Every point is a
/// vertex (unused points become isolated vertices).
/// Errors: InvalidArgument (index out of range, ragged coordinates),
/// DegenerateSimplex, OverlappingInteriors.
ComplexPtr build_complex(std::vector<Vec> points, const std::vector<Cell>& top_simplices,
                         BuildOptions options = {});

/// Reflexive lists of faces / cofaces, ordered by CellId. Errors: UnknownCell.
std::vector<CellId> faces(const SimplicialComplex& k, CellId c);
std::vector<CellId> cofaces(const SimplicialComplex& k, CellId c);

struct Carrier {
  CellId cell;
  Vec barycentric;  // one strictly positive weight per vertex of `cell`
};

/// Unique cell whose relative interior contains x. Errors: PointOutsideComplex.
Carrier carrier(const SimplicialComplex& k, const Vec& x);

// ---------------------------------------------------------------------------
// Cell sets

class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(std::size_t universe) : mask_(universe, false) {}
  static CellSet all(std::size_t universe);
  static CellSet of(std::size_t universe, std::span<const CellId> ids);

  std::size_t universe() const { return mask_.size(); }
  bool contains(CellId c) const { return mask_.at(c); }
  void insert(CellId c) { mask_.at(c) = true; }
  void erase(CellId c) { mask_.at(c) = false; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<CellId> ids() const;
  bool subset_of(const CellSet& other) const;
  CellSet united(const CellSet& other) const;
  CellSet intersected(const CellSet& other) const;

  friend bool operator==(const CellSet&, const CellSet&) = default;

 private:
  std::vector<bool> mask_;
};

bool is_upward_closed(const SimplicialComplex& k, const CellSet& s);
bool is_downward_closed(const SimplicialComplex& k, const CellSet& s);
/// Smallest subcomplex containing the cells.
CellSet downward_closure(const SimplicialComplex& k, const CellSet& s);

/// A cell set closed under cofaces: exactly the sets whose union of open
/// cells is open in |K|.
class OpenCellSet {
 public:
  OpenCellSet() = default;
  /// Throws InvalidArgument if `cells` is not upward closed.
  OpenCellSet(const SimplicialComplex& k, CellSet cells);

  const CellSet& cells() const { return cells_; }
  bool contains(CellId c) const { return cells_.contains(c); }
  std::vector<CellId> ids() const { return cells_.ids(); }

  friend bool operator==(const OpenCellSet&, const OpenCellSet&) = default;

 private:
  CellSet cells_;
};

/// Upward closure of the given cells. Errors: UnknownCell.
OpenCellSet open_star(const SimplicialComplex& k, std::span<const CellId> cells);

/// Vertices of the closed star of v (v and all vertices sharing a cell with it).
std::vector<VertexId> closed_star_vertices(const SimplicialComplex& k, VertexId v);

// ---------------------------------------------------------------------------
// Piecewise-linear maps

/// One point of ℚⁿ per vertex, extended affinely over every simplex.
class PLMap {
 public:
  PLMap() = default;
  /// Throws InvalidArgument unless there is exactly one value of dimension
  /// `target_dim` per vertex.
  PLMap(ComplexPtr complex, std::size_t target_dim, std::vector<Vec> values);

  const ComplexPtr& complex() const { return complex_; }
  std::size_t target_dim() const { return target_dim_; }
  const Vec& at(VertexId v) const { return values_.at(v); }
  const std::vector<Vec>& values() const { return values_; }

 private:
  ComplexPtr complex_;
  std::size_t target_dim_ = 0;
  std::vector<Vec> values_;
};

/// Scalar PL function helpers (n = 1).
PLMap make_pl_function(ComplexPtr complex, const std::vector<Rational>& values);
Rational scalar_at(const PLMap& f, VertexId v);

/// Errors: PointOutsideComplex.
Vec eval_pl(const PLMap& f, const Vec& x);
/// Σ λ_i f(v_i) over the vertices of `cell`.
Vec eval_in_cell(const PLMap& f, CellId cell, const Vec& barycentric);

/// Max pairwise ℓ∞ distance of f over the vertices of the closure of S.
Rational oscillation(const PLMap& f, const OpenCellSet& s);
Rational oscillation_on_vertices(const PLMap& f, std::span<const VertexId> vertices);

// ---------------------------------------------------------------------------
// Refinements

/// A subdivision `fine` of `coarse`. Every fine vertex is recorded as an exact
/// convex combination of coarse vertices; `parent[c]` is the coarse cell whose
/// relative interior contains the relative interior of fine cell c.
struct Refinement {
  ComplexPtr coarse;
  ComplexPtr fine;
  std::vector<std::vector<std::pair<VertexId, Rational>>> weights;
  std::vector<CellId> parent;
};

Refinement identity_refinement(const ComplexPtr& k);
/// `outer` refines the fine complex of `inner`; result maps outer.fine → inner.coarse.
Refinement compose(const Refinement& inner, const Refinement& outer);

/// PL transport: evaluate at the fine vertices.
PLMap transport(const PLMap& f, const Refinement& r);

/// Cellwise transport: fine cell takes the value of its parent.
template <typename T>
std::vector<T> transport_cells(const std::vector<T>& coarse_values, const Refinement& r) {
  std::vector<T> out;
  out.reserve(r.parent.size());
  for (CellId p : r.parent) out.push_back(coarse_values.at(p));
  return out;
}

/// Open sets are transported by preimage of the parent map (stays upward closed).
OpenCellSet transport(const OpenCellSet& s, const Refinement& r);
CellSet transport_cells(const CellSet& s, const Refinement& r);

/// Barycentric subdivision; new vertex i is the barycenter of old cell i.
Refinement barycentric_subdivide(const ComplexPtr& k);

/// Splits edges crossing each level of f until every cell of the result has
/// f-image entirely ≤ or ≥ each level. f must be a scalar PL function on k.
Refinement subdivide_by_levels(const ComplexPtr& k, const PLMap& f, std::vector<Rational> levels);

// ---------------------------------------------------------------------------
// Products

struct ProductComplex {
  ComplexPtr left;
  ComplexPtr right;
  ComplexPtr product;
  PLMap project_left;
  PLMap project_right;

  VertexId vertex(VertexId left_v, VertexId right_v) const {
    return static_cast<VertexId>(left_v * right->num_vertices() + right_v);
  }
};

/// Staircase triangulation of every prism σ×τ, vertex (v, w) ↦ v·|V(L)| + w.
ProductComplex product_complex(const ComplexPtr& left, const ComplexPtr& right);

/// Staircase barycentric coordinates of (x, y) inside the prism σ×τ, given the
/// barycentric coordinates of x in σ and y in τ. Returns pairs of (index into
/// σ, index into τ, weight) with positive weights along the monotone path.
struct StaircaseWeight {
  std::size_t left_index;
  std::size_t right_index;
  Rational weight;
};
std::vector<StaircaseWeight> staircase_coordinates(const Vec& left_bary, const Vec& right_bary);

}  // namespace selectra
