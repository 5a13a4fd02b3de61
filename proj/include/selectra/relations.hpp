#pragma once

#include <optional>
#include <vector>

#include "selectra/body.hpp"
#include "selectra/complex.hpp"

namespace selectra {

/// One extended rational per cell; read as the function on |K| whose value
/// at x is the value on carrier(x).
struct ScalarCellField {
  ComplexPtr complex;
  std::vector<ExtRational> values;

  ScalarCellField() = default;
  /// Throws InvalidArgument unless there is one value per cell.
  ScalarCellField(ComplexPtr k, std::vector<ExtRational> v);
  const ExtRational& operator[](CellId c) const { return values.at(c); }
  friend bool operator==(const ScalarCellField& a, const ScalarCellField& b) {
    return a.complex == b.complex && a.values == b.values;
  }
};

/// One convex body in ℝⁿ per cell, ℓ∞ geometry throughout.
struct ConvexCellRelation {
  ComplexPtr complex;
  std::size_t dim = 0;
  std::vector<ConvexBody> bodies;

  ConvexCellRelation() = default;
  /// Throws InvalidArgument on a missing cell or a body of the wrong dimension.
  ConvexCellRelation(ComplexPtr k, std::size_t n, std::vector<ConvexBody> b);
  const ConvexBody& operator[](CellId c) const { return bodies.at(c); }
  friend bool operator==(const ConvexCellRelation& a, const ConvexCellRelation& b) {
    return a.complex == b.complex && a.dim == b.dim && a.bodies == b.bodies;
  }
};

/// Open cover of |K| indexed by 0..m−1.
struct IndexedCover {
  ComplexPtr complex;
  std::vector<OpenCellSet> members;

  IndexedCover() = default;
  /// Throws NotACover if some cell lies in no member.
  IndexedCover(ComplexPtr k, std::vector<OpenCellSet> m);
  std::size_t size() const { return members.size(); }
  /// Largest number of members containing a single cell.
  std::size_t order() const;
};

/// One nonempty finite subset of ℚⁿ per cell.
struct FiniteSetCellField {
  ComplexPtr complex;
  std::size_t dim = 0;
  std::vector<std::vector<Vec>> sets;

  FiniteSetCellField() = default;
  FiniteSetCellField(ComplexPtr k, std::size_t n, std::vector<std::vector<Vec>> s);
};

/// A failed face condition: `face` ≤ `coface` and `point` is the offending
/// value (a member of the face's body for relations).
struct FaceViolation {
  CellId face;
  CellId coface;
  std::optional<Vec> point;
};

struct Verdict {
  bool holds = true;
  std::optional<FaceViolation> witness;
  explicit operator bool() const { return holds; }
};

struct ScalarClassification {
  Verdict usc;
  Verdict lsc;
  bool is_usc() const { return usc.holds; }
  bool is_lsc() const { return lsc.holds; }
};

/// u.s.c. ⟺ f(σ) ≥ f(τ) and l.s.c. ⟺ f(σ) ≤ f(τ) for all faces σ ≤ τ.
ScalarClassification classify_scalar(const ScalarCellField& f);

/// P(σ) ⊆ P(τ) for every σ ≤ τ. Errors: NotOpenForm.
Verdict is_open_relation(const ConvexCellRelation& phi);
/// P(σ) ⊆ cl P(τ) for every σ ≤ τ.
Verdict is_lsc_relation(const ConvexCellRelation& phi);
/// member(k) ⊆ member(k+1) for every k; the witness cell is in member(k) only.
Verdict is_increasing_cover(const IndexedCover& omega);

/// α(σ) = min { k : σ ∈ member(k) }.
ScalarCellField min_index_field(const IndexedCover& omega);

/// Cellwise union of psi[k] over the members containing the cell.
/// Errors: InvalidArgument (psi too short), NonConvexUnion.
ConvexCellRelation compose(const IndexedCover& omega, const std::vector<ConvexBody>& psi);
/// The order relation {(k, t) : k < t} as bodies (k, +∞).
std::vector<ConvexBody> order_relation(std::size_t m);

ConvexCellRelation fatten(const ConvexCellRelation& phi, const Rational& eps, bool strict);
ConvexCellRelation pointwise_closure(const ConvexCellRelation& phi);

/// ξ = inf, η = sup of interval-valued relations. Errors: UnsupportedForm.
std::pair<ScalarCellField, ScalarCellField> bounds_of(const ConvexCellRelation& phi);
/// Open intervals (ξ(σ), η(σ)). Errors: EmptyInterval, MeshMismatch.
ConvexCellRelation from_bounds(const ScalarCellField& xi, const ScalarCellField& eta);

ConvexCellRelation convex_hull_relation(const FiniteSetCellField& phi);

/// (−∞,−1) on A, (1,∞) on B, ℝ elsewhere. A and B must be subcomplexes.
/// Errors: NotDisjoint, InvalidArgument.
ConvexCellRelation separation_gadget(const ComplexPtr& k, const CellSet& a, const CellSet& b);

/// member(α) = { σ : samples[α] ∈ P(σ) }. Errors: NotOpenRelation, NotACover
/// (message lists the uncovered cells).
IndexedCover cover_from_relation(const ConvexCellRelation& phi, const std::vector<Vec>& samples);

Membership membership(const ConvexCellRelation& phi, CellId cell, const Vec& y);

/// Cellwise transport along a refinement (fine cell inherits its parent's value).
ScalarCellField transport(const ScalarCellField& f, const Refinement& r);
ConvexCellRelation transport(const ConvexCellRelation& phi, const Refinement& r);
IndexedCover transport(const IndexedCover& omega, const Refinement& r);

}  // namespace selectra
