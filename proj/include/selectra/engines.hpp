#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "selectra/complex.hpp"
#include "selectra/relations.hpp"

namespace selectra {

/// Per-cell evidence that a PL map selects a relation. Cells are cells of
/// the map's (fine) complex; `coarse_cell` is the parent on which the body
/// lives. Because the map is affine on each cell and bodies are convex, the
/// vertex checks cover every point of the cell.
struct CellCertificate {
  CellId cell;
  CellId coarse_cell;
  bool open_body;
  /// Open bodies: minimum over the vertices of the ℓ∞ distance to the
  /// complement; must be > 0.
  ExtRational margin;
  /// Closed bodies: maximum over the vertices of the ℓ∞ distance to the body;
  /// must be ≤ tolerance.
  Rational distance;
};

struct SelectionCertificate {
  Rational tolerance;
  bool valid = true;
  std::optional<CellId> failing_cell;
  std::vector<CellCertificate> cells;
  /// Smallest open-body margin (+∞ when there is none).
  ExtRational min_margin = ExtRational::pos_inf();
  /// Largest closed-body distance.
  Rational max_distance;
};

/// Builds the certificate of f (on r.fine) against phi (on r.coarse).
/// Errors: MeshMismatch.
SelectionCertificate certify_selection(const PLMap& f, const Refinement& r, const ConvexCellRelation& phi,
                                       const Rational& tolerance = 0);

struct Selection {
  Refinement refinement;  // coarse = relation complex, fine = map complex
  PLMap map;
  SelectionCertificate certificate;
};

struct PartitionOfUnity {
  Refinement refinement;
  /// One PL function per index on refinement.fine.
  std::vector<PLMap> functions;
  /// Index of the hat function each fine vertex contributes to.
  std::vector<std::size_t> assignment;
};

/// One barycentric subdivision; the barycenter of old cell σ goes to the
/// smallest index whose member contains σ. Errors: NotACover.
PartitionOfUnity pou_from_cover(const IndexedCover& omega);

/// f(v) = interior point of P(v), extended affinely. Errors: NotOpenRelation.
Selection select_pou(const ConvexCellRelation& phi);

/// ξ < f < η with f(v) = midpoint rule at vertices.
/// Errors: NotUSC, NotLSC, GapViolated, MeshMismatch.
Selection insert(const ScalarCellField& xi, const ScalarCellField& eta);

struct MichaelStep {
  int n;
  Rational step_norm;  // max vertex ℓ∞ distance between f_{n+1} and f_n
  Rational bound;      // 2^{−n+1}
  Rational distance;   // max vertex distance of f_{n+1} to Φ
  std::size_t vertices;
  int subdivisions;
};

struct MichaelResult {
  Selection selection;
  std::vector<MichaelStep> trace;
};

/// Successive approximation for closed-convex l.s.c. relations. f₁ selects
/// the 1/2-fattening; f_{n+1}(v) stays within 2^{−n} of f_n(v) and within
/// 2^{−(n+1)} of P(v), both with positive slack. Stops once 2^{−n} ≤ tol.
/// Errors: NotLSCRelation, UnsupportedForm (open body),
/// SubdivisionLimitExceeded.
MichaelResult select_michael(const ConvexCellRelation& phi, const Rational& tol, int max_depth = 12);

/// Extends a selection g given on the vertices of the subcomplex A.
/// Errors: NotOpenRelation, NotASelectionOnA, InvalidArgument,
/// SubdivisionLimitExceeded.
Selection extend_selection(const ConvexCellRelation& phi, const CellSet& a, const std::map<VertexId, Vec>& g,
                           int max_depth = 12);

struct CoverRefinement {
  Refinement refinement;
  IndexedCover phi;          // on refinement.fine
  IndexedCover omega_fine;   // Ω transported to refinement.fine
  PLMap f;                   // on refinement.fine
  std::size_t order_bound;
};

/// Errors: NotIncreasing.
CoverRefinement refine_countable(const IndexedCover& omega);
/// Errors: NotIncreasing.
CoverRefinement refine_c0(const IndexedCover& omega);

/// A selection g on K×L together with its curried form x ↦ g(x, ·).
struct CurriedSelection {
  ProductComplex product;
  Selection selection;
  /// Max over top simplices of the ℓ∞ operator norm of the x-part of ∇g.
  Rational modulus;

  /// g(x, y) through the staircase coordinates of (x, y).
  Vec evaluate(const Vec& x, const Vec& y) const;
  /// y ↦ g(x, y).
  std::function<Vec(const Vec&)> curry(const Vec& x) const;
};

/// Errors: NotOpenRelation, MeshMismatch (relation not on the product).
CurriedSelection lift_product(const ProductComplex& pc, const ConvexCellRelation& phi);

/// select_pou of the separation gadget; f < −1 on A and f > 1 on B.
Selection separate_sets(const ComplexPtr& k, const CellSet& a, const CellSet& b);

}  // namespace selectra
