#pragma once

#include <map>
#include <utility>

#include "selectra/random.hpp"
#include "selectra/relations.hpp"

namespace selectra {

// Seeded random instance families. Every generator draws only from the Rng it
// is given, so a seed fixes the instance.

/// Segments [i, i+1] for i < segments.
ComplexPtr path_complex(std::size_t segments);
/// Kuhn triangulation of the grid [0,a]×[0,b]×… via iterated products of paths.
ComplexPtr kuhn_grid(const std::vector<std::size_t>& sizes);
/// The complex spanned by a subset of the top simplices, vertices renumbered.
ComplexPtr sub_complex(const SimplicialComplex& k, const std::vector<CellId>& tops);

/// Random grid of dimension in [1, max_dim] with at most max_cells cells,
/// occasionally with some top simplices removed.
ComplexPtr random_complex(Rng& rng, int max_dim, std::size_t max_cells);

enum class BodyKind { Interval, Box, VPolytope, HPolytope };

/// Bodies nested along the face order: P(σ) is built from the hull of point
/// clouds attached to the vertices of σ, grown by (dim σ + 1)/4. VPolytope
/// gives strict fattenings, HPolytope fixed-normal open H-polytopes. Interval
/// and Box may have infinite sides on open stars.
ConvexCellRelation random_open_relation(Rng& rng, const ComplexPtr& k, std::size_t n, BodyKind kind);
/// Closed bodies (closed boxes or V-polytopes) nested along the face order.
ConvexCellRelation random_closed_relation(Rng& rng, const ComplexPtr& k, std::size_t n, BodyKind kind);
/// Replaces the body on a random positive-dimensional cell by one built from
/// a proper face, which usually breaks nesting. Same openness as the input.
ConvexCellRelation perturb_relation(Rng& rng, const ConvexCellRelation& phi);

/// ξ u.s.c., η l.s.c., ξ < η cellwise; infinite values on random open stars
/// when allowed.
std::pair<ScalarCellField, ScalarCellField> random_envelopes(Rng& rng, const ComplexPtr& k, bool allow_infinite);

/// member(k) = {σ : α(σ) ≤ k} for a random u.s.c. α with values in [0, m).
IndexedCover random_increasing_cover(Rng& rng, const ComplexPtr& k, std::size_t m);

/// Downward closure of a random nonempty set of cells.
CellSet random_subcomplex(Rng& rng, const SimplicialComplex& k);

/// Random interior point of P(v) on each vertex of A. Since P(v) ⊆ P(σ) for
/// open relations this is a selection on A.
std::map<VertexId, Vec> random_vertex_selection(Rng& rng, const ConvexCellRelation& phi, const CellSet& a);

/// Random point of the body (strictly inside for open bodies).
Vec random_member(Rng& rng, const ConvexBody& body);

}  // namespace selectra
