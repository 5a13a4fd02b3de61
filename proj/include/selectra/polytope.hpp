#pragma once

#include <vector>

#include "selectra/rational.hpp"

namespace selectra {

/// Closed halfspace a·y ≤ b. Normals produced by this library are scaled so
/// that ‖a‖₁ = 1, which makes b − a·y the ℓ∞ distance to the bounding plane.
struct Halfspace {
  Vec a;
  Rational b;
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

constexpr std::size_t kMaxPolytopeVertices = 32;
constexpr std::size_t kMaxPolytopeDim = 3;

/// Rescales to ‖a‖₁ = 1. Throws InvalidArgument for a zero normal.
Halfspace normalized(const Halfspace& h);

/// Removes duplicates and points lying in the hull of the others; the result
/// is sorted lexicographically.
std::vector<Vec> extreme_points(std::vector<Vec> points);

/// Inequality description of conv(points) for dimension ≤ 3, including a
/// pair of opposite inequalities for each affine-hull equation. Sorted and
/// duplicate-free.
std::vector<Halfspace> hrep_from_points(const std::vector<Vec>& points, std::size_t dim);

/// Vertices of the bounded polyhedron {a·y ≤ b}, sorted. Throws
/// EnumerationOverflow above kMaxPolytopeVertices.
std::vector<Vec> vertices_from_hrep(const std::vector<Halfspace>& hs, std::size_t dim);

/// Exact ℓ∞ distance from y to conv(points) (linear program).
Rational distance_to_hull(const std::vector<Vec>& points, const Vec& y);

Vec centroid(const std::vector<Vec>& points);

}  // namespace selectra
