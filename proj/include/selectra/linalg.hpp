#pragma once

#include <optional>
#include <vector>

#include "selectra/rational.hpp"

namespace selectra::linalg {

using Matrix = std::vector<Vec>;  // row-major

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(Matrix m);

/// Rank of the affine hull of the points (number of affinely independent
/// points minus one). Empty input has rank -1.
int affine_rank(const std::vector<Vec>& points);

/// Solves A x = b when the solution exists and is unique. Returns nullopt
/// when the system is inconsistent or underdetermined.
std::optional<Vec> solve_unique(const Matrix& a, const Vec& b);

/// Basis of { x : A x = 0 } with `cols` unknowns.
std::vector<Vec> nullspace(const Matrix& a, std::size_t cols);

/// Determinant of a square matrix.
Rational determinant(Matrix m);

}  // namespace selectra::linalg
