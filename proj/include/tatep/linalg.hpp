#pragma once

#include "tatep/rational.hpp"

#include <optional>
#include <vector>

namespace tatep::linalg {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row major

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Matrix& a, int ncols);

int rank(Matrix a, int ncols);

/// Solves a x = b exactly; nullopt when inconsistent. Free variables are set to 0.
std::optional<Vector> solve(const Matrix& a, const Vector& b, int ncols);

/// Basis of {x : a x = 0}.
std::vector<Vector> nullspace(const Matrix& a, int ncols);

Rational determinant(Matrix a);

/// Affine rank of a point set (−1 when empty).
int affine_rank(const std::vector<Vector>& points);

}  // namespace tatep::linalg
