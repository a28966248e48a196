#pragma once

#include <optional>

#include "fanoforge/rational.hpp"

// Dense exact linear algebra over Q. Sizes here are tiny (n <= ~10), so
// everything is plain Gauss-Jordan elimination.
namespace fanoforge::linalg {

struct Echelon {
  RationalMatrix rows;          // nonzero rows of the reduced row echelon form
  std::vector<size_t> pivots;   // pivot column of each row
};

Echelon rref(RationalMatrix m, size_t ncols);

size_t rank(const RationalMatrix& m, size_t ncols);

/// Basis of {x : m x = 0}, one vector per free column, primitive-integer.
RationalMatrix nullspace(const RationalMatrix& m, size_t ncols);

/// Canonical basis of the row space: RREF rows scaled to primitive integers.
/// Leading entries are positive.
RationalMatrix canonical_row_basis(const RationalMatrix& m, size_t ncols);

/// Unique solution of the square system a x = b, or nullopt when singular.
std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b);

Rational det(RationalMatrix m);

/// Orthogonal projection of x onto the complement of span(basis).
RationalVector project_out(const RationalVector& x, const RationalMatrix& basis);

}  // namespace fanoforge::linalg
