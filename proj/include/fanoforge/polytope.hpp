#pragma once

#include <cstdint>
#include <vector>

#include "fanoforge/fan.hpp"
#include "fanoforge/rational.hpp"

namespace fanoforge {

/// Bounded polytope {m : ⟨m, a_i⟩ >= -1}. Vertices are computed exactly from
/// the inequalities.
class LatticePolytope {
 public:
  /// Throws PreconditionError if the polytope is unbounded or the origin is
  /// not an interior point (every inequality has right-hand side -1, so the
  /// origin is interior as soon as it is bounded).
  explicit LatticePolytope(std::vector<RationalVector> normals);

  size_t dim() const { return dim_; }
  const std::vector<RationalVector>& normals() const { return normals_; }
  const std::vector<RationalVector>& vertices() const { return vertices_; }
  bool is_lattice() const;
  bool contains(const RationalVector& m) const;

 private:
  size_t dim_;
  std::vector<RationalVector> normals_;
  std::vector<RationalVector> vertices_;  // sorted
};

/// {m : ⟨m, v_r⟩ >= -1 for every ray}. For a smooth complete fan the
/// vertices are among the m_σ.
LatticePolytope anticanonical_polytope(const Fan& fan);

/// Integer points, by bounding-box enumeration.
std::int64_t lattice_point_count(const LatticePolytope& p);

/// n! times the Euclidean volume, from a pulling triangulation of the
/// boundary coned over the origin.
Rational normalized_volume(const LatticePolytope& p);

}  // namespace fanoforge
