#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fanoforge/rational.hpp"

namespace fanoforge {

/// Linear form on the ambient space; used as a supporting hyperplane.
struct LinearFunctional {
  RationalVector coeffs;

  Rational operator()(const RationalVector& v) const { return dot(coeffs, v); }
};

/// Finitely generated rational polyhedral cone in Q^n, stored in canonical
/// form so that equal cones compare equal member-wise.
///
/// The cone is L + P where L is the lineality space and P = C ∩ L^⊥ is
/// pointed. `rays()` are the extremal rays of P, each a primitive integer
/// vector, sorted lexicographically. `lineality()` is the RREF basis of L
/// with primitive rows (sign normalized: leading entry positive).
///
/// Construction also records the inequality description: `facets()` are the
/// rays of the dual cone and `orthogonal()` spans span(C)^⊥, so
///   C = { x : f·x >= 0 for f in facets, o·x = 0 for o in orthogonal }.
class Cone {
 public:
  /// Canonicalizes cone(generators). Throws InputError on a dimension
  /// mismatch, a zero generator, or an empty list without `ambient_dim`.
  static Cone canonicalize(const std::vector<RationalVector>& generators,
                           std::optional<size_t> ambient_dim = std::nullopt);

  static Cone zero(size_t ambient_dim);
  static Cone whole_space(size_t ambient_dim);

  size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<RationalVector>& rays() const { return rays_; }
  const std::vector<RationalVector>& lineality() const { return lineality_; }
  const std::vector<RationalVector>& facets() const { return facets_; }
  const std::vector<RationalVector>& orthogonal() const { return orthogonal_; }

  bool is_pointed() const { return lineality_.empty(); }
  bool is_zero() const { return rays_.empty() && lineality_.empty(); }

  /// Dimension of the linear span.
  size_t dim() const { return ambient_dim_ - orthogonal_.size(); }

  /// rays plus ±lineality vectors; cone(generators()) == *this.
  std::vector<RationalVector> generators() const;

  bool contains(const RationalVector& v) const;
  bool contains(const Cone& other) const;

  /// Index of `v` among rays() after normalization to a primitive vector,
  /// or nullopt if v does not span an extremal ray.
  std::optional<size_t> ray_index(const RationalVector& v) const;

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.rays_ == b.rays_ &&
           a.lineality_ == b.lineality_;
  }

 private:
  Cone() = default;
  friend Cone dual(const Cone&);

  size_t ambient_dim_ = 0;
  std::vector<RationalVector> rays_;
  std::vector<RationalVector> lineality_;
  std::vector<RationalVector> facets_;
  std::vector<RationalVector> orthogonal_;
};

/// Face of a pointed cone, identified by the indices of the extremal rays it
/// contains. The zero face has no rays.
struct Face {
  Cone parent;
  std::vector<size_t> ray_indices;  // sorted
  size_t dim = 0;

  Cone as_cone() const;
  std::vector<RationalVector> rays() const;
};

/// {α : α·v >= 0 for all v in C}.
Cone dual(const Cone& cone);

/// Cone intersection, computed as dual(dual(a) + dual(b)).
Cone intersect(const Cone& a, const Cone& b);

/// The one-dimensional faces of a pointed cone. Throws PreconditionError
/// ("no extremal rays in lineality") when the cone has a lineality space.
std::vector<RationalVector> extremal_rays(const Cone& cone);

struct FaceTest {
  bool is_face = false;
  /// Supporting functional with cone ∩ ker(witness) = candidate, when is_face.
  LinearFunctional witness;
};

/// Whether `candidate` is a face of `cone`. Throws PreconditionError if
/// candidate is not contained in cone.
FaceTest face_test(const Cone& candidate, const Cone& cone);
bool is_face(const Cone& candidate, const Cone& cone);
bool is_face(const Face& candidate, const Cone& cone);

/// Builds the Face of a pointed `cone` spanned by the given ray indices.
/// Throws PreconditionError if those rays do not span a face.
Face make_face(const Cone& cone, std::vector<size_t> ray_indices);

/// All faces (k = nullopt) or all faces of dimension k, ordered by
/// (dim, ray indices). Includes {0} and the cone itself.
std::vector<Face> faces(const Cone& cone, std::optional<size_t> k = std::nullopt);

/// Smallest face containing every vector; throws PreconditionError if one
/// of them lies outside the cone.
Face minimal_face_containing(const Cone& cone, const std::vector<RationalVector>& vectors);

/// Verified face extension: for a ray τ with α·τ < 0, α >= 0 on all other
/// rays, and a face η ⊆ ker α, returns the face τ + η. Every violated
/// hypothesis is reported in a single HypothesisError.
Face cone_lemma_extend(const Cone& cone, const Face& tau, const LinearFunctional& alpha,
                       const Face& eta);

/// {"dim": n, "rays": [[...]], "lineality": [[...]]?}; rays sorted.
nlohmann::json cone_to_json(const Cone& cone);
Cone cone_from_json(const nlohmann::json& doc);

/// Accepts a JSON integer or a "p/q" string.
Rational rational_from_json(const nlohmann::json& v);
RationalVector vector_from_json(const nlohmann::json& v);
nlohmann::json vector_to_json(const RationalVector& v);

}  // namespace fanoforge
