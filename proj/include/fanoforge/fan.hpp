#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fanoforge/rational.hpp"

namespace fanoforge {

using RayIndexSet = std::vector<size_t>;  // always sorted

/// Simplicial fan in Z^n given by its rays and maximal cones. Construction
/// only checks well-formedness (primitive integral rays, cone sizes, index
/// range); use validate() for smoothness and completeness.
class Fan {
 public:
  Fan(size_t dim, std::vector<RationalVector> rays, std::vector<RayIndexSet> max_cones);

  size_t dim() const { return dim_; }
  const std::vector<RationalVector>& rays() const { return rays_; }
  const std::vector<RayIndexSet>& max_cones() const { return cones_; }
  /// Picard number of the (complete, simplicial) toric variety.
  size_t rho() const { return rays_.size() - dim_; }

  bool has_cone(const RayIndexSet& cone) const;  // exact maximal cone
  bool in_some_cone(const RayIndexSet& set) const;  // contained in a maximal cone
  std::optional<size_t> ray_index(const RationalVector& v) const;

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.cones_ == b.cones_;
  }

 private:
  size_t dim_;
  std::vector<RationalVector> rays_;
  std::vector<RayIndexSet> cones_;  // sorted
};

struct FanReport {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Smoothness (|det| = 1 per maximal cone), the wall condition (each wall
/// in exactly two cones, on opposite sides) and connectedness of the wall
/// graph.
FanReport validate(const Fan& fan);

struct PrimitiveRelation {
  RayIndexSet collection;
  RayIndexSet target_cone;            // support of the right-hand side
  std::vector<Integer> coefficients;  // aligned with target_cone, all positive
  Integer degree;                     // |collection| - sum of coefficients
};

/// Every primitive collection with its relation, ordered by (size, indices).
/// Throws PreconditionError on an invalid fan.
std::vector<PrimitiveRelation> primitive_relations(const Fan& fan);

/// Blow-up along the orbit closure of `cone`: adds the ray sum and star
/// subdivides. Requires |cone| >= 2 and cone in the fan.
Fan star_subdivide(const Fan& fan, RayIndexSet cone);

/// Circuit Σ_{J+} v = Σ_{J-} v with |J+| = 3 and |J-| = 2.
struct Circuit {
  RayIndexSet plus;   // t1, t2, t3
  RayIndexSet minus;  // a, b
};

/// (3,2) bistellar exchange in dimension 4. Whichever triangulation of the
/// circuit is present is replaced by the other one, so applying it twice
/// is the identity. Throws PreconditionError when the relation does not
/// hold, neither triangulation is present, or the result is not smooth.
Fan flip(const Fan& fan, const Circuit& circuit);

struct WallRelation {
  RayIndexSet wall;
  size_t a = 0, b = 0;             // the rays completing the wall to the two cones
  std::vector<Integer> intersections;  // D_r · C for every ray r
  size_t negative = 0;             // number of negative coefficients
  size_t locus_dim = 0;            // dim - negative
};

/// One relation per wall; these generate NE(X).
std::vector<WallRelation> mori_wall_relations(const Fan& fan);

/// Walls whose relation is v_a + v_b = t1 + t2 + t3 (exceptional lines),
/// returned as circuits ready for flip().
std::vector<Circuit> exceptional_line_circuits(const Fan& fan);

/// True iff every primitive relation has positive degree. Cross-checked with
/// the polytope criterion; throws InternalError if they disagree.
bool is_fano(const Fan& fan);

/// The vertex criterion on its own: ⟨m_σ, u⟩ > -1 for every maximal cone σ
/// and ray u not in σ.
bool is_fano_by_polytope(const Fan& fan);

/// b_0, b_2, ..., b_{2n} from the h-vector. Throws PreconditionError on an
/// invalid fan.
std::vector<std::int64_t> betti(const Fan& fan);

nlohmann::json fan_to_json(const Fan& fan);
Fan fan_from_json(const nlohmann::json& doc);

/// Standard fans used by the registry and tests.
Fan projective_space_fan(size_t n);
Fan product_fan(const Fan& a, const Fan& b);

}  // namespace fanoforge
