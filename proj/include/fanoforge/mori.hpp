#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fanoforge/cone.hpp"

// Effective/movable cone vocabulary on top of the cone kernel. A model is
// pure convex data (classes in N^1, curve classes in N_1, coordinate-wise
// pairing); the checkers below verify lemma statements on encoded data and
// never infer geometry.

namespace fanoforge {

/// A labeled extremal ray of Eff. Fixed entries are the fixed prime divisors;
/// the rest are movable boundary rays.
struct EffRay {
  std::string name;
  RationalVector div_class;
  bool fixed = false;
  std::optional<RationalVector> curve_class;  // C_D, for fixed divisors
  std::string type_tag = "unknown";           // (3,0)^sm, (3,1)^sm, (3,0)^Q, (3,2), unknown
  nlohmann::json annotations = nlohmann::json::object();  // e.g. delta_X, dim_N; never inferred
};

struct EffModelMeta {
  bool rho_ge_7 = false;
  bool not_product = false;
};

enum class FaceKind { Fixed, Movable };
const char* to_string(FaceKind k);

class EffModel {
 public:
  /// Validates: classes have length rho, mov ⊆ eff, every named class spans
  /// an extremal ray of eff, D·C_D = -1 for type-tagged fixed divisors.
  /// Throws InputError on malformed data, PreconditionError on a violated
  /// model invariant.
  EffModel(size_t rho, std::vector<std::string> basis, std::vector<EffRay> rays,
           std::vector<RationalVector> mov_generators,
           std::optional<std::vector<RationalVector>> mov_curve_gens, EffModelMeta meta);

  size_t rho() const { return rho_; }
  const std::vector<std::string>& basis() const { return basis_; }
  const Cone& eff() const { return eff_; }
  const Cone& mov() const { return mov_; }
  const std::vector<EffRay>& rays() const { return rays_; }
  const std::optional<std::vector<RationalVector>>& mov_curve_gens() const { return mov_curve_gens_; }
  const EffModelMeta& meta() const { return meta_; }

  std::vector<const EffRay*> fixed_divisors() const;
  /// Rays of eff that are not listed as fixed divisors.
  std::vector<RationalVector> movable_boundary() const;

  /// Lookup by name; throws InputError for an unknown name.
  const EffRay& ray(const std::string& name) const;
  /// The face of eff spanned by one named ray.
  Face ray_face(const std::string& name) const;

  /// D·C, the coordinate pairing N^1 x N_1 -> Q.
  Rational pairing(const RationalVector& divisor, const RationalVector& curve) const;

 private:
  size_t rho_;
  std::vector<std::string> basis_;
  Cone eff_;
  Cone mov_;
  std::vector<EffRay> rays_;
  std::optional<std::vector<RationalVector>> mov_curve_gens_;
  EffModelMeta meta_;
};

EffModel model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const EffModel& model);

/// Fixed iff face ∩ Mov = {0}. Throws PreconditionError if `face` is not a
/// face of model.eff().
FaceKind classify_face(const EffModel& model, const Face& face);

/// ⟨D, E⟩ is a face of Eff and it is fixed.
bool adjacent(const EffModel& model, const std::string& d, const std::string& e);

struct EfReport {
  bool hypotheses_met = false;  // the model is flagged rho >= 7
  bool antecedent = false;      // D·C_E == 0
  bool adjacent = false;
  bool pass = false;            // antecedent implies adjacent
  std::string d, e;
  Rational pairing;
};

/// Checks D·C_E = 0 ⇒ adjacent(D, E). Throws PreconditionError when C_E is
/// missing.
EfReport ef_check(const EffModel& model, const std::string& d, const std::string& e);

/// ef_check over every ordered pair of distinct fixed divisors with curve
/// classes.
std::vector<EfReport> ef_scan(const EffModel& model);

struct TauResult {
  Face tau;
  int d = 0;  // rho - dim tau
  std::optional<size_t> mov_dim;  // dim(tau ∩ Mov), when rho_Y is given
  std::optional<bool> mov_dim_ok; // dim(tau ∩ Mov) >= rho_Y
};

/// τ_f = minimal face of Eff containing the pullback generators, d_f = ρ − dim τ_f.
TauResult tau_and_d(const EffModel& model, const std::vector<RationalVector>& pullback_gens,
                    std::optional<size_t> rho_y = std::nullopt);

/// Face spanned by fixed divisors with D_i·C_{D_j} = 0 for all i != j.
/// Violated pairs are reported together in a HypothesisError; a conclusion
/// that fails on the encoded data raises PreconditionError.
Face linate_face(const EffModel& model, const std::vector<std::string>& names);

struct MovDualReport {
  bool pass = false;
  Cone computed;                        // dual(Mov)
  Cone expected;                        // ⟨C_D⟩ + mov(X)
  std::vector<RationalVector> missing;  // rays of computed not in expected
  std::vector<RationalVector> extra;    // rays of expected not in computed
  std::vector<std::string> non_faces;   // C_D not spanning a ray of dual(Mov)
};

/// Compares dual(Mov) with ⟨C_D⟩_D + mov(X). Throws PreconditionError
/// ("insufficient data") without mov curve generators or curve classes.
MovDualReport movdual_decompose(const EffModel& model);

struct SummaryReport {
  bool hypotheses_met = false;  // rho >= 7 and not a product
  std::vector<Face> violations; // movable faces with dim < rho - 4
};

SummaryReport summary_scan(const EffModel& model);

}  // namespace fanoforge
