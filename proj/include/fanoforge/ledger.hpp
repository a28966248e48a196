#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fanoforge/rational.hpp"

// Numerical invariants of iterated blow-ups of smooth 4-folds. States are
// values: every operation returns a new state.

namespace fanoforge {

/// A smooth surface S to be blown up in the current 4-fold Y.
struct SurfaceCenter {
  std::string name;
  std::int64_t L2 = 0;   // (K_Y|S)^2
  std::int64_t LK = 0;   // K_S · K_Y|S
  std::int64_t K2 = 0;   // K_S^2
  std::int64_t c2N = 0;  // c_2 of the normal bundle
  std::int64_t h11 = 0;
  std::int64_t h20 = 0;
  std::int64_t q = 0;
  std::int64_t chiO = 0;
  std::map<std::string, std::int64_t> meets;  // transversal points with other centers

  friend bool operator==(const SurfaceCenter&, const SurfaceCenter&) = default;
};

/// Throws InputError if chiO != 1 - q + h20, L2 + LK is odd, or a meet count
/// is negative.
void validate_center(const SurfaceCenter& c);

struct FourfoldState {
  std::string name;
  std::int64_t K4 = 0;
  bool k4_available = true;  // false after a curve blow-up
  std::int64_t chiK = 0;     // χ(X, -K_X)
  std::int64_t rho = 1;
  std::int64_t b3 = 0;
  std::int64_t h22 = 0;
  std::int64_t h13 = 0;
  std::vector<SurfaceCenter> pending;

  std::int64_t b4() const { return h22 + 2 * h13; }
  /// Even Betti numbers b_0, b_2, ..., b_8.
  std::vector<std::int64_t> even_betti() const { return {1, rho, b4(), rho, 1}; }

  friend bool operator==(const FourfoldState&, const FourfoldState&) = default;
};

enum class Base { P4, Quadric, Cubic, P2xP2 };

/// Accepts p4, quadric, cubic, p2xp2 (case-insensitive); InputError otherwise.
Base parse_base(const std::string& name);
const char* to_string(Base b);

/// Base catalog with no pending centers.
FourfoldState base_state(Base b);

/// A plane in P^4, the quadric or the cubic. InputError for P2xP2.
SurfaceCenter plane_center(Base b, const std::string& name);

/// Blow-up along a pending center. The remaining centers meeting it are
/// updated by transversal_update. PreconditionError for an unknown center.
FourfoldState blow_up_surface(const FourfoldState& state, const std::string& center);

/// Strict transform after blowing up k transversal points of the center.
SurfaceCenter transversal_update(const SurfaceCenter& center, std::int64_t k);

FourfoldState blow_up_point(const FourfoldState& state);

/// Only smooth rational curves with -K·C = 3 are supported; anything else
/// throws PreconditionError. K4 becomes unavailable.
FourfoldState blow_up_curve(const FourfoldState& state, std::int64_t genus, std::int64_t degree_minus_k);

/// χ(Z, tH) for a del Pezzo 4-fold of degree d.
Rational chi_del_pezzo_4fold(std::int64_t d, std::int64_t t);

/// h^0(Z, -K_Z) from h^0(W, -K_W) when Z is obtained from W through a del
/// Pezzo surface base of Picard number rho_b (1..9).
std::int64_t antsections_step(std::int64_t h0_w, std::int64_t rho_b);

/// Closed form of χ(-K) along the cubic plane chain, 2 <= rho <= 12.
std::int64_t h0_cubic_chain(std::int64_t rho);

/// h^0(P^2 x P^2, O(a, b)) for a, b >= -2 (zero when negative).
std::int64_t h0_p2xp2(std::int64_t a, std::int64_t b);

/// h^0(O(2,2)) + h^0(O(1,1)).
std::int64_t double_cover_h0();

/// Base state with s plane centers P1..Ps, each pair meeting in one point.
FourfoldState plane_chain(Base b, int s);

struct TableRow {
  int s = 0;
  std::int64_t rho = 0, K4 = 0, h22 = 0, h13 = 0, b3 = 0, chi = 0;
  std::string fano;          // as printed in the reference table
  bool beyond_table = false;  // s past the reference table
};

struct TableArtifact {
  Base base;
  std::vector<TableRow> rows;
};

/// Extent of the reference table for the base (4 for P4, 8 otherwise).
int table_extent(Base b);

/// Rows s = 0..max_s of the plane chain, blown up in order. Rows past the
/// reference table are flagged and carry an empty Fano entry.
TableArtifact generate_table(Base b, int max_s);

enum class TableFormat { Markdown, Csv, Json };
TableFormat parse_table_format(const std::string& name);

/// Deterministic, LF-terminated rendering.
std::string render_table(const TableArtifact& t, TableFormat f);

/// One-line summary "K^4=... rho=... b4=... h22=... h13=... b3=... chi=...".
std::string invariant_line(const FourfoldState& s);

/// Chain document:
///   {"base", "centers": [{"name","L2","LK","K2","c2N","h11","h20","q","chiO","meets"}],
///    "order": [names], "points": r, "curves": [{"g","d"}]}
/// Centers are blown up in the given order (default: listed order), then the
/// points, then the curves. InputError on malformed documents.
FourfoldState run_chain(const nlohmann::json& doc);

nlohmann::json state_to_json(const FourfoldState& s);
SurfaceCenter center_from_json(const nlohmann::json& doc);
nlohmann::json center_to_json(const SurfaceCenter& c);

}  // namespace fanoforge
