#include "fanoforge/fan.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "fanoforge/cone.hpp"
#include "fanoforge/errors.hpp"
#include "fanoforge/linalg.hpp"

namespace fanoforge {

namespace {

RationalMatrix rows_of(const Fan& fan, const RayIndexSet& idx) {
  RationalMatrix m;
  for (auto i : idx) m.push_back(fan.rays()[i]);
  return m;
}

RationalVector sum_rays(const Fan& fan, const RayIndexSet& idx) {
  RationalVector s(fan.dim(), Rational(0));
  for (auto i : idx) s = add(s, fan.rays()[i]);
  return s;
}

// Coefficients c with Σ c_j basis_j = v, for linearly independent basis
// rows; nullopt when v is outside their span.
std::optional<RationalVector> coordinates(const RationalMatrix& basis, const RationalVector& v) {
  const size_t k = basis.size(), n = v.size();
  RationalMatrix aug(n, RationalVector(k + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) aug[i][j] = basis[j][i];
    aug[i][k] = v[i];
  }
  linalg::Echelon e = linalg::rref(aug, k + 1);
  if (!e.pivots.empty() && e.pivots.back() == k) return std::nullopt;
  if (e.pivots.size() != k) throw InternalError("coordinates: dependent basis");
  RationalVector c(k);
  for (size_t r = 0; r < k; ++r) c[e.pivots[r]] = e.rows[r][k];
  return c;
}

RayIndexSet without(const RayIndexSet& s, size_t x) {
  RayIndexSet out;
  for (auto i : s)
    if (i != x) out.push_back(i);
  return out;
}

RayIndexSet with(RayIndexSet s, size_t x) {
  s.insert(std::lower_bound(s.begin(), s.end(), x), x);
  return s;
}

std::string set_str(const RayIndexSet& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

// wall -> indices of the maximal cones containing it
std::map<RayIndexSet, std::vector<size_t>> walls_of(const Fan& fan) {
  std::map<RayIndexSet, std::vector<size_t>> w;
  for (size_t c = 0; c < fan.max_cones().size(); ++c) {
    const auto& cone = fan.max_cones()[c];
    for (auto x : cone) w[without(cone, x)].push_back(c);
  }
  return w;
}

void require_valid(const Fan& fan, const char* what) {
  FanReport r = validate(fan);
  if (!r.valid) throw PreconditionError(std::string(what) + ": invalid fan: " + r.violations.front());
}

Integer as_integer(const Rational& q) {
  if (q.get_den() != 1) throw InternalError("expected an integer, got " + to_string(q));
  return q.get_num();
}

void combinations(size_t n, size_t k, size_t start, RayIndexSet& cur,
                  std::vector<RayIndexSet>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<RayIndexSet> subsets_of_size(size_t n, size_t k) {
  std::vector<RayIndexSet> out;
  RayIndexSet cur;
  combinations(n, k, 0, cur, out);
  return out;
}

}  // namespace

Fan::Fan(size_t dim, std::vector<RationalVector> rays, std::vector<RayIndexSet> max_cones)
    : dim_(dim), rays_(std::move(rays)), cones_(std::move(max_cones)) {
  if (dim_ == 0) throw InputError("fan: dimension must be positive");
  for (size_t i = 0; i < rays_.size(); ++i) {
    const auto& r = rays_[i];
    if (r.size() != dim_) throw InputError("fan: ray " + std::to_string(i) + " has wrong length");
    if (is_zero(r)) throw InputError("fan: zero ray");
    for (const auto& x : r)
      if (x.get_den() != 1) throw InputError("fan: ray " + to_string(r) + " is not integral");
    if (primitive(r) != r) throw InputError("fan: ray " + to_string(r) + " is not primitive");
  }
  std::set<RationalVector> seen(rays_.begin(), rays_.end());
  if (seen.size() != rays_.size()) throw InputError("fan: duplicate rays");
  for (auto& c : cones_) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw InputError("fan: repeated index in a cone");
    if (c.size() != dim_) throw InputError("fan: cone " + set_str(c) + " is not maximal-dimensional");
    for (auto i : c)
      if (i >= rays_.size()) throw InputError("fan: ray index out of range in " + set_str(c));
  }
  std::sort(cones_.begin(), cones_.end());
  if (std::adjacent_find(cones_.begin(), cones_.end()) != cones_.end())
    throw InputError("fan: duplicate maximal cone");
}

bool Fan::has_cone(const RayIndexSet& cone) const {
  return std::binary_search(cones_.begin(), cones_.end(), cone);
}

bool Fan::in_some_cone(const RayIndexSet& set) const {
  for (const auto& c : cones_)
    if (std::includes(c.begin(), c.end(), set.begin(), set.end())) return true;
  return false;
}

std::optional<size_t> Fan::ray_index(const RationalVector& v) const {
  auto it = std::find(rays_.begin(), rays_.end(), v);
  if (it == rays_.end()) return std::nullopt;
  return static_cast<size_t>(it - rays_.begin());
}

FanReport validate(const Fan& fan) {
  FanReport r;
  auto fail = [&](std::string msg) {
    r.valid = false;
    r.violations.push_back(std::move(msg));
  };
  if (fan.max_cones().empty()) {
    fail("fan has no maximal cones");
    return r;
  }
  for (const auto& c : fan.max_cones()) {
    Rational d = linalg::det(rows_of(fan, c));
    if (abs(d) != 1) fail("cone " + set_str(c) + " is not smooth (det " + to_string(d) + ")");
  }
  std::vector<bool> used(fan.rays().size(), false);
  for (const auto& c : fan.max_cones())
    for (auto i : c) used[i] = true;
  for (size_t i = 0; i < used.size(); ++i)
    if (!used[i]) fail("ray " + std::to_string(i) + " lies in no maximal cone");

  auto walls = walls_of(fan);
  std::vector<std::vector<size_t>> adj(fan.max_cones().size());
  for (const auto& [wall, cones] : walls) {
    if (cones.size() != 2) {
      fail("wall " + set_str(wall) + " shared by " + std::to_string(cones.size()) +
           (cones.size() == 1 ? " cone" : " cones"));
      continue;
    }
    const auto& c0 = fan.max_cones()[cones[0]];
    const auto& c1 = fan.max_cones()[cones[1]];
    size_t a = 0, b = 0;
    for (auto x : c0)
      if (!std::binary_search(wall.begin(), wall.end(), x)) a = x;
    for (auto x : c1)
      if (!std::binary_search(wall.begin(), wall.end(), x)) b = x;
    RationalMatrix normal = linalg::nullspace(rows_of(fan, wall), fan.dim());
    if (normal.size() != 1) {
      fail("wall " + set_str(wall) + " is degenerate");
      continue;
    }
    int sa = sgn(dot(normal[0], fan.rays()[a]));
    int sb = sgn(dot(normal[0], fan.rays()[b]));
    if (sa == 0 || sb == 0 || sa == sb)
      fail("cones " + set_str(c0) + " and " + set_str(c1) + " lie on the same side of wall " +
           set_str(wall));
    adj[cones[0]].push_back(cones[1]);
    adj[cones[1]].push_back(cones[0]);
  }

  std::vector<bool> seen(adj.size(), false);
  std::deque<size_t> q{0};
  seen[0] = true;
  size_t reached = 1;
  while (!q.empty()) {
    size_t c = q.front();
    q.pop_front();
    for (auto d : adj[c])
      if (!seen[d]) {
        seen[d] = true;
        ++reached;
        q.push_back(d);
      }
  }
  if (reached != adj.size()) fail("wall graph is not connected");
  return r;
}

std::vector<PrimitiveRelation> primitive_relations(const Fan& fan) {
  require_valid(fan, "primitive_relations");
  std::vector<PrimitiveRelation> out;
  const size_t nr = fan.rays().size();
  for (size_t k = 2; k <= std::min(nr, fan.dim() + 1); ++k) {
    for (const auto& s : subsets_of_size(nr, k)) {
      if (fan.in_some_cone(s)) continue;
      bool minimal = true;
      for (auto x : s)
        if (!fan.in_some_cone(without(s, x))) {
          minimal = false;
          break;
        }
      if (!minimal) continue;
      RationalVector target = sum_rays(fan, s);
      bool found = false;
      for (const auto& c : fan.max_cones()) {
        auto coeff = coordinates(rows_of(fan, c), target);
        if (!coeff || std::any_of(coeff->begin(), coeff->end(), [](const Rational& q) { return q < 0; }))
          continue;
        PrimitiveRelation rel;
        rel.collection = s;
        Integer total = 0;
        for (size_t j = 0; j < c.size(); ++j) {
          if ((*coeff)[j] == 0) continue;
          rel.target_cone.push_back(c[j]);
          rel.coefficients.push_back(as_integer((*coeff)[j]));
          total += rel.coefficients.back();
        }
        rel.degree = Integer(static_cast<long>(s.size())) - total;
        out.push_back(std::move(rel));
        found = true;
        break;
      }
      if (!found) throw InternalError("primitive_relations: sum of " + set_str(s) + " lies in no cone");
    }
  }
  return out;
}

Fan star_subdivide(const Fan& fan, RayIndexSet cone) {
  std::sort(cone.begin(), cone.end());
  cone.erase(std::unique(cone.begin(), cone.end()), cone.end());
  if (cone.size() < 2) throw PreconditionError("star_subdivide: cone must have at least two rays");
  for (auto i : cone)
    if (i >= fan.rays().size()) throw InputError("star_subdivide: ray index out of range");
  if (!fan.in_some_cone(cone)) throw PreconditionError("star_subdivide: cone " + set_str(cone) + " not in fan");
  RationalVector v = sum_rays(fan, cone);
  if (fan.ray_index(primitive(v))) throw PreconditionError("star_subdivide: new ray already present");

  std::vector<RationalVector> rays = fan.rays();
  rays.push_back(primitive(v));
  const size_t nv = rays.size() - 1;
  std::vector<RayIndexSet> cones;
  for (const auto& c : fan.max_cones()) {
    if (!std::includes(c.begin(), c.end(), cone.begin(), cone.end())) {
      cones.push_back(c);
      continue;
    }
    for (auto i : cone) cones.push_back(with(without(c, i), nv));
  }
  return Fan(fan.dim(), std::move(rays), std::move(cones));
}

Fan flip(const Fan& fan, const Circuit& circuit) {
  if (fan.dim() != 4) throw PreconditionError("flip: only 4-dimensional fans are supported");
  RayIndexSet plus = circuit.plus, minus = circuit.minus;
  std::sort(plus.begin(), plus.end());
  std::sort(minus.begin(), minus.end());
  if (plus.size() != 3 || minus.size() != 2)
    throw PreconditionError("flip: circuit must have |J+| = 3 and |J-| = 2");
  RayIndexSet z = plus;
  for (auto m : minus) z = with(z, m);
  if (std::adjacent_find(z.begin(), z.end()) != z.end()) throw PreconditionError("flip: J+ and J- overlap");
  for (auto i : z)
    if (i >= fan.rays().size()) throw InputError("flip: ray index out of range");
  if (sum_rays(fan, plus) != sum_rays(fan, minus))
    throw PreconditionError("flip: relation Σ J+ = Σ J- does not hold");

  std::vector<RayIndexSet> t_minus, t_plus;
  for (auto a : minus) t_minus.push_back(without(z, a));
  for (auto t : plus) t_plus.push_back(without(z, t));
  auto all_present = [&](const std::vector<RayIndexSet>& cs) {
    return std::all_of(cs.begin(), cs.end(), [&](const auto& c) { return fan.has_cone(c); });
  };
  const std::vector<RayIndexSet>* remove = nullptr;
  const std::vector<RayIndexSet>* insert = nullptr;
  if (all_present(t_minus)) {
    remove = &t_minus;
    insert = &t_plus;
  } else if (all_present(t_plus)) {
    remove = &t_plus;
    insert = &t_minus;
  } else {
    throw PreconditionError("flip: circuit not realized in fan");
  }
  std::vector<RayIndexSet> cones;
  for (const auto& c : fan.max_cones())
    if (std::find(remove->begin(), remove->end(), c) == remove->end()) cones.push_back(c);
  cones.insert(cones.end(), insert->begin(), insert->end());
  Fan out(fan.dim(), fan.rays(), std::move(cones));
  FanReport r = validate(out);
  if (!r.valid) throw PreconditionError("flip: exchange breaks the fan: " + r.violations.front());
  return out;
}

std::vector<WallRelation> mori_wall_relations(const Fan& fan) {
  require_valid(fan, "mori_wall_relations");
  std::vector<WallRelation> out;
  for (const auto& [wall, cones] : walls_of(fan)) {
    WallRelation w;
    w.wall = wall;
    for (auto x : fan.max_cones()[cones[0]])
      if (!std::binary_search(wall.begin(), wall.end(), x)) w.a = x;
    for (auto x : fan.max_cones()[cones[1]])
      if (!std::binary_search(wall.begin(), wall.end(), x)) w.b = x;
    if (w.a > w.b) std::swap(w.a, w.b);
    auto d = coordinates(rows_of(fan, wall), add(fan.rays()[w.a], fan.rays()[w.b]));
    if (!d) throw InternalError("mori_wall_relations: v_a + v_b outside the wall span");
    w.intersections.assign(fan.rays().size(), Integer(0));
    w.intersections[w.a] = 1;
    w.intersections[w.b] = 1;
    for (size_t j = 0; j < wall.size(); ++j) w.intersections[wall[j]] = -as_integer((*d)[j]);
    for (const auto& c : w.intersections) w.negative += sgn(c) < 0;
    w.locus_dim = fan.dim() - w.negative;
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<Circuit> exceptional_line_circuits(const Fan& fan) {
  std::vector<Circuit> out;
  if (fan.dim() != 4) return out;
  for (const auto& w : mori_wall_relations(fan)) {
    bool line = std::all_of(w.wall.begin(), w.wall.end(),
                            [&](size_t i) { return w.intersections[i] == -1; });
    if (line) out.push_back(Circuit{w.wall, {w.a, w.b}});
  }
  return out;
}

bool is_fano_by_polytope(const Fan& fan) {
  for (const auto& c : fan.max_cones()) {
    auto m = linalg::solve(rows_of(fan, c), RationalVector(fan.dim(), Rational(-1)));
    if (!m) throw PreconditionError("is_fano: singular maximal cone " + set_str(c));
    for (size_t u = 0; u < fan.rays().size(); ++u) {
      if (std::binary_search(c.begin(), c.end(), u)) continue;
      if (dot(*m, fan.rays()[u]) <= -1) return false;
    }
  }
  return true;
}

bool is_fano(const Fan& fan) {
  auto rels = primitive_relations(fan);
  bool by_degree = std::all_of(rels.begin(), rels.end(), [](const auto& r) { return sgn(r.degree) > 0; });
  bool by_polytope = is_fano_by_polytope(fan);
  if (by_degree != by_polytope)
    throw InternalError("is_fano: primitive-relation and polytope criteria disagree");
  return by_degree;
}

std::vector<std::int64_t> betti(const Fan& fan) {
  require_valid(fan, "betti");
  const size_t n = fan.dim();
  std::vector<std::set<RayIndexSet>> by_dim(n + 1);
  for (const auto& c : fan.max_cones()) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      RayIndexSet s;
      for (size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) s.push_back(c[i]);
      by_dim[s.size()].insert(s);
    }
  }
  auto binom = [](size_t a, size_t b) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), a, b);
    return r;
  };
  std::vector<std::int64_t> h;
  for (size_t k = 0; k <= n; ++k) {
    Integer hk = 0;
    for (size_t i = 0; i <= k; ++i) {
      Integer term = binom(n - i, k - i) * Integer(static_cast<long>(by_dim[i].size()));
      hk += ((k - i) % 2 == 0) ? term : Integer(-term);
    }
    h.push_back(to_int64(Rational(hk)));
  }
  return h;
}

nlohmann::json fan_to_json(const Fan& fan) {
  nlohmann::json j;
  j["dim"] = fan.dim();
  j["rays"] = nlohmann::json::array();
  for (const auto& r : fan.rays()) j["rays"].push_back(vector_to_json(r));
  j["cones"] = fan.max_cones();
  return j;
}

Fan fan_from_json(const nlohmann::json& doc) {
  try {
    const size_t n = doc.at("dim").get<size_t>();
    std::vector<RationalVector> rays;
    for (const auto& r : doc.at("rays")) rays.push_back(vector_from_json(r));
    auto cones = doc.at("cones").get<std::vector<RayIndexSet>>();
    return Fan(n, std::move(rays), std::move(cones));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("fan JSON: ") + e.what());
  }
}

Fan projective_space_fan(size_t n) {
  std::vector<RationalVector> rays;
  for (size_t i = 0; i < n; ++i) {
    RationalVector e(n, Rational(0));
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(RationalVector(n, Rational(-1)));
  return Fan(n, std::move(rays), subsets_of_size(n + 1, n));
}

Fan product_fan(const Fan& a, const Fan& b) {
  const size_t n = a.dim() + b.dim();
  std::vector<RationalVector> rays;
  for (const auto& r : a.rays()) {
    RationalVector v = r;
    v.resize(n, Rational(0));
    rays.push_back(v);
  }
  for (const auto& r : b.rays()) {
    RationalVector v(a.dim(), Rational(0));
    v.insert(v.end(), r.begin(), r.end());
    rays.push_back(v);
  }
  std::vector<RayIndexSet> cones;
  const size_t off = a.rays().size();
  for (const auto& c : a.max_cones())
    for (const auto& d : b.max_cones()) {
      RayIndexSet s = c;
      for (auto i : d) s.push_back(i + off);
      cones.push_back(s);
    }
  return Fan(n, std::move(rays), std::move(cones));
}

}  // namespace fanoforge
