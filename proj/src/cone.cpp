#include "fanoforge/cone.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "fanoforge/errors.hpp"
#include "fanoforge/linalg.hpp"

namespace fanoforge {

namespace {

constexpr size_t npos = static_cast<size_t>(-1);

struct Generated {
  RationalMatrix lineality;
  RationalMatrix rays;
};

void dedupe_sorted(std::vector<RationalVector>& v) {
  std::sort(v.begin(), v.end(), lex_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Generators of { x in Q^n : a·x >= 0 for every a in constraints } by the
// double description method. The lineality space is eliminated first, one
// direction per constraint that is not identically zero on it; after that
// each constraint is a standard DD step with the combinatorial adjacency
// test. Ray representatives are kept orthogonal to the current lineality so
// that the zero-set bookkeeping is well defined.
Generated double_description(const RationalMatrix& constraints, size_t n) {
  Generated g;
  for (size_t i = 0; i < n; ++i) {
    RationalVector e(n, Rational(0));
    e[i] = 1;
    g.lineality.push_back(e);
  }
  RationalMatrix processed;

  auto zero_set = [&](const RationalVector& r) {
    std::vector<bool> z(processed.size());
    for (size_t j = 0; j < processed.size(); ++j) z[j] = sgn(dot(processed[j], r)) == 0;
    return z;
  };

  for (const auto& a : constraints) {
    size_t pick = npos;
    for (size_t i = 0; i < g.lineality.size(); ++i) {
      if (sgn(dot(a, g.lineality[i])) != 0) {
        pick = i;
        break;
      }
    }

    if (pick != npos) {
      RationalVector l0 = g.lineality[pick];
      Rational al0 = dot(a, l0);
      if (sgn(al0) < 0) {
        l0 = scale(l0, -1);
        al0 = -al0;
      }
      RationalMatrix lin;
      for (size_t i = 0; i < g.lineality.size(); ++i) {
        if (i == pick) continue;
        const auto& l = g.lineality[i];
        lin.push_back(primitive(sub(l, scale(l0, dot(a, l) / al0))));
      }
      RationalMatrix rays;
      for (const auto& r : g.rays) rays.push_back(sub(r, scale(l0, dot(a, r) / al0)));
      rays.push_back(l0);
      g.lineality = std::move(lin);
      for (auto& r : rays) r = primitive(linalg::project_out(r, g.lineality));
      dedupe_sorted(rays);
      g.rays = std::move(rays);
      processed.push_back(a);
      continue;
    }

    std::vector<size_t> pos, neg;
    RationalMatrix next;
    std::vector<Rational> val(g.rays.size());
    for (size_t i = 0; i < g.rays.size(); ++i) {
      val[i] = dot(a, g.rays[i]);
      int s = sgn(val[i]);
      if (s > 0) pos.push_back(i);
      if (s < 0) neg.push_back(i);
      if (s >= 0) next.push_back(g.rays[i]);
    }
    if (!pos.empty() && !neg.empty()) {
      std::vector<std::vector<bool>> zs;
      zs.reserve(g.rays.size());
      for (const auto& r : g.rays) zs.push_back(zero_set(r));
      for (auto p : pos) {
        for (auto q : neg) {
          bool adjacent = true;
          for (size_t r = 0; r < g.rays.size() && adjacent; ++r) {
            if (r == p || r == q) continue;
            bool covers = true;
            for (size_t j = 0; j < processed.size(); ++j) {
              if (zs[p][j] && zs[q][j] && !zs[r][j]) {
                covers = false;
                break;
              }
            }
            if (covers) adjacent = false;
          }
          if (!adjacent) continue;
          RationalVector c = sub(scale(g.rays[q], val[p]), scale(g.rays[p], val[q]));
          next.push_back(primitive(linalg::project_out(c, g.lineality)));
        }
      }
    }
    dedupe_sorted(next);
    g.rays = std::move(next);
    processed.push_back(a);
  }
  return g;
}

RationalMatrix stack(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix m = a;
  m.insert(m.end(), b.begin(), b.end());
  return m;
}

}  // namespace

Cone Cone::canonicalize(const std::vector<RationalVector>& generators,
                        std::optional<size_t> ambient_dim) {
  if (generators.empty() && !ambient_dim)
    throw InputError("canonicalize: no generators and no ambient dimension");
  const size_t n = ambient_dim ? *ambient_dim : generators.front().size();
  if (n == 0) throw InputError("canonicalize: ambient dimension must be positive");
  for (const auto& g : generators) {
    if (g.size() != n)
      throw InputError("canonicalize: dimension mismatch (" + std::to_string(g.size()) +
                       " vs " + std::to_string(n) + ")");
    if (fanoforge::is_zero(g)) throw InputError("canonicalize: zero vector among generators");
  }

  Cone c;
  c.ambient_dim_ = n;

  Generated d = double_description(generators, n);
  c.orthogonal_ = linalg::canonical_row_basis(d.lineality, n);
  for (const auto& f : d.rays) {
    RationalVector p = linalg::project_out(f, c.orthogonal_);
    if (!fanoforge::is_zero(p)) c.facets_.push_back(primitive(p));
  }
  dedupe_sorted(c.facets_);

  RationalMatrix lin = linalg::nullspace(stack(c.facets_, c.orthogonal_), n);
  c.lineality_ = linalg::canonical_row_basis(lin, n);

  const RationalMatrix fixed_eqs = stack(c.orthogonal_, c.lineality_);
  for (const auto& g : generators) {
    RationalVector p = linalg::project_out(g, c.lineality_);
    if (fanoforge::is_zero(p)) continue;
    p = primitive(p);
    RationalMatrix tight = fixed_eqs;
    for (const auto& f : c.facets_)
      if (sgn(dot(f, p)) == 0) tight.push_back(f);
    if (linalg::rank(tight, n) == n - 1) c.rays_.push_back(std::move(p));
  }
  dedupe_sorted(c.rays_);
  return c;
}

Cone Cone::zero(size_t ambient_dim) { return canonicalize({}, ambient_dim); }

Cone Cone::whole_space(size_t ambient_dim) {
  std::vector<RationalVector> gens;
  for (size_t i = 0; i < ambient_dim; ++i) {
    RationalVector e(ambient_dim, Rational(0));
    e[i] = 1;
    gens.push_back(e);
    e[i] = -1;
    gens.push_back(e);
  }
  return canonicalize(gens, ambient_dim);
}

std::vector<RationalVector> Cone::generators() const {
  std::vector<RationalVector> g = rays_;
  for (const auto& l : lineality_) {
    g.push_back(l);
    g.push_back(scale(l, -1));
  }
  return g;
}

bool Cone::contains(const RationalVector& v) const {
  if (v.size() != ambient_dim_) throw InputError("contains: dimension mismatch");
  for (const auto& o : orthogonal_)
    if (sgn(dot(o, v)) != 0) return false;
  for (const auto& f : facets_)
    if (sgn(dot(f, v)) < 0) return false;
  return true;
}

bool Cone::contains(const Cone& other) const {
  for (const auto& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

std::optional<size_t> Cone::ray_index(const RationalVector& v) const {
  if (v.size() != ambient_dim_ || fanoforge::is_zero(v)) return std::nullopt;
  RationalVector p = primitive(v);
  auto it = std::lower_bound(rays_.begin(), rays_.end(), p, lex_less);
  if (it == rays_.end() || *it != p) return std::nullopt;
  return static_cast<size_t>(it - rays_.begin());
}

Cone Face::as_cone() const { return Cone::canonicalize(rays(), parent.ambient_dim()); }

std::vector<RationalVector> Face::rays() const {
  std::vector<RationalVector> r;
  for (auto i : ray_indices) r.push_back(parent.rays()[i]);
  return r;
}

Cone dual(const Cone& cone) {
  Cone d;
  d.ambient_dim_ = cone.ambient_dim_;
  d.rays_ = cone.facets_;
  d.lineality_ = cone.orthogonal_;
  d.facets_ = cone.rays_;
  d.orthogonal_ = cone.lineality_;
  return d;
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("intersect: dimension mismatch");
  std::vector<RationalVector> gens = dual(a).generators();
  for (auto& g : dual(b).generators()) gens.push_back(std::move(g));
  return dual(Cone::canonicalize(gens, a.ambient_dim()));
}

std::vector<RationalVector> extremal_rays(const Cone& cone) {
  if (!cone.is_pointed()) throw PreconditionError("no extremal rays in lineality");
  return cone.rays();
}

namespace {

// Indices of facets tight at p, and the rays lying on all of them.
std::vector<size_t> tight_rays(const Cone& cone, const RationalVector& p,
                               std::vector<RationalVector>* tight_facets) {
  std::vector<RationalVector> tf;
  for (const auto& f : cone.facets())
    if (sgn(dot(f, p)) == 0) tf.push_back(f);
  std::vector<size_t> idx;
  for (size_t i = 0; i < cone.rays().size(); ++i) {
    bool on_all = std::all_of(tf.begin(), tf.end(),
                              [&](const auto& f) { return sgn(dot(f, cone.rays()[i])) == 0; });
    if (on_all) idx.push_back(i);
  }
  if (tight_facets) *tight_facets = std::move(tf);
  return idx;
}

RationalVector sum_of(const std::vector<RationalVector>& vs, size_t n) {
  RationalVector s(n, Rational(0));
  for (const auto& v : vs) s = add(s, v);
  return s;
}

void require_pointed(const Cone& cone, const char* what) {
  if (!cone.is_pointed())
    throw PreconditionError(std::string(what) + ": cone is not pointed (no extremal rays in lineality)");
}

}  // namespace

FaceTest face_test(const Cone& candidate, const Cone& cone) {
  if (candidate.ambient_dim() != cone.ambient_dim())
    throw InputError("is_face: dimension mismatch");
  if (!cone.contains(candidate)) throw PreconditionError("is_face: candidate not contained in cone");
  const size_t n = cone.ambient_dim();
  std::vector<RationalVector> tf;
  std::vector<size_t> idx = tight_rays(cone, sum_of(candidate.rays(), n), &tf);
  std::vector<RationalVector> gens;
  for (auto i : idx) gens.push_back(cone.rays()[i]);
  for (const auto& l : cone.lineality()) {
    gens.push_back(l);
    gens.push_back(scale(l, -1));
  }
  FaceTest t;
  t.is_face = Cone::canonicalize(gens, n) == candidate;
  t.witness.coeffs = sum_of(tf, n);
  return t;
}

bool is_face(const Cone& candidate, const Cone& cone) { return face_test(candidate, cone).is_face; }

bool is_face(const Face& candidate, const Cone& cone) {
  return is_face(candidate.as_cone(), cone);
}

Face make_face(const Cone& cone, std::vector<size_t> ray_indices) {
  require_pointed(cone, "make_face");
  std::sort(ray_indices.begin(), ray_indices.end());
  ray_indices.erase(std::unique(ray_indices.begin(), ray_indices.end()), ray_indices.end());
  std::vector<RationalVector> gens;
  for (auto i : ray_indices) {
    if (i >= cone.rays().size()) throw InputError("make_face: ray index out of range");
    gens.push_back(cone.rays()[i]);
  }
  Face f{cone, ray_indices, linalg::rank(gens, cone.ambient_dim())};
  if (!is_face(f, cone)) throw PreconditionError("make_face: rays do not span a face");
  return f;
}

std::vector<Face> faces(const Cone& cone, std::optional<size_t> k) {
  require_pointed(cone, "faces");
  if (k && *k > cone.dim())
    throw PreconditionError("faces: k=" + std::to_string(*k) + " outside [0, " +
                            std::to_string(cone.dim()) + "]");
  const auto& rays = cone.rays();
  std::vector<size_t> all(rays.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;

  std::set<std::vector<size_t>> seen{all};
  std::deque<std::vector<size_t>> queue{all};
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (const auto& f : cone.facets()) {
      std::vector<size_t> sub;
      for (auto i : s)
        if (sgn(dot(f, rays[i])) == 0) sub.push_back(i);
      if (sub.size() != s.size() && seen.insert(sub).second) queue.push_back(sub);
    }
  }

  std::vector<Face> out;
  for (const auto& s : seen) {
    std::vector<RationalVector> gens;
    for (auto i : s) gens.push_back(rays[i]);
    size_t d = linalg::rank(gens, cone.ambient_dim());
    if (k && d != *k) continue;
    out.push_back(Face{cone, s, d});
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.ray_indices < b.ray_indices;
  });
  return out;
}

Face minimal_face_containing(const Cone& cone, const std::vector<RationalVector>& vectors) {
  require_pointed(cone, "minimal_face_containing");
  const size_t n = cone.ambient_dim();
  for (const auto& v : vectors) {
    if (v.size() != n) throw InputError("minimal_face_containing: dimension mismatch");
    if (!cone.contains(v))
      throw PreconditionError("minimal_face_containing: vector " + to_string(v) +
                              " lies outside the cone");
  }
  std::vector<size_t> idx = tight_rays(cone, sum_of(vectors, n), nullptr);
  std::vector<RationalVector> gens;
  for (auto i : idx) gens.push_back(cone.rays()[i]);
  return Face{cone, idx, linalg::rank(gens, n)};
}

Face cone_lemma_extend(const Cone& cone, const Face& tau, const LinearFunctional& alpha,
                       const Face& eta) {
  require_pointed(cone, "cone_lemma_extend");
  std::vector<std::string> v;
  if (alpha.coeffs.size() != cone.ambient_dim()) throw InputError("cone_lemma_extend: α has wrong length");

  const bool tau_ok = tau.parent == cone && is_face(tau, cone);
  if (!tau_ok) v.push_back("τ is not a face of σ");
  if (tau.dim != 1 || tau.ray_indices.size() != 1) {
    v.push_back("τ is not one-dimensional");
  } else {
    const size_t t = tau.ray_indices.front();
    if (sgn(alpha(cone.rays()[t])) >= 0) v.push_back("α·τ is not negative");
    for (size_t i = 0; i < cone.rays().size(); ++i) {
      if (i == t) continue;
      if (sgn(alpha(cone.rays()[i])) < 0)
        v.push_back("α is negative on ray " + to_string(cone.rays()[i]));
    }
  }
  const bool eta_ok = eta.parent == cone && is_face(eta, cone);
  if (!eta_ok) v.push_back("η is not a face of σ");
  for (const auto& r : eta.rays()) {
    if (sgn(alpha(r)) != 0) {
      v.push_back("η ⊄ ker α");
      break;
    }
  }
  if (!v.empty()) throw HypothesisError(std::move(v));

  std::vector<size_t> idx = tau.ray_indices;
  idx.insert(idx.end(), eta.ray_indices.begin(), eta.ray_indices.end());
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  std::vector<RationalVector> gens;
  for (auto i : idx) gens.push_back(cone.rays()[i]);
  Face out{cone, idx, linalg::rank(gens, cone.ambient_dim())};
  if (!is_face(out, cone)) throw InternalError("cone_lemma_extend: τ+η is not a face");
  return out;
}

Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<std::int64_t>()));
  if (v.is_string()) {
    Rational q;
    if (q.set_str(v.get<std::string>(), 10) != 0) throw InputError("bad rational: " + v.dump());
    q.canonicalize();
    return q;
  }
  throw InputError("expected an integer or \"p/q\" string, got " + v.dump());
}

RationalVector vector_from_json(const nlohmann::json& v) {
  if (!v.is_array()) throw InputError("expected an array, got " + v.dump());
  RationalVector r;
  for (const auto& x : v) r.push_back(rational_from_json(x));
  return r;
}

nlohmann::json vector_to_json(const RationalVector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) {
    if (x.get_den() == 1 && x.get_num().fits_slong_p())
      a.push_back(x.get_num().get_si());
    else
      a.push_back(x.get_str());
  }
  return a;
}

nlohmann::json cone_to_json(const Cone& cone) {
  nlohmann::json j;
  j["dim"] = cone.ambient_dim();
  j["rays"] = nlohmann::json::array();
  for (const auto& r : cone.rays()) j["rays"].push_back(vector_to_json(r));
  if (!cone.lineality().empty()) {
    j["lineality"] = nlohmann::json::array();
    for (const auto& l : cone.lineality()) j["lineality"].push_back(vector_to_json(l));
  }
  return j;
}

Cone cone_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("rays"))
    throw InputError("cone JSON needs \"dim\" and \"rays\"");
  const auto n = doc.at("dim").get<std::int64_t>();
  if (n <= 0) throw InputError("cone JSON: dim must be positive");
  std::vector<RationalVector> gens;
  for (const auto& r : doc.at("rays")) gens.push_back(vector_from_json(r));
  if (doc.contains("lineality")) {
    for (const auto& l : doc.at("lineality")) {
      auto v = vector_from_json(l);
      gens.push_back(v);
      gens.push_back(scale(v, -1));
    }
  }
  return Cone::canonicalize(gens, static_cast<size_t>(n));
}

}  // namespace fanoforge
