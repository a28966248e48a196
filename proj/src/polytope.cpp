#include "fanoforge/polytope.hpp"

#include <algorithm>
#include <set>

#include "fanoforge/cone.hpp"
#include "fanoforge/errors.hpp"
#include "fanoforge/linalg.hpp"

namespace fanoforge {

namespace {

void choose(size_t n, size_t k, size_t start, std::vector<size_t>& cur,
            std::vector<std::vector<size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

LatticePolytope::LatticePolytope(std::vector<RationalVector> normals) : normals_(std::move(normals)) {
  if (normals_.empty()) throw InputError("polytope: no inequalities");
  dim_ = normals_.front().size();
  for (const auto& a : normals_)
    if (a.size() != dim_) throw InputError("polytope: dimension mismatch");
  // Bounded iff the normals positively span the whole space.
  if (!(Cone::canonicalize(normals_, dim_) == Cone::whole_space(dim_)))
    throw PreconditionError("polytope: unbounded");

  std::vector<std::vector<size_t>> subsets;
  std::vector<size_t> cur;
  choose(normals_.size(), dim_, 0, cur, subsets);
  std::set<RationalVector> found;
  for (const auto& s : subsets) {
    RationalMatrix a;
    for (auto i : s) a.push_back(normals_[i]);
    auto m = linalg::solve(a, RationalVector(dim_, Rational(-1)));
    if (m && contains(*m)) found.insert(*m);
  }
  vertices_.assign(found.begin(), found.end());
  std::sort(vertices_.begin(), vertices_.end(), lex_less);
}

bool LatticePolytope::is_lattice() const {
  for (const auto& v : vertices_)
    for (const auto& x : v)
      if (x.get_den() != 1) return false;
  return true;
}

bool LatticePolytope::contains(const RationalVector& m) const {
  if (m.size() != dim_) throw InputError("polytope: dimension mismatch");
  for (const auto& a : normals_)
    if (dot(a, m) < -1) return false;
  return true;
}

LatticePolytope anticanonical_polytope(const Fan& fan) {
  for (const auto& c : fan.max_cones()) {
    RationalMatrix m;
    for (auto i : c) m.push_back(fan.rays()[i]);
    if (abs(linalg::det(m)) != 1) throw PreconditionError("anticanonical_polytope: singular fan");
  }
  return LatticePolytope(fan.rays());
}

std::int64_t lattice_point_count(const LatticePolytope& p) {
  const size_t n = p.dim();
  std::vector<Integer> lo(n), hi(n);
  for (size_t i = 0; i < n; ++i) {
    Rational mn = p.vertices().front()[i], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = ceil_of(mn);
    hi[i] = floor_of(mx);
    if (lo[i] > hi[i]) return 0;
  }
  std::int64_t count = 0;
  std::vector<Integer> x = lo;
  RationalVector m(n);
  while (true) {
    for (size_t i = 0; i < n; ++i) m[i] = x[i];
    if (p.contains(m)) ++count;
    size_t i = 0;
    while (i < n && x[i] == hi[i]) {
      x[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    ++x[i];
  }
  return count;
}

namespace {

size_t affine_dim(const std::vector<RationalVector>& pts, const std::vector<size_t>& idx, size_t n) {
  if (idx.empty()) return 0;
  RationalMatrix d;
  for (size_t k = 1; k < idx.size(); ++k) d.push_back(sub(pts[idx[k]], pts[idx[0]]));
  return linalg::rank(d, n);
}

// Pulling triangulation of the face with vertex set `face` (affine dimension
// `dim`): cone from its first vertex over the facets not containing it.
std::vector<std::vector<size_t>> triangulate(const LatticePolytope& p, const std::vector<size_t>& face,
                                             size_t dim) {
  if (dim == 0) return {face};
  const auto& verts = p.vertices();
  const size_t w = face.front();
  std::set<std::vector<size_t>> subs;
  for (const auto& a : p.normals()) {
    std::vector<size_t> s;
    for (auto v : face)
      if (dot(a, verts[v]) == -1) s.push_back(v);
    if (s.empty() || std::find(s.begin(), s.end(), w) != s.end()) continue;
    if (affine_dim(verts, s, p.dim()) == dim - 1) subs.insert(s);
  }
  std::vector<std::vector<size_t>> out;
  for (const auto& s : subs)
    for (auto simplex : triangulate(p, s, dim - 1)) {
      simplex.push_back(w);
      out.push_back(std::move(simplex));
    }
  return out;
}

}  // namespace

Rational normalized_volume(const LatticePolytope& p) {
  const size_t n = p.dim();
  const auto& verts = p.vertices();
  Rational total = 0;
  std::set<std::vector<size_t>> facets;
  for (const auto& a : p.normals()) {
    std::vector<size_t> f;
    for (size_t v = 0; v < verts.size(); ++v)
      if (dot(a, verts[v]) == -1) f.push_back(v);
    if (f.size() >= n && affine_dim(verts, f, n) == n - 1) facets.insert(f);
  }
  for (const auto& f : facets) {
    for (const auto& simplex : triangulate(p, f, n - 1)) {
      RationalMatrix m;
      for (auto v : simplex) m.push_back(verts[v]);
      total += abs(linalg::det(m));
    }
  }
  return total;
}

}  // namespace fanoforge
