#include "cone_oracle.hpp"

#include <algorithm>

namespace oracle {

namespace {

// Plain Gaussian elimination, kept separate from fanoforge::linalg on purpose.
size_t rank_of(std::vector<RationalVector> m, size_t ncols) {
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < m.size(); ++c) {
    size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (size_t k = 0; k < ncols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

// Solves sum_j c_j b_j = x for linearly independent b_j; false if x is not
// in their span.
bool coefficients(const std::vector<RationalVector>& b, const RationalVector& x,
                  std::vector<Rational>& c) {
  const size_t k = b.size(), n = x.size();
  // Augmented system with unknowns c (k columns), n equations.
  std::vector<RationalVector> m(n, RationalVector(k + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) m[i][j] = b[j][i];
    m[i][k] = x[i];
  }
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t col = 0; col < k && r < n; ++col) {
    size_t p = r;
    while (p < n && m[p][col] == 0) ++p;
    if (p == n) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][col];
    for (auto& v : m[r]) v *= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == r || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (size_t q = 0; q <= k; ++q) m[i][q] -= f * m[r][q];
    }
    piv.push_back(col);
    ++r;
  }
  for (size_t i = r; i < n; ++i)
    if (m[i][k] != 0) return false;
  c.assign(k, Rational(0));
  for (size_t i = 0; i < piv.size(); ++i) c[piv[i]] = m[i][k];
  return true;
}

RationalVector prim(const RationalVector& v) {
  // Scale to integers, then divide by gcd.
  mpz_class l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (const auto& x : v) {
    Rational t = x * l;
    z.push_back(t.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  RationalVector out;
  for (auto& x : z) out.emplace_back(g == 0 ? mpz_class(0) : mpz_class(x / g));
  return out;
}

bool parallel_positive(const RationalVector& a, const RationalVector& b) { return prim(a) == prim(b); }

std::vector<RationalVector> nullspace_of(const std::vector<RationalVector>& rows, size_t n) {
  // Brute force: kernel via elimination on the transpose-free system.
  std::vector<RationalVector> m = rows;
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < n && r < m.size(); ++c) {
    size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (size_t q = 0; q < n; ++q) m[i][q] -= f * m[r][q];
    }
    piv.push_back(c);
    ++r;
  }
  std::vector<RationalVector> out;
  for (size_t f = 0; f < n; ++f) {
    if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
    RationalVector v(n, Rational(0));
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
    out.push_back(v);
  }
  return out;
}

}  // namespace

bool in_cone(const RationalVector& x, const std::vector<RationalVector>& gens) {
  bool all_zero = std::all_of(x.begin(), x.end(), [](const Rational& q) { return q == 0; });
  if (all_zero) return true;
  const size_t g = gens.size();
  const size_t n = x.size();
  for (unsigned mask = 1; mask < (1u << g); ++mask) {
    std::vector<RationalVector> sub;
    for (size_t i = 0; i < g; ++i)
      if (mask & (1u << i)) sub.push_back(gens[i]);
    if (sub.size() > n || rank_of(sub, n) != sub.size()) continue;
    std::vector<Rational> c;
    if (!coefficients(sub, x, c)) continue;
    if (std::all_of(c.begin(), c.end(), [](const Rational& q) { return q >= 0; })) return true;
  }
  return false;
}

std::vector<RationalVector> extreme_rays(const std::vector<RationalVector>& gens) {
  std::vector<RationalVector> out;
  for (size_t i = 0; i < gens.size(); ++i) {
    std::vector<RationalVector> others;
    for (size_t j = 0; j < gens.size(); ++j)
      if (!parallel_positive(gens[i], gens[j])) others.push_back(gens[j]);
    if (!in_cone(gens[i], others)) out.push_back(prim(gens[i]));
  }
  std::sort(out.begin(), out.end(), fanoforge::lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<RationalVector> facet_normals(const std::vector<RationalVector>& rays, size_t n) {
  const size_t d = rank_of(rays, n);
  std::vector<RationalVector> orth = nullspace_of(rays, n);  // span(rays)^⊥
  std::vector<RationalVector> out;
  if (d == 0) return out;
  const size_t r = rays.size();
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    std::vector<RationalVector> sub;
    for (size_t i = 0; i < r; ++i)
      if (mask & (1u << i)) sub.push_back(rays[i]);
    if (rank_of(sub, n) != d - 1 || sub.size() != d - 1) continue;
    // Normal = element of ker(sub) that also lies in span(rays), i.e. is
    // orthogonal to every vector of orth.
    std::vector<RationalVector> ker = nullspace_of(sub, n);
    std::vector<RationalVector> cons;
    for (const auto& o : orth) {
      RationalVector row;
      for (const auto& k : ker) row.push_back(fanoforge::dot(o, k));
      cons.push_back(row);
    }
    std::vector<RationalVector> comb = nullspace_of(cons, ker.size());
    if (comb.size() != 1) continue;
    RationalVector normal(n, Rational(0));
    for (size_t j = 0; j < ker.size(); ++j)
      for (size_t q = 0; q < n; ++q) normal[q] += comb[0][j] * ker[j][q];
    bool pos = true, neg = true;
    for (const auto& v : rays) {
      Rational s = fanoforge::dot(normal, v);
      if (s < 0) pos = false;
      if (s > 0) neg = false;
    }
    if (pos == neg) continue;
    if (neg)
      for (auto& q : normal) q = -q;
    out.push_back(prim(normal));
  }
  std::sort(out.begin(), out.end(), fanoforge::lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::set<std::vector<RationalVector>> faces(const std::vector<RationalVector>& rays, size_t n) {
  std::vector<RationalVector> normals = facet_normals(rays, n);
  std::set<std::vector<RationalVector>> out;
  const size_t r = rays.size();
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    // Closure of the subset: rays on every facet that contains the subset.
    std::vector<RationalVector> closure;
    for (size_t i = 0; i < r; ++i) {
      bool keep = true;
      for (const auto& f : normals) {
        bool contains_subset = true;
        for (size_t j = 0; j < r; ++j)
          if ((mask & (1u << j)) && fanoforge::dot(f, rays[j]) != 0) contains_subset = false;
        if (contains_subset && fanoforge::dot(f, rays[i]) != 0) keep = false;
      }
      if (keep) closure.push_back(rays[i]);
    }
    std::sort(closure.begin(), closure.end(), fanoforge::lex_less);
    out.insert(closure);
  }
  // The zero face of a pointed cone.
  out.insert({});
  return out;
}

RationalVector random_vector(std::mt19937_64& rng, size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  RationalVector v;
  for (size_t i = 0; i < n; ++i) v.emplace_back(d(rng));
  return v;
}

}  // namespace oracle
