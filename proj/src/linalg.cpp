#include "fanoforge/linalg.hpp"

#include "fanoforge/errors.hpp"

namespace fanoforge::linalg {

Echelon rref(RationalMatrix m, size_t ncols) {
  Echelon e;
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < m.size(); ++col) {
    size_t piv = row;
    while (piv < m.size() && sgn(m[piv][col]) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    e.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  e.rows = std::move(m);
  return e;
}

size_t rank(const RationalMatrix& m, size_t ncols) { return rref(m, ncols).pivots.size(); }

RationalMatrix nullspace(const RationalMatrix& m, size_t ncols) {
  Echelon e = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(ncols, Rational(0));
    v[free] = 1;
    for (size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(primitive(v));
  }
  return basis;
}

RationalMatrix canonical_row_basis(const RationalMatrix& m, size_t ncols) {
  Echelon e = rref(m, ncols);
  RationalMatrix out;
  for (auto& r : e.rows) out.push_back(primitive(r));
  return out;
}

std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b) {
  const size_t n = a.size();
  if (b.size() != n) throw InputError("solve: dimension mismatch");
  RationalMatrix aug(n);
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw InputError("solve: matrix not square");
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  Echelon e = rref(aug, n);
  if (e.pivots.size() != n) return std::nullopt;
  RationalVector x(n);
  for (size_t i = 0; i < n; ++i) x[i] = e.rows[i][n];
  return x;
}

Rational det(RationalMatrix m) {
  const size_t n = m.size();
  Rational d = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      d = -d;
    }
    d *= m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return d;
}

RationalVector project_out(const RationalVector& x, const RationalMatrix& basis) {
  if (basis.empty()) return x;
  const size_t k = basis.size();
  RationalMatrix gram(k, RationalVector(k));
  RationalVector rhs(k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], x);
  }
  auto c = solve(gram, rhs);
  if (!c) throw InternalError("project_out: basis is linearly dependent");
  RationalVector r = x;
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < r.size(); ++j) r[j] -= (*c)[i] * basis[i][j];
  return r;
}

}  // namespace fanoforge::linalg
