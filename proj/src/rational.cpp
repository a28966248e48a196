#include "fanoforge/rational.hpp"

#include <limits>

#include "fanoforge/errors.hpp"

namespace fanoforge {

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw InputError("dot: dimension mismatch");
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RationalVector add(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw InputError("add: dimension mismatch");
  RationalVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RationalVector sub(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw InputError("sub: dimension mismatch");
  RationalVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RationalVector scale(const RationalVector& a, const Rational& c) {
  RationalVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

bool is_zero(const RationalVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

RationalVector primitive(const RationalVector& v) {
  if (is_zero(v)) return v;
  Integer den_lcm = 1;
  for (const auto& x : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> ints(v.size());
  Integer g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    Rational t = v[i] * den_lcm;
    ints[i] = t.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  RationalVector r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rational(ints[i] / g);
  return r;
}

RationalVector primitive_unsigned(const RationalVector& v) {
  RationalVector r = primitive(v);
  for (const auto& x : r) {
    if (sgn(x) == 0) continue;
    if (sgn(x) < 0)
      for (auto& y : r) y = -y;
    break;
  }
  return r;
}

RationalVector to_rational(const std::vector<std::int64_t>& v) {
  RationalVector r;
  r.reserve(v.size());
  for (auto x : v) r.emplace_back(static_cast<long>(x));
  return r;
}

std::int64_t to_int64(const Rational& q) {
  if (q.get_den() != 1) throw InputError("expected an integer, got " + q.get_str());
  const Integer& n = q.get_num();
  if (!n.fits_slong_p()) throw InputError("integer out of range: " + n.get_str());
  return n.get_si();
}

std::vector<std::int64_t> to_int64(const RationalVector& v) {
  std::vector<std::int64_t> r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(to_int64(x));
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const RationalVector& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

bool lex_less(const RationalVector& a, const RationalVector& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

}  // namespace fanoforge
