#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fanoforge {

using Rational = mpq_class;
using Integer = mpz_class;

/// Element of Q^n. All arithmetic on these is exact.
using RationalVector = std::vector<Rational>;

/// Row-major rational matrix.
using RationalMatrix = std::vector<RationalVector>;

Rational dot(const RationalVector& a, const RationalVector& b);
RationalVector add(const RationalVector& a, const RationalVector& b);
RationalVector sub(const RationalVector& a, const RationalVector& b);
RationalVector scale(const RationalVector& a, const Rational& c);
bool is_zero(const RationalVector& v);

/// Positive rational multiple of v with coprime integer entries.
RationalVector primitive(const RationalVector& v);

/// primitive(v), then negated if its leading nonzero entry is negative.
RationalVector primitive_unsigned(const RationalVector& v);

RationalVector to_rational(const std::vector<std::int64_t>& v);

/// Converts an integral vector; throws InputError on a non-integer entry or
/// on overflow of int64.
std::vector<std::int64_t> to_int64(const RationalVector& v);
std::int64_t to_int64(const Rational& q);

std::string to_string(const Rational& q);
std::string to_string(const RationalVector& v);

/// Lexicographic order on equal-length vectors.
bool lex_less(const RationalVector& a, const RationalVector& b);

}  // namespace fanoforge
