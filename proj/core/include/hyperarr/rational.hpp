#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace hyperarr {

using Integer = mpz_class;
using Rational = mpq_class;  // always canonicalized (lowest terms, positive denominator)

/// Parses "7", "-3", "2/5", "-2/-4" or a finite decimal such as "0.25".
/// Throws Error{ParseError} on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

double to_double(const Rational& q);

/// Integer power with a non-negative exponent.
Integer ipow(const Integer& base, unsigned long exp);

/// Narrowing conversion; throws Error{NumericFailure} when out of range.
long long to_int64(const Integer& z);

}  // namespace hyperarr
