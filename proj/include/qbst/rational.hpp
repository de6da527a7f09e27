#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qbst {

// Exact rational backed by GMP; mpq_class keeps values canonical
// (lowest terms, positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Formats as "p/q" (integers print as "p/1").
std::string to_string(const Rational& value);

/// Accepts "p" or "p/q" with optional leading sign. Throws Error(ParseError).
Rational parse_rational(std::string_view text);

/// Decimal rendering for display-only report fields.
std::string to_decimal(const Rational& value, int places);

}  // namespace qbst
