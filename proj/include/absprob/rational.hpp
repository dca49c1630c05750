#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace absprob {

/// Exact rational used for weights, counts and probabilities.
using Rational = mpq_class;

/// Parses "3", "0.25", "-1.5e-2" style decimals or "p/q" fractions exactly.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when integral) rendering; round-trips through
/// parse_rational.
std::string to_string(const Rational& value);

/// Decimal rendering with up to `digits` fractional digits, trailing zeros
/// trimmed ("0.25", "0.7", "0.333333333333").
std::string to_decimal(const Rational& value, int digits = 12);

double to_double(const Rational& value);

}  // namespace absprob
