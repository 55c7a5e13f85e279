#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ellpoisson
{

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator (mpq_class canonicalizes after every arithmetic operation).
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Parses "p" or "p/q" with optional leading sign. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// "p" when the denominator is one, "p/q" otherwise.
std::string to_string(const Rational &q);

double to_double(const Rational &q);

} // namespace ellpoisson
