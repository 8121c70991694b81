#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qfloer {

using Integer = mpz_class;

// mpq_class keeps values canonical: lowest terms, positive denominator.
using Rational = mpq_class;

/// Parses "p/q", "p", or a finite decimal such as "-0.25". Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form, always with an explicit denominator ("3/1").
std::string to_string(const Rational& value);

/// Human-facing form: "3" for integers, "-7/2" otherwise.
std::string to_display_string(const Rational& value);

double to_double(const Rational& value);

/// Greatest integer strictly below `value`.
Integer floor_strict(const Rational& value);

/// Least integer strictly above `value`.
Integer ceil_strict(const Rational& value);

Integer floor(const Rational& value);

Integer ceil(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace qfloer
