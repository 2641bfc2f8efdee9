#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ect {

/// Exact rational scalar used for costs, coordinates and dual values.
using Rational = mpq_class;

/// Formats as "p/q" (always with an explicit denominator).
std::string to_string(const Rational& q);

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

inline Rational half() { return Rational(1, 2); }

}  // namespace ect
