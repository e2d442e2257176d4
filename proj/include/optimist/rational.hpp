#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace optimist {

// Every table cell, weight and intercept is an exact rational.
using Rational = mpq_class;

// Closest fraction to `value` with denominator at most `max_denominator`.
// Same algorithm and tie rule as Python's Fraction.limit_denominator.
Rational limit_denominator(const Rational& value, long max_denominator);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

// Accepts "p", "-p", "p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& value);

}  // namespace optimist
