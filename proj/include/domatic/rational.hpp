#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace domatic {

// Exact probabilities. Every measure in the library is one of these; floats
// only appear as convenience columns in reports.
using Rational = mpq_class;

// 2^(-exponent)
Rational pow2_neg(unsigned exponent);

// base^exponent for a non-negative integer exponent; 0^0 == 1.
Rational pow(const Rational& base, unsigned long exponent);

// Always "num/den", integers included ("1/1").
std::string to_string(const Rational& q);

// Accepts "num/den" or a bare integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

}  // namespace domatic
