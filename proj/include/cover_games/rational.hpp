#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace cover_games {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p", or a finite decimal such as "0.6". Throws InputError.
Rational parse_rational(std::string_view text);

/// Canonical "numerator/denominator" form; integers keep the "/1" suffix so
/// serialized values are uniform.
std::string to_string(const Rational& value);

/// (1/2)^k for k >= 0.
Rational half_power(unsigned long k);

/// 2^(2^n) as an exact integer.
Integer two_pow_two_pow(unsigned n);

/// Rational bounds on sqrt(q) for q >= 0. Exact when q is a perfect square.
Rational sqrt_lower(const Rational& q);
Rational sqrt_upper(const Rational& q);

/// Exact square root when q is the square of a rational.
bool exact_sqrt(const Rational& q, Rational& root);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Clamps an integer into the int64 range.
std::int64_t saturate_int64(const Integer& value);

}  // namespace cover_games
