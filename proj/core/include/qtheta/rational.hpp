#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qtheta {

/// Exact rational with arbitrary-size numerator and denominator, always kept
/// in lowest terms with a positive denominator (canonical zero is 0/1).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a" or "a/b" (optional leading sign). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational &r);

bool is_integer(const Rational &r);

/// Converts to int64, throwing std::overflow_error if the value is not a
/// representable integer.
std::int64_t to_int64(const Integer &z);
std::int64_t to_int64(const Rational &r);

/// Floor of a rational as int64.
std::int64_t floor_int64(const Rational &r);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// True when r is the square of a rational; writes the non-negative root.
bool rational_sqrt(const Rational &r, Rational &root);

} // namespace qtheta
