#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hermlat {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "n", "-n" or "p/q" (q != 0). Whitespace is not accepted.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "n" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// n/d in lowest terms (d != 0).
Rational ratio(const Integer& n, const Integer& d);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
bool is_integer(const Rational& q);
Rational pow(const Rational& q, unsigned exponent);

/// The k-th root of q when it is rational, nullopt otherwise. q must be >= 0
/// for even k.
std::optional<Rational> exact_root(const Rational& q, unsigned k);

/// Converts to int64, throwing ValidationError when out of range.
std::int64_t to_int64(const Integer& z);
bool fits_int64(const Integer& z);

}  // namespace hermlat
