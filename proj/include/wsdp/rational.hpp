#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wsdp {

// GMP keeps mpq_class results in lowest terms with a positive denominator;
// every constructor path below canonicalizes explicitly.
using Rational = mpq_class;
using Integer = mpz_class;
using Vector = std::vector<Rational>;

/// Parses "p", "p/q", or a decimal such as "-1.25" or "3e-2" exactly.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" form.
std::string to_string(const Rational& value);

bool is_integer(const Rational& value);

/// Exact finite decimal expansion if the denominator has no prime factors
/// other than 2 and 5, std::nullopt otherwise.
std::optional<std::string> exact_decimal(const Rational& value);

/// Decimal rounded to `digits` significant digits (scientific notation).
std::string rounded_decimal(const Rational& value, int digits = 17);

/// Least common multiple of the denominators.
Integer denominator_lcm(std::span<const Rational> values);

/// Greatest common divisor of the numerators (0 if all zero).
Integer numerator_gcd(std::span<const Rational> values);

int sign(const Rational& value);

}  // namespace wsdp
