#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace cdcurv {

/// Arbitrary precision rational, always kept in canonical form
/// (positive denominator, reduced).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p", or a plain decimal such as "0.25". Throws MalformedSpec.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

Rational binomial(const Rational& top, unsigned long k);

/// base^e for a signed integer exponent. base must be nonzero when e < 0.
Rational pow_int(const Rational& base, long e);

/// Exact base^exponent when it is rational, std::nullopt otherwise.
/// base must be positive.
std::optional<Rational> rational_power(const Rational& base, const Rational& exponent);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace cdcurv
