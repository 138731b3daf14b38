#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hilbcalc {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Decimal points and exponents are rejected.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// p/q in lowest terms (mpq_class(p, q) alone is not canonicalized).
Rational fraction(long p, long q);

Rational factorial(int n);
Rational binomial(int n, int k);

inline int sign_of_parity(int parity) { return (parity & 1) ? -1 : 1; }

}  // namespace hilbcalc
