#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace slashtree {

/// Exact rational arithmetic; every weight, distance and measure uses it.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "num/den" or a bare integer. Throws SchemaError on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Always renders "num/den", including "1/1".
std::string to_string(const Rational& q);

std::string to_string(const BigInt& z);

/// Decimal rendering for reports only; never used for decisions.
double to_double(const Rational& q);

/// 2^exponent as an exact integer.
BigInt pow2(unsigned long exponent);

BigInt ipow(const BigInt& base, unsigned long exponent);

}  // namespace slashtree
