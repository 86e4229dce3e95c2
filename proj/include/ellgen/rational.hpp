#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ellgen {

using Integer = mpz_class;
/// Arbitrary precision rational, always kept in lowest terms with positive denominator.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

/// Serialized as "num/den" (the denominator is always written).
std::string to_string(const Rational& r);
/// Accepts "num/den" or a bare integer; throws ParseError on anything else.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

Integer binomial(long n, long k);
Integer factorial(long n);

/// Bernoulli numbers B_0..B_n with B_1 = -1/2.
std::vector<Rational> bernoulli_numbers(int n);

// Scalar hooks used by the generic series kernels.
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
Rational invert(const Rational& r);

}  // namespace ellgen
