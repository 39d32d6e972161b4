#pragma once

// Exact integer and rational arithmetic used throughout the library.
// Integers are GMP mpz values, rationals are canonical mpq values
// (lowest terms, positive denominator).

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gmslope {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
inline Integer to_integer(long long x) { return Integer(static_cast<long>(x)); }

Integer floor_of(const Rational& x);
Integer ceil_of(const Rational& x);
bool is_integral(const Rational& x);
// x - floor(x), in [0, 1).
Rational frac_of(const Rational& x);

Integer floor_div(const Integer& a, const Integer& b);
Integer abs_of(const Integer& x);
Integer lcm_of(const Integer& a, const Integer& b);

// "n" for integers, "n/d" otherwise.
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

// Accepts "n" or "n/d" with optional leading sign; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

}  // namespace gmslope
