#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orbitkit {

using Integer = mpz_class;
// mpq_class keeps gcd(|num|, den) = 1 and den > 0 after every operation.
using Rational = mpq_class;

/// Raised for malformed textual input (rationals, polynomials, instance files).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p", "-p", "p/q" (q > 0).  Surrounding whitespace is ignored.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text; integers are written without the "/1".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
Rational abs_of(const Rational& q);
int sign_of(const Rational& q);
int sign_of(const Integer& z);

Rational pow(const Rational& base, unsigned long exponent);
Integer pow(const Integer& base, unsigned long exponent);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

/// Number of bits in |z| (0 for z = 0).
std::size_t bit_length(const Integer& z);

/// Returns true and writes the value when z fits in a signed 64-bit integer.
bool fits_i64(const Integer& z, std::int64_t* out = nullptr);

/// Largest integer r with r^2 <= z (z >= 0).
Integer isqrt(const Integer& z);

/// Rational upper / lower bounds on sqrt(q) for q >= 0 within 2^-bits.
Rational sqrt_upper(const Rational& q, unsigned bits = 64);
Rational sqrt_lower(const Rational& q, unsigned bits = 64);

/// Exact square root if q is a perfect square of a rational.
bool exact_sqrt(const Rational& q, Rational* out);

std::vector<Rational> parse_rational_list(const std::vector<std::string>& items);

}  // namespace orbitkit
