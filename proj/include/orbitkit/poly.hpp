#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orbitkit/rational.hpp"

namespace orbitkit {

/// Dense univariate polynomial over Q, lowest degree first.  The coefficient
/// vector never has a trailing zero; the zero polynomial is the empty vector.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  static RatPoly constant(const Rational& c);
  static RatPoly x();
  /// x - r
  static RatPoly linear_root(const Rational& r);
  static RatPoly monomial(const Rational& c, std::size_t deg);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational eval(const Rational& t) const;
  RatPoly derivative() const;
  RatPoly monic() const;
  RatPoly compose(const RatPoly& inner) const;
  /// p(-x)
  RatPoly negate_var() const;
  /// x^deg p(1/x)
  RatPoly reversed() const;
  /// p(x^2)
  RatPoly square_var() const;
  /// p(c x)
  RatPoly scale_var(const Rational& c) const;

  /// Largest |coefficient| of the primitive integer multiple.
  Integer height() const;
  /// Primitive integer polynomial with positive leading coefficient.
  std::vector<Integer> primitive_integer() const;
  static RatPoly from_integers(const std::vector<Integer>& z);

  std::string to_string(const std::string& var = "x") const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const Rational& s, const RatPoly& a);
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const RatPoly& a, const RatPoly& b) { return !(a == b); }

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Euclidean division; throws on zero divisor.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly operator/(const RatPoly& a, const RatPoly& b);
RatPoly operator%(const RatPoly& a, const RatPoly& b);
/// Monic gcd (zero if both inputs are zero).
RatPoly gcd(const RatPoly& a, const RatPoly& b);
RatPoly lcm(const RatPoly& a, const RatPoly& b);
RatPoly pow(const RatPoly& p, unsigned e);
bool divides(const RatPoly& d, const RatPoly& p);

/// Yun's algorithm: p = c * prod f_i^i with f_i monic squarefree, pairwise coprime.
std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& p);
RatPoly squarefree_part(const RatPoly& p);

/// Monic irreducible factors with multiplicity, sorted by (degree, coefficients).
std::vector<std::pair<RatPoly, int>> factor_poly(const RatPoly& p);

/// r-th cyclotomic polynomial.
RatPoly cyclotomic(unsigned r);

/// Euler phi for small arguments.
unsigned euler_phi(unsigned r);

/// Parses "1,0,-2" or "[1, 0, -2]" (lowest degree first).
RatPoly parse_poly(const std::string& text);

}  // namespace orbitkit
