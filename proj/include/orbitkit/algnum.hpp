#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "orbitkit/poly.hpp"
#include "orbitkit/rational.hpp"

namespace orbitkit {

/// Exact complex rational, mostly used with dyadic coordinates.
struct QComplex {
  Rational re, im;
};

QComplex operator+(const QComplex& a, const QComplex& b);
QComplex operator-(const QComplex& a, const QComplex& b);
QComplex operator*(const QComplex& a, const QComplex& b);
QComplex operator/(const QComplex& a, const QComplex& b);
Rational norm2(const QComplex& a);
/// Rounds both coordinates to multiples of 2^-bits.
QComplex round_dyadic(const QComplex& a, unsigned bits);
Rational round_dyadic(const Rational& a, unsigned bits);
QComplex eval(const RatPoly& p, const QComplex& z);

/// Closed disc {z : |z - center| <= rad}: a certified enclosure.
struct Ball {
  QComplex c;
  Rational rad;
  bool contains_zero() const;
  bool meets(const Ball& o) const;
};

Ball operator+(const Ball& a, const Ball& b);
Ball operator-(const Ball& a, const Ball& b);
Ball operator*(const Ball& a, const Ball& b);
/// Throws std::domain_error if b may contain zero.
Ball operator/(const Ball& a, const Ball& b);
Ball ball_eval(const RatPoly& p, const Ball& z);
/// Recentres on a dyadic grid, folding the rounding error into the radius.
Ball tidy(const Ball& b, unsigned bits);

/// Canonical algebraic number: monic irreducible minimal polynomial plus a
/// disc of radius < 1/4 of the separation bound that contains exactly one
/// root.  Real numbers always carry a real centre; a radius of 0 means the
/// centre is the number itself.
class Algebraic {
 public:
  Algebraic() : Algebraic(Rational(0)) {}
  Algebraic(const Rational& q);  // NOLINT(implicit)
  Algebraic(long v) : Algebraic(Rational(v)) {}  // NOLINT(implicit)
  static Algebraic gaussian(const Rational& re, const Rational& im);
  /// Trusted constructor: caller guarantees the canonical invariants.
  static Algebraic from_parts(RatPoly minpoly, QComplex center, Rational radius);
  /// Checks the invariants (isolation and radius) and throws if they fail.
  static Algebraic checked(const RatPoly& minpoly, const QComplex& center, const Rational& radius);
  static Algebraic i();

  const RatPoly& min_poly() const { return f_; }
  int degree() const { return f_.degree(); }
  Integer height() const { return f_.height(); }
  const QComplex& center() const { return c_; }
  const Rational& radius() const { return r_; }

  bool is_rational() const { return f_.degree() == 1; }
  Rational rational_value() const;
  bool is_real() const { return c_.im == 0; }
  bool is_zero() const { return is_rational() && f_.coeff(0) == 0; }

  /// Copy with radius <= eps.
  Algebraic refined(const Rational& eps) const;
  /// Enclosure of radius <= 2^-bits.
  Ball ball(unsigned bits) const;

  std::string to_string(int digits = 12) const;
  double approx_re() const;
  double approx_im() const;

 private:
  RatPoly f_;
  QComplex c_;
  Rational r_;
};

struct RootOfUnityInfo {
  unsigned order;
  unsigned numerator;
};

enum class AlgOp { Add, Sub, Mul, Div, Conj, Neg, Sqrt };

Algebraic alg_arith(AlgOp op, const Algebraic& a, const Algebraic* b = nullptr);
Algebraic operator+(const Algebraic& a, const Algebraic& b);
Algebraic operator-(const Algebraic& a, const Algebraic& b);
Algebraic operator*(const Algebraic& a, const Algebraic& b);
Algebraic operator/(const Algebraic& a, const Algebraic& b);
Algebraic operator-(const Algebraic& a);
Algebraic conj(const Algebraic& a);
Algebraic sqrt(const Algebraic& a);
Algebraic pow(const Algebraic& a, const Integer& n);
Algebraic pow(const Algebraic& a, unsigned long n);
Algebraic real_part(const Algebraic& a);
Algebraic imag_part(const Algebraic& a);
/// |a|^2 = a * conj(a)
Algebraic abs2(const Algebraic& a);
Algebraic abs(const Algebraic& a);

bool alg_equal(const Algebraic& a, const Algebraic& b);
inline bool operator==(const Algebraic& a, const Algebraic& b) { return alg_equal(a, b); }
inline bool operator!=(const Algebraic& a, const Algebraic& b) { return !alg_equal(a, b); }

/// (Re, Im, radius) of a disc of radius <= eps containing a.
std::tuple<Rational, Rational, Rational> refine(const Algebraic& a, const Rational& eps);

/// Exact sign of a real algebraic number; throws for non-real input.
int sign_real(const Algebraic& a);
/// sign(a - b) for real a, b.
int compare_real(const Algebraic& a, const Algebraic& b);
/// Real algebraic with modulus 1 test, exact.
bool on_unit_circle(const Algebraic& a);

std::optional<RootOfUnityInfo> root_of_unity_order(const Algebraic& a);

/// Rational lower bound on the minimal distance between distinct roots of p.
Rational root_separation(const RatPoly& p);

/// One entry per distinct complex root with its multiplicity; real roots first
/// in increasing order, then complex roots by (Re, Im).
std::vector<std::pair<Algebraic, int>> isolate_roots(const RatPoly& p);

/// Value g(alpha) for g in Q[x], computed inside Q(alpha).
Algebraic eval_in_field(const RatPoly& g, const Algebraic& alpha);

/// Composed polynomials: roots a_i + b_j and a_i * b_j respectively.
RatPoly composed_sum(const RatPoly& f, const RatPoly& g);
RatPoly composed_product(const RatPoly& f, const RatPoly& g);
/// Power sums p_1..p_count of the roots of a monic polynomial (p_0 = degree).
std::vector<Rational> power_sums(const RatPoly& monic, std::size_t count);

/// Picks the root of `candidate` enclosed by the balls approx(bits) as bits
/// grows.  The enclosed number must be a root of `candidate`.
template <typename F>
Algebraic identify_root(const RatPoly& candidate, F&& approx);

/// Non-template core of identify_root.
class BallSource {
 public:
  virtual ~BallSource() = default;
  virtual Ball at(unsigned bits) const = 0;
};
Algebraic identify_root_from(const RatPoly& candidate, const BallSource& src);

template <typename F>
Algebraic identify_root(const RatPoly& candidate, F&& approx) {
  using G = std::remove_reference_t<F>;
  struct Wrap : BallSource {
    G* f;
    explicit Wrap(G* g) : f(g) {}
    Ball at(unsigned bits) const override { return (*f)(bits); }
  } w(&approx);
  return identify_root_from(candidate, w);
}

/// Rational upper / lower bounds on |z| with roughly 60 bits of relative accuracy.
Rational mag_upper(const QComplex& z);
Rational mag_lower(const QComplex& z);
Rational sqrt_up(const Rational& q);
Rational sqrt_down(const Rational& q);

}  // namespace orbitkit
