#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitkit/algnum.hpp"

namespace orbitkit {

/// A natural number that may be astronomically large.  Values below 2^64 are
/// kept exactly; larger ones only as an upper bound 2^log2.
class Threshold {
 public:
  Threshold() = default;
  static Threshold exact(const Integer& v);
  /// Some value <= 2^e.
  static Threshold pow2(unsigned long e);

  bool is_exact() const { return exact_; }
  /// Exact value; throws if only the log form is known.
  const Integer& value() const;
  /// ceil(log2) of the represented bound (exact values: of the value itself).
  unsigned long log2_ceiling() const;
  /// True when the bound is known to be <= cap.
  bool at_most(const Integer& cap) const;
  std::string to_string() const;

  static Threshold max(const Threshold& a, const Threshold& b);

 private:
  bool exact_ = true;
  Integer value_ = 0;
  unsigned long log2_ = 0;
};

/// Smallest N (up to the log form) such that for every n >= N:
///   n*c - k*log(n + shift) - d > 0.
/// Requires c > 0, k >= 0, shift >= 1.
Threshold solve_log_growth(const Rational& c, const Rational& k, const Rational& shift, const Rational& d);

struct BakerQuery {
  std::vector<Algebraic> alphas;
  Rational coeff_bound;               // B; values below e are treated as e
  std::vector<Rational> height_bounds;  // A_j; values below e are treated as e
  unsigned field_degree = 1;
};

/// -(16md)^{2(m+2)} log A_1 ... log A_m log B with upward-rounded logs.
Rational baker_lower_bound(const BakerQuery& q);

/// Upper bound on the absolute logarithmic height of z.
Rational log_height_upper(const Algebraic& z);
/// Positive lower bound on the absolute logarithmic height of z; z must be
/// nonzero and not a root of unity.
Rational log_height_lower(const Algebraic& z);

/// Every n with lambda^n = z satisfies n <= the returned bound.  lambda must be
/// nonzero and not a root of unity.
Integer power_equation_bound(const Algebraic& lambda, const Algebraic& z);
/// The unique n <= bound with lambda^n = z, if any.
std::optional<unsigned long> solve_power_equation(const Algebraic& lambda, const Algebraic& z, unsigned long bound);

/// A*alpha^n + B*beta^n = 0 implies n <= N1.
Threshold skolem_bound_two(const Algebraic& a, const Algebraic& alpha, const Algebraic& b, const Algebraic& beta);

enum class SkolemCase { Distinct, Repeated };

/// Distinct:  A alpha^n + B beta^n + C gamma^n = 0
/// Repeated:  A alpha^n + B n beta^{n-1} + C beta^n = 0   (gamma ignored)
/// implies n <= N2.  Throws std::domain_error for degenerate ratios and for
/// shapes with no effective bound here (three equal moduli that are not a
/// real conjugate configuration).
Threshold skolem_bound_three(SkolemCase c, const Algebraic& a, const Algebraic& alpha, const Algebraic& b,
                             const Algebraic& beta, const Algebraic& cc, const Algebraic& gamma);

/// For all n > N:  |C + cos(arg a + n arg lambda)| > |chi|^n.
Threshold cos_exp_threshold(const Algebraic& a, const Algebraic& lambda, const Algebraic& c, const Algebraic& chi);

/// High-precision check of the cos_exp_threshold inequality at one n.
/// Returns +1 if it holds, -1 if it fails, 0 if undecided at this precision.
int cos_exp_check(const Algebraic& a, const Algebraic& lambda, const Algebraic& c, const Algebraic& chi,
                  const Integer& n, unsigned digits = 100);

}  // namespace orbitkit
