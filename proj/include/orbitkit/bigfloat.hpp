#pragma once

#include <mpfr.h>

#include <string>

#include "orbitkit/rational.hpp"

namespace orbitkit {

// Thin RAII holder for an MPFR value.  Arithmetic goes through the free
// functions below so the rounding direction is always explicit at the call
// site; the operators round to nearest and are meant for guidance only.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 128);
  BigFloat(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
  BigFloat(double d, mpfr_prec_t prec);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(value_); }

  /// Exact conversion (finite values only).
  Rational to_rational() const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  std::string to_string(int digits = 20) const;
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a);
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }

 private:
  mpfr_t value_;
};

BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd);
BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd);
BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd);
BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd);
BigFloat sqrt(const BigFloat& a, mpfr_rnd_t rnd);
BigFloat log(const BigFloat& a, mpfr_rnd_t rnd);
BigFloat exp(const BigFloat& a, mpfr_rnd_t rnd);
BigFloat cos(const BigFloat& a, mpfr_rnd_t rnd);
BigFloat sin(const BigFloat& a, mpfr_rnd_t rnd);
BigFloat atan2(const BigFloat& y, const BigFloat& x, mpfr_rnd_t rnd);
BigFloat abs(const BigFloat& a);
BigFloat pi(mpfr_prec_t prec, mpfr_rnd_t rnd);

/// Rational upper / lower bounds on the natural log of a positive rational.
Rational log_upper(const Rational& q, mpfr_prec_t prec = 96);
Rational log_lower(const Rational& q, mpfr_prec_t prec = 96);

/// Rational bounds on ln(2): used to turn log2 thresholds into natural logs.
Rational ln2_upper();
Rational ln2_lower();

}  // namespace orbitkit
