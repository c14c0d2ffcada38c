#include "orbitkit/bigfloat.hpp"

#include <utility>
#include <vector>

namespace orbitkit {

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  mpfr_init2(value_, prec);
  mpfr_set_q(value_, q.get_mpq_t(), rnd);
}

BigFloat::BigFloat(double d, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, d, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.prec());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.prec());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

Rational BigFloat::to_rational() const {
  if (mpfr_zero_p(value_)) return Rational(0);
  if (!mpfr_number_p(value_)) throw std::domain_error("non-finite BigFloat");
  Integer mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), value_);
  Rational r(mant);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

std::string BigFloat::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data());
}

namespace {
mpfr_prec_t max_prec(const BigFloat& a, const BigFloat& b) { return a.prec() > b.prec() ? a.prec() : b.prec(); }
}  // namespace

BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
  BigFloat r(max_prec(a, b));
  mpfr_add(r.get(), a.get(), b.get(), rnd);
  return r;
}

BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
  BigFloat r(max_prec(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), rnd);
  return r;
}

BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
  BigFloat r(max_prec(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), rnd);
  return r;
}

BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {
  BigFloat r(max_prec(a, b));
  mpfr_div(r.get(), a.get(), b.get(), rnd);
  return r;
}

BigFloat sqrt(const BigFloat& a, mpfr_rnd_t rnd) {
  BigFloat r(a.prec());
  mpfr_sqrt(r.get(), a.get(), rnd);
  return r;
}

BigFloat log(const BigFloat& a, mpfr_rnd_t rnd) {
  BigFloat r(a.prec());
  mpfr_log(r.get(), a.get(), rnd);
  return r;
}

BigFloat exp(const BigFloat& a, mpfr_rnd_t rnd) {
  BigFloat r(a.prec());
  mpfr_exp(r.get(), a.get(), rnd);
  return r;
}

BigFloat cos(const BigFloat& a, mpfr_rnd_t rnd) {
  BigFloat r(a.prec());
  mpfr_cos(r.get(), a.get(), rnd);
  return r;
}

BigFloat sin(const BigFloat& a, mpfr_rnd_t rnd) {
  BigFloat r(a.prec());
  mpfr_sin(r.get(), a.get(), rnd);
  return r;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x, mpfr_rnd_t rnd) {
  BigFloat r(max_prec(x, y));
  mpfr_atan2(r.get(), y.get(), x.get(), rnd);
  return r;
}

BigFloat abs(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_abs(r.get(), a.get(), MPFR_RNDN);
  return r;
}

BigFloat pi(mpfr_prec_t prec, mpfr_rnd_t rnd) {
  BigFloat r(prec);
  mpfr_const_pi(r.get(), rnd);
  return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) { return add(a, b, MPFR_RNDN); }
BigFloat operator-(const BigFloat& a, const BigFloat& b) { return sub(a, b, MPFR_RNDN); }
BigFloat operator*(const BigFloat& a, const BigFloat& b) { return mul(a, b, MPFR_RNDN); }
BigFloat operator/(const BigFloat& a, const BigFloat& b) { return div(a, b, MPFR_RNDN); }
BigFloat operator-(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

Rational log_upper(const Rational& q, mpfr_prec_t prec) {
  if (q <= 0) throw std::domain_error("log of non-positive rational");
  BigFloat x(q, prec, MPFR_RNDU);
  return log(x, MPFR_RNDU).to_rational();
}

Rational log_lower(const Rational& q, mpfr_prec_t prec) {
  if (q <= 0) throw std::domain_error("log of non-positive rational");
  BigFloat x(q, prec, MPFR_RNDD);
  return log(x, MPFR_RNDD).to_rational();
}

Rational ln2_upper() {
  static const Rational v = [] {
    BigFloat r(96);
    mpfr_const_log2(r.get(), MPFR_RNDU);
    return r.to_rational();
  }();
  return v;
}

Rational ln2_lower() {
  static const Rational v = [] {
    BigFloat r(96);
    mpfr_const_log2(r.get(), MPFR_RNDD);
    return r.to_rational();
  }();
  return v;
}

}  // namespace orbitkit
