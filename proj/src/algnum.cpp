#include "orbitkit/algnum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>

#include "orbitkit/bigfloat.hpp"
#include "orbitkit/linalg.hpp"

namespace orbitkit {

// ---------------------------------------------------------------------------
// exact complex rationals and rounding

QComplex operator+(const QComplex& a, const QComplex& b) { return {a.re + b.re, a.im + b.im}; }
QComplex operator-(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }
QComplex operator*(const QComplex& a, const QComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
QComplex operator/(const QComplex& a, const QComplex& b) {
  Rational n = norm2(b);
  if (n == 0) throw std::domain_error("complex division by zero");
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
Rational norm2(const QComplex& a) { return a.re * a.re + a.im * a.im; }

Rational round_dyadic(const Rational& a, unsigned bits) {
  if (a.get_den() == 1) return a;
  Rational s = a;
  mpq_mul_2exp(s.get_mpq_t(), s.get_mpq_t(), bits);
  Integer n = floor_of(s + Rational(1, 2));
  Rational r(n);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
  return r;
}

QComplex round_dyadic(const QComplex& a, unsigned bits) { return {round_dyadic(a.re, bits), round_dyadic(a.im, bits)}; }

QComplex eval(const RatPoly& p, const QComplex& z) {
  QComplex acc{0, 0};
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * z;
    acc.re += *it;
  }
  return acc;
}

namespace {

// log2 of a positive rational, rounded towards -inf (roughly).
long ilog2(const Rational& q) {
  return static_cast<long>(bit_length(q.get_num())) - static_cast<long>(bit_length(q.get_den()));
}

// Upper bound keeping ~64 significant bits.
Rational round_up_mag(const Rational& r) {
  if (r <= 0) return r;
  long e = ilog2(r);
  long s = 64 - e;
  Rational t = r;
  if (s >= 0) mpq_mul_2exp(t.get_mpq_t(), t.get_mpq_t(), static_cast<mp_bitcnt_t>(s));
  else mpq_div_2exp(t.get_mpq_t(), t.get_mpq_t(), static_cast<mp_bitcnt_t>(-s));
  Rational u(ceil_of(t));
  if (s >= 0) mpq_div_2exp(u.get_mpq_t(), u.get_mpq_t(), static_cast<mp_bitcnt_t>(s));
  else mpq_mul_2exp(u.get_mpq_t(), u.get_mpq_t(), static_cast<mp_bitcnt_t>(-s));
  return u;
}

Rational round_down_mag(const Rational& r) {
  if (r <= 0) return r;
  long e = ilog2(r);
  long s = 64 - e;
  Rational t = r;
  if (s >= 0) mpq_mul_2exp(t.get_mpq_t(), t.get_mpq_t(), static_cast<mp_bitcnt_t>(s));
  else mpq_div_2exp(t.get_mpq_t(), t.get_mpq_t(), static_cast<mp_bitcnt_t>(-s));
  Rational u(floor_of(t));
  if (s >= 0) mpq_div_2exp(u.get_mpq_t(), u.get_mpq_t(), static_cast<mp_bitcnt_t>(s));
  else mpq_mul_2exp(u.get_mpq_t(), u.get_mpq_t(), static_cast<mp_bitcnt_t>(-s));
  return u;
}

Rational pow2(long e) {
  Rational r(1);
  if (e >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

// Number of bits after the binary point needed to resolve eps.
unsigned bits_for(const Rational& eps) {
  if (eps <= 0) return 64;
  long b = -ilog2(eps) + 4;
  return static_cast<unsigned>(std::max(32L, b));
}

}  // namespace

Rational sqrt_up(const Rational& q) {
  if (q <= 0) return 0;
  long e = ilog2(q);
  long s = std::max(0L, (140 - e) / 2);
  return round_up_mag(sqrt_upper(q, static_cast<unsigned>(s)));
}

Rational sqrt_down(const Rational& q) {
  if (q <= 0) return 0;
  long e = ilog2(q);
  long s = std::max(0L, (140 - e) / 2);
  return round_down_mag(sqrt_lower(q, static_cast<unsigned>(s)));
}

Rational mag_upper(const QComplex& z) {
  if (z.im == 0) return abs_of(z.re);
  if (z.re == 0) return abs_of(z.im);
  return sqrt_up(norm2(z));
}

Rational mag_lower(const QComplex& z) {
  if (z.im == 0) return abs_of(z.re);
  if (z.re == 0) return abs_of(z.im);
  return sqrt_down(norm2(z));
}

// ---------------------------------------------------------------------------
// balls

bool Ball::contains_zero() const { return norm2(c) <= rad * rad; }

bool Ball::meets(const Ball& o) const {
  Rational s = rad + o.rad;
  return norm2(c - o.c) <= s * s;
}

Ball operator+(const Ball& a, const Ball& b) { return {a.c + b.c, a.rad + b.rad}; }
Ball operator-(const Ball& a, const Ball& b) { return {a.c - b.c, a.rad + b.rad}; }

Ball operator*(const Ball& a, const Ball& b) {
  Rational rad = 0;
  if (b.rad != 0) rad += mag_upper(a.c) * b.rad;
  if (a.rad != 0) rad += mag_upper(b.c) * a.rad + a.rad * b.rad;
  return {a.c * b.c, round_up_mag(rad)};
}

Ball operator/(const Ball& a, const Ball& b) {
  Rational m = mag_lower(b.c);
  if (m <= b.rad) throw std::domain_error("ball division by a ball containing zero");
  Rational n = norm2(b.c);
  Ball inv{{b.c.re / n, -b.c.im / n}, Rational(0)};
  if (b.rad != 0) inv.rad = round_up_mag(b.rad / (m * (m - b.rad)));
  return a * inv;
}

Ball tidy(const Ball& b, unsigned bits) {
  QComplex c = round_dyadic(b.c, bits);
  Rational moved = 0;
  if (c.re != b.c.re || c.im != b.c.im) moved = pow2(-static_cast<long>(bits));
  return {c, round_up_mag(b.rad + moved)};
}

Ball ball_eval(const RatPoly& p, const Ball& z) {
  if (z.rad == 0) return {eval(p, z.c), Rational(0)};
  unsigned bits = bits_for(z.rad) + 16;
  Ball acc{{0, 0}, 0};
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * z;
    acc.c.re += *it;
    acc = tidy(acc, bits);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// separation bound

namespace {

// n^(e/2) rounded up, e >= 0.
Rational half_power_up(unsigned n, unsigned e) {
  Rational r = pow(Rational(n), e / 2);
  if (e % 2) r *= sqrt_up(Rational(n));
  return r;
}

Rational sep_bound_squarefree(const RatPoly& sqf) {
  int n = sqf.degree();
  if (n < 2) return 1;
  std::vector<Integer> z = sqf.primitive_integer();
  Integer h = 0, ss = 0;
  for (const auto& c : z) {
    if (abs(c) > h) h = abs(c);
    ss += c * c;
  }
  unsigned un = static_cast<unsigned>(n);
  // Bound as stated in the paper, with 2 in place of sqrt(6).
  Rational paper = Rational(2) / (half_power_up(un, un + 1) * pow(Rational(h), un - 1));
  // Classical Mignotte bound (|disc| >= 1 for squarefree integer polynomials).
  Rational norm = sqrt_up(Rational(ss));
  Rational classic = Rational(17, 10) / (half_power_up(un, un + 2) * pow(norm, un - 1));
  return round_down_mag(std::min(paper, classic));
}

}  // namespace

Rational root_separation(const RatPoly& p) {
  if (p.is_zero()) throw std::domain_error("zero input");
  RatPoly s = squarefree_part(p);
  if (p.degree() < 2) throw std::domain_error("root_separation needs degree >= 2");
  if (s.degree() < 2) return 1;  // single distinct root: any positive value is a valid bound
  return sep_bound_squarefree(s);
}

// ---------------------------------------------------------------------------
// root refinement and isolation

namespace {

struct Disc {
  QComplex c;
  Rational r;
};

// Newton step data: certified radius n|f(z)|/|f'(z)| of a disc around z that
// contains a root of f.
bool newton_disc(const RatPoly& f, const RatPoly& df, const QComplex& z, Rational* rho, QComplex* next) {
  QComplex v = eval(f, z);
  if (v.re == 0 && v.im == 0) {
    *rho = 0;
    *next = z;
    return true;
  }
  QComplex d = eval(df, z);
  Rational dl = mag_lower(d);
  if (dl == 0) return false;
  *rho = round_up_mag(Rational(f.degree()) * mag_upper(v) / dl);
  *next = z - v / d;
  return true;
}

std::vector<std::complex<long double>> aberth_ld(const RatPoly& f) {
  using C = std::complex<long double>;
  int n = f.degree();
  RatPoly m = f.monic();
  std::vector<long double> a(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) a[static_cast<std::size_t>(i)] = static_cast<long double>(m.coeff(static_cast<std::size_t>(i)).get_d());
  long double R = 0;
  for (int k = 1; k <= n; ++k) {
    long double t = std::pow(std::fabs(a[static_cast<std::size_t>(n - k)]), 1.0L / k);
    R = std::max(R, t);
  }
  R = std::max(R, 1e-6L);
  std::vector<C> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    long double th = 2.0L * 3.14159265358979323846L * k / n + 0.4L;
    z[static_cast<std::size_t>(k)] = std::polar(R, th);
  }
  auto ev = [&](const C& x, C& p, C& dp) {
    p = 1;
    dp = 0;
    for (int i = n - 1; i >= 0; --i) {
      dp = dp * x + p;
      p = p * x + a[static_cast<std::size_t>(i)];
    }
  };
  for (int it = 0; it < 800; ++it) {
    long double worst = 0;
    for (int i = 0; i < n; ++i) {
      C p, dp;
      ev(z[static_cast<std::size_t>(i)], p, dp);
      if (std::abs(dp) == 0) dp = 1e-30L;
      C w = p / dp;
      C s = 0;
      for (int j = 0; j < n; ++j) {
        if (j != i) s += 1.0L / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      }
      C step = w / (1.0L - w * s);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[static_cast<std::size_t>(i)] -= step;
      worst = std::max(worst, std::abs(step) / (1 + std::abs(z[static_cast<std::size_t>(i)])));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

void aberth_q(const RatPoly& f, std::vector<QComplex>& z, unsigned prec, int iters) {
  RatPoly df = f.derivative();
  std::size_t n = z.size();
  for (int it = 0; it < iters; ++it) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      QComplex p = eval(f, z[i]);
      if (p.re == 0 && p.im == 0) continue;
      QComplex dp = eval(df, z[i]);
      if (norm2(dp) == 0) continue;
      QComplex w = round_dyadic(p / dp, prec);
      QComplex s{0, 0};
      bool ok = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        QComplex d = z[i] - z[j];
        if (norm2(d) == 0) {
          ok = false;
          break;
        }
        s = s + round_dyadic(QComplex{1, 0} / d, prec);
      }
      if (!ok) {
        z[i].re += pow2(-static_cast<long>(prec) / 2);
        continue;
      }
      QComplex den = QComplex{1, 0} - w * s;
      if (norm2(den) == 0) continue;
      QComplex step = round_dyadic(w / den, prec);
      if (norm2(step) > 0) moved = true;
      z[i] = round_dyadic(z[i] - step, prec);
    }
    if (!moved) break;
  }
}

// Shrinks an isolating disc (exactly one root of irreducible f inside) until
// the radius is <= eps.
Disc refine_disc(const RatPoly& f, const Disc& d0, const Rational& eps) {
  if (d0.r <= eps) return d0;
  if (f.degree() == 1) return {{-f.coeff(0) / f.coeff(1), 0}, 0};
  RatPoly df = f.derivative();
  unsigned target = bits_for(eps) + 8;
  unsigned prec = std::min(target, 2 * bits_for(d0.r) + 32);
  QComplex z = d0.c;
  bool real = d0.c.im == 0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    for (int it = 0; it < 200; ++it) {
      Rational rho;
      QComplex next;
      if (!newton_disc(f, df, z, &rho, &next)) break;
      if (mag_upper(z - d0.c) + rho <= d0.r) {
        if (rho <= eps) {
          if (real) z.im = 0;
          return {z, rho};
        }
      }
      z = round_dyadic(next, prec);
      if (real) z.im = 0;
      if (prec < target) prec = std::min(target, 2 * prec);
    }
    // Newton wandered off: restart from simultaneous iteration.
    std::vector<std::complex<long double>> ld = aberth_ld(f);
    std::vector<QComplex> zs;
    for (auto& w : ld) zs.push_back(round_dyadic(QComplex{Rational(static_cast<double>(w.real())), Rational(static_cast<double>(w.imag()))}, 60));
    aberth_q(f, zs, std::max(128u, target), 200);
    Rational best = -1;
    for (auto& w : zs) {
      Rational dd = norm2(w - d0.c);
      if (best < 0 || dd < best) {
        best = dd;
        z = w;
      }
    }
    if (real) z.im = 0;
    prec = target;
  }
  throw std::runtime_error("root refinement failed for " + f.to_string());
}

// Real roots get a real centre; requires d.r < sep/8.
Disc project_real(const Disc& d) {
  if (d.c.im != 0 && abs_of(d.c.im) <= d.r) return {{d.c.re, 0}, d.r + abs_of(d.c.im)};
  return d;
}

std::vector<Disc> isolate_irreducible(const RatPoly& f, const Rational& sep) {
  int n = f.degree();
  if (n == 1) return {{{-f.coeff(0) / f.coeff(1), 0}, 0}};
  if (n == 2 && f.coeff(1) * f.coeff(1) < 4 * f.coeff(0)) {
    // conjugate pair with rational real part: keep the real part exact
    RatPoly m = f.monic();
    Rational re = -m.coeff(1) / 2;
    Rational im2 = m.coeff(0) - re * re;
    Rational im;
    if (exact_sqrt(im2, &im)) return {{{re, -im}, 0}, {{re, im}, 0}};
  }
  std::vector<std::complex<long double>> ld = aberth_ld(f);
  std::vector<QComplex> z;
  for (auto& w : ld) z.push_back(round_dyadic(QComplex{Rational(static_cast<double>(w.real())), Rational(static_cast<double>(w.imag()))}, 62));
  RatPoly df = f.derivative();
  Rational goal = sep / 8;
  for (unsigned prec = 64; prec <= (1u << 16); prec *= 2) {
    if (prec > 64) aberth_q(f, z, prec, 100);
    std::vector<Disc> discs;
    bool ok = true;
    for (auto& w : z) {
      QComplex cur = w;
      Rational rho = -1;
      for (int k = 0; k < 6; ++k) {
        QComplex next;
        if (!newton_disc(f, df, cur, &rho, &next)) {
          rho = -1;
          break;
        }
        if (rho == 0) break;
        QComplex nx = round_dyadic(next, prec);
        if (norm2(nx - cur) == 0) break;
        cur = nx;
      }
      if (rho < 0) {
        ok = false;
        break;
      }
      w = cur;
      discs.push_back({cur, rho});
    }
    if (!ok) continue;
    for (std::size_t i = 0; ok && i < discs.size(); ++i) {
      for (std::size_t j = i + 1; ok && j < discs.size(); ++j) {
        Rational s = discs[i].r + discs[j].r;
        if (norm2(discs[i].c - discs[j].c) <= s * s) ok = false;
      }
    }
    if (!ok) continue;
    std::vector<Disc> out;
    for (auto& d : discs) out.push_back(project_real(refine_disc(f, d, goal)));
    return out;
  }
  throw std::runtime_error("root isolation failed for " + f.to_string());
}

Rational isolation_target(const RatPoly& f) { return sep_bound_squarefree(f) / 8; }

}  // namespace

// ---------------------------------------------------------------------------
// Algebraic

Algebraic::Algebraic(const Rational& q) : f_(RatPoly::linear_root(q)), c_{q, 0}, r_(0) {}

Algebraic Algebraic::gaussian(const Rational& re, const Rational& im) {
  if (im == 0) return Algebraic(re);
  RatPoly f({re * re + im * im, Rational(-2) * re, Rational(1)});
  return from_parts(std::move(f), {re, im}, 0);
}

Algebraic Algebraic::i() { return gaussian(0, 1); }

Algebraic Algebraic::from_parts(RatPoly minpoly, QComplex center, Rational radius) {
  Algebraic a;
  a.f_ = std::move(minpoly);
  a.c_ = std::move(center);
  a.r_ = std::move(radius);
  return a;
}

Algebraic Algebraic::checked(const RatPoly& minpoly, const QComplex& center, const Rational& radius) {
  if (minpoly.is_zero() || minpoly.degree() < 1) throw std::invalid_argument("minimal polynomial must have degree >= 1");
  RatPoly f = minpoly.monic();
  auto facs = factor_poly(f);
  if (facs.size() != 1 || facs[0].second != 1) throw std::invalid_argument("polynomial is not irreducible: " + f.to_string());
  if (f.degree() == 1) return Algebraic(-f.coeff(0));
  Rational sep = sep_bound_squarefree(f);
  if (radius < 0 || radius >= sep / 4) throw std::invalid_argument("isolating radius not below a quarter of the separation bound");
  if (radius == 0) {
    QComplex v = eval(f, center);
    if (v.re != 0 || v.im != 0) throw std::invalid_argument("centre is not a root");
  } else {
    refine_disc(f, {center, radius}, radius / 2);  // throws if no root is certified inside
  }
  if (center.im != 0 && abs_of(center.im) <= radius) throw std::invalid_argument("real root must be given with a real centre");
  return from_parts(f, center, radius);
}

Rational Algebraic::rational_value() const {
  if (!is_rational()) throw std::domain_error("not a rational number");
  return -f_.coeff(0);
}

Algebraic Algebraic::refined(const Rational& eps) const {
  if (r_ <= eps) return *this;
  Disc d = refine_disc(f_, {c_, r_}, eps);
  return from_parts(f_, d.c, d.r);
}

Ball Algebraic::ball(unsigned bits) const {
  Algebraic a = refined(pow2(-static_cast<long>(bits)));
  return {a.c_, a.r_};
}

double Algebraic::approx_re() const { return refined(pow2(-60)).c_.re.get_d(); }
double Algebraic::approx_im() const { return refined(pow2(-60)).c_.im.get_d(); }

std::string Algebraic::to_string(int digits) const {
  if (is_rational()) return orbitkit::to_string(rational_value());
  Algebraic a = refined(pow2(-4 * digits - 8));
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.*g", digits, a.c_.re.get_d());
  std::string s = "root(" + f_.to_string() + ") ~ " + buf;
  if (!is_real()) {
    std::snprintf(buf, sizeof buf, "%+.*g", digits, a.c_.im.get_d());
    s += std::string(buf) + "i";
  }
  return s;
}

// ---------------------------------------------------------------------------
// composed polynomials

std::vector<Rational> power_sums(const RatPoly& monic, std::size_t count) {
  RatPoly f = monic.monic();
  int n = f.degree();
  std::vector<Rational> p(count + 1, Rational(0));
  p[0] = n;
  for (std::size_t k = 1; k <= count; ++k) {
    Rational s = 0;
    for (int i = 1; i <= n && static_cast<std::size_t>(i) < k; ++i) s += f.coeff(static_cast<std::size_t>(n - i)) * p[k - static_cast<std::size_t>(i)];
    if (k <= static_cast<std::size_t>(n)) s += Rational(static_cast<long>(k)) * f.coeff(static_cast<std::size_t>(n) - k);
    p[k] = -s;
  }
  return p;
}

namespace {

RatPoly from_power_sums(const std::vector<Rational>& p, std::size_t n) {
  std::vector<Rational> e(n + 1, Rational(0));
  e[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Rational s = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      Rational t = e[k - i] * p[i];
      if (i % 2) s += t;
      else s -= t;
    }
    e[k] = s / Rational(static_cast<long>(k));
  }
  std::vector<Rational> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) c[n - k] = (k % 2) ? Rational(-e[k]) : e[k];
  return RatPoly(std::move(c));
}

}  // namespace

RatPoly composed_sum(const RatPoly& f, const RatPoly& g) {
  std::size_t n = static_cast<std::size_t>(f.degree()) * static_cast<std::size_t>(g.degree());
  auto pf = power_sums(f, n), pg = power_sums(g, n);
  std::vector<Rational> p(n + 1);
  std::vector<Integer> binom(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    // row k of Pascal's triangle
    binom[0] = 1;
    for (std::size_t t = 1; t <= k; ++t) binom[t] = 0;
    for (std::size_t t = 1; t <= k; ++t) mpz_bin_uiui(binom[t].get_mpz_t(), k, t);
    Rational s = 0;
    for (std::size_t t = 0; t <= k; ++t) s += Rational(binom[t]) * pf[t] * pg[k - t];
    p[k] = s;
  }
  return from_power_sums(p, n);
}

RatPoly composed_product(const RatPoly& f, const RatPoly& g) {
  std::size_t n = static_cast<std::size_t>(f.degree()) * static_cast<std::size_t>(g.degree());
  auto pf = power_sums(f, n), pg = power_sums(g, n);
  std::vector<Rational> p(n + 1);
  for (std::size_t k = 0; k <= n; ++k) p[k] = pf[k] * pg[k];
  return from_power_sums(p, n);
}

// ---------------------------------------------------------------------------
// identification

namespace {

// Calls f(bits + extra) with growing extra until the ball is tight enough.
Ball tighten(unsigned bits, const std::function<Ball(unsigned)>& f) {
  Rational want = pow2(-static_cast<long>(bits));
  for (unsigned extra = 8;; extra *= 2) {
    Ball b = tidy(f(bits + extra), bits + 2);
    if (b.rad <= want) return b;
    if (extra > (1u << 20)) throw std::runtime_error("enclosure does not tighten");
  }
}

Algebraic make_canonical(const RatPoly& q, const BallSource& src) {
  if (q.degree() == 1) return Algebraic(-q.coeff(0) / q.coeff(1));
  Rational goal = isolation_target(q);
  unsigned bits = bits_for(goal) + 2;
  for (int round = 0; round < 8; ++round, bits += bits / 2 + 8) {
    Ball b = src.at(bits);
    if (b.rad >= goal) continue;
    Disc d = project_real({b.c, b.rad});
    return Algebraic::from_parts(q.monic(), d.c, d.r);
  }
  throw std::runtime_error("could not reach isolation precision");
}

}  // namespace

Algebraic identify_root_from(const RatPoly& candidate, const BallSource& src) {
  auto facs = factor_poly(candidate);
  std::vector<RatPoly> alive;
  for (auto& [q, m] : facs) alive.push_back(q);
  // rational roots are cheap to test exactly against a fine ball
  for (unsigned bits = 32; alive.size() > 1; bits *= 2) {
    if (bits > (1u << 22)) throw std::logic_error("root identification did not converge");
    Ball b = src.at(bits);
    std::vector<RatPoly> keep;
    for (auto& q : alive) {
      if (ball_eval(q, b).contains_zero()) keep.push_back(q);
    }
    if (keep.empty()) throw std::logic_error("enclosure excludes every candidate factor");
    alive = std::move(keep);
  }
  return make_canonical(alive[0], src);
}

// ---------------------------------------------------------------------------
// arithmetic

namespace {

unsigned mag_bits(const Algebraic& a) {
  Rational m = mag_upper(a.center()) + a.radius() + 1;
  return static_cast<unsigned>(bit_length(ceil_of(m)));
}

struct FnSource : BallSource {
  std::function<Ball(unsigned)> f;
  explicit FnSource(std::function<Ball(unsigned)> g) : f(std::move(g)) {}
  Ball at(unsigned bits) const override { return tighten(bits, f); }
};

Algebraic inverse(const Algebraic& a) {
  if (a.is_zero()) throw std::domain_error("division by zero");
  if (a.is_rational()) return Algebraic(1 / a.rational_value());
  RatPoly g = a.min_poly().reversed().monic();
  FnSource src([a](unsigned bits) {
    Ball one{{1, 0}, 0};
    for (unsigned extra = bits;; extra *= 2) {
      Ball b = a.ball(extra);
      if (mag_lower(b.c) > 2 * b.rad) return one / b;
    }
  });
  return make_canonical(g, src);
}

Algebraic add(const Algebraic& a, const Algebraic& b) {
  if (a.is_rational() && b.is_rational()) return Algebraic(a.rational_value() + b.rational_value());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  FnSource src([a, b](unsigned bits) { return a.ball(bits + 2) + b.ball(bits + 2); });
  if (b.is_rational()) {
    RatPoly g = a.min_poly().compose(RatPoly::linear_root(b.rational_value()));
    return make_canonical(g.monic(), src);
  }
  if (a.is_rational()) {
    RatPoly g = b.min_poly().compose(RatPoly::linear_root(a.rational_value()));
    return make_canonical(g.monic(), src);
  }
  return identify_root_from(composed_sum(a.min_poly(), b.min_poly()), src);
}

Algebraic mul(const Algebraic& a, const Algebraic& b) {
  if (a.is_rational() && b.is_rational()) return Algebraic(a.rational_value() * b.rational_value());
  if (a.is_zero() || b.is_zero()) return Algebraic(0);
  unsigned ea = mag_bits(b) + 2, eb = mag_bits(a) + 2;
  FnSource src([a, b, ea, eb](unsigned bits) { return a.ball(bits + ea) * b.ball(bits + eb); });
  if (b.is_rational()) {
    RatPoly g = a.min_poly().scale_var(1 / b.rational_value());
    return make_canonical(g.monic(), src);
  }
  if (a.is_rational()) {
    RatPoly g = b.min_poly().scale_var(1 / a.rational_value());
    return make_canonical(g.monic(), src);
  }
  return identify_root_from(composed_product(a.min_poly(), b.min_poly()), src);
}

bool re_positive_or_upper_axis(const Algebraic& s) {
  // Re(s) != 0 here unless s is purely imaginary; refine until decided.
  for (unsigned bits = 32;; bits *= 2) {
    Ball b = s.ball(bits);
    if (b.c.re > b.rad) return true;
    if (b.c.re < -b.rad) return false;
    if (bits > (1u << 20)) throw std::runtime_error("cannot decide sign of real part");
  }
}

Algebraic principal_sqrt(const Algebraic& a) {
  if (a.is_zero()) return a;
  if (a.is_rational()) {
    Rational q = a.rational_value(), r;
    if (q > 0 && exact_sqrt(q, &r)) return Algebraic(r);
    if (q < 0 && exact_sqrt(-q, &r)) return Algebraic::gaussian(0, r);
  }
  if (a.is_real() && sign_real(a) < 0) return mul(Algebraic::i(), principal_sqrt(-a));
  // the two square roots are +-s; keep the one with positive real part
  auto roots = isolate_roots(a.min_poly().square_var());
  std::vector<Algebraic> cands;
  for (auto& [s, m] : roots) cands.push_back(s);
  for (unsigned bits = 32; cands.size() > 2; bits *= 2) {
    Ball ab = a.ball(bits + 8);
    std::vector<Algebraic> keep;
    for (auto& s : cands) {
      Ball sb = s.ball(bits + mag_bits(s) + 8);
      if ((sb * sb).meets(ab)) keep.push_back(s);
    }
    cands = std::move(keep);
    if (bits > (1u << 20)) throw std::runtime_error("square root selection failed");
  }
  if (cands.size() != 2) throw std::logic_error("square root selection lost a root");
  return re_positive_or_upper_axis(cands[0]) ? cands[0] : cands[1];
}

}  // namespace

Algebraic operator+(const Algebraic& a, const Algebraic& b) { return add(a, b); }
Algebraic operator-(const Algebraic& a) {
  if (a.is_rational()) return Algebraic(-a.rational_value());
  RatPoly g = a.min_poly().negate_var();
  if (g.leading() != 1) g = g.monic();
  return Algebraic::from_parts(g, {-a.center().re, -a.center().im}, a.radius());
}
Algebraic operator-(const Algebraic& a, const Algebraic& b) { return add(a, -b); }
Algebraic operator*(const Algebraic& a, const Algebraic& b) { return mul(a, b); }
Algebraic operator/(const Algebraic& a, const Algebraic& b) { return mul(a, inverse(b)); }

Algebraic conj(const Algebraic& a) {
  if (a.is_real()) return a;
  return Algebraic::from_parts(a.min_poly(), {a.center().re, -a.center().im}, a.radius());
}

Algebraic sqrt(const Algebraic& a) { return principal_sqrt(a); }

Algebraic alg_arith(AlgOp op, const Algebraic& a, const Algebraic* b) {
  auto need = [&]() -> const Algebraic& {
    if (!b) throw std::invalid_argument("binary operation needs two operands");
    return *b;
  };
  switch (op) {
    case AlgOp::Add: return a + need();
    case AlgOp::Sub: return a - need();
    case AlgOp::Mul: return a * need();
    case AlgOp::Div: return a / need();
    case AlgOp::Conj: return conj(a);
    case AlgOp::Neg: return -a;
    case AlgOp::Sqrt: return sqrt(a);
  }
  throw std::invalid_argument("unknown operation");
}

Algebraic eval_in_field(const RatPoly& g0, const Algebraic& alpha) {
  const RatPoly& f = alpha.min_poly();
  RatPoly g = g0 % f;
  if (g.degree() <= 0) return Algebraic(g.coeff(0));
  std::size_t d = static_cast<std::size_t>(f.degree());
  RatMatrix m(d, d);
  RatPoly col = g;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) m(i, j) = col.coeff(i);
    col = (RatPoly::x() * col) % f;
  }
  unsigned extra = static_cast<unsigned>(g.degree()) * (mag_bits(alpha) + 1) + static_cast<unsigned>(bit_length(g.height())) + 8;
  FnSource src([g, alpha, extra](unsigned bits) { return ball_eval(g, alpha.ball(bits + extra)); });
  return identify_root_from(charpoly(m), src);
}

Algebraic pow(const Algebraic& a, const Integer& n) {
  if (n < 0) return pow(inverse(a), Integer(-n));
  if (n == 0) return Algebraic(1);
  if (a.is_rational()) {
    if (!n.fits_ulong_p()) {
      Rational q = a.rational_value();
      if (q == 0 || q == 1) return a;
      if (q == -1) return Algebraic(mpz_odd_p(n.get_mpz_t()) ? -1 : 1);
      throw std::overflow_error("exponent too large");
    }
    return Algebraic(pow(a.rational_value(), n.get_ui()));
  }
  const RatPoly& f = a.min_poly();
  RatPoly r = RatPoly::constant(1), b = RatPoly::x() % f;
  for (std::size_t i = bit_length(n); i-- > 0;) {
    r = (r * r) % f;
    if (mpz_tstbit(n.get_mpz_t(), i)) r = (r * b) % f;
  }
  return eval_in_field(r, a);
}

Algebraic pow(const Algebraic& a, unsigned long n) { return pow(a, Integer(n)); }

Algebraic real_part(const Algebraic& a) {
  if (a.is_real()) return a;
  return (a + conj(a)) * Algebraic(Rational(1, 2));
}

Algebraic imag_part(const Algebraic& a) {
  if (a.is_real()) return Algebraic(0);
  return (a - conj(a)) * Algebraic::gaussian(0, Rational(-1, 2));
}

Algebraic abs2(const Algebraic& a) {
  if (a.is_real()) return a * a;
  return a * conj(a);
}

Algebraic abs(const Algebraic& a) {
  if (a.is_real()) return sign_real(a) < 0 ? -a : a;
  return sqrt(abs2(a));
}

bool alg_equal(const Algebraic& a, const Algebraic& b) {
  if (a.min_poly() != b.min_poly()) return false;
  if (a.is_rational()) return true;
  Rational s = a.radius() + b.radius();
  return norm2(a.center() - b.center()) <= s * s;
}

std::tuple<Rational, Rational, Rational> refine(const Algebraic& a, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  Algebraic r = a.refined(eps);
  return {r.center().re, r.center().im, r.radius()};
}

int sign_real(const Algebraic& a) {
  if (!a.is_real()) throw std::domain_error("sign_real of a non-real number");
  if (a.is_zero()) return 0;
  if (a.is_rational()) return sgn(a.rational_value());
  for (unsigned bits = 16;; bits *= 2) {
    Ball b = a.ball(bits);
    if (b.c.re > b.rad) return 1;
    if (b.c.re < -b.rad) return -1;
  }
}

int compare_real(const Algebraic& a, const Algebraic& b) {
  if (a.is_rational() && b.is_rational()) {
    int c = cmp(a.rational_value(), b.rational_value());
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (alg_equal(a, b)) return 0;
  for (unsigned bits = 16; bits <= 4096; bits *= 2) {
    Ball x = a.ball(bits), y = b.ball(bits);
    if (x.c.re + x.rad < y.c.re - y.rad) return -1;
    if (x.c.re - x.rad > y.c.re + y.rad) return 1;
  }
  return sign_real(a - b);
}

bool on_unit_circle(const Algebraic& a) {
  if (a.is_rational()) return abs_of(a.rational_value()) == 1;
  if (a.is_real()) return false;  // irrational reals are never +-1
  // cheap numeric exclusion first
  Ball b = a.ball(40);
  Ball m = b * Ball{{b.c.re, -b.c.im}, b.rad};
  if (!(m - Ball{{1, 0}, 0}).contains_zero()) return false;
  const RatPoly& f = a.min_poly();
  if (f.reversed().monic() != f) return false;
  return alg_equal(inverse(a), conj(a));
}

std::optional<RootOfUnityInfo> root_of_unity_order(const Algebraic& a) {
  if (a.is_rational()) {
    Rational q = a.rational_value();
    if (q == 1) return RootOfUnityInfo{1, 0};
    if (q == -1) return RootOfUnityInfo{2, 1};
    return std::nullopt;
  }
  unsigned d = static_cast<unsigned>(a.degree());
  for (unsigned r = 3; r <= 2 * d * d; ++r) {
    if (euler_phi(r) != d) continue;
    if (cyclotomic(r) != a.min_poly()) continue;
    // find j with e^{2 pi i j / r} inside the isolating disc
    BigFloat twopi = mul(pi(192, MPFR_RNDN), BigFloat(Rational(2), 192), MPFR_RNDN);
    Rational best = -1;
    unsigned bj = 0;
    for (unsigned j = 1; j < r; ++j) {
      if (gcd_u64(j, r) != 1) continue;
      BigFloat t = div(mul(twopi, BigFloat(Rational(j), 192), MPFR_RNDN), BigFloat(Rational(r), 192), MPFR_RNDN);
      QComplex z{cos(t, MPFR_RNDN).to_rational(), sin(t, MPFR_RNDN).to_rational()};
      Rational dd = norm2(z - a.center());
      if (best < 0 || dd < best) {
        best = dd;
        bj = j;
      }
    }
    return RootOfUnityInfo{r, bj};
  }
  return std::nullopt;
}

std::vector<std::pair<Algebraic, int>> isolate_roots(const RatPoly& p) {
  if (p.is_zero()) throw std::domain_error("zero input");
  auto facs = factor_poly(p);
  RatPoly sqf = RatPoly::constant(1);
  for (auto& [q, m] : facs) sqf = sqf * q;
  Rational global = sqf.degree() >= 2 ? sep_bound_squarefree(sqf) / 8 : Rational(1);
  std::vector<std::pair<Algebraic, int>> out;
  for (auto& [q, m] : facs) {
    Rational goal = std::min(global, isolation_target(q));
    for (auto& d : isolate_irreducible(q, isolation_target(q) * 8)) {
      Disc e = d;
      if (e.r >= goal) {
        e = refine_disc(q, e, goal / 2);
        e = project_real(e);
      }
      out.emplace_back(Algebraic::from_parts(q, e.c, e.r), m);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    bool rx = x.first.is_real(), ry = y.first.is_real();
    if (rx != ry) return rx;
    const QComplex& a = x.first.center();
    const QComplex& b = y.first.center();
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  return out;
}

}  // namespace orbitkit
