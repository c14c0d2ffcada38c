#include "orbitkit/bounds.hpp"

#include <stdexcept>

#include "orbitkit/bigfloat.hpp"

namespace orbitkit {

// ---------------------------------------------------------------------------
// Threshold

namespace {

const Integer& two64() {
  static const Integer v = Integer(1) << 64;
  return v;
}

unsigned long ceil_log2(const Integer& v) {
  if (v <= 1) return 0;
  return bit_length(Integer(v - 1));
}

}  // namespace

Threshold Threshold::exact(const Integer& v) {
  if (v < 0) throw std::invalid_argument("threshold must be nonnegative");
  Threshold t;
  if (v >= two64()) {
    t.exact_ = false;
    t.log2_ = ceil_log2(v);
  } else {
    t.value_ = v;
    t.log2_ = ceil_log2(v);
  }
  return t;
}

Threshold Threshold::pow2(unsigned long e) {
  if (e < 64) return exact(Integer(1) << e);
  Threshold t;
  t.exact_ = false;
  t.log2_ = e;
  return t;
}

const Integer& Threshold::value() const {
  if (!exact_) throw std::logic_error("threshold only known as a power of two");
  return value_;
}

unsigned long Threshold::log2_ceiling() const { return log2_; }

bool Threshold::at_most(const Integer& cap) const {
  if (exact_) return value_ <= cap;
  return (Integer(1) << log2_) <= cap;
}

std::string Threshold::to_string() const {
  if (exact_) return orbitkit::to_string(value_);
  return "2^" + std::to_string(log2_);
}

Threshold Threshold::max(const Threshold& a, const Threshold& b) {
  if (a.exact_ && b.exact_) return a.value_ >= b.value_ ? a : b;
  return pow2(std::max(a.log2_, b.log2_));
}

// ---------------------------------------------------------------------------
// growth solver

namespace {

bool growth_holds(const Integer& n, const Rational& c, const Rational& k, const Rational& shift, const Rational& d) {
  // monotone region first: derivative c - k/(n+shift) >= 0
  if (Rational(n) + shift < k / c) return false;
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(bit_length(n) + 128);
  BigFloat nf(Rational(n), prec, MPFR_RNDD);
  BigFloat lhs = mul(nf, BigFloat(c, prec, MPFR_RNDD), MPFR_RNDD);
  BigFloat arg = add(BigFloat(Rational(n), prec, MPFR_RNDU), BigFloat(shift, prec, MPFR_RNDU), MPFR_RNDU);
  BigFloat lg = log(arg, MPFR_RNDU);
  BigFloat rhs = add(mul(BigFloat(k, prec, MPFR_RNDU), lg, MPFR_RNDU), BigFloat(d, prec, MPFR_RNDU), MPFR_RNDU);
  return lhs > rhs;
}

}  // namespace

Threshold solve_log_growth(const Rational& c, const Rational& k, const Rational& shift, const Rational& d) {
  if (c <= 0 || k < 0 || shift < 1) throw std::invalid_argument("solve_log_growth: bad parameters");
  if (growth_holds(Integer(0), c, k, shift, d)) return Threshold::exact(Integer(0));
  unsigned long j = 0;
  while (!growth_holds(Integer(1) << j, c, k, shift, d)) {
    if (++j > 1000000) throw std::runtime_error("solve_log_growth: threshold beyond 2^1000000");
  }
  if (j >= 64) return Threshold::pow2(j);
  Integer lo = j == 0 ? Integer(0) : Integer(1) << (j - 1);  // fails
  Integer hi = Integer(1) << j;                               // holds
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (growth_holds(mid, c, k, shift, d)) hi = mid;
    else lo = mid;
  }
  return Threshold::exact(hi);
}

// ---------------------------------------------------------------------------
// small helpers

namespace {

Rational log_at_least_one(const Rational& x) {
  if (x <= 0) throw std::invalid_argument("log of nonpositive value");
  Rational l = log_upper(x);
  return l < 1 ? Rational(1) : l;
}

Rational abs_upper(const Algebraic& z, unsigned bits = 80) {
  Ball b = z.ball(bits);
  return mag_upper(b.c) + b.rad;
}

// Positive lower bound on |z| for z != 0.
Rational abs_lower(const Algebraic& z) {
  if (z.is_zero()) throw std::domain_error("abs_lower of zero");
  for (unsigned bits = 64;; bits *= 2) {
    Ball b = z.ball(bits);
    Rational v = mag_lower(b.c) - b.rad;
    if (v > 0) return v;
    if (bits > (1u << 16)) throw std::runtime_error("abs_lower: no separation from zero");
  }
}

// Rational lower bound > 1 on |x|/|y| given |x| > |y| > 0.
Rational ratio_lower(const Algebraic& x, const Algebraic& y) {
  for (unsigned bits = 64;; bits *= 2) {
    Ball bx = x.ball(bits), by = y.ball(bits);
    Rational num = mag_lower(bx.c) - bx.rad;
    Rational den = mag_upper(by.c) + by.rad;
    if (num > 0 && den > 0 && num / den > 1) return num / den;
    if (bits > (1u << 16)) throw std::runtime_error("ratio_lower: moduli not separated");
  }
}

int compare_modulus(const Algebraic& x, const Algebraic& y) { return compare_real(abs2(x), abs2(y)); }

Rational height_log(const Algebraic& z) {
  return log_at_least_one(Rational(z.height()));
}

void require_nondegenerate(const Algebraic& x, const Algebraic& y) {
  if (root_of_unity_order(x / y)) throw std::domain_error("degenerate ratio");
}

Rational baker_constant(unsigned m, unsigned long d, const std::vector<Rational>& logs) {
  Integer base = Integer(16) * m * d;
  Rational k(pow(base, 2 * (m + 2)));
  for (const auto& l : logs) k *= l;
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// Baker

Rational baker_lower_bound(const BakerQuery& q) {
  std::size_t m = q.alphas.size();
  if (m == 0) throw std::invalid_argument("baker_lower_bound: no logarithms");
  for (const auto& a : q.alphas) {
    if (a.is_zero() || (a.is_rational() && a.rational_value() == 1)) throw std::invalid_argument("baker_lower_bound: alpha in {0, 1}");
  }
  std::vector<Rational> logs;
  for (std::size_t j = 0; j < m; ++j) {
    Rational a = j < q.height_bounds.size() ? q.height_bounds[j] : Rational(q.alphas[j].height());
    // values below e stand for e, which covers heights 1 and 2
    if (a < Rational(q.alphas[j].height()) && q.alphas[j].height() > 2) throw std::invalid_argument("baker_lower_bound: height bound below height");
    logs.push_back(log_at_least_one(a));
  }
  logs.push_back(log_at_least_one(q.coeff_bound <= 0 ? Rational(1) : q.coeff_bound));
  return -baker_constant(static_cast<unsigned>(m), q.field_degree, logs);
}

// ---------------------------------------------------------------------------
// heights

Rational log_height_upper(const Algebraic& z) {
  std::vector<Integer> f = z.min_poly().primitive_integer();
  Integer s = 0;
  for (const auto& c : f) s += c * c;
  // Landau: M(f) <= ||f||_2
  Rational l = log_upper(Rational(s)) / 2;
  if (l < 0) l = 0;
  return l / z.degree();
}

Rational log_height_lower(const Algebraic& z) {
  if (z.is_zero()) throw std::domain_error("height of zero");
  std::vector<Integer> f = z.min_poly().primitive_integer();
  Integer lc = abs(f.back());
  int deg = z.degree();
  if (lc > 1) return log_lower(Rational(lc)) / deg;
  RatPoly p = RatPoly::from_integers(f);
  auto roots = isolate_roots(p);
  for (unsigned bits = 64; bits <= (1u << 16); bits *= 2) {
    Rational m(lc);
    for (const auto& [r, mult] : roots) {
      Ball b = r.ball(bits);
      Rational lo = mag_lower(b.c) - b.rad;
      if (lo > 1) m *= lo;
    }
    if (m > 1) {
      Rational l = log_lower(m);
      if (l > 0) return l / deg;
    }
  }
  throw std::domain_error("height lower bound: number looks like a root of unity");
}

Integer power_equation_bound(const Algebraic& lambda, const Algebraic& z) {
  if (lambda.is_zero()) throw std::domain_error("power equation with zero base");
  if (z.is_zero()) return 0;
  // h(lambda^n) = n h(lambda)
  return floor_of(log_height_upper(z) / log_height_lower(lambda));
}

std::optional<unsigned long> solve_power_equation(const Algebraic& lambda, const Algebraic& z, unsigned long bound) {
  if (z.is_zero()) return std::nullopt;
  const unsigned bits = 200;
  Ball lb = lambda.ball(bits);
  Ball zb = z.ball(bits);
  Ball cur{{Rational(1), Rational(0)}, Rational(0)};
  for (unsigned long n = 0; n <= bound; ++n) {
    if (cur.meets(zb) && alg_equal(pow(lambda, n), z)) return n;
    cur = tidy(cur * lb, bits);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Skolem-type bounds

Threshold skolem_bound_two(const Algebraic& a, const Algebraic& alpha, const Algebraic& b, const Algebraic& beta) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("skolem_bound_two: zero coefficient");
  if (alpha.is_zero() || beta.is_zero()) throw std::invalid_argument("skolem_bound_two: zero base");
  Algebraic rho = alpha / beta;
  if (root_of_unity_order(rho)) throw std::domain_error("degenerate ratio");
  return Threshold::exact(power_equation_bound(rho, -b / a));
}

namespace {

struct Term {
  Algebraic coeff, base;
};

Threshold three_equal_moduli(const std::vector<Term>& t) {
  // real configuration: a conjugate pair with conjugate coefficients plus a real term
  for (int k = 0; k < 3; ++k) {
    int i = (k + 1) % 3, j = (k + 2) % 3;
    const Term& ti = t[i];
    const Term& tj = t[j];
    const Term& tk = t[k];
    if (!tk.base.is_real() || !tk.coeff.is_real()) continue;
    if (!alg_equal(tj.base, conj(ti.base)) || !alg_equal(tj.coeff, conj(ti.coeff))) continue;
    Algebraic r = abs(tk.base);
    Algebraic nu = ti.base / r;
    Algebraic ai = abs(ti.coeff);
    Algebraic phase = ai / ti.coeff;  // conj(e^{i theta})
    Integer best = 0;
    for (int s : {1, -1}) {
      Algebraic c = -(Algebraic(s) * tk.coeff) / (Algebraic(2) * ai);
      if (compare_real(abs2(c), Algebraic(1)) > 0) continue;
      Algebraic root = sqrt(Algebraic(1) - c * c);
      for (int sg : {1, -1}) {
        Algebraic w = c + Algebraic(sg) * Algebraic::i() * root;
        Integer n = power_equation_bound(nu, w * phase);
        if (n > best) best = n;
      }
    }
    return Threshold::exact(best);
  }
  throw std::domain_error("no effective bound for three terms of equal modulus");
}

}  // namespace

Threshold skolem_bound_three(SkolemCase kind, const Algebraic& a, const Algebraic& alpha, const Algebraic& b,
                             const Algebraic& beta, const Algebraic& cc, const Algebraic& gamma) {
  if (kind == SkolemCase::Repeated) {
    if (beta.is_zero()) throw std::invalid_argument("skolem_bound_three: zero base");
    if (b.is_zero()) {
      if (a.is_zero() && cc.is_zero()) throw std::domain_error("identically zero");
      if (a.is_zero() || cc.is_zero()) return Threshold::exact(Integer(0));
      return skolem_bound_two(a, alpha, cc, beta);
    }
    if (a.is_zero()) {
      // B n + C beta = 0
      Algebraic n = -(cc * beta) / b;
      if (n.is_rational() && n.rational_value() >= 0 && n.rational_value().get_den() == 1)
        return Threshold::exact(n.rational_value().get_num());
      return Threshold::exact(Integer(0));
    }
    if (alpha.is_zero()) throw std::invalid_argument("skolem_bound_three: zero base");
    require_nondegenerate(alpha, beta);
    Rational bl = abs_lower(b);
    Rational small = ceil_of((abs_upper(a) * abs_upper(beta) + abs_upper(cc) * abs_upper(beta)) / bl);
    int cmp = compare_modulus(alpha, beta);
    if (cmp <= 0) return Threshold::exact(Integer(floor_of(small)) + 1);
    // |A||alpha|^n <= (|B| n + |C beta|) |beta|^{n-1}: compare exponential with linear
    Rational q = ratio_lower(alpha, beta);
    Rational kk = (abs_upper(b) + abs_upper(cc) * abs_upper(beta)) / (abs_lower(a) * abs_lower(beta));
    // n log q > log kk + log(n+1)
    Threshold t = solve_log_growth(log_lower(q), Rational(1), Rational(1), log_upper(kk < 1 ? Rational(1) : kk));
    return t;
  }

  std::vector<Term> terms;
  for (auto [c, base] : {std::pair{a, alpha}, std::pair{b, beta}, std::pair{cc, gamma}}) {
    if (!c.is_zero() && !base.is_zero()) terms.push_back({c, base});
  }
  if (terms.empty()) throw std::domain_error("identically zero");
  if (terms.size() == 1) return Threshold::exact(Integer(0));
  if (terms.size() == 2) return skolem_bound_two(terms[0].coeff, terms[0].base, terms[1].coeff, terms[1].base);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) require_nondegenerate(terms[i].base, terms[j].base);
  }
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return compare_modulus(x.base, y.base) > 0; });
  const Term &t1 = terms[0], &t2 = terms[1], &t3 = terms[2];
  if (compare_modulus(t1.base, t2.base) > 0) {
    Rational q = ratio_lower(t1.base, t2.base);
    Rational kk = (abs_upper(t2.coeff) + abs_upper(t3.coeff)) / abs_lower(t1.coeff);
    return solve_log_growth(log_lower(q), Rational(0), Rational(1), log_upper(kk));
  }
  if (compare_modulus(t2.base, t3.base) == 0) return three_equal_moduli(terms);
  // two dominant terms of equal modulus, a strictly smaller third one
  Threshold n1 = skolem_bound_two(t1.coeff, t1.base, t2.coeff, t2.base);
  Algebraic rho = t1.base / t2.base;
  Algebraic w = -t1.coeff / t2.coeff;
  unsigned long d = static_cast<unsigned long>(rho.degree()) * static_cast<unsigned long>(w.degree()) * 2;
  Rational k = baker_constant(3, d, {height_log(rho), height_log(w), Rational(1)});
  Rational q = ratio_lower(t2.base, t3.base);
  Rational dd = log_upper(2 * abs_upper(t3.coeff) / abs_lower(t2.coeff));
  Threshold n2 = solve_log_growth(log_lower(q), k, Rational(2), dd);
  return Threshold::max(n1, n2);
}

// ---------------------------------------------------------------------------
// cosine threshold

namespace {

void check_cos_inputs(const Algebraic& a, const Algebraic& lambda, const Algebraic& c, const Algebraic& chi) {
  if (!on_unit_circle(lambda)) throw std::invalid_argument("cos_exp_threshold: |lambda| != 1");
  if (!on_unit_circle(a)) throw std::invalid_argument("cos_exp_threshold: |a| != 1");
  if (root_of_unity_order(lambda)) throw std::domain_error("cos_exp_threshold: lambda is a root of unity");
  if (!c.is_real() || !chi.is_real()) throw std::invalid_argument("cos_exp_threshold: C and chi must be real");
  if (compare_real(abs2(chi), Algebraic(1)) >= 0) throw std::invalid_argument("cos_exp_threshold: |chi| >= 1");
}

}  // namespace

Threshold cos_exp_threshold(const Algebraic& a, const Algebraic& lambda, const Algebraic& c, const Algebraic& chi) {
  check_cos_inputs(a, lambda, c, chi);
  if (compare_real(abs2(c), Algebraic(1)) > 0) {
    if (chi.is_zero()) return Threshold::exact(Integer(0));
    Rational delta = abs_lower(c) - 1;
    for (unsigned bits = 128; delta <= 0; bits *= 2) {
      Ball b = c.ball(bits);
      delta = mag_lower(b.c) - b.rad - 1;
    }
    if (delta >= 1) return Threshold::exact(Integer(0));
    Rational chi_up = abs_upper(chi);
    if (chi_up >= 1) chi_up = (1 + abs_upper(chi, 400)) / 2;
    return solve_log_growth(log_lower(1 / chi_up), Rational(0), Rational(1), log_upper(1 / delta));
  }
  // C = -cos(beta),  b = e^{i beta}
  Algebraic bb = -c + Algebraic::i() * sqrt(Algebraic(1) - c * c);
  Integer n1 = 0;
  unsigned long d = 0;
  Rational log_a1 = 1;
  for (const Algebraic& alpha_p : {a * bb, a * conj(bb)}) {
    // equality C + cos(.) = 0 means alpha_p * lambda^n = 1
    Integer n = power_equation_bound(lambda, Algebraic(1) / alpha_p);
    if (n > n1) n1 = n;
    d = std::max(d, static_cast<unsigned long>(alpha_p.degree()) * static_cast<unsigned long>(lambda.degree()) * 2);
    Rational l = height_log(alpha_p);
    if (l > log_a1) log_a1 = l;
  }
  Threshold t1 = Threshold::exact(n1);
  if (chi.is_zero()) return t1;
  Rational k = baker_constant(3, d, {log_a1, height_log(lambda), Rational(1)});
  Rational chi_up = abs_upper(chi);
  if (chi_up >= 1) chi_up = (1 + abs_upper(chi, 400)) / 2;
  // |C + cos| >= 2 (n+4)^{-2K} / pi^2 > |chi|^n
  Threshold t3 = solve_log_growth(log_lower(1 / chi_up), 2 * k, Rational(4), log_upper(Rational(987, 200)));
  return Threshold::max(t1, t3);
}

int cos_exp_check(const Algebraic& a, const Algebraic& lambda, const Algebraic& c, const Algebraic& chi,
                  const Integer& n, unsigned digits) {
  mpfr_prec_t nb = static_cast<mpfr_prec_t>(bit_length(n));
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 10 / 3) + nb + 64;
  unsigned bits = static_cast<unsigned>(prec + 16);
  auto angle = [&](const Algebraic& z, Rational* err) {
    Ball b = z.ball(bits);
    BigFloat re(b.c.re, prec), im(b.c.im, prec);
    Rational m = mag_lower(b.c);
    *err = 2 * b.rad / m;
    return atan2(im, re, MPFR_RNDN);
  };
  Rational ea, el;
  BigFloat alpha = angle(a, &ea);
  BigFloat phi = angle(lambda, &el);
  BigFloat x = add(alpha, mul(BigFloat(Rational(n), prec), phi, MPFR_RNDN), MPFR_RNDN);
  BigFloat cx = cos(x, MPFR_RNDN);
  Ball cb = c.ball(bits);
  BigFloat f = abs(add(BigFloat(cb.c.re, prec), cx, MPFR_RNDN));
  Rational err = ea + Rational(n) * el + cb.rad;
  // rounding: |x| <= 2^(nb+3), a few ulps each step
  Rational ulp = Rational(1) / (Integer(1) << static_cast<unsigned long>(prec - nb - 8));
  err += 8 * ulp;
  BigFloat errf(err, prec, MPFR_RNDU);
  Rational chi_hi = abs_upper(chi, bits);
  Rational chi_lo = chi.is_zero() ? Rational(0) : abs_lower(chi);
  auto chi_pow = [&](const Rational& base, mpfr_rnd_t rnd) {
    if (base == 0) return BigFloat(Rational(0), prec);
    BigFloat l = log(BigFloat(base, prec, rnd), rnd);
    return exp(mul(l, BigFloat(Rational(n), prec), rnd), rnd);
  };
  BigFloat t_hi = chi_pow(chi_hi, MPFR_RNDU);
  BigFloat t_lo = chi_pow(chi_lo, MPFR_RNDD);
  if (sub(f, errf, MPFR_RNDD) > t_hi) return 1;
  if (add(f, errf, MPFR_RNDU) < t_lo) return -1;
  return 0;
}

}  // namespace orbitkit
