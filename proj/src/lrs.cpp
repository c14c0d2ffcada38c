#include "orbitkit/lrs.hpp"

#include <stdexcept>

#include "orbitkit/bigfloat.hpp"

namespace orbitkit {

Lrs::Lrs(std::vector<Rational> rec, std::vector<Rational> init) : recurrence(std::move(rec)), initial(std::move(init)) {
  if (recurrence.empty()) throw std::invalid_argument("lrs: order must be at least 1");
  if (recurrence.size() != initial.size()) throw std::invalid_argument("lrs: need exactly k initial terms");
  if (recurrence.back() == 0) throw std::invalid_argument("lrs: a_k must be nonzero");
}

RatPoly Lrs::char_poly() const {
  std::size_t k = recurrence.size();
  std::vector<Rational> c(k + 1);
  c[k] = 1;
  for (std::size_t i = 1; i <= k; ++i) c[k - i] = -recurrence[i - 1];
  return RatPoly(c);
}

Lrs Lrs::zero() { return Lrs({Rational(1)}, {Rational(0)}); }

Lrs Lrs::from_char_poly(const RatPoly& monic, std::vector<Rational> init) {
  RatPoly f = monic.monic();
  int k = f.degree();
  if (k < 1) throw std::invalid_argument("lrs: characteristic polynomial of degree < 1");
  std::vector<Rational> rec(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) rec[static_cast<std::size_t>(i - 1)] = -f.coeff(static_cast<std::size_t>(k - i));
  return Lrs(rec, std::move(init));
}

// ---------------------------------------------------------------------------

std::vector<Rational> berlekamp_massey(const std::vector<Rational>& s) {
  std::vector<Rational> c{Rational(1)}, b{Rational(1)};
  std::size_t l = 0, m = 1;
  Rational bd = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    Rational d = s[n];
    for (std::size_t i = 1; i <= l && i < c.size(); ++i) d += c[i] * s[n - i];
    if (d == 0) {
      ++m;
      continue;
    }
    std::vector<Rational> t = c;
    Rational f = d / bd;
    if (c.size() < b.size() + m) c.resize(b.size() + m, Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) c[i + m] -= f * b[i];
    if (2 * l <= n) {
      l = n + 1 - l;
      b = t;
      bd = d;
      m = 1;
    } else {
      ++m;
    }
  }
  c.resize(l + 1, Rational(0));
  std::vector<Rational> rec(l);
  for (std::size_t i = 1; i <= l; ++i) rec[i - 1] = -c[i];
  return rec;
}

namespace {

std::vector<Rational> triple_terms(const RatVector& v, const RatMatrix& m, const RatVector& w, std::size_t count) {
  if (m.rows() != m.cols() || v.size() != m.rows() || w.size() != m.rows()) throw std::invalid_argument("lrs: inconsistent dimensions");
  std::vector<Rational> out;
  RatVector cur = w;
  for (std::size_t n = 0; n < count; ++n) {
    out.push_back(dot(v, cur));
    cur = m * cur;
  }
  return out;
}

}  // namespace

ShiftedLrs lrs_from_triple_shifted(const RatVector& v, const RatMatrix& m, const RatVector& w) {
  std::size_t dim = m.rows();
  auto terms = triple_terms(v, m, w, 2 * dim + 2);
  auto rec = berlekamp_massey(terms);
  std::size_t l = rec.size();
  std::size_t s = 0;
  while (s < l && rec[l - 1 - s] == 0) ++s;
  ShiftedLrs out;
  out.prefix.assign(terms.begin(), terms.begin() + static_cast<long>(s));
  if (l == s) {
    out.tail = Lrs::zero();
    return out;
  }
  std::vector<Rational> r(rec.begin(), rec.begin() + static_cast<long>(l - s));
  std::vector<Rational> init(terms.begin() + static_cast<long>(s), terms.begin() + static_cast<long>(l));
  out.tail = Lrs(r, init);
  return out;
}

Lrs lrs_from_triple(const RatVector& v, const RatMatrix& m, const RatVector& w) {
  ShiftedLrs s = lrs_from_triple_shifted(v, m, w);
  if (s.shift() > 0) throw std::domain_error("lrs_from_triple: sequence needs a zero characteristic root");
  return s.tail;
}

CompanionTriple to_companion(const Lrs& s) {
  std::size_t k = s.order();
  CompanionTriple t{RatVector(k), RatMatrix(k, k), RatVector(k, Rational(0))};
  for (std::size_t i = 0; i < k; ++i) {
    t.v[i] = s.initial[k - 1 - i];
    t.m(i, 0) = s.recurrence[i];
    if (i >= 1) t.m(i - 1, i) = 1;
  }
  t.w[k - 1] = 1;
  return t;
}

std::vector<Rational> lrs_terms(const Lrs& s, std::size_t count) {
  std::vector<Rational> out;
  std::size_t k = s.order();
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    if (n < k) {
      out.push_back(s.initial[n]);
      continue;
    }
    Rational v = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      if (s.recurrence[i - 1] != 0) v += s.recurrence[i - 1] * out[n - i];
    }
    out.push_back(v);
  }
  return out;
}

Rational lrs_eval(const Lrs& s, unsigned long n) {
  if (n < 4096) return lrs_terms(s, n + 1).back();
  return lrs_eval(s, Integer(n));
}

Rational lrs_eval(const Lrs& s, const Integer& n) {
  if (n < 0) throw std::invalid_argument("lrs_eval: negative index");
  if (n < 4096) return lrs_terms(s, n.get_ui() + 1).back();
  CompanionTriple t = to_companion(s);
  return dot(t.v, mat_pow(t.m, n) * t.w);
}

std::vector<CharRoot> char_roots(const Lrs& s) {
  std::vector<CharRoot> out;
  for (auto& [r, m] : isolate_roots(s.char_poly())) out.push_back({r, m});
  return out;
}

// ---------------------------------------------------------------------------
// closed form

bool ClosedFormTerm::is_zero() const {
  for (const auto& c : coeff) {
    if (!c.is_zero()) return false;
  }
  return true;
}

namespace {

RatPoly xpow_mod(const Integer& n, const RatPoly& q) {
  RatPoly result = RatPoly::constant(Rational(1)) % q;
  RatPoly base = RatPoly::x() % q;
  Integer e = n;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = (result * base) % q;
    e >>= 1;
    if (e > 0) base = (base * base) % q;
  }
  return result;
}

Rational trace(const RatPoly& h, const std::vector<Rational>& p) {
  Rational s = 0;
  for (int i = 0; i <= h.degree(); ++i) s += h.coeff(static_cast<std::size_t>(i)) * p[static_cast<std::size_t>(i)];
  return s;
}

}  // namespace

ClosedForm closed_form(const Lrs& s) {
  ClosedForm cf;
  std::size_t k = s.order();
  auto factors = factor_poly(s.char_poly());
  // unknown layout: per block, per t, per s
  struct Col {
    std::size_t block;
    int t, s;
  };
  std::vector<Col> cols;
  std::vector<std::vector<Rational>> sums;
  for (std::size_t b = 0; b < factors.size(); ++b) {
    const auto& [q, m] = factors[b];
    int e = q.degree();
    sums.push_back(power_sums(q, k + static_cast<std::size_t>(e)));
    for (int t = 0; t < m; ++t) {
      for (int j = 0; j < e; ++j) cols.push_back({b, t, j});
    }
  }
  if (cols.size() != k) throw std::logic_error("closed_form: factor degrees do not add up");
  RatMatrix sys(k, k);
  for (std::size_t n = 0; n < k; ++n) {
    for (std::size_t c = 0; c < k; ++c) {
      const Col& col = cols[c];
      Rational nt = col.t == 0 ? Rational(1) : Rational(pow(Integer(n), static_cast<unsigned long>(col.t)));
      sys(n, c) = nt * sums[col.block][n + static_cast<std::size_t>(col.s)];
    }
  }
  auto sol = solve_linear(sys, s.initial);
  if (!sol || !sol->nullspace.empty()) throw std::logic_error("closed_form: singular Vandermonde system");
  const RatVector& x = sol->particular;
  std::size_t c = 0;
  for (std::size_t b = 0; b < factors.size(); ++b) {
    const auto& [q, m] = factors[b];
    int e = q.degree();
    ClosedFormBlock blk{q, m, {}, {}};
    for (int t = 0; t < m; ++t) {
      std::vector<Rational> coeffs(static_cast<std::size_t>(e));
      for (int j = 0; j < e; ++j) coeffs[static_cast<std::size_t>(j)] = x[c++];
      blk.g.push_back(RatPoly(coeffs));
    }
    blk.power_sums.assign(sums[b].begin(), sums[b].begin() + e);
    for (auto& [root, mult] : isolate_roots(q)) {
      ClosedFormTerm term{{root, m}, {}};
      for (int t = 0; t < m; ++t) {
        const RatPoly& g = blk.g[static_cast<std::size_t>(t)];
        term.coeff.push_back(g.degree() < 0 ? Algebraic(0) : eval_in_field(g, root));
      }
      cf.terms.push_back(std::move(term));
    }
    cf.blocks.push_back(std::move(blk));
  }
  return cf;
}

Rational closed_form_eval(const ClosedForm& cf, const Integer& n) {
  Rational total = 0;
  for (const auto& blk : cf.blocks) {
    RatPoly xn = xpow_mod(n, blk.factor);
    for (std::size_t t = 0; t < blk.g.size(); ++t) {
      if (blk.g[t].degree() < 0) continue;
      Rational tr = trace((blk.g[t] * xn) % blk.factor, blk.power_sums);
      if (t > 0) tr *= Rational(pow(n, static_cast<unsigned long>(t)));
      total += tr;
    }
  }
  return total;
}

namespace {

Ball ball_pow(const Ball& b, unsigned long n, unsigned bits) {
  Ball result{{Rational(1), Rational(0)}, Rational(0)};
  Ball base = b;
  while (n > 0) {
    if (n & 1) result = tidy(result * base, bits);
    n >>= 1;
    if (n) base = tidy(base * base, bits);
  }
  return result;
}

}  // namespace

Ball closed_form_ball(const ClosedForm& cf, unsigned long n, unsigned bits) {
  unsigned work = bits + 64 + 4 * static_cast<unsigned>(bit_length(Integer(n)));
  Ball total{{Rational(0), Rational(0)}, Rational(0)};
  for (const auto& term : cf.terms) {
    if (term.is_zero()) continue;
    Ball rn = ball_pow(term.root.value.ball(work), n, work);
    Ball poly{{Rational(0), Rational(0)}, Rational(0)};
    for (std::size_t t = 0; t < term.coeff.size(); ++t) {
      if (term.coeff[t].is_zero()) continue;
      Ball c = term.coeff[t].ball(work);
      Rational nt = Rational(pow(Integer(n), static_cast<unsigned long>(t)));
      poly = poly + Ball{{c.c.re * nt, c.c.im * nt}, c.rad * abs_of(nt)};
    }
    total = tidy(total + poly * rn, work);
  }
  return total;
}

Algebraic closed_form_eval_algebraic(const ClosedForm& cf, unsigned long n) {
  Algebraic total(0);
  for (const auto& term : cf.terms) {
    if (term.is_zero()) continue;
    Algebraic poly(0);
    for (std::size_t t = 0; t < term.coeff.size(); ++t) {
      if (term.coeff[t].is_zero()) continue;
      poly = poly + term.coeff[t] * Algebraic(Rational(pow(Integer(n), static_cast<unsigned long>(t))));
    }
    total = total + poly * pow(term.root.value, n);
  }
  return total;
}

RatPoly minimal_annihilator(const ClosedForm& cf) {
  RatPoly out = RatPoly::constant(Rational(1));
  for (const auto& blk : cf.blocks) {
    int top = -1;
    for (std::size_t t = 0; t < blk.g.size(); ++t) {
      if (blk.g[t].degree() >= 0) top = static_cast<int>(t);
    }
    for (int i = 0; i <= top; ++i) out = out * blk.factor;
  }
  return out;
}

bool is_zero_sequence(const Lrs& s) {
  for (const auto& v : s.initial) {
    if (v != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// degeneracy

namespace {

// Moduli differ by more than the enclosure widths.
bool moduli_separated(const Algebraic& a, const Algebraic& b) {
  Ball x = a.ball(64), y = b.ball(64);
  Rational xl = mag_lower(x.c) - x.rad, xu = mag_upper(x.c) + x.rad;
  Rational yl = mag_lower(y.c) - y.rad, yu = mag_upper(y.c) + y.rad;
  return xl > yu || yl > xu;
}

}  // namespace

unsigned long degeneracy_modulus(const std::vector<Algebraic>& roots, unsigned long max_modulus) {
  unsigned long l = 1;
  auto absorb = [&](unsigned long r) {
    l = lcm_u64(l, r);
    if (l > max_modulus) throw std::range_error("degeneracy modulus exceeds the configured cap");
  };
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!moduli_separated(roots[i], Algebraic(1))) {
      if (auto info = root_of_unity_order(roots[i])) absorb(info->order);
    }
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (moduli_separated(roots[i], roots[j])) continue;
      if (auto info = root_of_unity_order(roots[i] / roots[j])) absorb(info->order);
    }
  }
  return l;
}

Lrs subsequence(const Lrs& s, unsigned long step, unsigned long offset) {
  if (step == 0) throw std::invalid_argument("subsequence: step must be positive");
  std::size_t k = s.order();
  if (step == 1 && offset == 0) return s;
  CompanionTriple t = to_companion(s);
  RatPoly cp = step == 1 ? s.char_poly() : charpoly(mat_pow(t.m, step));
  auto terms = lrs_terms(s, offset + step * (k - 1) + 1);
  std::vector<Rational> init;
  for (std::size_t i = 0; i < k; ++i) init.push_back(terms[offset + step * i]);
  return Lrs::from_char_poly(cp, init);
}

SplitResult nondegenerate_split(const Lrs& s, unsigned long max_modulus) {
  std::vector<Algebraic> roots;
  for (const auto& r : char_roots(s)) roots.push_back(r.value);
  SplitResult out;
  out.modulus = degeneracy_modulus(roots, max_modulus);
  for (unsigned long j = 0; j < out.modulus; ++j) out.subsequences.push_back(subsequence(s, out.modulus, j));
  return out;
}

// ---------------------------------------------------------------------------
// dominance

namespace {

Rational upper_abs(const Algebraic& z, unsigned bits) {
  Ball b = z.ball(bits);
  return mag_upper(b.c) + b.rad;
}

}  // namespace

DominantAnalysis dominant_analysis(const Lrs& s) { return dominant_analysis(closed_form(s)); }

DominantAnalysis dominant_analysis(const ClosedForm& cf) {
  std::vector<const ClosedFormTerm*> live;
  for (const auto& t : cf.terms) {
    if (!t.is_zero()) live.push_back(&t);
  }
  DominantAnalysis out;
  out.bound = {Rational(1, 2), Threshold::exact(Integer(0))};
  if (live.empty()) return out;
  // exact modulus comparison through |z|^2
  std::vector<Algebraic> mod2;
  for (auto* t : live) mod2.push_back(abs2(t->root.value));
  std::size_t best = 0;
  for (std::size_t i = 1; i < live.size(); ++i) {
    if (compare_real(mod2[i], mod2[best]) > 0) best = i;
  }
  std::vector<const ClosedFormTerm*> rest;
  for (std::size_t i = 0; i < live.size(); ++i) {
    if (i == best || compare_real(mod2[i], mod2[best]) == 0) {
      out.dominant.push_back(live[i]->root);
      out.dominant_terms.push_back(*live[i]);
    }
    else rest.push_back(live[i]);
  }
  if (rest.empty()) return out;
  std::size_t second = 0;
  for (std::size_t i = 1; i < rest.size(); ++i) {
    if (compare_real(abs2(rest[i]->root.value), abs2(rest[second]->root.value)) > 0) second = i;
  }
  const Algebraic& big = out.dominant.front().value;
  const Algebraic& small = rest[second]->root.value;
  Rational rho;
  for (unsigned bits = 64;; bits *= 2) {
    Ball bb = big.ball(bits);
    Rational lo = mag_lower(bb.c) - bb.rad;
    if (lo > 0) {
      rho = upper_abs(small, bits) / lo;
      if (rho < 1) break;
    }
    if (bits > (1u << 16)) throw std::runtime_error("dominant_analysis: moduli not separated");
  }
  Rational eps = (1 - rho) / 2;
  out.ratio = rho;
  Rational kk = 0;
  int e = 0;
  // |r(n)| / |lambda_1|^n <= sum |c_t| n^t (|mu|/|lambda_1|)^n
  for (auto* t : rest) {
    for (std::size_t i = 0; i < t->coeff.size(); ++i) {
      if (t->coeff[i].is_zero()) continue;
      kk += upper_abs(t->coeff[i], 64);
      e = std::max(e, static_cast<int>(i));
    }
  }
  // k n^e rho^n < (1-eps)^n  <=  n log((1-eps)/rho) > log k + e log(n+1)
  out.rest_const = kk;
  out.rest_degree = e;
  Rational q = (1 - eps) / rho;
  out.bound = {eps, solve_log_growth(log_lower(q), Rational(e), Rational(1), log_upper(kk))};
  return out;
}

}  // namespace orbitkit
