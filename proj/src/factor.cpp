// Factorization over Q: squarefree split, then Zassenhaus (Cantor-Zassenhaus
// mod p, linear Hensel lifting, exhaustive recombination).
#include <algorithm>
#include <cstdint>
#include <random>

#include "orbitkit/poly.hpp"

namespace orbitkit {

namespace {

using u64 = std::uint64_t;
using FpPoly = std::vector<u64>;  // lowest first, trimmed
using ZPoly = std::vector<Integer>;

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

FpPoly fp_sub(FpPoly a, const FpPoly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  trim(r);
  return r;
}

// Returns (quotient, remainder).
std::pair<FpPoly, FpPoly> fp_divmod(FpPoly a, const FpPoly& b, u64 p) {
  if (b.empty()) throw std::domain_error("division by zero mod p");
  if (a.size() < b.size()) return {{}, a};
  u64 inv = invmod(b.back(), p);
  FpPoly q(a.size() - b.size() + 1, 0);
  for (std::size_t i = a.size(); i-- >= b.size();) {
    u64 t = mulmod(a[i], inv, p);
    q[i - (b.size() - 1)] = t;
    if (!t) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t k = i - (b.size() - 1) + j;
      a[k] = (a[k] + p - mulmod(t, b[j], p)) % p;
    }
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

FpPoly fp_rem(const FpPoly& a, const FpPoly& b, u64 p) { return fp_divmod(a, b, p).second; }

FpPoly fp_monic(FpPoly a, u64 p) {
  if (a.empty()) return a;
  u64 inv = invmod(a.back(), p);
  for (auto& c : a) c = mulmod(c, inv, p);
  return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
  while (!b.empty()) {
    FpPoly r = fp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

// Extended gcd: returns (g, s, t) with s a + t b = g, g monic.
void fp_xgcd(const FpPoly& a, const FpPoly& b, u64 p, FpPoly& g, FpPoly& s, FpPoly& t) {
  FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = fp_divmod(r0, r1, p);
    FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u64 inv = invmod(r0.back(), p);
  for (auto& c : r0) c = mulmod(c, inv, p);
  for (auto& c : s0) c = mulmod(c, inv, p);
  for (auto& c : t0) c = mulmod(c, inv, p);
  g = r0;
  s = s0;
  t = t0;
}

FpPoly fp_powmod(FpPoly base, const Integer& e, const FpPoly& mod, u64 p) {
  FpPoly r{1};
  base = fp_rem(base, mod, p);
  std::size_t bits = bit_length(e);
  for (std::size_t i = bits; i-- > 0;) {
    r = fp_rem(fp_mul(r, r, p), mod, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = fp_rem(fp_mul(r, base, p), mod, p);
  }
  return r;
}

FpPoly reduce(const ZPoly& f, u64 p) {
  FpPoly r(f.size());
  Integer P(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < f.size(); ++i) {
    Integer m;
    mpz_fdiv_r(m.get_mpz_t(), f[i].get_mpz_t(), P.get_mpz_t());
    r[i] = m.get_ui();
  }
  trim(r);
  return r;
}

void equal_degree(const FpPoly& f, std::size_t d, u64 p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  std::size_t n = f.size() - 1;
  if (n == d) {
    out.push_back(f);
    return;
  }
  Integer e = (pow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
  while (true) {
    FpPoly a(n);
    for (auto& c : a) c = rng() % p;
    trim(a);
    if (a.size() < 2) continue;
    FpPoly b = fp_sub(fp_powmod(a, e, f, p), FpPoly{1}, p);
    FpPoly g = fp_gcd(f, b, p);
    if (g.size() > 1 && g.size() < f.size()) {
      equal_degree(g, d, p, rng, out);
      equal_degree(fp_divmod(f, g, p).first, d, p, rng, out);
      return;
    }
  }
}

// Monic squarefree f mod odd prime p -> monic irreducible factors.
std::vector<FpPoly> factor_mod_p(FpPoly f, u64 p, std::mt19937_64& rng) {
  std::vector<FpPoly> out;
  FpPoly h{0, 1};
  FpPoly x{0, 1};
  for (std::size_t d = 1; f.size() > 1 && 2 * d <= f.size() - 1; ++d) {
    h = fp_powmod(h, Integer(static_cast<unsigned long>(p)), f, p);
    FpPoly g = fp_gcd(f, fp_sub(h, x, p), p);
    if (g.size() > 1) {
      equal_degree(g, d, p, rng, out);
      f = fp_divmod(f, g, p).first;
      h = fp_rem(h, f, p);
    }
  }
  if (f.size() > 1) out.push_back(fp_monic(f, p));
  return out;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Symmetric residue of every coefficient modulo m.
ZPoly sym_mod(const ZPoly& a, const Integer& m) {
  ZPoly r(a.size());
  Integer half = m / 2;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Integer t;
    mpz_fdiv_r(t.get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
    if (t > half) t -= m;
    r[i] = t;
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

ZPoly z_sub(ZPoly a, const ZPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Integer(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ZPoly lift_fp(const FpPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Integer(static_cast<unsigned long>(a[i]));
  return r;
}

ZPoly scale(ZPoly a, const Integer& s) {
  for (auto& c : a) c *= s;
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Lifts F = g*h (mod p) to mod p^k with g monic.  F's leading coefficient is
// carried by h.
void hensel_two(const ZPoly& F, ZPoly& g, ZPoly& h, u64 p, unsigned k) {
  FpPoly gp = reduce(g, p), hp = reduce(h, p);
  FpPoly G, s, t;
  fp_xgcd(gp, hp, p, G, s, t);
  Integer P(static_cast<unsigned long>(p));
  Integer pj = P;
  for (unsigned j = 1; j < k; ++j) {
    ZPoly diff = z_sub(F, z_mul(g, h));
    for (auto& c : diff) c /= pj;  // exact
    FpPoly e = reduce(diff, p);
    FpPoly et = fp_mul(e, t, p);
    auto [q, tau] = fp_divmod(et, gp, p);
    FpPoly sig = fp_mul(e, s, p);
    FpPoly qh = fp_mul(q, hp, p);
    // sigma' = e s + q h
    FpPoly sum = sig;
    if (sum.size() < qh.size()) sum.resize(qh.size(), 0);
    for (std::size_t i = 0; i < qh.size(); ++i) sum[i] = (sum[i] + qh[i]) % p;
    trim(sum);
    ZPoly dg = scale(lift_fp(tau), pj);
    ZPoly dh = scale(lift_fp(sum), pj);
    if (g.size() < dg.size()) g.resize(dg.size(), Integer(0));
    for (std::size_t i = 0; i < dg.size(); ++i) g[i] += dg[i];
    if (h.size() < dh.size()) h.resize(dh.size(), Integer(0));
    for (std::size_t i = 0; i < dh.size(); ++i) h[i] += dh[i];
    pj *= P;
    g = sym_mod(g, pj);
    h = sym_mod(h, pj);
  }
}

ZPoly fp_product(const std::vector<FpPoly>& fs, std::size_t lo, std::size_t hi, u64 p) {
  FpPoly r{1};
  for (std::size_t i = lo; i < hi; ++i) r = fp_mul(r, fs[i], p);
  return lift_fp(r);
}

// Multifactor lifting by recursive halving.
void hensel_multi(const ZPoly& F, const std::vector<FpPoly>& fs, std::size_t lo, std::size_t hi, u64 p, unsigned k,
                  const Integer& M, std::vector<ZPoly>& out) {
  if (hi - lo == 1) {
    // F has leading coefficient lc; make it monic mod M.
    Integer inv;
    mpz_invert(inv.get_mpz_t(), F.back().get_mpz_t(), M.get_mpz_t());
    out.push_back(sym_mod(scale(F, inv), M));
    return;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  ZPoly g = fp_product(fs, lo, mid, p);
  // h = lc * rest, so F = g*h mod p.
  FpPoly hp = reduce(fp_product(fs, mid, hi, p), p);
  u64 lcp = reduce(ZPoly{F.back()}, p).empty() ? 0 : reduce(ZPoly{F.back()}, p)[0];
  for (auto& c : hp) c = mulmod(c, lcp, p);
  ZPoly h = lift_fp(hp);
  hensel_two(F, g, h, p, k);
  hensel_multi(g, fs, lo, mid, p, k, M, out);
  hensel_multi(h, fs, mid, hi, p, k, M, out);
}

ZPoly primitive(ZPoly a) {
  Integer g = 0;
  for (const auto& c : a) g = gcd(g, c);
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

bool z_divides(const ZPoly& d, const ZPoly& f, ZPoly* quot) {
  // Exact division over Z; d need not be monic.
  if (d.size() > f.size()) return false;
  ZPoly r = f;
  ZPoly q(f.size() - d.size() + 1, Integer(0));
  for (std::size_t i = f.size(); i-- >= d.size();) {
    if (r[i] == 0) {
      q[i - (d.size() - 1)] = 0;
      continue;
    }
    if (!mpz_divisible_p(r[i].get_mpz_t(), d.back().get_mpz_t())) return false;
    Integer t = r[i] / d.back();
    q[i - (d.size() - 1)] = t;
    for (std::size_t j = 0; j < d.size(); ++j) r[i - (d.size() - 1) + j] -= t * d[j];
  }
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (r[i] != 0) return false;
  }
  if (quot) *quot = q;
  return true;
}

std::vector<ZPoly> zassenhaus(const ZPoly& F0) {
  std::size_t n = F0.size() - 1;
  if (n <= 1) return {F0};
  std::mt19937_64 rng(0x5eed1234u);
  ZPoly Fd;
  {
    Fd.resize(n);
    for (std::size_t i = 1; i <= n; ++i) Fd[i - 1] = F0[i] * static_cast<unsigned long>(i);
  }
  u64 best_p = 0;
  std::vector<FpPoly> best;
  int tried = 0;
  for (u64 p = 10007; tried < 6; p += 2) {
    if (!is_prime(p)) continue;
    FpPoly f = reduce(F0, p);
    if (f.size() != F0.size()) continue;
    if (fp_gcd(f, reduce(Fd, p), p).size() > 1) continue;
    ++tried;
    auto fs = factor_mod_p(fp_monic(f, p), p, rng);
    if (best_p == 0 || fs.size() < best.size()) {
      best_p = p;
      best = fs;
    }
    if (best.size() == 1) break;
  }
  if (best.size() <= 1) return {F0};
  u64 p = best_p;

  // Coefficient bound for factors (Mignotte): 2^n * ||F||_2 * lc.
  Integer norm2 = 0;
  for (const auto& c : F0) norm2 += c * c;
  Integer bound = (Integer(1) << static_cast<unsigned>(n)) * (isqrt(norm2) + 1) * abs(F0.back());
  Integer M = 1, P(static_cast<unsigned long>(p));
  unsigned k = 0;
  while (M <= 2 * bound) {
    M *= P;
    ++k;
  }
  std::sort(best.begin(), best.end(), [](const FpPoly& a, const FpPoly& b) { return a.size() < b.size(); });
  std::vector<ZPoly> lifted;
  hensel_multi(F0, best, 0, best.size(), p, k, M, lifted);

  std::vector<ZPoly> result;
  ZPoly F = F0;
  std::vector<ZPoly> pool = lifted;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      Integer lc = F.back();
      // cheap constant-term test
      Integer c0 = lc;
      for (auto i : idx) c0 = c0 * (pool[i].empty() ? Integer(0) : pool[i][0]);
      ZPoly tmp{c0};
      tmp = sym_mod(tmp, M);
      Integer ct = tmp.empty() ? Integer(0) : tmp[0];
      bool ok = ct == 0 ? F[0] == 0 : mpz_divisible_p(Integer(lc * F[0]).get_mpz_t(), ct.get_mpz_t()) != 0;
      if (ok) {
        ZPoly G{lc};
        for (auto i : idx) G = sym_mod(z_mul(G, pool[i]), M);
        G = primitive(G);
        ZPoly q;
        if (z_divides(G, F, &q)) {
          result.push_back(G);
          F = primitive(q);
          std::vector<ZPoly> rest;
          for (std::size_t i = 0, j = 0; i < pool.size(); ++i) {
            if (j < idx.size() && idx[j] == i) {
              ++j;
              continue;
            }
            rest.push_back(pool[i]);
          }
          pool = std::move(rest);
          found = true;
          break;
        }
      }
      // next combination
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == pool.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (F.size() > 1) result.push_back(F);
  return result;
}

}  // namespace

std::vector<std::pair<RatPoly, int>> factor_poly(const RatPoly& p) {
  if (p.is_zero()) throw std::domain_error("zero input");
  std::vector<std::pair<RatPoly, int>> out;
  for (const auto& [f, mult] : squarefree_decomposition(p)) {
    ZPoly F = f.primitive_integer();
    std::vector<ZPoly> parts;
    // pull out x first so the constant term is nonzero
    if (F[0] == 0) {
      parts.push_back(ZPoly{Integer(0), Integer(1)});
      F.erase(F.begin());
    }
    if (F.size() > 1) {
      for (auto& g : zassenhaus(F)) parts.push_back(g);
    }
    for (auto& g : parts) out.emplace_back(RatPoly::from_integers(g).monic(), mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    const auto& ca = a.first.coeffs();
    const auto& cb = b.first.coeffs();
    for (std::size_t i = 0; i < ca.size(); ++i) {
      if (ca[i] != cb[i]) return ca[i] < cb[i];
    }
    return a.second < b.second;
  });
  return out;
}

}  // namespace orbitkit
