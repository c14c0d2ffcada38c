#include "orbitkit/simpos.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <stdexcept>

#include "orbitkit/bigfloat.hpp"

namespace orbitkit {

// ---------------------------------------------------------------------------
// instances

SimposInstance::SimposInstance(std::vector<Rational> rec, std::vector<std::vector<Rational>> init)
    : recurrence(std::move(rec)), initial(std::move(init)) {
  if (recurrence.empty()) throw std::invalid_argument("simpos: empty recurrence");
  if (recurrence.back() == 0) throw std::invalid_argument("simpos: a_k must be nonzero");
  for (const auto& v : initial) {
    if (v.size() != recurrence.size()) throw std::invalid_argument("simpos: initial values must have length k");
  }
}

SimposInstance SimposInstance::from_sequences(const std::vector<Lrs>& seqs) {
  if (seqs.empty()) throw std::invalid_argument("simpos: no sequences");
  std::vector<std::vector<Rational>> init;
  const auto& rec = seqs.front().recurrence;
  Lrs probe(rec, seqs.front().initial);
  for (const auto& s : seqs) {
    // same recurrence, or at least the same sequence under the shared one
    auto mine = lrs_terms(s, 2 * rec.size());
    std::vector<Rational> head(mine.begin(), mine.begin() + static_cast<long>(rec.size()));
    auto shared = lrs_terms(Lrs(rec, head), 2 * rec.size());
    if (s.recurrence != rec && mine != shared)
      throw std::invalid_argument("simpos: sequences do not share a recurrence");
    init.push_back(head);
  }
  return SimposInstance(rec, std::move(init));
}

bool verify_simultaneous(const SimposInstance& inst, const Integer& n) {
  if (n < 0) return false;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (lrs_eval(inst.sequence(i), n) < 0) return false;
  }
  return true;
}

bool lrs_system_holds(const LrsSystem& sys, const Integer& n) {
  if (n < 0) return false;
  for (const auto& z : sys.zeros) {
    if (lrs_eval(z, n) != 0) return false;
  }
  for (const auto& p : sys.nonneg) {
    if (lrs_eval(p, n) < 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// arcs

namespace {

Ball ball_power(const Ball& b, const Integer& n, unsigned bits) {
  Ball result{{Rational(1), Rational(0)}, Rational(0)};
  Ball base = b;
  Integer e = n;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = tidy(result * base, bits);
    e >>= 1;
    if (e > 0) base = tidy(base * base, bits);
  }
  return result;
}

// Midpoint/radius enclosure of an angle, radians.
struct Angle {
  BigFloat mid;
  BigFloat rad;
};

BigFloat bf(const Rational& q, mpfr_prec_t p, mpfr_rnd_t r = MPFR_RNDN) { return BigFloat(q, p, r); }

BigFloat two_pi(mpfr_prec_t p) { return mul(pi(p, MPFR_RNDN), BigFloat(2.0, p), MPFR_RNDN); }

// reduce into [0, 2pi)
BigFloat normalize(const BigFloat& x, mpfr_prec_t p) {
  BigFloat tp = two_pi(p);
  BigFloat q(p);
  mpfr_div(q.get(), x.get(), tp.get(), MPFR_RNDN);
  mpfr_floor(q.get(), q.get());
  BigFloat out = sub(x, mul(q, tp, MPFR_RNDN), MPFR_RNDN);
  if (out.sign() < 0) out = add(out, tp, MPFR_RNDN);
  if (out >= tp) out = sub(out, tp, MPFR_RNDN);
  return out;
}

// cyclic distance of two normalized angles
BigFloat cyclic_gap(const BigFloat& a, const BigFloat& b, mpfr_prec_t p) {
  BigFloat d = abs(sub(a, b, MPFR_RNDN));
  BigFloat tp = two_pi(p);
  BigFloat other = sub(tp, d, MPFR_RNDN);
  return d < other ? d : other;
}

// -arg(a) for |a| = 1
Angle neg_arg(const Algebraic& a, unsigned p) {
  Ball b = a.ball(p);
  BigFloat x = bf(b.c.re, p + 16), y = bf(b.c.im, p + 16);
  BigFloat t = atan2(y, x, MPFR_RNDN);
  Rational m = mag_lower(b.c) - b.rad;
  if (m <= 0) throw std::logic_error("arc: unit number enclosure contains zero");
  // |delta arg| <= (pi/2) rad / (|c| - rad), plus rounding
  Rational err = 2 * b.rad / m + Rational(Integer(1), Integer(1) << (p - 4));
  return {-t, bf(err, 64, MPFR_RNDU)};
}

// arccos of a real number in [-1, 1]
Angle arccos_of(const Algebraic& c, unsigned p) {
  Ball b = c.ball(p);
  Rational lo = b.c.re - b.rad, hi = b.c.re + b.rad;
  lo = std::max(lo, Rational(-1));
  hi = std::min(hi, Rational(1));
  BigFloat blo = bf(lo, p + 16, MPFR_RNDD), bhi = bf(hi, p + 16, MPFR_RNDU);
  BigFloat alo(p + 16), ahi(p + 16);
  mpfr_acos(alo.get(), bhi.get(), MPFR_RNDD);
  mpfr_acos(ahi.get(), blo.get(), MPFR_RNDU);
  BigFloat mid = mul(add(alo, ahi, MPFR_RNDN), BigFloat(0.5, p + 16), MPFR_RNDN);
  BigFloat rad = sub(ahi, alo, MPFR_RNDU);
  rad = add(mul(rad, BigFloat(0.5, 64), MPFR_RNDU), bf(Rational(Integer(1), Integer(1) << (p - 4)), 64, MPFR_RNDU),
            MPFR_RNDU);
  return {mid, rad};
}

struct Endpoint {
  std::size_t arc;
  int side;  // -1 start, +1 end (counter-clockwise)
  BigFloat mid;
  BigFloat rad;
};

// conj(a) * (c + side * i * sqrt(1 - c^2))
Algebraic endpoint_value(const Algebraic& a, const Algebraic& c, int side) {
  if (c == Algebraic(1)) return conj(a);
  Algebraic s = sqrt(Algebraic(1) - c * c);
  Algebraic w = side > 0 ? c + Algebraic::i() * s : c - Algebraic::i() * s;
  return conj(a) * w;
}

enum class ArcShape { Empty, Open, Points };

struct ArcAnalysis {
  ArcShape shape = ArcShape::Empty;
  std::vector<Algebraic> points;
};

struct DisjointSet {
  std::vector<std::size_t> p;
  explicit DisjointSet(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

// Constraints must satisfy -1 < c_j <= 1.
ArcAnalysis analyze_arcs(const std::vector<std::pair<Algebraic, Algebraic>>& cons) {
  ArcAnalysis out;
  if (cons.empty()) {
    out.shape = ArcShape::Open;
    return out;
  }
  std::vector<bool> single(cons.size());
  for (std::size_t j = 0; j < cons.size(); ++j) single[j] = cons[j].second == Algebraic(1);
  std::map<std::pair<std::size_t, std::size_t>, bool> equal_cache;
  std::vector<Algebraic> value_cache(2 * cons.size());
  std::vector<bool> have_value(2 * cons.size(), false);
  auto value_of = [&](const Endpoint& e) -> const Algebraic& {
    std::size_t key = 2 * e.arc + (e.side > 0 ? 1 : 0);
    if (!have_value[key]) {
      value_cache[key] = endpoint_value(cons[e.arc].first, cons[e.arc].second, e.side);
      have_value[key] = true;
    }
    return value_cache[key];
  };

  for (unsigned p = 128; p <= 8192; p *= 2) {
    std::vector<Endpoint> ends;
    for (std::size_t j = 0; j < cons.size(); ++j) {
      Angle centre = neg_arg(cons[j].first, p);
      Angle half = single[j] ? Angle{BigFloat(0.0, p), BigFloat(0.0, 64)} : arccos_of(cons[j].second, p);
      BigFloat rad = add(centre.rad, half.rad, MPFR_RNDU);
      ends.push_back({j, -1, normalize(sub(centre.mid, half.mid, MPFR_RNDN), p + 16), rad});
      ends.push_back({j, +1, normalize(add(centre.mid, half.mid, MPFR_RNDN), p + 16), rad});
    }
    std::sort(ends.begin(), ends.end(), [](const Endpoint& x, const Endpoint& y) { return x.mid < y.mid; });
    DisjointSet ds(ends.size());
    bool retry = false;
    for (std::size_t i = 0; i < ends.size() && !retry; ++i) {
      for (std::size_t k = i + 1; k < ends.size(); ++k) {
        BigFloat gap = cyclic_gap(ends[i].mid, ends[k].mid, p + 16);
        BigFloat room = add(add(ends[i].rad, ends[k].rad, MPFR_RNDU), BigFloat(1e-300, 64), MPFR_RNDU);
        if (gap > room) continue;
        if (ends[i].arc == ends[k].arc && single[ends[i].arc]) {
          ds.unite(i, k);
          continue;
        }
        if (p < 256) {
          retry = true;
          break;
        }
        std::size_t ki = 2 * ends[i].arc + (ends[i].side > 0), kk = 2 * ends[k].arc + (ends[k].side > 0);
        auto key = std::minmax(ki, kk);
        auto it = equal_cache.find(key);
        bool eq;
        if (it != equal_cache.end()) {
          eq = it->second;
        } else {
          eq = alg_equal(value_of(ends[i]), value_of(ends[k]));
          equal_cache[key] = eq;
        }
        if (eq) ds.unite(i, k);
        else {
          retry = true;
          break;
        }
      }
    }
    if (retry) continue;

    // clusters in cyclic order
    std::vector<std::size_t> cluster_of(ends.size());
    std::vector<std::size_t> rep;  // first endpoint of each cluster
    std::map<std::size_t, std::size_t> root_to_cluster;
    for (std::size_t i = 0; i < ends.size(); ++i) {
      std::size_t r = ds.find(i);
      auto it = root_to_cluster.find(r);
      if (it == root_to_cluster.end()) {
        it = root_to_cluster.emplace(r, rep.size()).first;
        rep.push_back(i);
      }
      cluster_of[i] = it->second;
    }
    // endpoints that wrapped around (cluster straddling 0) may be split in
    // the sorted order; the cluster index of the first member stays valid but
    // the order must be by representative position.
    std::vector<std::size_t> order(rep.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return rep[x] < rep[y]; });
    std::vector<std::size_t> position(rep.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    const std::size_t m = rep.size();

    std::vector<std::size_t> start(cons.size()), stop(cons.size());
    for (std::size_t i = 0; i < ends.size(); ++i) {
      std::size_t pos = position[cluster_of[i]];
      if (ends[i].side < 0) start[ends[i].arc] = pos;
      else stop[ends[i].arc] = pos;
    }
    auto span = [&](std::size_t j) { return (stop[j] + m - start[j]) % m; };
    // gap g lies between cluster positions g and g+1
    for (std::size_t g = 0; g < m; ++g) {
      bool inside = true;
      for (std::size_t j = 0; j < cons.size() && inside; ++j) {
        if (single[j] || span(j) == 0) inside = false;
        else inside = (g + m - start[j]) % m < span(j);
      }
      if (inside) {
        out.shape = ArcShape::Open;
        return out;
      }
    }
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t pos = position[c];
      bool inside = true;
      for (std::size_t j = 0; j < cons.size() && inside; ++j) inside = (pos + m - start[j]) % m <= span(j);
      if (inside) out.points.push_back(value_of(ends[rep[c]]));
    }
    out.shape = out.points.empty() ? ArcShape::Empty : ArcShape::Points;
    return out;
  }
  throw std::runtime_error("arc analysis: endpoints could not be separated");
}

// Splits off trivially true (c <= -1) constraints; returns false when one is
// unsatisfiable (c > 1).
bool normalize_constraints(const std::vector<std::pair<Algebraic, Algebraic>>& in,
                           std::vector<std::pair<Algebraic, Algebraic>>& out) {
  out.clear();
  for (const auto& [a, c] : in) {
    if (compare_real(c, Algebraic(1)) > 0) return false;
    if (compare_real(c, Algebraic(-1)) <= 0) continue;
    out.emplace_back(a, c);
  }
  return true;
}

}  // namespace

bool arc_holds(const ArcSystem& sys, const Integer& n) {
  for (unsigned bits = 96; bits <= 4096; bits *= 2) {
    unsigned work = bits + static_cast<unsigned>(bit_length(n)) + 16;
    Ball w = ball_power(sys.lambda.ball(work), n, work);
    bool all = true, undecided = false;
    for (const auto& [a, c] : sys.constraints) {
      Ball v = a.ball(work) * w;
      Ball cb = c.ball(work);
      Rational lo = v.c.re - v.rad - (cb.c.re + cb.rad);
      Rational hi = v.c.re + v.rad - (cb.c.re - cb.rad);
      if (lo >= 0) continue;
      if (hi < 0) return false;
      undecided = true;
      all = false;
    }
    if (all) return true;
    if (!undecided) return false;
  }
  Algebraic w = pow(sys.lambda, n);
  for (const auto& [a, c] : sys.constraints) {
    if (compare_real(real_part(a * w), c) < 0) return false;
  }
  return true;
}

Decision arc_system_decide(const ArcSystem& sys, const SearchOptions& opts) {
  if (!on_unit_circle(sys.lambda)) throw std::invalid_argument("arc system: lambda must have modulus 1");
  if (root_of_unity_order(sys.lambda)) throw std::invalid_argument("arc system: lambda is a root of unity");
  for (const auto& [a, c] : sys.constraints) {
    if (!on_unit_circle(a)) throw std::invalid_argument("arc system: a_j must have modulus 1");
    if (!c.is_real()) throw std::invalid_argument("arc system: c_j must be real");
  }
  Certificate cert;
  cert.modulus = 1;
  ResidueNote note;
  note.arcs = sys;
  note.arcs_exact = true;
  std::vector<std::pair<Algebraic, Algebraic>> cons;
  if (!normalize_constraints(sys.constraints, cons)) {
    note.kind = cert.kind = CertificateKind::EmptyArcIntersection;
    note.detail = "constraint with c > 1";
    cert.residues.push_back(note);
    return Decision::never(cert);
  }
  if (cons.empty()) return Decision::hit(Integer(0));
  ArcAnalysis an = analyze_arcs(cons);
  if (an.shape == ArcShape::Empty) {
    note.kind = cert.kind = CertificateKind::EmptyArcIntersection;
    cert.residues.push_back(note);
    return Decision::never(cert);
  }
  if (an.shape == ArcShape::Open) {
    for (Integer n = 0; n <= opts.max_n; ++n) {
      if (arc_holds(sys, n)) return Decision::hit(n);
    }
    return Decision::inconclusive(opts.max_n, std::nullopt,
                                  "the arcs share an open interval, so witnesses exist beyond the search cap");
  }
  // isolated points: lambda^n must equal one of them
  std::optional<Integer> best;
  Integer worst_bound = 0;
  bool complete = true;
  for (const auto& z : an.points) {
    Integer b = power_equation_bound(sys.lambda, z);
    worst_bound = std::max(worst_bound, b);
    Integer lim = std::min(b, opts.max_n);
    if (lim < b) complete = false;
    if (auto n = solve_power_equation(sys.lambda, z, lim.get_ui())) {
      if (!best || Integer(*n) < *best) best = Integer(*n);
    }
  }
  if (best) return Decision::hit(*best);
  if (!complete) return Decision::inconclusive(opts.max_n, Threshold::exact(worst_bound), "isolated arc points");
  note.kind = cert.kind = CertificateKind::ArcPointNoPower;
  note.points = an.points;
  note.bound = Threshold::exact(worst_bound);
  cert.residues.push_back(note);
  cert.searched_up_to = worst_bound;
  return Decision::never(cert);
}

bool verify_empty_arcs(const ArcSystem& sys) {
  const mpfr_prec_t p = 256;
  std::vector<std::pair<BigFloat, BigFloat>> arcs;  // (centre, half width)
  for (const auto& [a, c] : sys.constraints) {
    Ball cb = c.ball(p);
    BigFloat cv = bf(cb.c.re, p);
    if (cv > BigFloat(1.0, p)) return true;
    if (cv <= BigFloat(-1.0, p)) continue;
    Ball ab = a.ball(p);
    BigFloat centre = -atan2(bf(ab.c.im, p), bf(ab.c.re, p), MPFR_RNDN);
    BigFloat h(p);
    mpfr_acos(h.get(), cv.get(), MPFR_RNDN);
    arcs.emplace_back(centre, h);
  }
  if (arcs.empty()) return false;
  // a nonempty closed intersection contains the start of one of the arcs
  BigFloat tol(1e-40, p);
  for (const auto& [ci, hi] : arcs) {
    BigFloat s = sub(ci, hi, MPFR_RNDN);
    bool in_all = true;
    for (const auto& [ck, hk] : arcs) {
      BigFloat d = cos(sub(s, ck, MPFR_RNDN), MPFR_RNDN);
      BigFloat lim = cos(hk, MPFR_RNDN);
      if (d < sub(lim, tol, MPFR_RNDN)) {
        in_all = false;
        break;
      }
    }
    if (in_all) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// engine

namespace {

Rational upper_abs(const Algebraic& z) {
  Ball b = z.ball(64);
  return mag_upper(b.c) + b.rad;
}

Rational lower_abs(const Algebraic& z) {
  for (unsigned bits = 64; bits <= (1u << 15); bits *= 2) {
    Ball b = z.ball(bits);
    Rational l = mag_lower(b.c) - b.rad;
    if (l > 0) return l;
  }
  throw std::logic_error("lower_abs: value looks like zero");
}

Threshold tmin(const Threshold& a, const Threshold& b) {
  if (a.is_exact() && b.is_exact()) return a.value() <= b.value() ? a : b;
  if (a.is_exact()) return a.at_most(Integer(1) << b.log2_ceiling()) ? a : b;
  if (b.is_exact()) return b.at_most(Integer(1) << a.log2_ceiling()) ? b : a;
  return a.log2_ceiling() <= b.log2_ceiling() ? a : b;
}

Threshold plus_one(const Threshold& t) {
  if (t.is_exact()) return Threshold::exact(t.value() + 1);
  return Threshold::pow2(t.log2_ceiling() + 1);
}

// local index m of class r  ->  n = L*m + r
Threshold to_global(const Threshold& t, unsigned long l, unsigned long r) {
  if (t.is_exact()) return Threshold::exact(t.value() * l + r);
  unsigned long extra = 1;
  while ((1ul << extra) < l) ++extra;
  return Threshold::pow2(t.log2_ceiling() + extra + 1);
}

int top_index(const ClosedFormTerm& t) {
  int k = -1;
  for (std::size_t i = 0; i < t.coeff.size(); ++i) {
    if (!t.coeff[i].is_zero()) k = static_cast<int>(i);
  }
  return k;
}

struct Shape {
  enum Kind { Zero, Real, Arc, Other } kind = Other;
  // Real: sign(T(m)) = sign for every m > threshold
  int sign = 0;
  bool constant = false;
  Threshold threshold;
  // Arc: T(m) = 2|c| R^m (C + cos(arg a + m arg lambda)) + r(m)
  Algebraic lambda, a, c;
  bool exact = false;
  Rational ratio, rest_const, cabs_lower;
  int rest_degree = 0;
  std::string why;
};

Shape shape_of(const Lrs& t) {
  Shape sh;
  ClosedForm cf = closed_form(t);
  DominantAnalysis da = dominant_analysis(cf);
  if (da.dominant.empty()) {
    sh.kind = Shape::Zero;
    return sh;
  }
  const ClosedFormTerm* real = nullptr;
  std::vector<const ClosedFormTerm*> cx;
  for (const auto& term : da.dominant_terms) {
    if (term.root.value.is_real()) {
      if (real || sign_real(term.root.value) < 0) {
        sh.why = "negative dominant real root";
        return sh;
      }
      real = &term;
    } else {
      cx.push_back(&term);
    }
  }
  int tr = real ? top_index(*real) : -1;
  int tc = -1;
  for (auto* c : cx) tc = std::max(tc, top_index(*c));
  const Rational& k = da.rest_const;
  const int e = da.rest_degree;

  if (real && tr > tc) {
    const Algebraic& ct = real->coeff[tr];
    sh.kind = Shape::Real;
    sh.sign = sign_real(ct);
    if (cx.empty() && tr == 0 && k == 0 && real->root.value == Algebraic(1)) {
      sh.constant = true;
      sh.threshold = Threshold::exact(Integer(0));
      return sh;
    }
    // |c_t| m^t beats (S + B) m^(t-1) and k m^e ratio^m, each by a third
    Rational ctl = lower_abs(ct);
    Rational sb = 0;
    for (int i = 0; i < tr; ++i) sb += upper_abs(real->coeff[i]);
    for (auto* c : cx) {
      for (const auto& v : c->coeff) sb += upper_abs(v);
    }
    Threshold n = Threshold::exact(ceil_of(3 * sb / ctl));
    if (k > 0) {
      Threshold g = solve_log_growth(log_lower(1 / da.ratio), Rational(std::max(e - tr, 0)), Rational(1),
                                     log_upper(3 * k / ctl));
      n = Threshold::max(n, g);
    }
    sh.threshold = n;
    return sh;
  }
  if (cx.size() == 2 && tc == 0 && tr <= 0 && top_index(*cx[0]) == 0 && top_index(*cx[1]) == 0) {
    const ClosedFormTerm* up = cx[0]->root.value.approx_im() > 0 ? cx[0] : cx[1];
    const Algebraic& lam = up->root.value;
    const Algebraic& c = up->coeff[0];
    Algebraic cabs = abs(c);
    sh.kind = Shape::Arc;
    sh.lambda = lam / abs(lam);
    sh.a = c / cabs;
    Algebraic two_cabs = Algebraic(2) * cabs;
    sh.c = real ? real->coeff[0] / two_cabs : Algebraic(0);
    sh.exact = k == 0;
    sh.ratio = da.ratio;
    sh.rest_const = k;
    sh.rest_degree = e;
    sh.cabs_lower = lower_abs(cabs);
    return sh;
  }
  sh.why = "dominant roots outside the supported shapes";
  return sh;
}

// For m > returned value: |r(m)| / (2|c| R^m) < chi^m with chi = (1 + ratio)/2.
Threshold rest_threshold(const Shape& s, Rational* chi) {
  *chi = (1 + s.ratio) / 2;
  if (s.rest_const == 0) return Threshold::exact(Integer(0));
  return solve_log_growth(log_lower(*chi / s.ratio), Rational(s.rest_degree), Rational(1),
                          log_upper(s.rest_const / (2 * s.cabs_lower)));
}

// Past this the sign of T(m) is the sign of C + cos(arg a + m arg lambda), which never vanishes.
Threshold arc_threshold(const Shape& s) {
  if (s.exact) return cos_exp_threshold(s.a, s.lambda, s.c, Algebraic(0));
  Rational chi;
  Threshold m1 = rest_threshold(s, &chi);
  return Threshold::max(m1, cos_exp_threshold(s.a, s.lambda, s.c, Algebraic(chi)));
}

enum class Plan { Excluded, Bounded, Guaranteed, Infinite, Unknown, Candidates };

struct ClassResult {
  Plan plan = Plan::Unknown;
  Threshold bound;                  // local index
  bool constant = false;            // excluded by a constant subsequence
  std::vector<Integer> candidates;  // local indices
  ResidueNote note;
};

const Integer kCandidateSearch = 10000000;

ClassResult analyze_class(const std::vector<Lrs>& zs, const std::vector<Lrs>& ps, unsigned long r) {
  ClassResult out;
  out.note.residue = r;
  bool zero_unknown = false;
  std::optional<Threshold> zero_bound;
  int zero_idx = -1;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    Shape s = shape_of(zs[i]);
    if (s.kind == Shape::Zero) continue;
    if (s.kind == Shape::Real && s.constant) {
      out.plan = Plan::Excluded;
      out.constant = true;
      out.note.kind = CertificateKind::CongruenceUnsat;
      out.note.sequence = static_cast<int>(i);
      out.note.bound = Threshold::exact(Integer(0));
      out.note.detail = "nonzero constant";
      return out;
    }
    std::optional<Threshold> b;
    if (s.kind == Shape::Real) b = s.threshold;
    else if (s.kind == Shape::Arc) {
      try {
        b = arc_threshold(s);
      } catch (const std::exception&) {
        b.reset();
      }
    }
    if (!b) {
      zero_unknown = true;
      continue;
    }
    if (!zero_bound || tmin(*b, *zero_bound).log2_ceiling() < zero_bound->log2_ceiling() ||
        (b->is_exact() && zero_bound->is_exact() && b->value() < zero_bound->value())) {
      zero_bound = b;
      zero_idx = static_cast<int>(i);
    }
  }
  if (zero_bound) {
    out.plan = Plan::Bounded;
    out.bound = *zero_bound;
    out.note.kind = CertificateKind::SearchedToTheoreticalBound;
    out.note.sequence = zero_idx;
    out.note.bound = *zero_bound;
    out.note.detail = "zero set bounded";
    return out;
  }

  const int base = static_cast<int>(zs.size());
  std::optional<Threshold> neg;
  int neg_idx = -1;
  bool neg_constant = false;
  Threshold pos = Threshold::exact(Integer(0));
  std::vector<std::pair<int, Shape>> arcs;
  bool unknown = zero_unknown;
  std::string why;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    Shape s = shape_of(ps[i]);
    switch (s.kind) {
      case Shape::Zero: break;
      case Shape::Real:
        if (s.sign < 0) {
          if (!neg || (s.threshold.is_exact() && (!neg->is_exact() || s.threshold.value() < neg->value()))) {
            neg = s.threshold;
            neg_idx = base + static_cast<int>(i);
            neg_constant = s.constant;
          }
        } else {
          pos = Threshold::max(pos, s.threshold);
        }
        break;
      case Shape::Arc: arcs.emplace_back(base + static_cast<int>(i), s); break;
      case Shape::Other:
        unknown = true;
        why = s.why;
        break;
    }
  }
  if (neg) {
    out.plan = neg_constant ? Plan::Excluded : Plan::Bounded;
    out.constant = neg_constant;
    out.bound = *neg;
    out.note.kind = neg_constant ? CertificateKind::CongruenceUnsat : CertificateKind::UltimatelyNegativeAll;
    out.note.sequence = neg_idx;
    out.note.bound = *neg;
    out.note.detail = neg_constant ? "negative constant" : "ultimately negative";
    return out;
  }
  if (unknown) {
    out.note.detail = why.empty() ? "zero constraint without an effective bound" : why;
    return out;
  }
  if (arcs.empty()) {
    out.plan = Plan::Guaranteed;
    out.bound = plus_one(pos);
    return out;
  }
  for (const auto& [idx, s] : arcs) {
    if (s.lambda != arcs.front().second.lambda) {
      out.note.detail = "sign constraints rotate at different angles";
      return out;
    }
  }
  ArcSystem sys;
  sys.lambda = arcs.front().second.lambda;
  bool exact = true;
  for (const auto& [idx, s] : arcs) {
    sys.constraints.emplace_back(s.a, -s.c);
    exact = exact && s.exact;
  }
  out.note.arcs = sys;
  out.note.arcs_exact = exact;
  std::vector<std::pair<Algebraic, Algebraic>> cons;
  ArcAnalysis an;
  if (!normalize_constraints(sys.constraints, cons)) an.shape = ArcShape::Empty;
  else an = analyze_arcs(cons);

  auto arcs_bound = [&]() {
    Threshold t = pos;
    for (const auto& [idx, s] : arcs) t = Threshold::max(t, arc_threshold(s));
    return t;
  };
  if (an.shape == ArcShape::Open) {
    out.plan = Plan::Infinite;
    out.note.detail = "arcs share an open interval";
    return out;
  }
  out.note.kind = an.shape == ArcShape::Empty ? CertificateKind::EmptyArcIntersection : CertificateKind::ArcPointNoPower;
  out.note.points = an.points;
  if (!exact) {
    try {
      out.bound = arcs_bound();
    } catch (const std::exception& ex) {
      out.note.detail = std::string("no arc threshold: ") + ex.what();
      return out;
    }
    out.plan = Plan::Bounded;
    out.note.bound = out.bound;
    out.note.detail = "open arcs disjoint past the threshold";
    return out;
  }
  if (an.shape == ArcShape::Empty) {
    out.plan = Plan::Excluded;
    out.note.detail = "closed arcs disjoint";
    return out;
  }
  // lambda^m must hit one of the points
  Integer worst = 0;
  for (const auto& z : an.points) {
    Integer b = power_equation_bound(sys.lambda, z);
    worst = std::max(worst, b);
    if (b > kCandidateSearch) {
      out.plan = Plan::Bounded;
      out.bound = Threshold::exact(b);
      out.note.bound = out.bound;
      return out;
    }
    if (auto m = solve_power_equation(sys.lambda, z, b.get_ui())) out.candidates.push_back(Integer(*m));
  }
  out.note.bound = Threshold::exact(worst);
  out.plan = out.candidates.empty() ? Plan::Excluded : Plan::Candidates;
  out.note.detail = out.candidates.empty() ? "no power of lambda reaches the arc points" : "isolated candidates";
  return out;
}

std::vector<Lrs> split_sequence(const Lrs& s, unsigned long l) {
  if (l == 1) return {s};
  std::size_t k = s.order();
  RatPoly cp = charpoly(mat_pow(to_companion(s).m, l));
  auto terms = lrs_terms(s, l * k);
  std::vector<Lrs> out;
  for (unsigned long r = 0; r < l; ++r) {
    std::vector<Rational> init;
    for (std::size_t i = 0; i < k; ++i) init.push_back(terms[r + l * i]);
    out.push_back(Lrs::from_char_poly(cp, init));
  }
  return out;
}

// Iterates a sequence term by term.
class Stepper {
 public:
  explicit Stepper(const Lrs& s) : rec_(s.recurrence), win_(s.initial) {}
  const Rational& value() const { return win_.front(); }
  void advance() {
    const std::size_t k = rec_.size();
    Rational next = 0;
    for (std::size_t i = 0; i < k; ++i) next += rec_[i] * win_[k - 1 - i];
    win_.erase(win_.begin());
    win_.push_back(next);
  }

 private:
  std::vector<Rational> rec_;
  std::vector<Rational> win_;
};

CertificateKind pick_kind(const std::vector<ClassResult>& cls, unsigned long l) {
  bool all_constant = true;
  for (const auto& c : cls) all_constant = all_constant && c.plan == Plan::Excluded && c.constant;
  if (all_constant) {
    if (l > 1) return CertificateKind::CongruenceUnsat;
    return cls.front().note.sequence >= 0 && cls.front().note.detail == "negative constant"
               ? CertificateKind::UltimatelyNegativeAll
               : CertificateKind::SearchedToTheoreticalBound;
  }
  for (CertificateKind k : {CertificateKind::EmptyArcIntersection, CertificateKind::ArcPointNoPower,
                            CertificateKind::UltimatelyNegativeAll, CertificateKind::SearchedToTheoreticalBound}) {
    for (const auto& c : cls) {
      if (!c.constant && c.note.kind == k) return k;
    }
  }
  return CertificateKind::SearchedToTheoreticalBound;
}


const char* plan_name(Plan p) {
  switch (p) {
    case Plan::Excluded: return "excluded";
    case Plan::Bounded: return "bounded";
    case Plan::Guaranteed: return "guaranteed";
    case Plan::Infinite: return "infinite";
    case Plan::Unknown: return "unknown";
    case Plan::Candidates: return "candidates";
  }
  return "?";
}

Decision lrs_engine(const LrsSystem& sys, const SearchOptions& opts, std::vector<std::string>& trace) {
  std::vector<Lrs> all = sys.zeros;
  all.insert(all.end(), sys.nonneg.begin(), sys.nonneg.end());
  if (all.empty()) return Decision::hit(Integer(0));
  const Integer cap = opts.max_n;

  std::vector<Algebraic> roots;
  for (const auto& s : all) {
    for (const auto& t : closed_form(s).terms) {
      if (t.is_zero()) continue;
      bool seen = false;
      for (const auto& r : roots) seen = seen || r == t.root.value;
      if (!seen) roots.push_back(t.root.value);
    }
  }
  unsigned long l = 1;
  bool split_ok = true;
  try {
    l = degeneracy_modulus(roots, opts.residue_cap);
    // keep every real root of the subsequences positive
    for (const auto& r : roots) {
      Algebraic p = l == 1 ? r : pow(r, static_cast<unsigned long>(l));
      if (p.is_real() && sign_real(p) < 0) {
        l *= 2;
        break;
      }
    }
    if (l > opts.residue_cap) throw std::range_error("modulus");
  } catch (const std::range_error&) {
    split_ok = false;
    l = 1;
  }

  std::vector<ClassResult> cls(l);
  if (split_ok) {
    std::vector<std::vector<Lrs>> parts;
    for (const auto& s : all) parts.push_back(split_sequence(s, l));
    auto work = [&](unsigned long r) {
      std::vector<Lrs> zs, ps;
      for (std::size_t i = 0; i < sys.zeros.size(); ++i) zs.push_back(parts[i][r]);
      for (std::size_t i = sys.zeros.size(); i < all.size(); ++i) ps.push_back(parts[i][r]);
      return analyze_class(zs, ps, r);
    };
    if (opts.jobs > 1 && l > 1) {
      for (unsigned long lo = 0; lo < l; lo += opts.jobs) {
        std::vector<std::future<ClassResult>> fut;
        for (unsigned long r = lo; r < std::min(l, lo + opts.jobs); ++r) fut.push_back(std::async(std::launch::async, work, r));
        for (unsigned long r = lo; r < std::min(l, lo + opts.jobs); ++r) cls[r] = fut[r - lo].get();
      }
    } else {
      for (unsigned long r = 0; r < l; ++r) cls[r] = work(r);
    }
  } else {
    cls[0].note.detail = "interleaving modulus exceeds the cap";
  }
  if (opts.trace) {
    trace.push_back("modulus " + std::to_string(l));
    for (unsigned long r = 0; r < l; ++r) {
      const ClassResult& c = cls[r];
      std::string line = "residue " + std::to_string(r) + " plan=" + plan_name(c.plan);
      if (c.plan == Plan::Bounded || c.plan == Plan::Guaranteed) line += " bound=" + c.bound.to_string();
      if (c.plan == Plan::Candidates) line += " candidates=" + std::to_string(c.candidates.size());
      if (!c.note.detail.empty()) line += " (" + c.note.detail + ")";
      trace.push_back(line);
    }
  }

  // search horizon
  Integer horizon = 0;
  bool complete = true;
  std::optional<Threshold> theory = Threshold::exact(Integer(0));
  std::optional<Integer> cand_hit;
  for (unsigned long r = 0; r < l; ++r) {
    const ClassResult& c = cls[r];
    switch (c.plan) {
      case Plan::Excluded: break;
      case Plan::Candidates:
        for (const auto& m : c.candidates) {
          Integer n = m * l + r;
          if (lrs_system_holds(sys, n) && (!cand_hit || n < *cand_hit)) cand_hit = n;
        }
        break;
      case Plan::Bounded:
      case Plan::Guaranteed: {
        Threshold g = to_global(c.bound, l, r);
        if (theory) theory = Threshold::max(*theory, g);
        if (g.at_most(cap)) horizon = std::max(horizon, g.value());
        else {
          horizon = cap;
          complete = false;
        }
        break;
      }
      case Plan::Infinite:
      case Plan::Unknown:
        horizon = cap;
        complete = false;
        theory.reset();
        break;
    }
  }
  if (cand_hit && *cand_hit < horizon) horizon = *cand_hit;

  const bool keep = horizon <= 200000;
  std::vector<int> violations;
  std::vector<Stepper> steps;
  for (const auto& s : all) steps.emplace_back(s);
  const std::size_t nz = sys.zeros.size();
  for (Integer n = 0; n <= horizon; ++n) {
    int bad = -1;
    for (std::size_t i = 0; i < all.size() && bad < 0; ++i) {
      int sg = sgn(steps[i].value());
      if (i < nz ? sg != 0 : sg < 0) bad = static_cast<int>(i);
    }
    if (bad < 0) {
      // sanity: the class analysis must allow a witness here
      const ClassResult& c = cls[split_ok ? Integer(n % l).get_ui() : 0];
      Integer m = n / l;
      if (split_ok && (c.plan == Plan::Excluded ||
                       (c.plan == Plan::Bounded && c.bound.is_exact() && m > c.bound.value())))
        throw std::logic_error("simpos engine: witness in a class proved empty");
      Decision d = Decision::hit(n);
      d.searched_up_to = n;
      return d;
    }
    if (keep) violations.push_back(bad);
    for (auto& st : steps) st.advance();
  }
  if (cand_hit) return Decision::hit(*cand_hit);
  for (unsigned long r = 0; r < l; ++r) {
    if (cls[r].plan == Plan::Guaranteed && complete)
      throw std::logic_error("simpos engine: guaranteed witness not found");
  }
  if (complete) {
    Certificate cert;
    cert.modulus = l;
    cert.kind = pick_kind(cls, l);
    for (const auto& c : cls) {
      cert.residues.push_back(c.note);
      if (c.constant && l == 1) cert.residues.back().kind = cert.kind;
    }
    cert.searched_up_to = horizon;
    cert.violations = std::move(violations);
    return Decision::never(std::move(cert));
  }
  std::string note;
  for (unsigned long r = 0; r < l; ++r) {
    if (cls[r].plan == Plan::Infinite) note = "residue " + std::to_string(r) + ": witnesses exist beyond the search cap";
  }
  if (note.empty()) {
    for (unsigned long r = 0; r < l; ++r) {
      if (cls[r].plan == Plan::Unknown) {
        note = "residue " + std::to_string(r) + ": " + cls[r].note.detail;
        break;
      }
    }
  }
  return Decision::inconclusive(horizon, theory, note);
}

}  // namespace

Decision decide_lrs_system(const LrsSystem& sys, const SearchOptions& opts) {
  std::vector<std::string> trace;
  Decision d = lrs_engine(sys, opts, trace);
  d.trace = std::move(trace);
  return d;
}

RatPoly effective_char_poly(const SimposInstance& inst) {
  RatPoly e = RatPoly::constant(Rational(1));
  for (std::size_t i = 0; i < inst.size(); ++i) e = lcm(e, minimal_annihilator(closed_form(inst.sequence(i))));
  return e;
}

bool in_simpos_fragment(const SimposInstance& inst) {
  RatPoly e = effective_char_poly(inst);
  if (e.degree() <= 3) return true;
  if (e.degree() > 4) return false;
  for (const auto& [r, mult] : isolate_roots(e)) {
    if (r.is_real()) return true;
  }
  return false;
}

Decision decide_simpos(const SimposInstance& inst, const SearchOptions& opts) {
  if (inst.size() == 0) return Decision::hit(Integer(0));
  if (!in_simpos_fragment(inst)) {
    RatPoly e = effective_char_poly(inst);
    return Decision::unsupported("OutOfFragment", "effective order " + std::to_string(e.degree()) +
                                                      (e.degree() == 4 ? " without a real root" : ""));
  }
  LrsSystem sys;
  for (std::size_t i = 0; i < inst.size(); ++i) sys.nonneg.push_back(inst.sequence(i));
  return decide_lrs_system(sys, opts);
}

}  // namespace orbitkit
