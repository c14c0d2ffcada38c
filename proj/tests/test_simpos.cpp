#include "doctest.h"
#include "orbitkit/simpos.hpp"
#include "support.hpp"

#include <cmath>
#include <complex>
#include <optional>

using namespace orbitkit;
using testing_support::Q;
using testing_support::Rng;

namespace {

// Terms by plain iteration, stopping at the first n where all are >= 0.
std::optional<unsigned long> brute(const SimposInstance& inst, unsigned long limit) {
  std::size_t k = inst.order();
  std::vector<std::vector<Rational>> w = inst.initial;
  for (unsigned long n = 0; n <= limit; ++n) {
    bool ok = true;
    for (auto& s : w) ok = ok && s[0] >= 0;
    if (ok) return n;
    for (auto& s : w) {
      Rational next = 0;
      for (std::size_t i = 0; i < k; ++i) next += inst.recurrence[i] * s[k - 1 - i];
      s.erase(s.begin());
      s.push_back(next);
    }
  }
  return std::nullopt;
}

RatPoly poly(std::vector<long> c) {
  std::vector<Rational> r;
  for (long v : c) r.push_back(v);
  return RatPoly(r);
}

SimposInstance from_poly(const RatPoly& f, const std::vector<std::vector<Rational>>& init) {
  Lrs s = Lrs::from_char_poly(f, init[0]);
  return SimposInstance(s.recurrence, init);
}

void check_against_brute(const SimposInstance& inst, unsigned long limit, int& hits, int& nevers) {
  SearchOptions o;
  o.max_n = 20000;
  Decision d = decide_simpos(inst, o);
  auto b = brute(inst, limit);
  if (d.kind == DecisionKind::Hit) {
    REQUIRE(d.witness);
    CHECK(verify_simultaneous(inst, *d.witness));
    if (b) CHECK(*d.witness == *b);
    ++hits;
  }
  if (b) CHECK(d.kind != DecisionKind::NeverHits);
  if (d.kind == DecisionKind::NeverHits) {
    CHECK(!b);
    ++nevers;
  }
}

}  // namespace

TEST_CASE("exact verification") {
  SimposInstance c({Q(1)}, {{Q(1)}, {Q(2)}});
  for (long n : {0, 1, 17, 1000}) CHECK(verify_simultaneous(c, Integer(n)));
  SimposInstance neg({Q(1)}, {{Q(-1)}});
  CHECK(!verify_simultaneous(neg, Integer(3)));

  Rng rng(8);
  for (int it = 0; it < 10; ++it) {
    std::vector<Rational> rec = {Q(rng.uniform(-3, 3)), Q(rng.uniform(-3, 3)), Q(rng.uniform(1, 3))};
    SimposInstance p(rec, {rng.vec(3, 3), rng.vec(3, 3)});
    // iterate to 1000 directly
    bool all = true;
    for (std::size_t j = 0; j < 2; ++j) {
      std::vector<Rational> w = p.initial[j];
      for (int n = 0; n < 1000; ++n) {
        Rational next = rec[0] * w[2] + rec[1] * w[1] + rec[2] * w[0];
        w.erase(w.begin());
        w.push_back(next);
      }
      all = all && w[0] >= 0;
    }
    CHECK(verify_simultaneous(p, Integer(1000)) == all);
  }
  CHECK_THROWS(SimposInstance({Q(1), Q(1)}, {{Q(1)}}));
}

TEST_CASE("arc systems") {
  Algebraic l = Algebraic::gaussian(Q(3, 5), Q(4, 5));
  ArcSystem always{l, {{Algebraic(1), Algebraic(-2)}}};
  Decision d = arc_system_decide(always);
  CHECK(d.kind == DecisionKind::Hit);
  CHECK(*d.witness == 0);

  // cos(n phi) >= 1/2 and cos(pi + n phi) >= 1/2
  ArcSystem empty{l, {{Algebraic(1), Algebraic(Q(1, 2))}, {Algebraic(-1), Algebraic(Q(1, 2))}}};
  Decision e = arc_system_decide(empty);
  CHECK(e.kind == DecisionKind::NeverHits);
  REQUIRE(e.certificate);
  CHECK(e.certificate->kind == CertificateKind::EmptyArcIntersection);
  CHECK(verify_empty_arcs(empty));

  ArcSystem narrow{l, {{Algebraic(1), Algebraic(Q(9, 10))}}};
  Decision h = arc_system_decide(narrow);
  REQUIRE(h.kind == DecisionKind::Hit);
  // least n <= 10^4 with cos(n phi) >= 9/10, by floating point with a margin
  double phi = std::atan2(0.8, 0.6);
  long first = -1;
  for (long n = 0; n <= 10000 && first < 0; ++n)
    if (std::cos(n * phi) >= 0.9 + 1e-9) first = n;
  REQUIRE(first >= 0);
  CHECK(*h.witness <= first);
  CHECK(arc_holds(narrow, *h.witness));

  // c > 1 is never satisfied
  ArcSystem high{l, {{Algebraic(1), Algebraic(Q(11, 10))}}};
  CHECK(arc_system_decide(high).kind == DecisionKind::NeverHits);
  ArcSystem bad{Algebraic::gaussian(0, 1), {{Algebraic(1), Algebraic(0)}}};
  CHECK_THROWS(arc_system_decide(bad));
}

TEST_CASE("worked instances") {
  // 2^n - 3
  SimposInstance a({Q(3), Q(-2)}, {{Q(-2), Q(-1)}});
  Decision d = decide_simpos(a);
  REQUIRE(d.kind == DecisionKind::Hit);
  CHECK(*d.witness == 2);
  CHECK(*brute(a, 100) == 2);

  SimposInstance b({Q(1)}, {{Q(-1)}, {Q(5)}});
  Decision n = decide_simpos(b);
  REQUIRE(n.kind == DecisionKind::NeverHits);
  CHECK(n.certificate->kind == CertificateKind::UltimatelyNegativeAll);

  // 1 + (-1)^n - 1/2 and -(1 + (-1)^n) + 1/2: residues disagree
  SimposInstance alt({Q(0), Q(1)}, {{Q(3, 2), Q(-1, 2)}, {Q(-3, 2), Q(1, 2)}});
  Decision c = decide_simpos(alt);
  REQUIRE(c.kind == DecisionKind::NeverHits);
  REQUIRE(c.certificate);
  CHECK(c.certificate->modulus == 2);
  CHECK(!brute(alt, 200));

  // order 5 is out of range
  SimposInstance five({Q(1), Q(0), Q(0), Q(0), Q(1)}, {{Q(1), Q(0), Q(0), Q(0), Q(0)}});
  CHECK(decide_simpos(five).kind == DecisionKind::Unsupported);
}

TEST_CASE("order four with a complex dominant pair and a real root") {
  // roots 3 +- 4i, 1, 2
  RatPoly f = poly({25, -6, 1}) * poly({-1, 1}) * poly({-2, 1});
  Rng rng(41);
  int hits = 0, nevers = 0;
  for (int it = 0; it < 25; ++it) {
    std::vector<std::vector<Rational>> init;
    for (int j = 0; j < 2; ++j) {
      std::vector<Rational> v;
      for (int t = 0; t < 4; ++t) v.push_back(Q(rng.uniform(-9, 9)));
      init.push_back(v);
    }
    check_against_brute(from_poly(f, init), 10000, hits, nevers);
  }
  CHECK(hits > 0);
}

TEST_CASE("random in-fragment instances agree with the oracle") {
  Rng rng(2024);
  int hits = 0, nevers = 0, total = 0;
  for (int it = 0; it < 150; ++it) {
    std::size_t k = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<Rational> rec(k);
    for (auto& r : rec) r = Q(rng.uniform(-3, 3));
    if (rec.back() == 0) rec.back() = 1;
    std::size_t count = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<std::vector<Rational>> init(count);
    for (auto& v : init)
      for (std::size_t t = 0; t < k; ++t) v.push_back(Q(rng.uniform(-5, 5)));
    SimposInstance inst(rec, init);
    REQUIRE(in_simpos_fragment(inst));
    check_against_brute(inst, 2000, hits, nevers);
    ++total;
  }
  MESSAGE("hits " << hits << " never " << nevers << " of " << total);
  CHECK(hits > 20);
  CHECK(nevers > 20);
}

TEST_CASE("residue split has the same answers as the whole") {
  // 2^n (1 + (-1)^n) - 3 n: even residue grows, odd residue is negative
  RatPoly f = poly({-2, 1}) * poly({2, 1}) * poly({-1, 1}) * poly({-1, 1});
  std::vector<Rational> init;
  for (long n = 0; n < 4; ++n) init.push_back(Q((1L << n) * (1 + (n % 2 ? -1 : 1)) - 3 * n));
  SimposInstance inst = from_poly(f, {init});
  Decision d = decide_simpos(inst);
  auto b = brute(inst, 100);
  REQUIRE(b);
  REQUIRE(d.kind == DecisionKind::Hit);
  CHECK(*d.witness == *b);
}
