#include "doctest.h"
#include "orbitkit/lrs.hpp"
#include "support.hpp"

using namespace orbitkit;
using testing_support::Q;
using testing_support::Rng;

namespace {

Lrs fib() { return Lrs({Q(1), Q(1)}, {Q(0), Q(1)}); }

Lrs random_lrs(Rng& rng, std::size_t k) {
  std::vector<Rational> rec(k), init(k);
  for (auto& r : rec) r = rng.rat(4);
  if (rec.back() == 0) rec.back() = 1;
  for (auto& v : init) v = rng.rat(4);
  return Lrs(rec, init);
}

}  // namespace

TEST_CASE("evaluation") {
  CHECK(lrs_eval(fib(), 10ul) == 55);
  CHECK(lrs_eval(Lrs({Q(2)}, {Q(1)}), 20ul) == 1048576);
  auto t = lrs_terms(fib(), 8);
  CHECK(t == std::vector<Rational>{0, 1, 1, 2, 3, 5, 8, 13});
  CHECK_THROWS_AS(Lrs({Q(1), Q(0)}, {Q(1), Q(1)}), std::invalid_argument);
}

TEST_CASE("triples and companion round trip") {
  Lrs s = lrs_from_triple({Q(1)}, RatMatrix({{Q(2)}}), {Q(1)});
  CHECK(s.recurrence == std::vector<Rational>{Q(2)});
  CHECK(s.initial == std::vector<Rational>{Q(1)});
  Rng rng(12);
  for (int it = 0; it < 20; ++it) {
    RatMatrix m = rng.mat(3, 3);
    RatVector v = rng.vec(3, 3), w = rng.vec(3, 3);
    ShiftedLrs sh = lrs_from_triple_shifted(v, m, w);
    for (unsigned long n = 0; n <= 50; ++n) {
      Rational direct = dot(v, mat_pow(m, n) * w);
      Rational via = n < sh.shift() ? sh.prefix[n] : lrs_eval(sh.tail, n - sh.shift());
      CHECK(direct == via);
    }
    Lrs r = random_lrs(rng, 4);
    CompanionTriple c = to_companion(r);
    auto terms = lrs_terms(r, 41);
    for (unsigned long n = 0; n <= 40; ++n) CHECK(dot(c.v, mat_pow(c.m, n) * c.w) == terms[n]);
  }
  CompanionTriple f = to_companion(Lrs({Q(2)}, {Q(3)}));
  CHECK(f.m == RatMatrix({{Q(2)}}));
}

TEST_CASE("characteristic roots") {
  auto r = char_roots(fib());
  REQUIRE(r.size() == 2);
  for (auto& cr : r) {
    CHECK(cr.multiplicity == 1);
    CHECK(cr.value.min_poly() == RatPoly(std::vector<Rational>{Q(-1), Q(-1), Q(1)}));
  }
  auto d = char_roots(Lrs({Q(2), Q(-1)}, {Q(0), Q(1)}));
  REQUIRE(d.size() == 1);
  CHECK(d[0].multiplicity == 2);
  CHECK(d[0].value == Algebraic(1));
  // (x - l)^2 (x - conj l)^2, l = (3+4i)/5:  (x^2 - 6/5 x + 1)^2
  RatPoly q(std::vector<Rational>{Q(1), Q(-6, 5), Q(1)});
  Lrs h = Lrs::from_char_poly(q * q, {Q(1), Q(0), Q(0), Q(0)});
  auto hr = char_roots(h);
  REQUIRE(hr.size() == 2);
  CHECK(hr[0].multiplicity == 2);
  CHECK(hr[0].value == conj(hr[1].value));
}

TEST_CASE("closed form") {
  ClosedForm two = closed_form(Lrs({Q(2)}, {Q(1)}));
  REQUIRE(two.terms.size() == 1);
  CHECK(two.terms[0].coeff[0] == Algebraic(1));
  // Binet: coefficients +-1/sqrt 5
  ClosedForm f = closed_form(fib());
  Algebraic inv5 = Algebraic(1) / sqrt(Algebraic(5));
  for (auto& t : f.terms) CHECK((t.coeff[0] == inv5 || t.coeff[0] == -inv5));
  // exact closed form against iteration for random sequences of order <= 4
  Rng rng(31);
  for (int it = 0; it < 20; ++it) {
    Lrs s = random_lrs(rng, static_cast<std::size_t>(rng.uniform(1, 4)));
    ClosedForm cf = closed_form(s);
    auto terms = lrs_terms(s, 101);
    for (unsigned long n = 0; n <= 100; n += 7) CHECK(closed_form_eval(cf, Integer(n)) == terms[n]);
  }
}

TEST_CASE("the displayed hardness sequence has coefficients (A -+ i n)/2") {
  // S1(n) = 1/2((A - i n) l^n + (A + i n) conj(l)^n), A = 1, l = (3+4i)/5
  RatPoly q(std::vector<Rational>{Q(1), Q(-6, 5), Q(1)});
  std::vector<Rational> init;
  Rational cr = 1, ci = 0;
  for (int n = 0; n < 4; ++n) {
    init.push_back(cr + Rational(n) * ci);
    Rational t = cr * Q(3, 5) - ci * Q(4, 5);
    ci = cr * Q(4, 5) + ci * Q(3, 5);
    cr = t;
  }
  ClosedForm cf = closed_form(Lrs::from_char_poly(q * q, init));
  Algebraic l = Algebraic::gaussian(Q(3, 5), Q(4, 5));
  bool seen = false;
  for (auto& t : cf.terms) {
    if (t.root.value != l) continue;
    seen = true;
    REQUIRE(t.coeff.size() == 2);
    CHECK(t.coeff[0] == Algebraic(Q(1, 2)));
    CHECK(t.coeff[1] == Algebraic::gaussian(0, Q(-1, 2)));
  }
  CHECK(seen);
}

TEST_CASE("non-degenerate split") {
  // 1 + (-1)^n
  SplitResult a = nondegenerate_split(Lrs({Q(0), Q(1)}, {Q(2), Q(0)}));
  CHECK(a.modulus == 2);
  CHECK(lrs_terms(a.subsequences[0], 3) == std::vector<Rational>{2, 2, 2});
  CHECK(lrs_terms(a.subsequences[1], 3) == std::vector<Rational>{0, 0, 0});
  CHECK(nondegenerate_split(fib()).modulus == 1);
  // roots +-i
  Lrs rot({Q(0), Q(-1)}, {Q(0), Q(1)});
  SplitResult b = nondegenerate_split(rot);
  CHECK(b.modulus == 4);
  auto whole = lrs_terms(rot, 40);
  for (unsigned long j = 0; j < 4; ++j) {
    auto sub = lrs_terms(b.subsequences[j], 10);
    for (unsigned long m = 0; m < 10; ++m) CHECK(sub[m] == whole[m * 4 + j]);
  }
}

TEST_CASE("dominant roots and the shrink bound") {
  // 2^n + 1
  Lrs s({Q(3), Q(-2)}, {Q(2), Q(3)});
  DominantAnalysis d = dominant_analysis(s);
  REQUIRE(d.dominant.size() == 1);
  CHECK(d.dominant[0].value == Algebraic(2));
  REQUIRE(d.bound.threshold.is_exact());
  unsigned long n0 = d.bound.threshold.value().get_ui();
  Rational one_minus = 1 - d.bound.epsilon;
  for (unsigned long n = n0 + 1; n <= n0 + 1000; n += 37) {
    // r(n) / 2^n = 1 / 2^n
    CHECK(Rational(1) / pow(Rational(2), n) < pow(one_minus, n));
  }
  DominantAnalysis f = dominant_analysis(fib());
  REQUIRE(f.dominant.size() == 1);
  CHECK(sign_real(f.dominant[0].value) == 1);
  // roots (3 +- 4i)/5 and 1/2
  RatPoly q(std::vector<Rational>{Q(1), Q(-6, 5), Q(1)});
  Lrs m = Lrs::from_char_poly(q * RatPoly::linear_root(Q(1, 2)), {Q(1), Q(2), Q(3)});
  DominantAnalysis dm = dominant_analysis(m);
  CHECK(dm.dominant.size() == 2);
  for (auto& r : dm.dominant) CHECK(on_unit_circle(r.value));
}
