#include "doctest.h"
#include "orbitkit/bounds.hpp"
#include "support.hpp"

#include <cmath>

using namespace orbitkit;
using testing_support::Q;
using testing_support::Rng;

namespace {

// log A and log B below e count as 1
BakerQuery unit_query(unsigned m, unsigned d) {
  BakerQuery q;
  for (unsigned j = 0; j < m; ++j) {
    q.alphas.push_back(Algebraic(j % 2 ? Q(1, 2) : Q(2)));
    q.height_bounds.push_back(Q(2));
  }
  q.coeff_bound = 2;
  q.field_degree = d;
  return q;
}

Rational power(const Rational& b, unsigned long n) {
  Rational r = 1;
  for (unsigned long i = 0; i < n; ++i) r *= b;
  return r;
}

}  // namespace

TEST_CASE("baker constant by direct substitution") {
  // (16 m d)^(2(m+2)) with every log equal to 1
  CHECK(baker_lower_bound(unit_query(1, 1)) == -Rational(16777216));
  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 64, 8);
  CHECK(baker_lower_bound(unit_query(2, 2)) == -Rational(big));
  BakerQuery bad = unit_query(1, 1);
  bad.alphas[0] = Algebraic(1);
  CHECK_THROWS(baker_lower_bound(bad));
  bad.alphas[0] = Algebraic(0);
  CHECK_THROWS(baker_lower_bound(bad));
}

TEST_CASE("baker bound is monotone in every parameter") {
  BakerQuery q = unit_query(2, 2);
  q.height_bounds = {Q(10), Q(20)};
  q.coeff_bound = 100;
  Rational base = baker_lower_bound(q);
  CHECK(base < 0);
  BakerQuery b = q;
  b.coeff_bound = 200;
  Rational bb = baker_lower_bound(b);
  CHECK(bb < base);
  // ratio is log(200)/log(100) up to the upward rounding of both logs
  CHECK(bb / base > Q(114, 100));
  CHECK(bb / base < Q(116, 100));
  b = q;
  b.height_bounds[1] = 40;
  CHECK(baker_lower_bound(b) < base);
  b = q;
  b.field_degree = 3;
  CHECK(baker_lower_bound(b) < base);
  b = q;
  b.alphas.push_back(Algebraic(7));
  b.height_bounds.push_back(Q(7));
  CHECK(baker_lower_bound(b) < base);
}

TEST_CASE("two-term Skolem bound") {
  Threshold t = skolem_bound_two(Algebraic(2), Algebraic(3), Algebraic(-3), Algebraic(2));
  // exhaustive search over exact values finds n = 1 only
  std::vector<unsigned long> sols;
  for (unsigned long n = 0; n <= 100; ++n)
    if (2 * power(3, n) - 3 * power(2, n) == 0) sols.push_back(n);
  CHECK(sols == std::vector<unsigned long>{1});
  CHECK(!t.at_most(Integer(0)));

  Threshold none = skolem_bound_two(Algebraic(1), Algebraic(2), Algebraic(1), Algebraic(3));
  unsigned long cap = none.at_most(Integer(200)) ? none.value().get_ui() : 200;
  for (unsigned long n = 0; n <= cap; ++n) CHECK(power(2, n) + power(3, n) != 0);

  CHECK_THROWS(skolem_bound_two(Algebraic(1), Algebraic(2), Algebraic(1), Algebraic(-2)));
  Algebraic i = Algebraic::gaussian(0, 1);
  CHECK_THROWS(skolem_bound_two(Algebraic(1), i, Algebraic(1), Algebraic(1)));
}

TEST_CASE("planted two-term solutions lie below the bound") {
  Rng rng(5);
  for (int it = 0; it < 100; ++it) {
    Rational alpha = rng.nonzero_rat(6), beta = rng.nonzero_rat(6);
    if (alpha == beta || alpha == -beta) continue;
    unsigned long planted = static_cast<unsigned long>(rng.uniform(0, 20));
    Rational a = rng.nonzero_rat(5);
    Rational b = -a * power(alpha / beta, planted);
    REQUIRE(a * power(alpha, planted) + b * power(beta, planted) == 0);
    Threshold t = skolem_bound_two(Algebraic(a), Algebraic(alpha), Algebraic(b), Algebraic(beta));
    CHECK(!t.at_most(Integer(planted) - 1));
  }
  // a complex pair: A l^n + B conj(l)^n with |l| = 5
  Algebraic l = Algebraic::gaussian(3, 4);
  Algebraic b = -pow(l / conj(l), 7ul);
  Threshold t = skolem_bound_two(Algebraic(1), l, b, conj(l));
  CHECK(!t.at_most(Integer(6)));
}

TEST_CASE("three-term Skolem bound") {
  Threshold t = skolem_bound_three(SkolemCase::Distinct, Algebraic(1), Algebraic(3), Algebraic(-2), Algebraic(2),
                                   Algebraic(1), Algebraic(1));
  std::vector<unsigned long> sols;
  for (unsigned long n = 0; n <= 100; ++n)
    if (power(3, n) - 2 * power(2, n) + 1 == 0) sols.push_back(n);
  CHECK(sols == std::vector<unsigned long>{0, 1});
  CHECK(!t.at_most(Integer(0)));

  Threshold r = skolem_bound_three(SkolemCase::Repeated, Algebraic(0), Algebraic(3), Algebraic(1), Algebraic(2),
                                   Algebraic(0), Algebraic(1));
  CHECK(r.log2_ceiling() < 64);

  Threshold pos = skolem_bound_three(SkolemCase::Distinct, Algebraic(1), Algebraic(2), Algebraic(1), Algebraic(3),
                                     Algebraic(1), Algebraic(5));
  unsigned long cap = pos.at_most(Integer(200)) ? pos.value().get_ui() : 200;
  for (unsigned long n = 0; n <= cap; ++n) CHECK(power(2, n) + power(3, n) + power(5, n) != 0);

  CHECK_THROWS(skolem_bound_three(SkolemCase::Distinct, Algebraic(1), Algebraic(2), Algebraic(1), Algebraic(-2),
                                  Algebraic(1), Algebraic(5)));
}

TEST_CASE("log growth threshold") {
  // n - 10 log(n + 1) > 0 from the returned N on
  Threshold t = solve_log_growth(1, 10, 1, 0);
  REQUIRE(t.is_exact());
  unsigned long n0 = t.value().get_ui();
  for (unsigned long n = n0; n < n0 + 2000; ++n) CHECK(double(n) - 10 * std::log(double(n + 1)) > 0);
}

TEST_CASE("power equations") {
  Algebraic l = Algebraic::gaussian(3, 4);
  Algebraic z = pow(l, 9ul);
  Integer b = power_equation_bound(l, z);
  CHECK(b >= 9);
  auto s = solve_power_equation(l, z, b.get_ui());
  REQUIRE(s);
  CHECK(*s == 9);
  CHECK(!solve_power_equation(l, conj(z), b.get_ui()));
  CHECK(log_height_lower(Algebraic(2)) <= log_height_upper(Algebraic(2)));
  CHECK_THROWS(log_height_lower(Algebraic::gaussian(0, 1)));
}

TEST_CASE("cosine-exponential threshold holds on a window past N") {
  Algebraic l = Algebraic::gaussian(Q(3, 5), Q(4, 5));
  struct Case {
    Algebraic a, c, chi;
  };
  std::vector<Case> cases = {{Algebraic(1), Algebraic(2), Algebraic(Q(1, 2))},
                             {Algebraic(1), Algebraic(0), Algebraic(Q(1, 2))},
                             {l, Algebraic(Q(1, 3)), Algebraic(Q(-9, 10))}};
  for (const auto& cs : cases) {
    Threshold t = cos_exp_threshold(cs.a, l, cs.c, cs.chi);
    Integer start = t.is_exact() ? t.value() : Integer(1) << t.log2_ceiling();
    for (unsigned long j = 1; j <= 1000; ++j) {
      int r = cos_exp_check(cs.a, l, cs.c, cs.chi, start + j, 100);
      if (r == 0) r = cos_exp_check(cs.a, l, cs.c, cs.chi, start + j, 400);
      CHECK(r == 1);
    }
  }
  // chi = 0: threshold 0
  CHECK(cos_exp_threshold(Algebraic(1), l, Algebraic(0), Algebraic(0)).at_most(Integer(0)));
  CHECK_THROWS(cos_exp_threshold(Algebraic(1), Algebraic::gaussian(0, 1), Algebraic(0), Algebraic(Q(1, 2))));
  CHECK_THROWS(cos_exp_threshold(Algebraic(1), l, Algebraic(0), Algebraic(1)));
}

TEST_CASE("threshold representation") {
  Threshold e = Threshold::exact(Integer(1000));
  CHECK(e.is_exact());
  CHECK(e.log2_ceiling() == 10);
  CHECK(e.at_most(Integer(1000)));
  CHECK(!e.at_most(Integer(999)));
  Threshold p = Threshold::pow2(200);
  CHECK(!p.is_exact());
  CHECK_THROWS(p.value());
  CHECK(Threshold::max(e, p).log2_ceiling() == 200);
}
