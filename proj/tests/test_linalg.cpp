#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "orbitkit/linalg.hpp"
#include "support.hpp"

using namespace orbitkit;
using testing_support::Q;
using testing_support::Rng;

namespace {

// Leibniz expansion: independent of elimination.
Rational leibniz(const RatMatrix& a) {
  std::size_t n = a.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational total = 0;
  do {
    Rational term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= a(i, p[i]);
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
    total += inv % 2 ? Rational(-term) : term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

bool is_zero_matrix(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!is_zero_vector(m.row(i))) return false;
  return true;
}

}  // namespace

TEST_CASE("determinant and inverse against Leibniz") {
  Rng rng(3);
  for (int it = 0; it < 40; ++it) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    RatMatrix a = rng.mat(n, 4);
    CHECK(determinant(a) == leibniz(a));
    auto inv = inverse(a);
    CHECK(inv.has_value() == (leibniz(a) != 0));
    if (inv) CHECK(a * *inv == RatMatrix::identity(n));
    // charpoly(t) = det(tI - A) at a few rational points
    RatPoly cp = charpoly(a);
    for (long t = -2; t <= 2; ++t) CHECK(cp.eval(Rational(t)) == leibniz(Rational(t) * RatMatrix::identity(n) - a));
  }
}

TEST_CASE("minimal polynomial annihilates and divides the characteristic polynomial") {
  Rng rng(5);
  for (int it = 0; it < 30; ++it) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    RatMatrix a = rng.mat(n, 3);
    if (it % 3 == 0) a = a * a - a;  // more structure
    RatPoly mu = minimal_polynomial(a);
    CHECK(is_zero_matrix(poly_eval(mu, a)));
    CHECK(divides(mu, charpoly(a)));
    RatVector v = rng.vec(n, 3);
    RatPoly loc = local_minimal_polynomial(a, v);
    CHECK(is_zero_vector(poly_eval(loc, a) * v));
    CHECK(divides(loc, mu));
  }
  // diag(2,2,3): minimal polynomial (x-2)(x-3)
  RatMatrix d(3, 3);
  d(0, 0) = 2, d(1, 1) = 2, d(2, 2) = 3;
  CHECK(minimal_polynomial(d) == RatPoly::linear_root(2) * RatPoly::linear_root(3));
}

TEST_CASE("mat_pow matches repeated multiplication") {
  Rng rng(8);
  RatMatrix a = rng.mat(3, 3);
  RatMatrix acc = RatMatrix::identity(3);
  for (unsigned long n = 0; n <= 12; ++n) {
    CHECK(mat_pow(a, n) == acc);
    acc = acc * a;
  }
}

TEST_CASE("linear solve and nullspace") {
  RatMatrix m({{Q(1), Q(2), Q(3)}, {Q(2), Q(4), Q(6)}, {Q(1), Q(0), Q(1)}});
  CHECK(rank(m) == 2);
  auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  CHECK(is_zero_vector(m * ns[0]));
  auto sol = solve_linear(m, {Q(6), Q(12), Q(2)});
  REQUIRE(sol);
  CHECK(m * sol->particular == RatVector{Q(6), Q(12), Q(2)});
  CHECK_FALSE(solve_linear(m, {Q(1), Q(1), Q(1)}));
}

TEST_CASE("companion matrix has the given characteristic polynomial") {
  RatPoly f(std::vector<Rational>{Q(6), Q(-5), Q(-2), Q(1)});
  CHECK(charpoly(companion(f)) == f);
  CHECK(minimal_polynomial(companion(f)) == f);
}
