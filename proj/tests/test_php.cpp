#include "doctest.h"
#include "orbitkit/php.hpp"
#include "support.hpp"

#include <complex>

using namespace orbitkit;
using testing_support::eo_first_hit;
using testing_support::orbit_first_hit;
using testing_support::Q;
using testing_support::Rng;

namespace {

HPolyhedron halfspaces(std::size_t m, std::vector<std::pair<RatVector, Rational>> hs) {
  HPolyhedron p;
  p.ambient_dim = m;
  for (auto& [v, c] : hs) p.add(v, c);
  return p;
}

// Box of half-width w around y.
HPolyhedron box(const RatVector& y, const Rational& w) {
  HPolyhedron p;
  p.ambient_dim = y.size();
  for (std::size_t i = 0; i < y.size(); ++i) {
    RatVector e(y.size());
    e[i] = 1;
    p.add(e, y[i] - w);
    e[i] = -1;
    p.add(e, -y[i] - w);
  }
  return p;
}

PhpInstance random_instance(Rng& rng, std::size_t m, std::size_t k, std::size_t extra) {
  return PhpInstance(rng.mat(m, 3), rng.vec(m, 3), testing_support::random_polyhedron(rng, m, k, extra));
}

RatMatrix transported(const RatMatrix& b, const ExtendedOrbitInstance& e) {
  return e.lift.rows() == 0 ? b : b * e.lift;
}

// Cells of the complexity table, read off row by row for m, k <= 6.
std::string table(int m, int k) {
  if (k == 0) return "Decidable(P)";
  if (k <= 2) return "Decidable(PSPACE)";
  if (k == 3) return m == 3 ? "Decidable(PSPACE)" : "SkolemHard(5)";
  if (m == k) return "DiophantineHard";
  return "Both(D,S" + std::to_string(k + 1) + ")";
}

}  // namespace

TEST_CASE("classification table") {
  for (int m = 1; m <= 6; ++m)
    for (int k = 0; k <= m; ++k) CHECK_MESSAGE(classify(m, k).to_string() == table(m, k), "m=" << m << " k=" << k);
  CHECK(classify(3, 2).to_string() == "Decidable(PSPACE)");
  CHECK(classify(4, 3).to_string() == "SkolemHard(5)");
  CHECK(classify(5, 4).to_string() == "Both(D,S5)");
  CHECK(classify(0, 0).decidable());
  CHECK_THROWS_AS(classify(2, 3), std::invalid_argument);
}

TEST_CASE("one-dimensional reduction") {
  // the line t2 = 0 in Q^2 restricted to 3 <= t1 <= 5
  RatMatrix a({{Q(2), Q(0)}, {Q(0), Q(1)}});
  HPolyhedron seg;
  seg.ambient_dim = 2;
  seg.add_equality({Q(0), Q(1)}, 0);
  seg.add({Q(1), Q(0)}, 3);
  seg.add({Q(-1), Q(0)}, -5);
  PhpInstance s(a, {Q(1), Q(0)}, seg);
  REQUIRE(s.k() == 1);
  ExtendedOrbitInstance e = reduce_k1(s);
  // B acts on the original coefficients; the instance carries it through lift
  CHECK(e.b == transported(RatMatrix({{Q(0), Q(1)}, {Q(1), Q(-1)}}), e));
  CHECK(eo_first_hit(e, 10) == orbit_first_hit(a, s.x, seg, 10));
  Decision d = decide_php(s);
  REQUIRE(d.kind == DecisionKind::Hit);
  CHECK(*d.witness == 2);

  HPolyhedron ray;
  ray.ambient_dim = 2;
  ray.add_equality({Q(0), Q(1)}, 0);
  ray.add({Q(1), Q(0)}, 3);
  ExtendedOrbitInstance r = reduce_k1(PhpInstance(a, {Q(1), Q(0)}, ray));
  CHECK(r.b == transported(RatMatrix({{Q(0), Q(1)}}), r));

  CHECK_THROWS(reduce_k1(PhpInstance(a, {Q(1), Q(0)}, halfspaces(2, {{{Q(1), Q(0)}, 3}}))));
}

TEST_CASE("two-dimensional reduction") {
  // triangle t1, t2 >= 0, t1 + t2 <= 1 in the plane t3 = 0
  HPolyhedron tri;
  tri.ambient_dim = 3;
  tri.add_equality({Q(0), Q(0), Q(1)}, 0);
  tri.add({Q(1), Q(0), Q(0)}, 0);
  tri.add({Q(0), Q(1), Q(0)}, 0);
  tri.add({Q(-1), Q(-1), Q(0)}, -1);
  RatMatrix a = RatMatrix::identity(3);
  auto parts = reduce_k2(PhpInstance(a, {Q(0), Q(0), Q(0)}, tri));
  RatMatrix triangle({{Q(0), Q(1), Q(0)}, {Q(0), Q(0), Q(1)}, {Q(1), Q(-1), Q(-1)}});
  bool saw_triangle = false;
  for (auto& e : parts) saw_triangle = saw_triangle || e.b == transported(triangle, e);
  CHECK(saw_triangle);

  // quadrant t1, t2 >= 2 in Q^2, hit at a planted step
  RatMatrix rot({{Q(0), Q(-1)}, {Q(1), Q(0)}});
  RatMatrix grow = rot * RatMatrix({{Q(3, 2), Q(0)}, {Q(0), Q(3, 2)}});
  HPolyhedron quad = halfspaces(2, {{{Q(1), Q(0)}, 2}, {{Q(0), Q(1)}, 2}});
  PhpInstance q(grow, {Q(1), Q(1)}, quad);
  auto first = orbit_first_hit(grow, q.x, quad, 100);
  REQUIRE(first);
  Decision d = decide_php(q);
  REQUIRE(d.kind == DecisionKind::Hit);
  CHECK(*d.witness == *first);
  bool member_hits = false;
  for (auto& e : reduce_k2(q)) member_hits = member_hits || eo_first_hit(e, *first) == first;
  CHECK(member_hits);
}

TEST_CASE("reductions preserve answers on n <= 500") {
  Rng rng(404);
  int checked = 0;
  for (int it = 0; it < 40; ++it) {
    std::size_t m = static_cast<std::size_t>(rng.uniform(2, 3));
    std::size_t k = static_cast<std::size_t>(rng.uniform(1, 2));
    PhpInstance inst = random_instance(rng, m, k, static_cast<std::size_t>(rng.uniform(1, 3)));
    if (inst.k() != static_cast<int>(k)) continue;
    auto direct = orbit_first_hit(inst.a, inst.x, inst.p, 500);
    std::optional<unsigned long> reduced;
    if (k == 1) {
      reduced = eo_first_hit(reduce_k1(inst), 500);
    } else {
      for (auto& e : reduce_k2(inst)) {
        auto h = eo_first_hit(e, 500);
        if (h && (!reduced || *h < *reduced)) reduced = h;
      }
    }
    CHECK(direct == reduced);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("full-dimensional reduction") {
  PhpInstance one(RatMatrix({{Q(2)}}), {Q(1)}, halfspaces(1, {{{Q(1)}, 3}}));
  SimposInstance s = reduce_full_dim(one);
  CHECK(s.recurrence == std::vector<Rational>{Q(3), Q(-2)});
  REQUIRE(s.size() == 1);
  CHECK(s.initial[0] == std::vector<Rational>{Q(-2), Q(-1)});
  // iterate the recurrence against 2^n - 3
  std::vector<Rational> w = s.initial[0];
  for (int n = 2; n < 30; ++n) {
    w.push_back(3 * w[w.size() - 1] - 2 * w[w.size() - 2]);
    CHECK(w.back() == Rational(Integer(1) << n) - 3);
  }

  PhpInstance two(RatMatrix({{Q(2)}}), {Q(1)}, halfspaces(1, {{{Q(1)}, 3}, {{Q(-1)}, -100}}));
  CHECK(reduce_full_dim(two).size() == 2);

  RatMatrix d3({{Q(2), Q(0), Q(0)}, {Q(0), Q(-1, 2), Q(0)}, {Q(0), Q(0), Q(3)}});
  PhpInstance three(d3, {Q(1), Q(1), Q(1)}, halfspaces(3, {{{Q(1), Q(1), Q(-1)}, 1}}));
  SimposInstance t = reduce_full_dim(three);
  CHECK(t.order() == 4);
  CHECK(in_simpos_fragment(t));
  CHECK(effective_char_poly(t).eval(1) == 0);
}

TEST_CASE("worked decisions") {
  Decision d = decide_php(PhpInstance(RatMatrix({{Q(2)}}), {Q(1)}, halfspaces(1, {{{Q(1)}, 3}})));
  REQUIRE(d.kind == DecisionKind::Hit);
  CHECK(*d.witness == 2);

  RatMatrix rot({{Q(0), Q(-1)}, {Q(1), Q(0)}});
  HPolyhedron p = halfspaces(2, {{{Q(-1), Q(0)}, Q(1, 2)}, {{Q(0), Q(1)}, -1}, {{Q(0), Q(-1)}, -1}});
  Decision r = decide_php(PhpInstance(rot, {Q(1), Q(0)}, p));
  REQUIRE(r.kind == DecisionKind::Hit);
  CHECK(*r.witness == 2);

  // point target (-1, 0)
  HPolyhedron pt;
  pt.ambient_dim = 2;
  pt.add_equality({Q(1), Q(0)}, -1);
  pt.add_equality({Q(0), Q(1)}, 0);
  Decision z = decide_php(PhpInstance(rot, {Q(1), Q(0)}, pt));
  REQUIRE(z.kind == DecisionKind::Hit);
  CHECK(*z.witness == 2);

  Rng rng(9);
  PhpInstance hard = random_instance(rng, 4, 3, 1);
  REQUIRE(hard.k() == 3);
  Decision h = decide_php(hard);
  CHECK(h.kind == DecisionKind::Unsupported);
  CHECK(h.tag == "SkolemHard(5)");

  HPolyhedron empty = halfspaces(1, {{{Q(1)}, 1}, {{Q(-1)}, 0}});
  CHECK(decide_php(PhpInstance(RatMatrix({{Q(2)}}), {Q(1)}, empty)).kind == DecisionKind::NeverHits);
}

TEST_CASE("padding") {
  Rng rng(55);
  for (int it = 0; it < 20; ++it) {
    std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    std::size_t k = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(m)));
    PhpInstance inst = random_instance(rng, m, k, 2);
    if (inst.k() < 0) continue;
    PhpInstance same = pad_instance(inst, PadMode::SameK);
    PhpInstance inc = pad_instance(inst, PadMode::IncK);
    CHECK(same.m() == m + 1);
    CHECK(same.k() == inst.k());
    CHECK(inc.k() == inst.k() + 1);
    auto base = orbit_first_hit(inst.a, inst.x, inst.p, 200);
    CHECK(orbit_first_hit(same.a, same.x, same.p, 200) == base);
    CHECK(orbit_first_hit(inc.a, inc.x, inc.p, 200) == base);
    PhpInstance twice = pad_instance(pad_instance(inst, PadMode::IncK), PadMode::SameK);
    CHECK(orbit_first_hit(twice.a, twice.x, twice.p, 200) == base);
  }
}

TEST_CASE("Skolem order five to PHP(4,3)") {
  Lrs planted = skolem5_sample(3u, 7);
  auto terms = lrs_terms(planted, 4);
  CHECK(terms[3] == 0);
  PhpInstance inst = skolem5_to_php43(planted);
  CHECK(inst.m() == 4);
  CHECK(inst.k() == 3);
  auto first = orbit_first_hit(inst.a, inst.x, inst.p, 3);
  REQUIRE(first);
  CHECK(*first <= 3);
  CHECK(classify(4, inst.k()).to_string() == "SkolemHard(5)");

  // zeros and hits coincide
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Lrs s = skolem5_sample(std::nullopt, seed);
    PhpInstance p = skolem5_to_php43(s);
    auto t = lrs_terms(s, 1001);
    RatVector y = p.x;
    for (unsigned long n = 0; n <= 1000; ++n) {
      CHECK((t[n] == 0) == testing_support::in_polyhedron(p.p, y));
      y = p.a * y;
    }
  }
  CHECK_THROWS(skolem5_to_php43(Lrs({Q(1), Q(1)}, {Q(0), Q(1)})));
}

TEST_CASE("Diophantine hardness sequences") {
  Algebraic l = Algebraic::gaussian(Q(3, 5), Q(4, 5));
  SimposInstance s = dioph_sequences(1, l);
  REQUIRE(s.size() == 2);
  REQUIRE(s.order() == 4);
  CHECK(s.initial[0][0] == 1);
  CHECK(s.initial[1][0] == 1);
  CHECK(s.initial[0][1] == Q(7, 5));
  // recurrence polynomial (z^2 - 6/5 z + 1)^2
  CHECK(s.recurrence == std::vector<Rational>{Q(12, 5), Q(-86, 25), Q(12, 5), Q(-1)});
  // closed form with Gaussian rationals: Re((1 -+ i n) l^n)
  auto terms0 = lrs_terms(s.sequence(0), 51), terms1 = lrs_terms(s.sequence(1), 51);
  Rational re = 1, im = 0;
  for (long n = 0; n <= 50; ++n) {
    CHECK(terms0[n] == re + Rational(n) * im);
    CHECK(terms1[n] == re - Rational(n) * im);
    Rational t = re * Q(3, 5) - im * Q(4, 5);
    im = re * Q(4, 5) + im * Q(3, 5);
    re = t;
  }
  CHECK(!in_simpos_fragment(s));
  CHECK(decide_simpos(s).kind == DecisionKind::Unsupported);
  CHECK_THROWS(dioph_sequences(1, Algebraic::gaussian(0, 1)));
  CHECK_THROWS(dioph_sequences(1, Algebraic::gaussian(1, 1)));

  PhpInstance p = php_from_simpos(s);
  CHECK(p.m() == 4);
  CHECK(p.k() == 4);
  Decision d = decide_php(p);
  CHECK(d.kind == DecisionKind::Unsupported);
  CHECK(d.tag == "DiophantineHard");
  // same answers as the sequences
  RatVector y = p.x;
  for (unsigned long n = 0; n <= 50; ++n) {
    CHECK(testing_support::in_polyhedron(p.p, y) == (terms0[n] >= 0 && terms1[n] >= 0));
    y = p.a * y;
  }
}

TEST_CASE("oracle agreement and planted hits") {
  Rng rng(1234);
  for (int it = 0; it < 40; ++it) {
    std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    std::size_t k = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(m)));
    PhpInstance inst = random_instance(rng, m, k, static_cast<std::size_t>(rng.uniform(0, 3)));
    SearchOptions o;
    o.max_n = 2000;
    Decision d = decide_php(inst, o);
    if (d.kind == DecisionKind::Hit) {
      CHECK(php_holds(inst, *d.witness));
      CHECK(orbit_first_hit(inst.a, inst.x, inst.p, d.witness->get_ui()) == d.witness->get_ui());
    }
    if (d.kind == DecisionKind::NeverHits) CHECK(!orbit_first_hit(inst.a, inst.x, inst.p, 2000));
  }
  for (int it = 0; it < 15; ++it) {
    std::size_t m = static_cast<std::size_t>(rng.uniform(1, 3));
    RatMatrix a = rng.mat(m, 3);
    RatVector x = rng.vec(m, 3);
    unsigned long planted = static_cast<unsigned long>(rng.uniform(0, 50));
    PhpInstance inst(a, x, box(mat_pow(a, planted) * x, Q(1, 10)));
    Decision d = decide_php(inst);
    REQUIRE(d.kind == DecisionKind::Hit);
    CHECK(*d.witness <= planted);
  }
}
