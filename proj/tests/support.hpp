#pragma once

#include <optional>
#include <random>
#include <vector>

#include "orbitkit/linalg.hpp"
#include "orbitkit/orbit.hpp"
#include "orbitkit/polyhedron.hpp"
#include "orbitkit/rational.hpp"

namespace testing_support {

using orbitkit::Integer;
using orbitkit::Rational;
using orbitkit::RatMatrix;
using orbitkit::RatVector;
using orbitkit::operator+;
using orbitkit::operator*;

// mpq_class(a, b) does not reduce; everything built here is canonical.
inline Rational Q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }
  Rational rat(long lim) { return Q(uniform(-lim, lim), uniform(1, lim)); }
  Rational nonzero_rat(long lim) {
    Rational r;
    do r = rat(lim);
    while (r == 0);
    return r;
  }
  RatVector vec(std::size_t n, long lim) {
    RatVector v(n);
    for (auto& e : v) e = rat(lim);
    return v;
  }
  RatMatrix mat(std::size_t n, long lim) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rat(lim);
    return m;
  }
};

// Random polyhedron of dimension k (or empty) in Q^m: m-k random equalities
// through a random point plus a few random inequalities, some of them valid
// at that point so the result is rarely empty.
inline orbitkit::HPolyhedron random_polyhedron(Rng& rng, std::size_t m, std::size_t k, std::size_t extra) {
  orbitkit::HPolyhedron p;
  p.ambient_dim = m;
  RatVector x0 = rng.vec(m, 3);
  for (std::size_t e = 0; e + k < m; ++e) {
    RatVector v = rng.vec(m, 4);
    p.add_equality(v, orbitkit::dot(v, x0));
  }
  for (std::size_t i = 0; i < extra; ++i) {
    RatVector v = rng.vec(m, 4);
    Rational slack = Q(rng.uniform(0, 4), rng.uniform(1, 3));
    p.add(v, orbitkit::dot(v, x0) - (rng.uniform(0, 3) ? slack : Rational(-slack)));
  }
  return p;
}

// Point of the affine hull with coordinates from a small grid.
inline RatVector hull_point(Rng& rng, const orbitkit::AffineHull& h, long lim) {
  RatVector x = h.point;
  for (const auto& d : h.directions) x = x + rng.rat(lim) * d;
  return x;
}

// The oracles below are deliberately naive: plain iteration, no shared code
// with the deciders beyond exact arithmetic and linear solving.

inline bool in_polyhedron(const orbitkit::HPolyhedron& p, const RatVector& y) {
  for (const auto& h : p.halfspaces)
    if (orbitkit::dot(h.normal, y) < h.offset) return false;
  return true;
}

// Least n <= limit with A^n x in P.
inline std::optional<unsigned long> orbit_first_hit(const RatMatrix& a, RatVector x, const orbitkit::HPolyhedron& p,
                                                    unsigned long limit) {
  for (unsigned long n = 0; n <= limit; ++n) {
    if (in_polyhedron(p, x)) return n;
    x = a * x;
  }
  return std::nullopt;
}

inline bool nonneg_rows(const RatMatrix& b, const RatVector& u) {
  for (std::size_t r = 0; r < b.rows(); ++r) {
    Rational s = 0;
    for (std::size_t c = 0; c < b.cols(); ++c) s += b(r, c) * u[c];
    if (s < 0) return false;
  }
  return true;
}

// Least n <= limit with A^n = sum u_i p_i(A) and B u >= 0.
inline std::optional<unsigned long> eo_first_hit(const orbitkit::ExtendedOrbitInstance& inst, unsigned long limit) {
  std::size_t m = inst.a.rows(), d = inst.polys.size();
  RatMatrix sys(m * m, d);
  for (std::size_t i = 0; i < d; ++i) {
    RatMatrix pa = orbitkit::poly_eval(inst.polys[i], inst.a);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) sys(r * m + c, i) = pa(r, c);
  }
  RatMatrix an = RatMatrix::identity(m);
  for (unsigned long n = 0; n <= limit; ++n) {
    RatVector rhs(m * m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) rhs[r * m + c] = an(r, c);
    if (auto s = orbitkit::solve_linear(sys, rhs); s && nonneg_rows(inst.b, s->particular)) return n;
    an = an * inst.a;
  }
  return std::nullopt;
}

}  // namespace testing_support
