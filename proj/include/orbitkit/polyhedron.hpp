#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitkit/linalg.hpp"

namespace orbitkit {

/// {p : normal . p >= offset}
struct Halfspace {
  RatVector normal;
  Rational offset;
};

struct HPolyhedron {
  std::size_t ambient_dim = 0;
  std::vector<Halfspace> halfspaces;

  HPolyhedron() = default;
  HPolyhedron(std::size_t dim, std::vector<Halfspace> hs);
  /// Adds the pair normal . p >= offset and -normal . p >= -offset.
  void add_equality(const RatVector& normal, const Rational& offset);
  void add(const RatVector& normal, const Rational& offset);
};

enum class Relation { Ge, Eq };

struct LinearConstraint {
  RatVector coeffs;
  Relation rel;
  Rational rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status;
  RatVector x;      // optimal (or feasible) point when status == Optimal
  Rational value;   // objective value at x
};

/// minimize objective . x subject to the constraints (x free).  Exact
/// two-phase simplex with Bland's rule.
LpResult lp_minimize(const RatVector& objective, const std::vector<LinearConstraint>& constraints, std::size_t nvars);

std::optional<RatVector> lp_feasible(const std::vector<LinearConstraint>& constraints, std::size_t nvars);

bool member(const HPolyhedron& p, const RatVector& x);
std::optional<RatVector> feasible_point(const HPolyhedron& p);
bool is_empty(const HPolyhedron& p);
HPolyhedron remove_redundancy(const HPolyhedron& p);

/// Affine hull of a nonempty polyhedron: point + direction basis, together
/// with the indices of the implicit equalities.
struct AffineHull {
  RatVector point;
  std::vector<RatVector> directions;
  std::vector<std::size_t> implicit_equalities;
};
std::optional<AffineHull> affine_hull(const HPolyhedron& p);

/// -1 for the empty set, else the dimension of the affine hull.
int dimension(const HPolyhedron& p);

enum class Range1D { Line, Ray, Segment };

/// {base + a*direction : a in R | a >= 0 | 0 <= a <= 1}
struct Piece1D {
  RatVector base;
  RatVector direction;
  Range1D range;
};

enum class Shape2D { Cone, Triangle, Strip };

/// {u + a*v + b*w : a, b >= 0 [, a + b <= 1 | b <= 1]}
struct Piece2D {
  RatVector base;
  RatVector dir1;
  RatVector dir2;
  Shape2D shape;
};

Piece1D decompose_1d(const HPolyhedron& p);
std::vector<Piece2D> decompose_2d(const HPolyhedron& p);

bool piece_member(const Piece1D& piece, const RatVector& x);
bool piece_member(const Piece2D& piece, const RatVector& x);

std::string to_string(Range1D r);
std::string to_string(Shape2D s);

}  // namespace orbitkit
