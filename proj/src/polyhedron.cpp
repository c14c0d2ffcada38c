#include "orbitkit/polyhedron.hpp"

#include <algorithm>

namespace orbitkit {

HPolyhedron::HPolyhedron(std::size_t dim, std::vector<Halfspace> hs) : ambient_dim(dim), halfspaces(std::move(hs)) {
  for (const auto& h : halfspaces) {
    if (h.normal.size() != ambient_dim) throw std::invalid_argument("halfspace normal has wrong length");
  }
}

void HPolyhedron::add(const RatVector& normal, const Rational& offset) {
  if (normal.size() != ambient_dim) throw std::invalid_argument("halfspace normal has wrong length");
  halfspaces.push_back({normal, offset});
}

void HPolyhedron::add_equality(const RatVector& normal, const Rational& offset) {
  add(normal, offset);
  add(Rational(-1) * normal, -offset);
}

// ---------------------------------------------------------------------------
// simplex

namespace {

class Tableau {
 public:
  // rows: constraint rows then objective row; last column is the rhs.
  std::vector<std::vector<Rational>> t;
  std::vector<std::size_t> basis;
  std::size_t ncols = 0;  // excluding rhs

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t[r][c];
    for (auto& v : t[r]) v *= inv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rational f = t[i][c];
      for (std::size_t j = 0; j <= ncols; ++j) {
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
      }
    }
    basis[r] = c;
  }

  // Bland's rule on columns < limit.  Returns false when unbounded.
  bool optimize(std::size_t limit) {
    std::size_t obj = t.size() - 1;
    while (true) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (t[obj][j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = obj;
      Rational best;
      for (std::size_t i = 0; i < obj; ++i) {
        if (t[i][enter] <= 0) continue;
        Rational ratio = t[i][ncols] / t[i][enter];
        if (leave == obj || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == obj) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult lp_minimize(const RatVector& objective, const std::vector<LinearConstraint>& constraints, std::size_t nvars) {
  if (objective.size() != nvars) throw std::invalid_argument("objective has wrong length");
  std::size_t m = constraints.size();
  std::size_t nslack = 0;
  for (const auto& c : constraints) {
    if (c.coeffs.size() != nvars) throw std::invalid_argument("constraint has wrong length");
    if (c.rel == Relation::Ge) ++nslack;
  }
  if (m == 0) {
    bool zero = is_zero_vector(objective);
    return {zero ? LpStatus::Optimal : LpStatus::Unbounded, RatVector(nvars, Rational(0)), Rational(0)};
  }
  std::size_t nstruct = 2 * nvars + nslack;
  std::size_t ncols = nstruct + m;
  Tableau tab;
  tab.ncols = ncols;
  tab.t.assign(m + 1, std::vector<Rational>(ncols + 1, Rational(0)));
  tab.basis.assign(m, 0);
  std::size_t s = 2 * nvars;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = constraints[i];
    auto& row = tab.t[i];
    for (std::size_t j = 0; j < nvars; ++j) {
      row[j] = c.coeffs[j];
      row[nvars + j] = -c.coeffs[j];
    }
    if (c.rel == Relation::Ge) row[s++] = -1;
    row[ncols] = c.rhs;
    if (row[ncols] < 0) {
      for (auto& v : row) v = -v;
    }
    row[nstruct + i] = 1;
    tab.basis[i] = nstruct + i;
  }
  // phase 1: minimise the sum of artificials
  auto& obj = tab.t[m];
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= ncols; ++j) {
      if (j >= nstruct && j < ncols) continue;
      obj[j] -= tab.t[i][j];
    }
  }
  tab.optimize(ncols);
  if (obj[ncols] != 0) return {LpStatus::Infeasible, {}, Rational(0)};
  // drive artificials out of the basis
  for (std::size_t i = 0; i < tab.basis.size(); ++i) {
    if (tab.basis[i] < nstruct) continue;
    std::size_t c = nstruct;
    for (std::size_t j = 0; j < nstruct; ++j) {
      if (tab.t[i][j] != 0) {
        c = j;
        break;
      }
    }
    if (c < nstruct) {
      tab.pivot(i, c);
    } else {
      // redundant row
      tab.t.erase(tab.t.begin() + static_cast<long>(i));
      tab.basis.erase(tab.basis.begin() + static_cast<long>(i));
      --i;
    }
  }
  // phase 2
  std::size_t rows = tab.basis.size();
  auto& obj2 = tab.t[rows];
  std::fill(obj2.begin(), obj2.end(), Rational(0));
  for (std::size_t j = 0; j < nvars; ++j) {
    obj2[j] = objective[j];
    obj2[nvars + j] = -objective[j];
  }
  for (std::size_t i = 0; i < rows; ++i) {
    Rational cb = obj2[tab.basis[i]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j <= ncols; ++j) {
      if (tab.t[i][j] != 0) obj2[j] -= cb * tab.t[i][j];
    }
  }
  // artificial columns must never re-enter
  for (std::size_t i = 0; i <= rows; ++i) {
    for (std::size_t j = nstruct; j < ncols; ++j) tab.t[i][j] = 0;
  }
  bool bounded = tab.optimize(nstruct);
  RatVector x(nvars, Rational(0));
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t b = tab.basis[i];
    if (b < nvars) x[b] += tab.t[i][ncols];
    else if (b < 2 * nvars) x[b - nvars] -= tab.t[i][ncols];
  }
  if (!bounded) return {LpStatus::Unbounded, x, Rational(0)};
  return {LpStatus::Optimal, x, dot(objective, x)};
}

std::optional<RatVector> lp_feasible(const std::vector<LinearConstraint>& constraints, std::size_t nvars) {
  LpResult r = lp_minimize(RatVector(nvars, Rational(0)), constraints, nvars);
  if (r.status == LpStatus::Infeasible) return std::nullopt;
  return r.x;
}

// ---------------------------------------------------------------------------
// polyhedra

namespace {

std::vector<LinearConstraint> as_constraints(const HPolyhedron& p, std::size_t skip = static_cast<std::size_t>(-1)) {
  std::vector<LinearConstraint> cs;
  for (std::size_t i = 0; i < p.halfspaces.size(); ++i) {
    if (i == skip) continue;
    cs.push_back({p.halfspaces[i].normal, Relation::Ge, p.halfspaces[i].offset});
  }
  return cs;
}

}  // namespace

bool member(const HPolyhedron& p, const RatVector& x) {
  if (x.size() != p.ambient_dim) throw std::invalid_argument("point has wrong dimension");
  for (const auto& h : p.halfspaces) {
    if (dot(h.normal, x) < h.offset) return false;
  }
  return true;
}

std::optional<RatVector> feasible_point(const HPolyhedron& p) { return lp_feasible(as_constraints(p), p.ambient_dim); }

bool is_empty(const HPolyhedron& p) { return !feasible_point(p).has_value(); }

HPolyhedron remove_redundancy(const HPolyhedron& p) {
  HPolyhedron cur = p;
  for (std::size_t i = 0; i < cur.halfspaces.size();) {
    const Halfspace& h = cur.halfspaces[i];
    if (is_zero_vector(h.normal) && h.offset <= 0) {
      cur.halfspaces.erase(cur.halfspaces.begin() + static_cast<long>(i));
      continue;
    }
    LpResult r = lp_minimize(h.normal, as_constraints(cur, i), cur.ambient_dim);
    bool redundant = r.status == LpStatus::Infeasible || (r.status == LpStatus::Optimal && r.value >= h.offset);
    if (redundant) cur.halfspaces.erase(cur.halfspaces.begin() + static_cast<long>(i));
    else ++i;
  }
  return cur;
}

std::optional<AffineHull> affine_hull(const HPolyhedron& p) {
  auto pt = feasible_point(p);
  if (!pt) return std::nullopt;
  AffineHull hull;
  std::vector<RatVector> eq_rows;
  RatVector eq_rhs;
  auto cs = as_constraints(p);
  for (std::size_t i = 0; i < p.halfspaces.size(); ++i) {
    const Halfspace& h = p.halfspaces[i];
    // implicit equality iff max normal.x over P equals the offset
    LpResult r = lp_minimize(Rational(-1) * h.normal, cs, p.ambient_dim);
    if (r.status == LpStatus::Optimal && -r.value == h.offset) {
      hull.implicit_equalities.push_back(i);
      eq_rows.push_back(h.normal);
      eq_rhs.push_back(h.offset);
    }
  }
  if (eq_rows.empty()) {
    hull.point = *pt;
    for (std::size_t j = 0; j < p.ambient_dim; ++j) {
      RatVector e(p.ambient_dim, Rational(0));
      e[j] = 1;
      hull.directions.push_back(e);
    }
    return hull;
  }
  RatMatrix m(std::vector<std::vector<Rational>>(eq_rows.begin(), eq_rows.end()));
  auto sol = solve_linear(m, eq_rhs);
  if (!sol) throw std::logic_error("implicit equalities inconsistent");
  hull.point = sol->particular;
  hull.directions = sol->nullspace;
  return hull;
}

int dimension(const HPolyhedron& p) {
  auto h = affine_hull(p);
  if (!h) return -1;
  return static_cast<int>(h->directions.size());
}

namespace {

// Positive rescaling to a primitive integer vector.
RatVector primitive_direction(const RatVector& v) {
  Integer den = 1;
  for (const auto& q : v) den = lcm(den, Integer(q.get_den()));
  Integer g = 0;
  std::vector<Integer> z;
  for (const auto& q : v) {
    Rational t = q * den;
    z.push_back(t.get_num());
    g = gcd(g, z.back());
  }
  if (g == 0) return v;
  RatVector out;
  for (const auto& x : z) out.push_back(Rational(x / g));
  return out;
}

// Same, with the first nonzero entry made positive.
RatVector normalize_direction(const RatVector& v) {
  RatVector w = primitive_direction(v);
  for (const auto& x : w) {
    if (x != 0) return x < 0 ? Rational(-1) * w : w;
  }
  return w;
}

}  // namespace

Piece1D decompose_1d(const HPolyhedron& p) {
  auto hull = affine_hull(p);
  if (!hull || hull->directions.size() != 1) throw std::invalid_argument("decompose_1d needs a one-dimensional polyhedron");
  RatVector p0 = hull->point;
  RatVector u = normalize_direction(hull->directions[0]);
  std::optional<Rational> lo, hi;
  for (const auto& h : p.halfspaces) {
    Rational a = dot(h.normal, u);
    Rational b = h.offset - dot(h.normal, p0);
    if (a > 0) {
      Rational t = b / a;
      if (!lo || t > *lo) lo = t;
    } else if (a < 0) {
      Rational t = b / a;
      if (!hi || t < *hi) hi = t;
    }
  }
  if (!lo && !hi) return {p0, u, Range1D::Line};
  if (lo && !hi) return {p0 + (*lo) * u, u, Range1D::Ray};
  if (!lo && hi) return {p0 + (*hi) * u, Rational(-1) * u, Range1D::Ray};
  return {p0 + (*lo) * u, (*hi - *lo) * u, Range1D::Segment};
}

namespace {

// Generators of {z in Q^3 : a_i . z >= 0}: lineality basis vectors (both
// signs) plus extreme rays of the pointed part.
std::vector<RatVector> cone_generators_3d(const std::vector<RatVector>& rows) {
  std::vector<RatVector> gens;
  auto feasible = [&](const RatVector& z) {
    for (const auto& a : rows) {
      if (dot(a, z) < 0) return false;
    }
    return true;
  };
  auto push_unique = [&](RatVector z) {
    z = primitive_direction(z);
    for (const auto& g : gens) {
      if (g == z) return;
    }
    gens.push_back(z);
  };
  RatMatrix a = rows.empty() ? RatMatrix(1, 3) : RatMatrix(std::vector<std::vector<Rational>>(rows.begin(), rows.end()));
  std::vector<RatVector> lin = nullspace(a);
  for (const auto& l : lin) {
    push_unique(l);
    push_unique(Rational(-1) * l);
  }
  std::size_t r = 3 - lin.size();
  if (r == 0) return gens;
  // W = row space; a ray of the pointed part lies in W and makes r-1
  // independent constraints tight.
  std::vector<RatVector> lin_rows = lin;  // z . l = 0 keeps z inside W
  auto consider = [&](const std::vector<RatVector>& tight) {
    std::vector<std::vector<Rational>> m;
    for (const auto& t : tight) m.push_back(t);
    for (const auto& l : lin_rows) m.push_back(l);
    if (m.empty()) return;
    auto ns = nullspace(RatMatrix(m));
    if (ns.size() != 1) return;
    for (int sgn : {1, -1}) {
      RatVector z = Rational(sgn) * ns[0];
      if (feasible(z)) push_unique(z);
    }
  };
  if (r == 1) {
    consider({});
  } else if (r == 2) {
    for (const auto& x : rows) consider({x});
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = i + 1; j < rows.size(); ++j) consider({rows[i], rows[j]});
    }
  }
  return gens;
}

}  // namespace

std::vector<Piece2D> decompose_2d(const HPolyhedron& p) {
  auto hull = affine_hull(p);
  if (!hull || hull->directions.size() != 2) throw std::invalid_argument("decompose_2d needs a two-dimensional polyhedron");
  const RatVector& p0 = hull->point;
  const RatVector& u1 = hull->directions[0];
  const RatVector& u2 = hull->directions[1];
  // Homogenise in hull coordinates z = (t, a1, a2) <-> (t*p0 + a1*u1 + a2*u2, t).
  std::vector<RatVector> rows;
  std::vector<bool> is_eq(p.halfspaces.size(), false);
  for (auto i : hull->implicit_equalities) is_eq[i] = true;
  for (std::size_t i = 0; i < p.halfspaces.size(); ++i) {
    if (is_eq[i]) continue;
    const auto& h = p.halfspaces[i];
    RatVector row{dot(h.normal, p0) - h.offset, dot(h.normal, u1), dot(h.normal, u2)};
    if (!is_zero_vector(row)) rows.push_back(row);
  }
  rows.push_back({Rational(1), Rational(0), Rational(0)});  // t >= 0
  auto gens = cone_generators_3d(rows);
  struct Gen {
    RatVector z;
    bool vertex;
    RatVector point;  // vertex position or ray direction in ambient space
  };
  std::vector<Gen> gs;
  for (const auto& z : gens) {
    Gen g;
    g.z = z;
    g.vertex = z[0] > 0;
    RatVector z2 = z;
    if (g.vertex) z2 = (1 / z[0]) * z;
    g.point = z2[1] * u1 + z2[2] * u2;
    if (g.vertex) g.point = g.point + p0;
    else g.point = primitive_direction(g.point);
    gs.push_back(g);
  }
  // vertices first for a stable piece order
  std::stable_sort(gs.begin(), gs.end(), [](const Gen& a, const Gen& b) { return a.vertex && !b.vertex; });
  std::vector<Piece2D> pieces;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    for (std::size_t j = i + 1; j < gs.size(); ++j) {
      for (std::size_t k = j + 1; k < gs.size(); ++k) {
        const Gen* t[3] = {&gs[i], &gs[j], &gs[k]};
        RatMatrix m = RatMatrix::from_columns({t[0]->z, t[1]->z, t[2]->z});
        if (determinant(m) == 0) continue;
        int nv = t[0]->vertex + t[1]->vertex + t[2]->vertex;
        if (nv == 0) continue;
        if (nv == 3) {
          pieces.push_back({t[0]->point, t[1]->point - t[0]->point, t[2]->point - t[0]->point, Shape2D::Triangle});
        } else if (nv == 2) {
          pieces.push_back({t[0]->point, t[2]->point, t[1]->point - t[0]->point, Shape2D::Strip});
        } else {
          pieces.push_back({t[0]->point, t[1]->point, t[2]->point, Shape2D::Cone});
        }
      }
    }
  }
  return pieces;
}

bool piece_member(const Piece1D& piece, const RatVector& x) {
  RatVector d = x - piece.base;
  if (is_zero_vector(piece.direction)) return is_zero_vector(d);
  // d must be a multiple a of direction
  std::size_t k = 0;
  while (piece.direction[k] == 0) ++k;
  Rational a = d[k] / piece.direction[k];
  if (a * piece.direction != d) return false;
  switch (piece.range) {
    case Range1D::Line: return true;
    case Range1D::Ray: return a >= 0;
    case Range1D::Segment: return a >= 0 && a <= 1;
  }
  return false;
}

bool piece_member(const Piece2D& piece, const RatVector& x) {
  RatMatrix m = RatMatrix::from_columns({piece.dir1, piece.dir2});
  auto sol = solve_linear(m, x - piece.base);
  if (!sol) return false;
  const Rational& a = sol->particular[0];
  const Rational& b = sol->particular[1];
  if (a < 0 || b < 0) return false;
  switch (piece.shape) {
    case Shape2D::Cone: return true;
    case Shape2D::Triangle: return a + b <= 1;
    case Shape2D::Strip: return b <= 1;
  }
  return false;
}

std::string to_string(Range1D r) {
  switch (r) {
    case Range1D::Line: return "Line";
    case Range1D::Ray: return "Ray";
    case Range1D::Segment: return "Segment";
  }
  return "?";
}

std::string to_string(Shape2D s) {
  switch (s) {
    case Shape2D::Cone: return "Cone";
    case Shape2D::Triangle: return "Triangle";
    case Shape2D::Strip: return "Strip";
  }
  return "?";
}

}  // namespace orbitkit
