#include "orbitkit/orbit.hpp"

#include <stdexcept>

#include "orbitkit/simpos.hpp"

namespace orbitkit {

RatPoly xpow_mod(const Integer& n, const RatPoly& m) {
  if (m.degree() < 1) return RatPoly();
  RatPoly result = RatPoly::constant(Rational(1)) % m;
  RatPoly base = RatPoly::x() % m;
  Integer e = n;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = (result * base) % m;
    e >>= 1;
    if (e > 0) base = (base * base) % m;
  }
  return result;
}

namespace {

RatVector coeff_vector(const RatPoly& p, std::size_t len) {
  RatVector v(len);
  for (std::size_t i = 0; i < len; ++i) v[i] = p.coeff(i);
  return v;
}

RatPoly derivative_n(RatPoly p, int j) {
  for (int i = 0; i < j; ++i) p = p.derivative();
  return p;
}

Integer falling(unsigned long n, int j) {
  Integer r = 1;
  for (int i = 0; i < j; ++i) r *= static_cast<long>(n) - i;
  return r;
}

}  // namespace

void ExtendedOrbitInstance::validate() const {
  if (!a.square() || a.rows() == 0) throw std::invalid_argument("extended orbit: A must be square and nonempty");
  if (b.rows() > 0 && b.cols() != polys.size())
    throw std::invalid_argument("extended orbit: B must have one column per polynomial");
  if (lift.rows() > 0 && lift.cols() != polys.size())
    throw std::invalid_argument("extended orbit: lift must have one column per polynomial");
  if (polys.empty()) return;
  RatPoly m = minimal_polynomial(a);
  std::vector<RatVector> cols;
  for (const auto& p : polys) cols.push_back(coeff_vector(p % m, static_cast<std::size_t>(m.degree())));
  if (rank(RatMatrix::from_columns(cols)) != polys.size())
    throw std::invalid_argument("extended orbit: p_i(A) must be linearly independent");
}

ExtendedOrbitInstance orbit_to_matrix_power(const RatMatrix& a, const RatVector& x, const std::vector<RatVector>& basis,
                                            const RatMatrix& b) {
  const std::size_t m = a.rows();
  const std::size_t d = basis.size();
  if (!a.square() || x.size() != m) throw std::invalid_argument("orbit reduction: inconsistent dimensions");
  for (const auto& v : basis) {
    if (v.size() != m) throw std::invalid_argument("orbit reduction: inconsistent dimensions");
  }
  if (b.rows() > 0 && b.cols() != d) throw std::invalid_argument("orbit reduction: B must have one column per basis vector");
  if (d > 0 && rank(RatMatrix::from_columns(basis)) != d)
    throw std::invalid_argument("orbit reduction: basis vectors must be independent");

  ExtendedOrbitInstance out;
  RatPoly mu = local_minimal_polynomial(a, x);
  const std::size_t deg = static_cast<std::size_t>(mu.degree());
  if (deg == 0) {
    // x = 0 is in every cone
    out.a = RatMatrix::identity(1);
    out.polys = {RatPoly::constant(Rational(1))};
    out.b = RatMatrix(0, 1);
    out.lift = RatMatrix(d, 1);
    return out;
  }
  std::vector<RatVector> krylov{x};
  for (std::size_t i = 1; i < deg; ++i) krylov.push_back(a * krylov.back());

  // (u, c) with V u = K c
  RatMatrix joint(m, d + deg);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) joint(i, j) = basis[j][i];
    for (std::size_t j = 0; j < deg; ++j) joint(i, d + j) = -krylov[j][i];
  }
  auto ns = nullspace(joint);
  if (ns.empty()) {
    bool nilpotent = true;
    for (int i = 0; i < mu.degree(); ++i) nilpotent = nilpotent && mu.coeff(i) == 0;
    out.a = nilpotent ? companion(mu) : RatMatrix::identity(1);
    out.b = RatMatrix(0, 0);
    out.lift = RatMatrix(d, 0);
    return out;
  }
  RatMatrix lift(d, ns.size());
  for (std::size_t t = 0; t < ns.size(); ++t) {
    std::vector<Rational> c(ns[t].begin() + static_cast<long>(d), ns[t].end());
    out.polys.push_back(RatPoly(c));
    for (std::size_t i = 0; i < d; ++i) lift(i, t) = ns[t][i];
  }
  out.a = companion(mu);
  out.b = b.rows() > 0 ? b * lift : RatMatrix(0, ns.size());
  out.lift = lift;
  return out;
}

// ---------------------------------------------------------------------------
// Master System

MasterSystem build_master_system(const ExtendedOrbitInstance& inst) {
  inst.validate();
  MasterSystem ms;
  ms.b = inst.b;
  ms.dim = inst.dim();
  ms.polys = inst.polys;
  RatPoly m = minimal_polynomial(inst.a);
  int s = 0;
  while (s <= m.degree() && m.coeff(static_cast<std::size_t>(s)) == 0) ++s;
  ms.zero_multiplicity = s;
  for (int j = 0; j < s; ++j) {
    RatVector row;
    for (const auto& p : inst.polys) row.push_back(derivative_n(p, j).coeff(0));
    ms.zero_relations.push_back(row);
  }
  RatPoly rest = m;
  if (s > 0) rest = m / RatPoly::monomial(Rational(1), static_cast<std::size_t>(s));
  for (const auto& [root, mult] : isolate_roots(rest)) {
    std::size_t idx = ms.eigen_mults.size();
    ms.eigen_mults.push_back({root, mult});
    for (int j = 0; j < mult; ++j) {
      MasterEquation eq{idx, j, {}};
      for (const auto& p : inst.polys) eq.rhs.push_back(eval_in_field(derivative_n(p, j), root));
      ms.equations.push_back(std::move(eq));
    }
  }
  return ms;
}

bool master_holds(const MasterSystem& ms, unsigned long n, const RatVector& u) {
  if (u.size() != ms.dim) throw std::invalid_argument("master_holds: wrong number of coefficients");
  for (const auto& eq : ms.equations) {
    const Algebraic& alpha = ms.eigen_mults[eq.root].value;
    Algebraic lhs = static_cast<long>(n) < eq.order
                        ? Algebraic(0)
                        : Algebraic(Rational(falling(n, eq.order))) * pow(alpha, n - static_cast<unsigned long>(eq.order));
    Algebraic rhs(0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] != 0) rhs = rhs + Algebraic(u[i]) * eq.rhs[i];
    }
    if (lhs != rhs) return false;
  }
  for (int j = 0; j < ms.zero_multiplicity; ++j) {
    Rational lhs = n == static_cast<unsigned long>(j) ? Rational(falling(n, j)) : Rational(0);
    Rational rhs = 0;
    for (std::size_t i = 0; i < u.size(); ++i) rhs += u[i] * ms.zero_relations[j][i];
    if (lhs != rhs) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// equivalence classes

EqClassPartition eq_class_partition(const std::vector<CharRoot>& roots) {
  EqClassPartition part;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].value.is_zero()) throw std::invalid_argument("eq_class_partition: zero root");
    bool placed = false;
    for (auto& g : groups) {
      if (auto info = root_of_unity_order(roots[i].value / roots[g.front()].value)) {
        g.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({i});
  }
  for (const auto& g : groups) {
    EqClass c;
    for (std::size_t i : g) {
      c.members.push_back(roots[i].value);
      c.member_mult.push_back(roots[i].multiplicity);
      c.multiplicity = std::max(c.multiplicity, roots[i].multiplicity);
    }
    Algebraic first_conj = conj(c.members.front());
    c.self_conjugate = root_of_unity_order(first_conj / c.members.front()).has_value();
    c.representative = c.self_conjugate ? abs(c.members.front()) : c.members.front();
    for (const auto& mbr : c.members) {
      Algebraic w = mbr / c.representative;
      auto info = root_of_unity_order(w);
      if (!info) throw std::logic_error("eq_class_partition: member is not a rotated representative");
      c.omegas.push_back(w);
      c.omega_info.push_back(*info);
      part.collapse_modulus = lcm_u64(part.collapse_modulus, info->order);
    }
    for (std::size_t s = 0; s < c.members.size(); ++s) {
      for (std::size_t t = s + 1; t < c.members.size(); ++t) {
        auto info = root_of_unity_order(c.members[s] / c.members[t]);
        part.modulus = lcm_u64(part.modulus, info->order);
      }
    }
    part.classes.push_back(std::move(c));
  }
  part.collapse_modulus = lcm_u64(part.collapse_modulus, part.modulus);
  for (std::size_t i = 0; i < part.classes.size(); ++i) {
    auto& c = part.classes[i];
    if (c.self_conjugate) continue;
    Algebraic cj = conj(c.members.front());
    for (std::size_t k = 0; k < part.classes.size(); ++k) {
      if (k == i) continue;
      if (root_of_unity_order(cj / part.classes[k].members.front())) c.paired_with = static_cast<int>(k);
    }
  }
  return part;
}

namespace {

// Row echelon rank of a small algebraic matrix.
std::size_t alg_rank(std::vector<std::vector<Algebraic>> m) {
  if (m.empty()) return 0;
  std::size_t cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t sel = m.size();
    for (std::size_t i = r; i < m.size(); ++i) {
      if (!m[i][c].is_zero()) {
        sel = i;
        break;
      }
    }
    if (sel == m.size()) continue;
    std::swap(m[sel], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c].is_zero()) continue;
      Algebraic f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

CollapseResult collapse_residue(const MasterSystem& ms, const EqClassPartition& part, unsigned long residue) {
  CollapseResult out;
  const unsigned long big = part.collapse_modulus;
  residue %= big;
  std::vector<std::vector<Algebraic>> bpp;
  for (std::size_t ci = 0; ci < part.classes.size(); ++ci) {
    const EqClass& c = part.classes[ci];
    for (int j = 0; j < c.multiplicity; ++j) {
      std::vector<std::vector<Algebraic>> phis;
      for (std::size_t s = 0; s < c.members.size(); ++s) {
        if (c.member_mult[s] <= j) continue;
        const MasterEquation* eq = nullptr;
        for (const auto& e : ms.equations) {
          if (e.order == j && ms.eigen_mults[e.root].value == c.members[s]) eq = &e;
        }
        if (!eq) throw std::invalid_argument("collapse_residue: partition does not match the master system");
        long ord = static_cast<long>(c.omega_info[s].order);
        long e = ((static_cast<long>(residue) - j) % ord + ord) % ord;
        Algebraic wn = pow(c.omegas[s], static_cast<unsigned long>(e));
        std::vector<Algebraic> phi;
        for (const auto& v : eq->rhs) phi.push_back(v / wn);
        phis.push_back(std::move(phi));
      }
      for (std::size_t s = 0; s + 1 < phis.size(); ++s) {
        std::vector<Algebraic> re, im;
        for (std::size_t i = 0; i < ms.dim; ++i) {
          Algebraic diff = phis[s][i] - phis[s + 1][i];
          re.push_back(real_part(diff));
          im.push_back(imag_part(diff));
        }
        bpp.push_back(re);
        bpp.push_back(im);
      }
      CollapsedEquation ce{ci, j, phis.back()};
      if (c.self_conjugate) {
        for (auto& v : ce.phi) v = real_part(v);
      }
      out.equations.push_back(std::move(ce));
    }
  }
  std::size_t r = alg_rank(bpp);
  if (r == 0) return out;
  if (r >= ms.dim) {
    out.kind = CollapseResult::Unsatisfiable;
    return out;
  }
  out.kind = CollapseResult::LinearDependency;
  for (const auto& row : bpp) {
    bool nonzero = false;
    for (const auto& v : row) nonzero = nonzero || !v.is_zero();
    if (nonzero) {
      out.psi = row;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// decision

bool verify_extended_orbit(const ExtendedOrbitInstance& inst, const Integer& n, const RatVector& u) {
  if (n < 0 || u.size() != inst.dim()) return false;
  RatMatrix lhs = mat_pow(inst.a, n);
  RatMatrix rhs(inst.a.rows(), inst.a.cols());
  for (std::size_t i = 0; i < u.size(); ++i) rhs = rhs + u[i] * poly_eval(inst.polys[i], inst.a);
  if (!(lhs == rhs)) return false;
  for (std::size_t r = 0; r < inst.b.rows(); ++r) {
    Rational acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += inst.b(r, i) * u[i];
    if (acc < 0) return false;
  }
  return true;
}

namespace {

struct Coordinates {
  RatPoly m;
  std::size_t deg = 0;
  RatMatrix g;                 // d x D left inverse of P
  std::vector<RatVector> w;    // rows annihilating span P
  RatMatrix bg;                // B G
};

Coordinates coordinates(const ExtendedOrbitInstance& inst) {
  Coordinates c;
  c.m = minimal_polynomial(inst.a);
  c.deg = static_cast<std::size_t>(c.m.degree());
  const std::size_t d = inst.dim();
  std::vector<RatVector> cols;
  for (const auto& p : inst.polys) cols.push_back(coeff_vector(p % c.m, c.deg));
  if (d == 0) {
    c.g = RatMatrix(0, c.deg);
    for (std::size_t i = 0; i < c.deg; ++i) {
      RatVector e(c.deg);
      e[i] = 1;
      c.w.push_back(e);
    }
    c.bg = RatMatrix(0, c.deg);
    return c;
  }
  RatMatrix p = RatMatrix::from_columns(cols);
  RatMatrix pt = p.transpose();
  auto inv = inverse(pt * p);
  if (!inv) throw std::invalid_argument("extended orbit: p_i(A) must be linearly independent");
  c.g = *inv * pt;
  c.w = nullspace(pt);
  c.bg = inst.b.rows() > 0 ? inst.b * c.g : RatMatrix(0, c.deg);
  return c;
}

RatVector coeffs_at(const Coordinates& c, const Integer& n) { return coeff_vector(xpow_mod(n, c.m), c.deg); }

bool check_at(const Coordinates& c, const RatVector& cv) {
  for (const auto& w : c.w) {
    if (dot(w, cv) != 0) return false;
  }
  if (c.bg.rows() > 0) {
    for (const auto& v : c.bg * cv) {
      if (v < 0) return false;
    }
  }
  return true;
}

Decision finish_hit(const ExtendedOrbitInstance& inst, const Coordinates& c, const Integer& n) {
  RatVector u = c.g.rows() > 0 ? c.g * coeffs_at(c, n) : RatVector{};
  if (!verify_extended_orbit(inst, n, u)) throw std::logic_error("extended orbit: witness failed exact re-verification");
  Decision d = Decision::hit(n);
  d.coefficients = inst.lift.rows() > 0 ? inst.lift * u : u;
  return d;
}

}  // namespace

Decision decide_extended_orbit(const ExtendedOrbitInstance& inst, const SearchOptions& opts) {
  inst.validate();
  if (inst.dim() > 3) return Decision::unsupported("OutOfFragment", "target dimension above 3");
  Coordinates c = coordinates(inst);

  std::size_t s = 0;
  while (s < c.deg && c.m.coeff(s) == 0) ++s;
  // indices below the zero-root multiplicity are checked directly
  for (std::size_t n = 0; n < s && Integer(n) <= opts.max_n; ++n) {
    if (check_at(c, coeffs_at(c, Integer(n)))) return finish_hit(inst, c, Integer(n));
  }
  if (Integer(s) > opts.max_n) return Decision::inconclusive(opts.max_n, std::nullopt, "zero eigenvalue prefix");
  if (c.deg == s) return finish_hit(inst, c, Integer(s));  // nilpotent: A^s = 0

  RatPoly rest = c.m / RatPoly::monomial(Rational(1), s);
  const std::size_t k = static_cast<std::size_t>(rest.degree());
  std::vector<Rational> rec(k);
  for (std::size_t i = 1; i <= k; ++i) rec[i - 1] = -rest.coeff(k - i);
  std::vector<RatVector> window;
  for (std::size_t i = 0; i < k; ++i) window.push_back(coeffs_at(c, Integer(s + i)));
  auto make = [&](const RatVector& row) {
    std::vector<Rational> init;
    for (const auto& cv : window) init.push_back(dot(row, cv));
    return Lrs(rec, init);
  };
  LrsSystem sys;
  for (const auto& w : c.w) sys.zeros.push_back(make(w));
  for (std::size_t r = 0; r < c.bg.rows(); ++r) sys.nonneg.push_back(make(c.bg.row(r)));

  SearchOptions sub = opts;
  sub.max_n = opts.max_n - Integer(s);
  Decision d = decide_lrs_system(sys, sub);
  if (d.kind == DecisionKind::Hit) return finish_hit(inst, c, *d.witness + Integer(s));
  if (s > 0) {
    d.searched_up_to += Integer(s);
    if (d.certificate) {
      d.certificate->searched_up_to += Integer(s);
      d.certificate->detail = "indices below " + std::to_string(s) +
                              " checked directly; residues refer to n - " + std::to_string(s);
    }
  }
  return d;
}

}  // namespace orbitkit
