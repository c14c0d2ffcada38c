#include "orbitkit/php.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace orbitkit {

PhpInstance::PhpInstance(RatMatrix a_, RatVector x_, HPolyhedron p_) : a(std::move(a_)), x(std::move(x_)), p(std::move(p_)) {
  if (!a.square() || a.rows() != x.size()) throw std::invalid_argument("php: A must be m x m with m = |x|");
  if (p.ambient_dim != x.size()) throw std::invalid_argument("php: polyhedron lives in the wrong dimension");
  for (const auto& h : p.halfspaces)
    if (h.normal.size() != x.size()) throw std::invalid_argument("php: halfspace normal has the wrong length");
  k_ = dimension(p);
}

std::string HardnessTag::to_string() const {
  switch (kind) {
    case Decidable: return polynomial ? "Decidable(P)" : "Decidable(PSPACE)";
    case SkolemHard: return "SkolemHard(" + std::to_string(skolem_order) + ")";
    case DiophantineHard: return "DiophantineHard";
    case Both: return "Both(D,S" + std::to_string(skolem_order) + ")";
  }
  return "?";
}

HardnessTag classify(int m, int k) {
  if (k < 0 || k > m) throw std::invalid_argument("classify: need 0 <= k <= m");
  HardnessTag t;
  if (k == 0) {
    t.polynomial = true;
  } else if (k <= 2 || (k == 3 && m == 3)) {
    // PSPACE
  } else if (k == 3) {
    t.kind = HardnessTag::SkolemHard;
    t.skolem_order = 5;
  } else if (m >= k + 1) {
    t.kind = HardnessTag::Both;
    t.skolem_order = k + 1;
  } else {
    t.kind = HardnessTag::DiophantineHard;
  }
  return t;
}

namespace {

RatMatrix pad_matrix(const RatMatrix& a) {
  std::size_t m = a.rows();
  RatMatrix out(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(i, j) = a(i, j);
  out(m, m) = 1;
  return out;
}

RatVector append(RatVector v, const Rational& last) {
  v.push_back(last);
  return v;
}

void require_k(const PhpInstance& inst, int k, const char* who) {
  if (inst.k() != k) throw std::invalid_argument(std::string(who) + ": target has dimension " + std::to_string(inst.k()));
}

ExtendedOrbitInstance padded(const PhpInstance& inst, const std::vector<RatVector>& basis, const RatMatrix& b) {
  return orbit_to_matrix_power(pad_matrix(inst.a), append(inst.x, 1), basis, b);
}

}  // namespace

ExtendedOrbitInstance reduce_k1(const PhpInstance& inst) {
  require_k(inst, 1, "reduce_k1");
  Piece1D piece = decompose_1d(inst.p);
  std::vector<RatVector> basis{append(piece.base, 1), append(piece.direction, 0)};
  RatMatrix b(0, 2);
  if (piece.range == Range1D::Ray) b = RatMatrix({{Rational(0), Rational(1)}});
  if (piece.range == Range1D::Segment) b = RatMatrix({{Rational(0), Rational(1)}, {Rational(1), Rational(-1)}});
  return padded(inst, basis, b);
}

std::vector<ExtendedOrbitInstance> reduce_k2(const PhpInstance& inst) {
  require_k(inst, 2, "reduce_k2");
  std::vector<ExtendedOrbitInstance> out;
  const Rational z(0), o(1), mo(-1);
  for (const auto& piece : decompose_2d(inst.p)) {
    std::vector<RatVector> basis{append(piece.base, 1), append(piece.dir1, 0), append(piece.dir2, 0)};
    std::vector<std::vector<Rational>> rows{{z, o, z}, {z, z, o}};
    if (piece.shape == Shape2D::Triangle) rows.push_back({o, mo, mo});
    if (piece.shape == Shape2D::Strip) rows.push_back({o, z, mo});
    out.push_back(padded(inst, basis, RatMatrix(rows)));
  }
  return out;
}

std::size_t full_dim_offset(const PhpInstance& inst) {
  RatPoly f = charpoly(inst.a);
  std::size_t s = 0;
  while (f.coeff(s) == 0) ++s;
  return s;
}

SimposInstance reduce_full_dim(const PhpInstance& inst) {
  if (inst.k() != static_cast<int>(inst.m())) throw std::invalid_argument("reduce_full_dim: target is not full-dimensional");
  std::size_t s = full_dim_offset(inst);
  RatPoly rec = RatPoly::linear_root(1) * (charpoly(inst.a) / RatPoly::monomial(1, s));
  std::size_t k = static_cast<std::size_t>(rec.degree());
  std::vector<Rational> r(k);
  for (std::size_t i = 1; i <= k; ++i) r[i - 1] = -rec.coeff(k - i);

  std::vector<RatVector> orbit;
  RatVector y = mat_pow(inst.a, static_cast<unsigned long>(s)) * inst.x;
  for (std::size_t i = 0; i < k; ++i) {
    orbit.push_back(y);
    y = inst.a * y;
  }
  std::vector<std::vector<Rational>> init;
  for (const auto& h : inst.p.halfspaces) {
    std::vector<Rational> seq;
    for (const auto& pt : orbit) seq.push_back(dot(h.normal, pt) - h.offset);
    init.push_back(seq);
  }
  if (init.empty()) init.push_back(std::vector<Rational>(k, Rational(0)));  // P is everything
  return SimposInstance(r, init);
}

bool php_holds(const PhpInstance& inst, const Integer& n) { return member(inst.p, mat_pow(inst.a, n) * inst.x); }

namespace {

Decision shifted(Decision d, std::size_t s) {
  Integer off(s);
  if (d.witness) *d.witness += off;
  if (d.searched_up_to >= 0) d.searched_up_to += off;
  if (d.certificate && d.certificate->searched_up_to >= 0) d.certificate->searched_up_to += off;
  return d;
}

Decision checked_hit(const PhpInstance& inst, Decision d) {
  if (d.kind == DecisionKind::Hit && !php_holds(inst, *d.witness))
    throw std::logic_error("php: reported witness " + to_string(*d.witness) + " fails exact membership");
  return d;
}

// Disjunction over reduced instances: least hit, otherwise the weakest outcome.
Decision merge(std::vector<Decision> parts) {
  const Decision* best = nullptr;
  for (const auto& d : parts)
    if (d.kind == DecisionKind::Hit && (!best || *d.witness < *best->witness)) best = &d;
  if (best) return *best;
  for (auto kind : {DecisionKind::Unsupported, DecisionKind::Inconclusive})
    for (const auto& d : parts)
      if (d.kind == kind) return d;
  Certificate c;
  c.kind = parts.front().certificate->kind;
  c.searched_up_to = -1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Certificate& pc = *parts[i].certificate;
    if (pc.kind != c.kind) c.kind = CertificateKind::SearchedToTheoreticalBound;
    c.modulus = std::max(c.modulus, pc.modulus);
    c.searched_up_to = std::max(c.searched_up_to, pc.searched_up_to);
    c.detail += (i ? "; " : "") + ("piece " + std::to_string(i) + ": " + to_string(pc.kind));
  }
  return Decision::never(c);
}

}  // namespace

Decision decide_php(const PhpInstance& inst, const SearchOptions& opts) {
  const int k = inst.k();
  const int m = static_cast<int>(inst.m());
  if (k < 0) {
    Certificate c;
    c.kind = CertificateKind::SearchedToTheoreticalBound;
    c.searched_up_to = -1;
    c.detail = "target polyhedron is empty";
    return Decision::never(c);
  }
  HardnessTag tag = classify(m, k);

  Decision d;
  if (k == 0) {
    auto hull = affine_hull(inst.p);
    ExtendedOrbitInstance eo = padded(inst, {append(hull->point, 1)}, RatMatrix(0, 1));
    d = decide_extended_orbit(eo, opts);
  } else if (k == 1) {
    d = decide_extended_orbit(reduce_k1(inst), opts);
  } else if (k == 2) {
    std::vector<Decision> parts;
    for (const auto& eo : reduce_k2(inst)) parts.push_back(decide_extended_orbit(eo, opts));
    d = merge(std::move(parts));
  } else if (k == m && m <= 4) {
    std::size_t s = full_dim_offset(inst);
    for (std::size_t n = 0; n < s; ++n)
      if (php_holds(inst, Integer(n))) return Decision::hit(Integer(n));
    SearchOptions sub = opts;
    sub.max_n = std::max<Integer>(Integer(0), opts.max_n - Integer(s));
    d = decide_simpos(reduce_full_dim(inst), sub);
    if (d.kind == DecisionKind::Unsupported) return Decision::unsupported(tag.to_string(), d.note);
    d = shifted(std::move(d), s);
  } else {
    return Decision::unsupported(tag.to_string(), "no decision procedure for (m,k) = (" + std::to_string(m) + "," +
                                                      std::to_string(k) + ")");
  }
  if (d.kind == DecisionKind::Unsupported) d.tag = d.tag.empty() ? tag.to_string() : d.tag;
  return checked_hit(inst, std::move(d));
}

PhpInstance pad_instance(const PhpInstance& inst, PadMode mode) {
  std::size_t m = inst.m();
  HPolyhedron q;
  q.ambient_dim = m + 1;
  RatVector last(m + 1, Rational(0));
  last[m] = 1;
  if (mode == PadMode::SameK) {
    for (const auto& h : inst.p.halfspaces) q.add(append(h.normal, 0), h.offset);
    q.add_equality(last, 0);
    return PhpInstance(pad_matrix(inst.a), append(inst.x, 0), q);
  }
  // Homogenised target {(y, s) : v.y >= c s, s >= 0}.  The orbit keeps s = 1, where
  // it reads t in P, and the cone has dimension k + 1.
  for (const auto& h : inst.p.halfspaces) q.add(append(h.normal, -h.offset), 0);
  q.add(last, 0);
  return PhpInstance(pad_matrix(inst.a), append(inst.x, 1), q);
}

PhpInstance skolem5_to_php43(const Lrs& s) {
  if (s.order() != 5) throw std::invalid_argument("skolem5_to_php43: order must be 5");
  auto roots = char_roots(s);
  std::vector<Algebraic> cplx;
  std::optional<Algebraic> rho;
  for (const auto& r : roots) {
    if (r.multiplicity != 1) throw std::invalid_argument("skolem5_to_php43: repeated characteristic root");
    if (r.value.is_real()) {
      if (rho) throw std::invalid_argument("skolem5_to_php43: more than one real root");
      rho = r.value;
    } else {
      cplx.push_back(r.value);
    }
  }
  if (!rho || cplx.size() != 4) throw std::invalid_argument("skolem5_to_php43: need two conjugate pairs and one real root");
  if (!rho->is_rational()) throw std::invalid_argument("skolem5_to_php43: real root must be rational");
  Algebraic mod = abs(cplx[0]);
  for (const auto& z : cplx)
    if (compare_real(abs(z), mod) != 0) throw std::invalid_argument("skolem5_to_php43: complex roots differ in modulus");
  Algebraic rabs = abs(*rho);
  if (rabs.is_zero() || compare_real(rabs, mod) >= 0) throw std::invalid_argument("skolem5_to_php43: need |lambda| > |rho| > 0");

  Rational r = rho->rational_value();
  // S(n) = c rho^n + (the complex part); c from the quotient recurrence.
  RatPoly f = s.char_poly();
  RatPoly q = f / RatPoly::linear_root(r);
  std::vector<Rational> t = lrs_terms(s, 5);
  // q(E) kills the complex part, so q(E) S(n) = c rho^n q(rho).
  Rational qs = 0;
  for (int i = 0; i <= q.degree(); ++i) qs += q.coeff(static_cast<std::size_t>(i)) * t[static_cast<std::size_t>(i)];
  Rational c = qs / q.eval(r);

  // S2(n) = S(n)/rho^n - c has characteristic polynomial q(rho x)/rho^4.
  RatPoly q2 = q.scale_var(r).monic();
  RatMatrix a(4, 4);
  for (std::size_t i = 0; i + 1 < 4; ++i) a(i, i + 1) = 1;
  for (std::size_t j = 0; j < 4; ++j) a(3, j) = -q2.coeff(j);
  RatVector x(4);
  for (std::size_t j = 0; j < 4; ++j) x[j] = t[j] / pow(r, static_cast<unsigned long>(j)) - c;

  HPolyhedron p;
  p.ambient_dim = 4;
  p.add_equality(RatVector{Rational(1), Rational(0), Rational(0), Rational(0)}, -c);
  return PhpInstance(a, x, p);
}

SimposInstance dioph_sequences(const Rational& a, const Algebraic& lambda) {
  Algebraic re = real_part(lambda), im = imag_part(lambda);
  if (!re.is_rational() || !im.is_rational()) throw std::invalid_argument("dioph_sequences: lambda must be a Gaussian rational");
  Rational x = re.rational_value(), y = im.rational_value();
  if (x * x + y * y != 1) throw std::invalid_argument("dioph_sequences: |lambda| must be 1");
  if (x == 0 || y == 0) throw std::invalid_argument("dioph_sequences: lambda must not be +-1 or +-i");
  // (z - lambda)^2 (z - conj lambda)^2 = (z^2 - 2x z + 1)^2
  RatPoly quad(std::vector<Rational>{Rational(1), -2 * x, Rational(1)});
  RatPoly cp = quad * quad;
  std::vector<Rational> rec(4);
  for (std::size_t i = 1; i <= 4; ++i) rec[i - 1] = -cp.coeff(4 - i);
  std::vector<Rational> s1, s2;
  Rational cr = 1, ci = 0;  // lambda^n
  for (int n = 0; n < 4; ++n) {
    s1.push_back(a * cr + Rational(n) * ci);
    s2.push_back(a * cr - Rational(n) * ci);
    Rational nr = cr * x - ci * y;
    ci = cr * y + ci * x;
    cr = nr;
  }
  return SimposInstance(rec, {s1, s2});
}

PhpInstance php_from_simpos(const SimposInstance& inst) {
  const std::size_t k = inst.order();
  if (k == 0 || inst.size() == 0) throw std::invalid_argument("php_from_simpos: empty instance");
  RatMatrix a(k, k);
  for (std::size_t i = 0; i + 1 < k; ++i) a(i, i + 1) = 1;
  for (std::size_t j = 0; j < k; ++j) a(k - 1, j) = inst.recurrence[k - 1 - j];
  // S_i(n) = c . (S_0(n), ..., S_0(n+k-1)) holds for all n once it holds for n < k.
  std::vector<Rational> s0 = lrs_terms(inst.sequence(0), 2 * k);
  RatMatrix h(k, k);
  for (std::size_t n = 0; n < k; ++n)
    for (std::size_t j = 0; j < k; ++j) h(n, j) = s0[n + j];
  HPolyhedron p;
  p.ambient_dim = k;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    auto sol = solve_linear(h, inst.initial[i]);
    if (!sol) throw std::invalid_argument("php_from_simpos: sequence " + std::to_string(i) + " is not a combination of shifts of the first");
    p.add(sol->particular, 0);
  }
  RatVector x(s0.begin(), s0.begin() + static_cast<std::ptrdiff_t>(k));
  return PhpInstance(a, x, p);
}

Lrs skolem5_sample(std::optional<unsigned> zero_at, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
  // Gaussian integers of modulus 5 that are neither equal nor conjugate
  const int lam[2][2] = {{3, 4}, {4, 3}};
  int s1 = pick(0, 1) ? 1 : -1, s2 = pick(0, 1) ? 1 : -1;
  Rational l1r = lam[0][0] * s1, l1i = lam[0][1], l2r = lam[1][0] * s2, l2i = lam[1][1];
  Rational rho(pick(1, 4) * (pick(0, 1) ? 1 : -1), pick(1, 2));
  rho.canonicalize();
  auto nz = [&]() -> Rational {
    int v = 0;
    while (v == 0) v = pick(-3, 3);
    return Rational(v);
  };
  Rational ar = nz(), ai = nz(), br = nz(), bi = nz();
  // 2 Re(a l^n) by exact Gaussian powering
  auto re_term = [](Rational cr, Rational ci, const Rational& lr, const Rational& li, unsigned n) -> Rational {
    for (unsigned i = 0; i < n; ++i) {
      Rational t = cr * lr - ci * li;
      ci = cr * li + ci * lr;
      cr = t;
    }
    return 2 * cr;
  };
  auto complex_part = [&](unsigned n) -> Rational { return re_term(ar, ai, l1r, l1i, n) + re_term(br, bi, l2r, l2i, n); };
  Rational c = nz();
  if (zero_at) {
    while (complex_part(*zero_at) == 0) ar = nz(), ai = nz();  // c must stay nonzero
    c = -complex_part(*zero_at) / pow(rho, static_cast<unsigned long>(*zero_at));
  }
  RatPoly q1(std::vector<Rational>{l1r * l1r + l1i * l1i, -2 * l1r, Rational(1)});
  RatPoly q2(std::vector<Rational>{l2r * l2r + l2i * l2i, -2 * l2r, Rational(1)});
  RatPoly f = q1 * q2 * RatPoly::linear_root(rho);
  std::vector<Rational> init;
  for (unsigned n = 0; n < 5; ++n) init.push_back(c * pow(rho, static_cast<unsigned long>(n)) + complex_part(n));
  return Lrs::from_char_poly(f, init);
}

}  // namespace orbitkit
