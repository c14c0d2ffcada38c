#include "orbitkit/oracle.hpp"

#include <stdexcept>

namespace orbitkit {

namespace {

bool inside(const HPolyhedron& p, const RatVector& y) {
  for (const auto& h : p.halfspaces) {
    Rational s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += h.normal[i] * y[i];
    if (s < h.offset) return false;
  }
  return true;
}

}  // namespace

SearchReport orbit_brute(const RatMatrix& a, const RatVector& x, const HPolyhedron& p, unsigned long limit, bool keep_trace) {
  SearchReport rep;
  RatVector y = x;
  for (unsigned long n = 0;; ++n) {
    rep.searched_up_to = n;
    if (keep_trace) rep.trace.push_back(y);
    if (inside(p, y)) {
      rep.found = n;
      return rep;
    }
    if (n == limit) return rep;
    RatVector next(y.size(), Rational(0));
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) next[i] += a(i, j) * y[j];
    y = std::move(next);
  }
}

SearchReport simpos_brute(const std::vector<Lrs>& seqs, unsigned long limit, bool keep_trace) {
  SearchReport rep;
  if (seqs.empty()) {
    rep.found = 0;
    return rep;
  }
  const auto& rec = seqs.front().recurrence;
  for (const auto& s : seqs)
    if (s.recurrence != rec) throw std::invalid_argument("simpos_brute: sequences must share the recurrence");
  const std::size_t k = rec.size();
  std::vector<std::vector<Rational>> win;
  for (const auto& s : seqs) win.push_back(s.initial);
  for (unsigned long n = 0;; ++n) {
    rep.searched_up_to = n;
    RatVector now;
    bool ok = true;
    for (const auto& w : win) {
      now.push_back(w[0]);
      if (w[0] < 0) ok = false;
    }
    if (keep_trace) rep.trace.push_back(now);
    if (ok) {
      rep.found = n;
      return rep;
    }
    if (n == limit) return rep;
    for (auto& w : win) {
      Rational next = 0;
      for (std::size_t i = 0; i < k; ++i) next += rec[i] * w[k - 1 - i];
      w.erase(w.begin());
      w.push_back(next);
    }
  }
}

SearchReport extended_orbit_brute(const RatMatrix& a, const std::vector<RatPoly>& polys, const RatMatrix& b,
                                  unsigned long limit, RatVector* u) {
  const std::size_t m = a.rows(), d = polys.size();
  // columns: vec(p_i(A)), by Horner
  RatMatrix cols(m * m, d);
  for (std::size_t i = 0; i < d; ++i) {
    RatMatrix acc(m, m);
    const auto& c = polys[i].coeffs();
    for (std::size_t t = c.size(); t-- > 0;) {
      acc = acc * a;
      for (std::size_t r = 0; r < m; ++r) acc(r, r) += c[t];
    }
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t q = 0; q < m; ++q) cols(r * m + q, i) = acc(r, q);
  }
  SearchReport rep;
  RatMatrix pw = RatMatrix::identity(m);
  for (unsigned long n = 0;; ++n) {
    rep.searched_up_to = n;
    RatVector rhs(m * m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t q = 0; q < m; ++q) rhs[r * m + q] = pw(r, q);
    if (auto sol = solve_linear(cols, rhs)) {
      bool ok = true;
      for (std::size_t r = 0; r < b.rows() && ok; ++r) {
        Rational s = 0;
        for (std::size_t j = 0; j < d; ++j) s += b(r, j) * sol->particular[j];
        ok = s >= 0;
      }
      if (ok) {
        rep.found = n;
        if (u) *u = sol->particular;
        return rep;
      }
    }
    if (n == limit) return rep;
    pw = pw * a;
  }
}

}  // namespace orbitkit
