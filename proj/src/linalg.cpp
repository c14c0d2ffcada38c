#include "orbitkit/linalg.hpp"

#include <sstream>

namespace orbitkit {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, Rational(0)) {}

RatMatrix::RatMatrix(std::vector<std::vector<Rational>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows[0].size() : 0;
  a_.reserve(r_ * c_);
  for (auto& row : rows) {
    if (row.size() != c_) throw std::invalid_argument("ragged matrix rows");
    for (auto& q : row) a_.push_back(std::move(q));
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVector>& cols) {
  if (cols.empty()) return RatMatrix();
  RatMatrix m(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
  }
  return m;
}

RatVector RatMatrix::row(std::size_t i) const { return RatVector(a_.begin() + static_cast<long>(i * c_), a_.begin() + static_cast<long>((i + 1) * c_)); }

RatVector RatMatrix::col(std::size_t j) const {
  RatVector v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

std::string RatMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < r_; ++i) {
    if (i) os << ", ";
    os << orbitkit::to_string(row(i));
  }
  os << "]";
  return os.str();
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch");
  RatMatrix m(a.r_, b.c_);
  for (std::size_t i = 0; i < a.r_; ++i) {
    for (std::size_t k = 0; k < a.c_; ++k) {
      const Rational& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
    }
  }
  return m;
}

RatVector operator*(const RatMatrix& a, const RatVector& v) {
  if (a.c_ != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  RatVector r(a.r_, Rational(0));
  for (std::size_t i = 0; i < a.r_; ++i) {
    for (std::size_t j = 0; j < a.c_; ++j) {
      if (v[j] != 0) r[i] += a(i, j) * v[j];
    }
  }
  return r;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
  RatMatrix m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
  return m;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) { return a + (Rational(-1) * b); }

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
  RatMatrix m = a;
  for (auto& q : m.a_) q *= s;
  return m;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVector operator+(const RatVector& a, const RatVector& b) {
  RatVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
  RatVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

RatVector operator*(const Rational& s, const RatVector& v) {
  RatVector r = v;
  for (auto& q : r) q *= s;
  return r;
}

bool is_zero_vector(const RatVector& v) {
  for (const auto& q : v) {
    if (q != 0) return false;
  }
  return true;
}

std::string to_string(const RatVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += "\"" + to_string(v[i]) + "\"";
  }
  return s + "]";
}

RatMatrix mat_pow(const RatMatrix& a, const Integer& n) {
  if (!a.square()) throw std::invalid_argument("mat_pow needs a square matrix");
  if (n < 0) throw std::invalid_argument("negative exponent");
  RatMatrix r = RatMatrix::identity(a.rows());
  std::size_t bits = bit_length(n);
  for (std::size_t i = bits; i-- > 0;) {
    r = r * r;
    if (mpz_tstbit(n.get_mpz_t(), i)) r = r * a;
  }
  return r;
}

RatMatrix mat_pow(const RatMatrix& a, unsigned long n) { return mat_pow(a, Integer(n)); }

RatMatrix poly_eval(const RatPoly& p, const RatMatrix& a) {
  RatMatrix acc(a.rows(), a.cols());
  RatMatrix id = RatMatrix::identity(a.rows());
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * a + (*it) * id;
  return acc;
}

RatMatrix rref(const RatMatrix& m0, std::vector<std::size_t>* pivots) {
  RatMatrix m = m0;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (m(i, c) != 0) {
        sel = i;
        break;
      }
    }
    if (sel == m.rows()) continue;
    if (sel != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    }
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = piv;
  return m;
}

std::size_t rank(const RatMatrix& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return piv.size();
}

std::vector<RatVector> nullspace(const RatMatrix& m) {
  std::vector<std::size_t> piv;
  RatMatrix r = rref(m, &piv);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    RatVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
    basis.push_back(v);
  }
  return basis;
}

std::optional<LinearSolution> solve_linear(const RatMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_linear shape mismatch");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  std::vector<std::size_t> piv;
  RatMatrix r = rref(aug, &piv);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  LinearSolution sol;
  sol.particular.assign(m.cols(), Rational(0));
  for (std::size_t i = 0; i < piv.size(); ++i) sol.particular[piv[i]] = r(i, m.cols());
  sol.nullspace = nullspace(m);
  return sol;
}

Rational determinant(const RatMatrix& m0) {
  if (!m0.square()) throw std::invalid_argument("determinant of non-square matrix");
  RatMatrix m = m0;
  std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = n;
    for (std::size_t i = c; i < n; ++i) {
      if (m(i, c) != 0) {
        sel = i;
        break;
      }
    }
    if (sel == n) return 0;
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (!m.square()) return std::nullopt;
  std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> piv;
  RatMatrix r = rref(aug, &piv);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  }
  return inv;
}

RatPoly charpoly(const RatMatrix& a) {
  if (!a.square()) throw std::invalid_argument("charpoly of non-square matrix");
  std::size_t n = a.rows();
  RatMatrix h = a;
  // reduce to upper Hessenberg form by similarity
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t sel = n;
    for (std::size_t i = m; i < n; ++i) {
      if (h(i, m - 1) != 0) {
        sel = i;
        break;
      }
    }
    if (sel == n) continue;
    if (sel != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(sel, j), h(m, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, sel), h(i, m));
    }
    for (std::size_t i = m + 1; i < n; ++i) {
      if (h(i, m - 1) == 0) continue;
      Rational u = h(i, m - 1) / h(m, m - 1);
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= u * h(m, j);
      for (std::size_t r = 0; r < n; ++r) h(r, m) += u * h(r, i);
    }
  }
  // p_k = charpoly of leading k x k block
  std::vector<RatPoly> p(n + 1);
  p[0] = RatPoly::constant(1);
  for (std::size_t k = 1; k <= n; ++k) {
    std::size_t m = k - 1;
    p[k] = (RatPoly::x() - RatPoly::constant(h(m, m))) * p[k - 1];
    Rational t = 1;
    for (std::size_t i = m; i-- > 0;) {
      t *= h(i + 1, i);
      if (t == 0) break;
      p[k] = p[k] - (t * h(i, m)) * p[i];
    }
  }
  return p[n];
}

RatPoly local_minimal_polynomial(const RatMatrix& a, const RatVector& v) {
  if (is_zero_vector(v)) return RatPoly::constant(1);
  std::vector<RatVector> krylov{v};
  while (true) {
    RatVector next = a * krylov.back();
    RatMatrix k = RatMatrix::from_columns(krylov);
    auto sol = solve_linear(k, next);
    if (sol) {
      // next = sum c_i A^i v  =>  x^d - sum c_i x^i
      std::vector<Rational> c(krylov.size() + 1, Rational(0));
      for (std::size_t i = 0; i < krylov.size(); ++i) c[i] = -sol->particular[i];
      c.back() = 1;
      return RatPoly(std::move(c));
    }
    krylov.push_back(next);
  }
}

RatPoly minimal_polynomial(const RatMatrix& a) {
  if (!a.square()) throw std::invalid_argument("minimal polynomial of non-square matrix");
  RatPoly acc = RatPoly::constant(1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    RatVector e(a.rows(), Rational(0));
    e[i] = 1;
    // skip e_i already annihilated by acc
    RatVector y(a.rows(), Rational(0));
    const auto& c = acc.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) y = a * y + (*it) * e;
    if (is_zero_vector(y)) continue;
    acc = lcm(acc, local_minimal_polynomial(a, e));
  }
  return acc;
}

RatMatrix companion(const RatPoly& monic) {
  int d = monic.degree();
  if (d < 1) throw std::invalid_argument("companion of constant");
  RatPoly f = monic.monic();
  std::size_t n = static_cast<std::size_t>(d);
  RatMatrix c(n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -f.coeff(i);
  return c;
}

}  // namespace orbitkit
