#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitkit/poly.hpp"
#include "orbitkit/rational.hpp"

namespace orbitkit {

using RatVector = std::vector<Rational>;

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  explicit RatMatrix(std::vector<std::vector<Rational>> rows);
  static RatMatrix identity(std::size_t n);
  static RatMatrix from_columns(const std::vector<RatVector>& cols);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  RatVector row(std::size_t i) const;
  RatVector col(std::size_t j) const;

  RatMatrix transpose() const;
  std::string to_string() const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatVector operator*(const RatMatrix& a, const RatVector& v);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rational& s, const RatMatrix& a);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rational> a_;
};

Rational dot(const RatVector& a, const RatVector& b);
RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector operator*(const Rational& s, const RatVector& v);
bool is_zero_vector(const RatVector& v);
std::string to_string(const RatVector& v);

/// A^n by repeated squaring.
RatMatrix mat_pow(const RatMatrix& a, const Integer& n);
RatMatrix mat_pow(const RatMatrix& a, unsigned long n);

/// p(A)
RatMatrix poly_eval(const RatPoly& p, const RatMatrix& a);

struct LinearSolution {
  RatVector particular;
  std::vector<RatVector> nullspace;
};

/// Exact solution set of M y = b, or nullopt when inconsistent.
std::optional<LinearSolution> solve_linear(const RatMatrix& m, const RatVector& b);
std::vector<RatVector> nullspace(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
Rational determinant(const RatMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);
/// Reduced row echelon form; pivots (column indices) written to *pivots.
RatMatrix rref(const RatMatrix& m, std::vector<std::size_t>* pivots = nullptr);

/// det(xI - A), via Hessenberg reduction.
RatPoly charpoly(const RatMatrix& a);
/// Monic minimal polynomial (lcm of Krylov annihilators of the unit vectors).
RatPoly minimal_polynomial(const RatMatrix& a);
/// Monic minimal annihilating polynomial of v under A.
RatPoly local_minimal_polynomial(const RatMatrix& a, const RatVector& v);

/// Companion matrix of a monic polynomial (last column holds -coefficients).
RatMatrix companion(const RatPoly& monic);

/// Gaussian elimination over any exact field type with ==, +, -, *, / and a
/// zero constructor.  Returns one solution (free variables zero) or nullopt.
template <typename T>
std::optional<std::vector<T>> gauss_solve(std::vector<std::vector<T>> m, std::vector<T> b, const T& zero) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (!(m[i][c] == zero)) {
        sel = i;
        break;
      }
    }
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    std::swap(b[sel], b[r]);
    T inv = m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] / inv;
    b[r] = b[r] / inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == zero) continue;
      T f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
      b[i] = b[i] - f * b[r];
    }
    piv.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (!(b[i] == zero)) return std::nullopt;
  }
  std::vector<T> x(cols, zero);
  for (std::size_t i = 0; i < r; ++i) x[piv[i]] = b[i];
  return x;
}

}  // namespace orbitkit
