#include "orbitkit/poly.hpp"

#include <algorithm>
#include <sstream>

namespace orbitkit {

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly RatPoly::constant(const Rational& c) { return RatPoly(std::vector<Rational>{c}); }
RatPoly RatPoly::x() { return RatPoly({Rational(0), Rational(1)}); }
RatPoly RatPoly::linear_root(const Rational& r) { return RatPoly({Rational(-r), Rational(1)}); }

RatPoly RatPoly::monomial(const Rational& c, std::size_t deg) {
  std::vector<Rational> v(deg + 1, Rational(0));
  v[deg] = c;
  return RatPoly(std::move(v));
}

Rational RatPoly::eval(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return RatPoly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return RatPoly(std::move(d));
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return *this;
  Rational lc = c_.back();
  std::vector<Rational> v(c_);
  for (auto& q : v) q /= lc;
  return RatPoly(std::move(v));
}

RatPoly RatPoly::compose(const RatPoly& inner) const {
  RatPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
  return acc;
}

RatPoly RatPoly::negate_var() const {
  std::vector<Rational> v(c_);
  for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return RatPoly(std::move(v));
}

RatPoly RatPoly::reversed() const {
  std::vector<Rational> v(c_.rbegin(), c_.rend());
  return RatPoly(std::move(v));
}

RatPoly RatPoly::square_var() const {
  if (is_zero()) return *this;
  std::vector<Rational> v(2 * c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[2 * i] = c_[i];
  return RatPoly(std::move(v));
}

RatPoly RatPoly::scale_var(const Rational& c) const {
  std::vector<Rational> v(c_);
  Rational p = 1;
  for (auto& q : v) {
    q *= p;
    p *= c;
  }
  return RatPoly(std::move(v));
}

std::vector<Integer> RatPoly::primitive_integer() const {
  if (is_zero()) return {};
  Integer den = 1;
  for (const auto& q : c_) den = orbitkit::lcm(den, Integer(q.get_den()));
  std::vector<Integer> z(c_.size());
  Integer g = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Rational t = c_[i] * den;
    z[i] = t.get_num();
    g = orbitkit::gcd(g, z[i]);
  }
  if (z.back() < 0) g = -g;
  for (auto& v : z) v /= g;
  return z;
}

RatPoly RatPoly::from_integers(const std::vector<Integer>& z) {
  std::vector<Rational> v(z.begin(), z.end());
  return RatPoly(std::move(v));
}

Integer RatPoly::height() const {
  Integer h = 0;
  for (const auto& z : primitive_integer()) {
    Integer a = abs(z);
    if (a > h) h = a;
  }
  return h;
}

std::string RatPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& q = c_[static_cast<std::size_t>(i)];
    if (q == 0) continue;
    Rational a = abs_of(q);
    if (!first) os << (q < 0 ? " - " : " + ");
    else if (q < 0) os << "-";
    first = false;
    bool unit = a == 1 && i > 0;
    if (!unit) os << orbitkit::to_string(a);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& a) {
  std::vector<Rational> v(a.c_);
  for (auto& q : v) q = -q;
  return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return RatPoly(std::move(v));
}

RatPoly operator*(const Rational& s, const RatPoly& a) {
  if (s == 0) return RatPoly();
  std::vector<Rational> v(a.c_);
  for (auto& q : v) q *= s;
  return RatPoly(std::move(v));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r(a.coeffs());
  int db = b.degree();
  if (a.degree() < db) return {RatPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  Rational lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Rational t = r[static_cast<std::size_t>(i)] / lb;
    q[static_cast<std::size_t>(i - db)] = t;
    if (t == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= t * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly operator/(const RatPoly& a, const RatPoly& b) { return divmod(a, b).first; }
RatPoly operator%(const RatPoly& a, const RatPoly& b) { return divmod(a, b).second; }

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  // Primitive remainder sequence keeps coefficient growth in check.
  auto prim = [](const RatPoly& p) { return p.is_zero() ? p : RatPoly::from_integers(p.primitive_integer()); };
  RatPoly x = prim(a), y = prim(b);
  while (!y.is_zero()) {
    RatPoly r = prim(x % y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

RatPoly lcm(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  return ((a * b) / gcd(a, b)).monic();
}

RatPoly pow(const RatPoly& p, unsigned e) {
  RatPoly r = RatPoly::constant(1), b = p;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

bool divides(const RatPoly& d, const RatPoly& p) { return (p % d).is_zero(); }

std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& p) {
  if (p.is_zero()) throw std::domain_error("zero input");
  std::vector<std::pair<RatPoly, int>> out;
  if (p.degree() == 0) return out;
  RatPoly f = p.monic();
  RatPoly fd = f.derivative();
  RatPoly a = gcd(f, fd);
  RatPoly b = f / a;
  // Yun: c = f'/a, d = c - b'
  RatPoly c = fd / a;
  RatPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    RatPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g.monic(), i);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

RatPoly squarefree_part(const RatPoly& p) {
  RatPoly r = RatPoly::constant(1);
  for (const auto& [f, m] : squarefree_decomposition(p)) r = r * f;
  return r;
}

unsigned euler_phi(unsigned r) {
  unsigned res = r, n = r;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    res -= res / p;
  }
  if (n > 1) res -= res / n;
  return res;
}

RatPoly cyclotomic(unsigned r) {
  if (r == 0) throw std::invalid_argument("cyclotomic order 0");
  RatPoly num = RatPoly::monomial(1, r) - RatPoly::constant(1);
  for (unsigned d = 1; d < r; ++d) {
    if (r % d == 0) num = num / cyclotomic(d);
  }
  return num;
}

RatPoly parse_poly(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (ch != '[' && ch != ']') s.push_back(ch);
  }
  std::vector<Rational> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
  if (v.empty()) throw ParseError("empty polynomial");
  return RatPoly(std::move(v));
}

}  // namespace orbitkit
