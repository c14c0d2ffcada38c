#include "orbitkit/loopfront.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace orbitkit {

LoopParseError::LoopParseError(int l, int c, const std::string& msg)
    : ParseError(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}

namespace {

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::vector<Token> lex(std::string_view s) {
  static const char* two[] = {":=", ">=", "<=", "==", "&&"};
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto adv = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < s.size() && s[i] != '\n') adv(1);
      continue;
    }
    Token t{Tok::Sym, "", line, col};
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::Number;
    } else {
      j = i + 1;
      for (const char* op : two)
        if (s.substr(i, 2) == op) j = i + 2;
      if (j == i + 1 && std::string_view("+-*/;,=(){}<>").find(c) == std::string_view::npos)
        throw LoopParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    t.text = std::string(s.substr(i, j - i));
    out.push_back(t);
    adv(j - i);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

struct Affine {
  RatVector lin;
  Rational c = 0;
  bool constant() const { return is_zero_vector(lin); }
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  LoopProgram program() {
    LoopProgram p;
    bool declared = false;
    if (peek_word("vars")) {
      next();
      declared = true;
      do {
        const Token& v = expect_ident();
        if (index_.count(v.text)) fail(v, "variable '" + v.text + "' declared twice");
        declare(v.text);
      } while (accept(","));
      expect(";");
    }
    expect_word("init");
    std::map<std::size_t, Rational> init;
    do {
      const Token& v = expect_ident();
      if (!index_.count(v.text)) {
        if (declared) fail(v, "undeclared variable '" + v.text + "'");
        declare(v.text);
      }
      expect("=");
      const Token& at = cur();
      Affine e = expr();
      if (!e.constant()) fail(at, "initial value must be constant");
      init[index_[v.text]] = e.c;
    } while (accept(","));
    expect(";");
    frozen_ = true;
    const std::size_t m = names_.size();
    p.variables = names_;
    p.init.assign(m, Rational(0));
    for (auto& [i, v] : init) p.init[i] = v;

    expect_word("while");
    expect("(");
    do {
      if (!accept_word("true")) guard(p.guard);
    } while (accept("&&") || accept_word("and"));
    expect(")");
    expect("{");
    p.update = RatMatrix::identity(m);
    p.shift.assign(m, Rational(0));
    while (!peek("}")) {
      const Token& v = expect_ident();
      auto it = index_.find(v.text);
      if (it == index_.end()) fail(v, "undeclared variable '" + v.text + "'");
      expect(":=");
      Affine e = expr();
      // compose: new x_i = e(current state) where current = update x + shift
      RatVector row(m, Rational(0));
      Rational c = e.c;
      for (std::size_t j = 0; j < m; ++j) {
        if (e.lin[j] == 0) continue;
        for (std::size_t l = 0; l < m; ++l) row[l] += e.lin[j] * p.update(j, l);
        c += e.lin[j] * p.shift[j];
      }
      for (std::size_t l = 0; l < m; ++l) p.update(it->second, l) = row[l];
      p.shift[it->second] = c;
      if (!accept(";")) break;
    }
    expect("}");
    if (cur().kind != Tok::End) fail(cur(), "trailing input after loop body");
    return p;
  }

 private:
  std::vector<Token> t_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  bool frozen_ = false;

  [[noreturn]] void fail(const Token& t, const std::string& msg) { throw LoopParseError(t.line, t.col, msg); }
  const Token& cur() const { return t_[pos_]; }
  const Token& next() { return t_[pos_++]; }
  bool peek(const char* s) const { return cur().kind == Tok::Sym && cur().text == s; }
  bool peek_word(const char* s) const { return cur().kind == Tok::Ident && cur().text == s; }
  bool accept(const char* s) {
    if (!peek(s)) return false;
    ++pos_;
    return true;
  }
  bool accept_word(const char* s) {
    if (!peek_word(s)) return false;
    ++pos_;
    return true;
  }
  std::string shown(const Token& t) const { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }
  void expect(const char* s) {
    if (!accept(s)) fail(cur(), std::string("expected '") + s + "', found " + shown(cur()));
  }
  void expect_word(const char* s) {
    if (!accept_word(s)) fail(cur(), std::string("expected '") + s + "', found " + shown(cur()));
  }
  const Token& expect_ident() {
    if (cur().kind != Tok::Ident) fail(cur(), "expected a variable name, found " + shown(cur()));
    return next();
  }
  void declare(const std::string& n) {
    index_[n] = names_.size();
    names_.push_back(n);
  }
  Affine constant(const Rational& c) const { return Affine{RatVector(names_.size(), Rational(0)), c}; }

  void guard(std::vector<Halfspace>& out) {
    Affine l = expr();
    const Token& op = cur();
    if (op.kind == Tok::Sym && (op.text == "<" || op.text == ">"))
      fail(op, "strict comparison '" + op.text + "' is not supported; use >= or <=");
    if (!(accept(">=") || accept("<=") || accept("=="))) fail(op, "expected '>=', '<=' or '==', found " + shown(op));
    Affine r = expr();
    RatVector n = l.lin - r.lin;  // n . x + (l.c - r.c) REL 0
    Rational off = r.c - l.c;
    if (op.text == ">=" || op.text == "==") out.push_back({n, off});
    if (op.text == "<=" || op.text == "==") out.push_back({Rational(-1) * n, -off});
  }

  Affine expr() {
    Affine a = term();
    for (;;) {
      if (accept("+")) {
        Affine b = term();
        a.lin = a.lin + b.lin;
        a.c += b.c;
      } else if (accept("-")) {
        Affine b = term();
        a.lin = a.lin - b.lin;
        a.c -= b.c;
      } else {
        return a;
      }
    }
  }

  Affine term() {
    Affine a = unary();
    for (;;) {
      const Token& op = cur();
      bool implicit = op.kind == Tok::Ident || op.kind == Tok::Number || peek("(");
      if (implicit && op.kind == Tok::Ident && (op.text == "and")) implicit = false;
      if (accept("*") || implicit) {
        Affine b = unary();
        if (!a.constant() && !b.constant()) fail(op, "non-affine expression (product of variables)");
        if (a.constant()) std::swap(a, b);
        a.lin = b.c * a.lin;
        a.c *= b.c;
      } else if (accept("/")) {
        const Token& at = cur();
        Affine b = unary();
        if (!b.constant()) fail(at, "non-affine expression (division by a variable)");
        if (b.c == 0) fail(at, "division by zero");
        Rational inv = 1 / b.c;
        a.lin = inv * a.lin;
        a.c *= inv;
      } else {
        return a;
      }
    }
  }

  Affine unary() {
    if (accept("-")) {
      Affine a = unary();
      a.lin = Rational(-1) * a.lin;
      a.c = -a.c;
      return a;
    }
    if (accept("+")) return unary();
    const Token& t = cur();
    if (t.kind == Tok::Number) {
      next();
      return constant(Rational(Integer(t.text)));
    }
    if (t.kind == Tok::Ident) {
      next();
      auto it = index_.find(t.text);
      if (it == index_.end()) {
        if (frozen_) fail(t, "undeclared variable '" + t.text + "'");
        fail(t, "variables cannot appear in initial values");
      }
      Affine a = constant(0);
      a.lin[it->second] = 1;
      return a;
    }
    if (accept("(")) {
      Affine a = expr();
      expect(")");
      return a;
    }
    fail(t, "expected an expression, found " + shown(t));
  }
};

}  // namespace

LoopProgram parse_loop(std::string_view text) { return Parser(lex(text)).program(); }

RatVector simulate_loop(const LoopProgram& p, unsigned long n) {
  RatVector x = p.init;
  for (unsigned long i = 0; i < n; ++i) x = p.update * x + p.shift;
  return x;
}

std::optional<unsigned long> loop_exit_step(const LoopProgram& p, unsigned long limit) {
  RatVector x = p.init;
  for (unsigned long n = 0; n <= limit; ++n) {
    for (const auto& h : p.guard)
      if (dot(h.normal, x) < h.offset) return n;
    x = p.update * x + p.shift;
  }
  return std::nullopt;
}

CompiledLoop compile_loop(const LoopProgram& p, LoopTarget target, const Rational& gap) {
  const std::size_t m = p.variables.size();
  RatMatrix a(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) a(i, j) = p.update(i, j);
    a(i, m) = p.shift[i];
  }
  a(m, m) = 1;
  RatVector x = p.init;
  x.push_back(1);
  RatVector last(m + 1, Rational(0));
  last[m] = 1;
  auto lift = [&](const RatVector& n) {
    RatVector v = n;
    v.push_back(0);
    return v;
  };

  CompiledLoop out;
  if (target == LoopTarget::Guard) {
    HPolyhedron q;
    q.ambient_dim = m + 1;
    for (const auto& h : p.guard) q.add(lift(h.normal), h.offset);
    q.add_equality(last, 1);
    out.instances.push_back(PhpInstance(a, x, q));
    out.polarity = "hit means the state satisfies the loop guard";
    return out;
  }
  for (const auto& h : p.guard) {
    HPolyhedron q;
    q.ambient_dim = m + 1;
    q.add(Rational(-1) * lift(h.normal), -(h.offset - gap));
    q.add_equality(last, 1);
    out.instances.push_back(PhpInstance(a, x, q));
  }
  out.polarity = "hit means some guard constraint v.x >= c is violated; the strict violation v.x < c is approximated by v.x <= c - " +
                 to_string(gap) + (gap == 0 ? " (boundary points count, so a hit may be spurious)" : " (violations within the gap are missed)");
  if (p.guard.empty()) out.polarity = "guard is always true: the loop never terminates";
  return out;
}

}  // namespace orbitkit
