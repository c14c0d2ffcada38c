#include "orbitkit/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace orbitkit {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) { throw ParseError(path + ": " + msg); }

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path, "missing field '" + key + "'");
  return *it;
}

Rational rat(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (!j.is_string()) bad(path, "expected a rational as \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    bad(path, e.what());
  }
}

RatVector vec(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected a list of rationals");
  RatVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rat(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

RatMatrix mat(const json& j, const std::string& path, std::optional<std::size_t> cols = std::nullopt) {
  if (!j.is_array()) bad(path, "expected a list of rows");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vec(j[i], path + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size()) bad(path, "rows differ in length");
  }
  if (rows.empty()) return RatMatrix(0, cols.value_or(0));
  if (cols && rows.front().size() != *cols) bad(path, "expected " + std::to_string(*cols) + " columns");
  return RatMatrix(rows);
}

HPolyhedron polyhedron(const json& j, std::size_t dim, const std::string& path) {
  if (!j.is_array()) bad(path, "expected a list of {normal, offset}");
  HPolyhedron p;
  p.ambient_dim = dim;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string at = path + "[" + std::to_string(i) + "]";
    RatVector n = vec(field(j[i], "normal", at), at + ".normal");
    if (n.size() != dim) bad(at + ".normal", "expected length " + std::to_string(dim));
    p.add(n, rat(field(j[i], "offset", at), at + ".offset"));
  }
  return p;
}

json jrat(const Rational& q) { return to_string(q); }
json jvec(const RatVector& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(jrat(q));
  return a;
}
json jmat(const RatMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(jvec(m.row(i)));
  return a;
}
json jpoly(const HPolyhedron& p) {
  json a = json::array();
  for (const auto& h : p.halfspaces) a.push_back(json{{"normal", jvec(h.normal)}, {"offset", jrat(h.offset)}});
  return a;
}

PhpInstance parse_php(const json& j) {
  const std::string at = "php";
  RatVector x = vec(field(j, "start", at), at + ".start");
  RatMatrix a = mat(field(j, "matrix", at), at + ".matrix", x.size());
  if (a.rows() != x.size()) bad(at + ".matrix", "matrix must be square with the size of start");
  HPolyhedron p = polyhedron(field(j, "polyhedron", at), x.size(), at + ".polyhedron");
  try {
    return PhpInstance(a, x, p);
  } catch (const std::invalid_argument& e) {
    bad(at, e.what());
  }
}

ExtendedOrbitInstance parse_eo(const json& j) {
  const std::string at = "extended_orbit";
  RatMatrix a = mat(field(j, "A", at), at + ".A");
  if (!a.square()) bad(at + ".A", "matrix must be square");
  ExtendedOrbitInstance inst;
  try {
    if (j.contains("polys")) {
      const json& ps = j["polys"];
      if (!ps.is_array()) bad(at + ".polys", "expected a list of coefficient lists");
      inst.a = a;
      for (std::size_t i = 0; i < ps.size(); ++i) inst.polys.push_back(RatPoly(vec(ps[i], at + ".polys[" + std::to_string(i) + "]")));
      inst.b = j.contains("B") ? mat(j["B"], at + ".B", inst.polys.size()) : RatMatrix(0, inst.polys.size());
      if (j.contains("lift")) inst.lift = mat(j["lift"], at + ".lift");
      inst.validate();
      return inst;
    }
    RatVector x = vec(field(j, "x", at), at + ".x");
    if (x.size() != a.rows()) bad(at + ".x", "length must match A");
    const json& bs = field(j, "basis", at);
    if (!bs.is_array()) bad(at + ".basis", "expected a list of vectors");
    std::vector<RatVector> basis;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      basis.push_back(vec(bs[i], at + ".basis[" + std::to_string(i) + "]"));
      if (basis.back().size() != x.size()) bad(at + ".basis", "vectors must have the length of x");
    }
    RatMatrix b = j.contains("B") ? mat(j["B"], at + ".B", basis.size()) : RatMatrix(0, basis.size());
    return orbit_to_matrix_power(a, x, basis, b);
  } catch (const std::invalid_argument& e) {
    bad(at, e.what());
  }
}

SimposInstance parse_simpos(const json& j) {
  const std::string at = "simpos";
  RatVector rec = vec(field(j, "recurrence", at), at + ".recurrence");
  const json& init = field(j, "initial", at);
  if (!init.is_array()) bad(at + ".initial", "expected a list of initial-term lists");
  std::vector<std::vector<Rational>> seqs;
  for (std::size_t i = 0; i < init.size(); ++i) seqs.push_back(vec(init[i], at + ".initial[" + std::to_string(i) + "]"));
  try {
    SimposInstance s(rec, seqs);
    for (std::size_t i = 0; i < s.size(); ++i) (void)s.sequence(i);
    return s;
  } catch (const std::invalid_argument& e) {
    bad(at, e.what());
  }
}

LoopBlock parse_loop_block(const json& j) {
  const std::string at = "loop";
  LoopBlock b;
  const json& src = field(j, "source", at);
  if (!src.is_string()) bad(at + ".source", "expected the loop text");
  b.source = src.get<std::string>();
  try {
    b.program = parse_loop(b.source);
  } catch (const LoopParseError& e) {
    bad(at + ".source", e.what());
  }
  if (j.contains("target")) {
    std::string t = j["target"].is_string() ? j["target"].get<std::string>() : "";
    if (t == "termination") b.target = LoopTarget::Termination;
    else if (t == "guard") b.target = LoopTarget::Guard;
    else bad(at + ".target", "expected \"termination\" or \"guard\"");
  }
  if (j.contains("gap")) b.gap = rat(j["gap"], at + ".gap");
  if (b.gap < 0) bad(at + ".gap", "gap must be nonnegative");
  return b;
}

}  // namespace

std::string InstanceFile::block_name() const {
  static const char* names[] = {"php", "extended_orbit", "simpos", "loop"};
  return names[body.index()];
}

InstanceFile parse_instance(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    auto p = what.find("syntax error");
    throw ParseError(std::to_string(line) + ":" + std::to_string(col) + ": " + (p == std::string::npos ? what : what.substr(p)));
  }
  if (!j.is_object()) bad("(top)", "expected an object");
  InstanceFile f;
  int blocks = 0;
  for (auto& [key, val] : j.items()) {
    if (key == "name") {
      if (!val.is_string()) bad("name", "expected a string");
      f.name = val.get<std::string>();
    } else if (key == "expected") {
      if (!val.is_string()) bad("expected", "expected a string");
      f.expected = val.get<std::string>();
    } else if (key == "expected_witness") {
      Rational w = rat(val, "expected_witness");
      if (w.get_den() != 1 || w < 0) bad("expected_witness", "expected a natural number");
      f.expected_witness = w.get_num();
    } else if (key == "php") {
      f.body = parse_php(val), ++blocks;
    } else if (key == "extended_orbit") {
      f.body = parse_eo(val), ++blocks;
    } else if (key == "simpos") {
      f.body = parse_simpos(val), ++blocks;
    } else if (key == "loop") {
      f.body = parse_loop_block(val), ++blocks;
    } else {
      bad(key, "unknown field");
    }
  }
  if (blocks != 1) bad("(top)", "need exactly one of php, extended_orbit, simpos, loop");
  return f;
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + e.what());
  }
}

std::string dump_instance(const InstanceFile& f) {
  json j = json::object();
  if (!f.name.empty()) j["name"] = f.name;
  if (f.expected) j["expected"] = *f.expected;
  if (f.expected_witness) j["expected_witness"] = to_string(*f.expected_witness);
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PhpInstance>) {
          j["php"] = json{{"matrix", jmat(b.a)}, {"start", jvec(b.x)}, {"polyhedron", jpoly(b.p)}};
        } else if constexpr (std::is_same_v<T, ExtendedOrbitInstance>) {
          json ps = json::array();
          for (const auto& p : b.polys) ps.push_back(jvec(p.coeffs()));
          json e{{"A", jmat(b.a)}, {"polys", ps}, {"B", jmat(b.b)}};
          if (b.lift.rows() > 0) e["lift"] = jmat(b.lift);
          j["extended_orbit"] = e;
        } else if constexpr (std::is_same_v<T, SimposInstance>) {
          json init = json::array();
          for (const auto& s : b.initial) init.push_back(jvec(s));
          j["simpos"] = json{{"recurrence", jvec(b.recurrence)}, {"initial", init}};
        } else {
          j["loop"] = json{{"source", b.source},
                           {"target", b.target == LoopTarget::Termination ? "termination" : "guard"},
                           {"gap", jrat(b.gap)}};
        }
      },
      f.body);
  return j.dump(2) + "\n";
}

namespace {

Decision any_of(const std::vector<PhpInstance>& parts, const SearchOptions& opts) {
  std::optional<Decision> best, weak;
  Certificate all;
  all.kind = CertificateKind::SearchedToTheoreticalBound;
  all.searched_up_to = -1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Decision d = decide_php(parts[i], opts);
    if (d.kind == DecisionKind::Hit) {
      if (!best || *d.witness < *best->witness) best = d;
    } else if (d.kind == DecisionKind::NeverHits) {
      all.searched_up_to = std::max<Integer>(all.searched_up_to, d.searched_up_to);
      all.detail += (all.detail.empty() ? "" : "; ") + ("constraint " + std::to_string(i) + ": " + to_string(d.certificate->kind));
    } else if (!weak || d.kind == DecisionKind::Unsupported) {
      weak = d;
    }
  }
  if (best) return *best;
  if (weak) return *weak;
  if (parts.size() == 1) return decide_php(parts[0], opts);
  return Decision::never(all);
}

}  // namespace

Decision decide_instance(const InstanceFile& f, const SearchOptions& opts) {
  return std::visit(
      [&](const auto& b) -> Decision {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PhpInstance>) {
          return decide_php(b, opts);
        } else if constexpr (std::is_same_v<T, ExtendedOrbitInstance>) {
          return decide_extended_orbit(b, opts);
        } else if constexpr (std::is_same_v<T, SimposInstance>) {
          return decide_simpos(b, opts);
        } else {
          CompiledLoop c = compile_loop(b.program, b.target, b.gap);
          if (c.instances.empty()) {
            Certificate cert;
            cert.kind = CertificateKind::SearchedToTheoreticalBound;
            cert.searched_up_to = -1;
            cert.detail = "guard is always true";
            return Decision::never(cert);
          }
          Decision d = any_of(c.instances, opts);
          d.note = d.note.empty() ? c.polarity : d.note + "; " + c.polarity;
          return d;
        }
      },
      f.body);
}

SearchReport oracle_instance(const InstanceFile& f, unsigned long limit) {
  return std::visit(
      [&](const auto& b) -> SearchReport {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, PhpInstance>) {
          return orbit_brute(b.a, b.x, b.p, limit);
        } else if constexpr (std::is_same_v<T, ExtendedOrbitInstance>) {
          return extended_orbit_brute(b.a, b.polys, b.b, limit);
        } else if constexpr (std::is_same_v<T, SimposInstance>) {
          std::vector<Lrs> seqs;
          for (std::size_t i = 0; i < b.size(); ++i) seqs.push_back(b.sequence(i));
          return simpos_brute(seqs, limit);
        } else {
          CompiledLoop c = compile_loop(b.program, b.target, b.gap);
          SearchReport best;
          best.searched_up_to = limit;
          for (const auto& inst : c.instances) {
            SearchReport r = orbit_brute(inst.a, inst.x, inst.p, limit);
            if (r.found && (!best.found || *r.found < *best.found)) best.found = r.found;
          }
          return best;
        }
      },
      f.body);
}

}  // namespace orbitkit
