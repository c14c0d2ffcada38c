#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "orbitkit/instance_io.hpp"

using namespace orbitkit;

namespace {

// 64+ for usage and input problems
constexpr int kUsage = 64;
constexpr int kBadInput = 65;
constexpr int kInternal = 70;

int exit_for(DecisionKind k) {
  switch (k) {
    case DecisionKind::Hit: return 0;
    case DecisionKind::NeverHits: return 1;
    case DecisionKind::Inconclusive: return 2;
    case DecisionKind::Unsupported: return 3;
  }
  return kInternal;
}

unsigned long default_max_n() {
  if (const char* env = std::getenv("ORBITKIT_MAX_N")) {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring malformed ORBITKIT_MAX_N=" << env << "\n";
  }
  return 100000;
}

InstanceFile reduced_file(const InstanceFile& src, std::size_t part, std::size_t& parts) {
  InstanceFile out;
  out.name = src.name.empty() ? "" : src.name + ".reduced";
  if (const auto* p = std::get_if<PhpInstance>(&src.body)) {
    const int k = p->k(), m = static_cast<int>(p->m());
    if (k == 1) {
      parts = 1;
      out.body = reduce_k1(*p);
    } else if (k == 2) {
      auto all = reduce_k2(*p);
      parts = all.size();
      if (part >= parts) throw std::out_of_range("part index out of range");
      out.body = all[part];
    } else if (k == m && k >= 3) {
      if (full_dim_offset(*p) != 0) throw std::invalid_argument("A is singular; the simultaneous-positivity form starts at a later index");
      parts = 1;
      out.body = reduce_full_dim(*p);
    } else {
      throw std::invalid_argument("no reduction for (m,k) = (" + std::to_string(m) + "," + std::to_string(k) + ")");
    }
  } else if (const auto* l = std::get_if<LoopBlock>(&src.body)) {
    CompiledLoop c = compile_loop(l->program, l->target, l->gap);
    parts = c.instances.size();
    if (part >= parts) throw std::out_of_range("part index out of range");
    out.body = c.instances[part];
  } else {
    throw std::invalid_argument("only php and loop blocks can be reduced");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbitkit: polyhedron hitting, extended orbit and simultaneous positivity"};
  app.require_subcommand(1);

  unsigned long max_n = default_max_n();
  unsigned long residue_cap = 1000000;
  bool trace = false;
  unsigned jobs = 1;
  std::string file;

  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--max-n", max_n, "search cap (default 100000, env ORBITKIT_MAX_N)");
    sub->add_option("--residue-cap", residue_cap, "largest interleaving modulus");
    sub->add_flag("--emit-trace", trace, "print the per-residue analysis");
    sub->add_option("--jobs", jobs, "parallel residue analysis")->check(CLI::Range(1u, 256u));
  };

  auto* decide = app.add_subcommand("decide", "decide an instance file");
  decide->add_option("file", file, "instance file")->required();
  add_search(decide);

  int cm = 0, ck = 0;
  auto* classify_cmd = app.add_subcommand("classify", "complexity cell for (m,k); exit 0 when decidable, 3 otherwise");
  classify_cmd->add_option("--m", cm, "ambient dimension")->required();
  classify_cmd->add_option("--k", ck, "target dimension")->required();

  auto* oracle = app.add_subcommand("oracle", "naive exact search");
  oracle->add_option("file", file, "instance file")->required();
  oracle->add_option("--max-n", max_n, "search cap");

  std::size_t part = 0;
  auto* reduce = app.add_subcommand("reduce", "emit the reduced instance file");
  reduce->add_option("file", file, "instance file")->required();
  reduce->add_option("--part", part, "which disjunct for multi-part reductions");

  std::string kind;
  std::optional<unsigned> zero_at;
  std::uint64_t seed = 1;
  std::string a_const = "1", lambda = "3/5,4/5";
  auto* generate = app.add_subcommand("generate", "hardness fixtures");
  generate->add_option("kind", kind, "skolem5 | diophantine | diophantine-simpos")
      ->required()
      ->check(CLI::IsMember({"skolem5", "diophantine", "diophantine-simpos"}));
  generate->add_option("--zero-at", zero_at, "skolem5: plant a zero at this index");
  generate->add_option("--seed", seed, "skolem5: random seed");
  generate->add_option("--a", a_const, "diophantine: the constant A");
  generate->add_option("--lambda", lambda, "diophantine: re,im of a Gaussian rational on the unit circle");

  auto* parse = app.add_subcommand("parse-loop", "parse a .loop file and print the compiled instance");
  parse->add_option("file", file, "loop source")->required();
  std::string target = "termination";
  parse->add_option("--target", target, "termination | guard")->check(CLI::IsMember({"termination", "guard"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*decide) {
      InstanceFile f = load_instance(file);
      SearchOptions o;
      o.max_n = max_n;
      o.residue_cap = residue_cap;
      o.trace = trace;
      o.jobs = jobs;
      Decision d = decide_instance(f, o);
      std::cout << render(d);
      return exit_for(d.kind);
    }
    if (*classify_cmd) {
      HardnessTag t = classify(cm, ck);
      std::cout << t.to_string() << "\n";
      return t.decidable() ? 0 : 3;
    }
    if (*oracle) {
      InstanceFile f = load_instance(file);
      SearchReport r = oracle_instance(f, max_n);
      std::cout << "outcome=" << (r.found ? "found" : "none") << "\n";
      if (r.found) std::cout << "witness=" << *r.found << "\n";
      std::cout << "searched_up_to=" << r.searched_up_to << "\n";
      return r.found ? 0 : 1;
    }
    if (*reduce) {
      InstanceFile f = load_instance(file);
      std::size_t parts = 0;
      InstanceFile out = reduced_file(f, part, parts);
      if (parts > 1) std::cerr << "part " << part << " of " << parts << "\n";
      std::cout << dump_instance(out);
      return 0;
    }
    if (*generate) {
      InstanceFile out;
      if (kind == "skolem5") {
        Lrs s = skolem5_sample(zero_at, seed);
        out.name = "skolem5-seed" + std::to_string(seed);
        out.expected = "Unsupported";
        out.body = skolem5_to_php43(s);
      } else {
        auto comma = lambda.find(',');
        if (comma == std::string::npos) throw ParseError("--lambda: expected re,im");
        Algebraic l = Algebraic::gaussian(parse_rational(lambda.substr(0, comma)), parse_rational(lambda.substr(comma + 1)));
        SimposInstance s = dioph_sequences(parse_rational(a_const), l);
        out.name = "diophantine";
        out.expected = "Unsupported";
        if (kind == "diophantine") out.body = php_from_simpos(s);
        else out.body = s;
      }
      std::cout << dump_instance(out);
      return 0;
    }
    if (*parse) {
      std::ifstream in(file);
      if (!in) throw ParseError(file + ": cannot open");
      std::stringstream ss;
      ss << in.rdbuf();
      InstanceFile out;
      LoopBlock b;
      b.source = ss.str();
      try {
        b.program = parse_loop(b.source);
      } catch (const LoopParseError& e) {
        throw ParseError(file + ":" + e.what());
      }
      b.target = target == "guard" ? LoopTarget::Guard : LoopTarget::Termination;
      CompiledLoop c = compile_loop(b.program, b.target, b.gap);
      std::cout << "variables=";
      for (std::size_t i = 0; i < b.program.variables.size(); ++i) std::cout << (i ? "," : "") << b.program.variables[i];
      std::cout << "\ninstances=" << c.instances.size() << "\npolarity=" << c.polarity << "\n";
      out.body = b;
      std::cout << dump_instance(out);
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
