#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "orbitkit/linalg.hpp"
#include "orbitkit/php.hpp"
#include "orbitkit/polyhedron.hpp"

namespace orbitkit {

/// Parse failure with a 1-based position.
class LoopParseError : public ParseError {
 public:
  LoopParseError(int line, int column, const std::string& msg);
  int line, column;
};

/// vars x,y; init x=1,y=0; while (guard) { x := ...; y := ... }
/// Assignments run in order, each seeing the values written before it.
struct LoopProgram {
  std::vector<std::string> variables;
  RatVector init;
  std::vector<Halfspace> guard;  // conjunction of normal . x >= offset
  RatMatrix update;              // x <- update x + shift
  RatVector shift;
};

LoopProgram parse_loop(std::string_view text);

/// State after n iterations of the body, ignoring the guard.
RatVector simulate_loop(const LoopProgram& p, unsigned long n);
/// First n <= limit at which the state violates the guard.
std::optional<unsigned long> loop_exit_step(const LoopProgram& p, unsigned long limit);

enum class LoopTarget { Termination, Guard };

struct CompiledLoop {
  /// Termination: one instance per guard halfspace (the loop stops at the
  /// least hit over all of them).  Guard: a single instance.
  std::vector<PhpInstance> instances;
  std::string polarity;
};

/// Homogenises to A = [[M, b], [0, 1]], x = (init, 1).  For termination the
/// strict violation normal . x < offset is approximated by the closed
/// normal . x <= offset - gap.
CompiledLoop compile_loop(const LoopProgram& p, LoopTarget target = LoopTarget::Termination, const Rational& gap = 0);

}  // namespace orbitkit
