#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "orbitkit/loopfront.hpp"
#include "orbitkit/oracle.hpp"
#include "orbitkit/orbit.hpp"
#include "orbitkit/php.hpp"
#include "orbitkit/simpos.hpp"

namespace orbitkit {

struct LoopBlock {
  std::string source;
  LoopProgram program;
  LoopTarget target = LoopTarget::Termination;
  Rational gap = 0;
};

/// One instance file: metadata plus exactly one block.  See docs/format.md.
struct InstanceFile {
  std::string name;
  std::optional<std::string> expected;  // outcome name, e.g. "Hit"
  std::optional<Integer> expected_witness;
  std::variant<PhpInstance, ExtendedOrbitInstance, SimposInstance, LoopBlock> body;

  std::string block_name() const;
};

/// Throws ParseError with a line:column (JSON syntax) or a block path (content).
InstanceFile parse_instance(std::string_view text);
InstanceFile load_instance(const std::string& path);
/// Canonical JSON, two-space indent, keys in a fixed order, trailing newline.
std::string dump_instance(const InstanceFile& f);

/// Runs the matching decision procedure.  Loop termination is the least hit
/// over the per-halfspace instances.
Decision decide_instance(const InstanceFile& f, const SearchOptions& opts = {});
SearchReport oracle_instance(const InstanceFile& f, unsigned long limit);

}  // namespace orbitkit
