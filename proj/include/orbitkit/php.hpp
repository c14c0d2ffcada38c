#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitkit/decision.hpp"
#include "orbitkit/linalg.hpp"
#include "orbitkit/orbit.hpp"
#include "orbitkit/polyhedron.hpp"
#include "orbitkit/simpos.hpp"

namespace orbitkit {

/// Is there n with A^n x in P?
struct PhpInstance {
  RatMatrix a;
  RatVector x;
  HPolyhedron p;

  PhpInstance() = default;
  /// Checks dimensions and caches k (-1 for an empty target).
  PhpInstance(RatMatrix a, RatVector x, HPolyhedron p);
  std::size_t m() const { return x.size(); }
  int k() const { return k_; }

 private:
  int k_ = -1;
};

struct HardnessTag {
  enum Kind { Decidable, SkolemHard, DiophantineHard, Both } kind = Decidable;
  bool polynomial = false;  // Decidable: P rather than PSPACE
  int skolem_order = 0;

  bool decidable() const { return kind == Decidable; }
  std::string to_string() const;
  friend bool operator==(const HardnessTag&, const HardnessTag&) = default;
};

/// Throws std::invalid_argument unless 0 <= k <= m.
HardnessTag classify(int m, int k);

ExtendedOrbitInstance reduce_k1(const PhpInstance& inst);
std::vector<ExtendedOrbitInstance> reduce_k2(const PhpInstance& inst);

/// One sequence v_i A^n x - c_i per halfspace, sharing (x-1) f_A.  When A is
/// singular the zero roots are dropped and the sequences start at
/// n = full_dim_offset(inst); earlier n are checked directly by decide_php.
SimposInstance reduce_full_dim(const PhpInstance& inst);
std::size_t full_dim_offset(const PhpInstance& inst);

/// Exact: A^n x in P.
bool php_holds(const PhpInstance& inst, const Integer& n);

Decision decide_php(const PhpInstance& inst, const SearchOptions& opts = {});

enum class PadMode { SameK, IncK };
PhpInstance pad_instance(const PhpInstance& inst, PadMode mode);

/// Order-5 LRS with roots l1, conj l1, l2, conj l2, rho, |l1| = |l2| > |rho| > 0,
/// rho rational.  The result hits at n exactly when S(n) = 0.
PhpInstance skolem5_to_php43(const Lrs& s);

/// Random order-5 LRS c rho^n + 2 Re(a l1^n) + 2 Re(b l2^n) with |l1| = |l2| = 5
/// and 0 < |rho| < 5.  With zero_at set, c is chosen so that S(zero_at) = 0.
Lrs skolem5_sample(std::optional<unsigned> zero_at, std::uint64_t seed);

/// S1, S2 = Re((a -+ i n) lambda^n) for a Gaussian rational lambda on the unit
/// circle.  Both are >= 0 at n iff n |sin(n phi)| <= a cos(n phi).
SimposInstance dioph_sequences(const Rational& a, const Algebraic& lambda);

/// PHP(k,k) with A the companion matrix of the shared recurrence acting on
/// (S_0(n), ..., S_0(n+k-1)) and one halfspace per sequence.  Every sequence
/// must be a combination of shifts of the first (std::invalid_argument).
PhpInstance php_from_simpos(const SimposInstance& inst);

}  // namespace orbitkit
