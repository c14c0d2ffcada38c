#pragma once

#include <vector>

#include "orbitkit/decision.hpp"
#include "orbitkit/lrs.hpp"

namespace orbitkit {

/// Several LRS sharing one recurrence.
struct SimposInstance {
  std::vector<Rational> recurrence;
  std::vector<std::vector<Rational>> initial;

  SimposInstance() = default;
  /// Validates that every initial vector has length k.
  SimposInstance(std::vector<Rational> rec, std::vector<std::vector<Rational>> init);
  /// Built from sequences that must share the recurrence (checked on 2k terms).
  static SimposInstance from_sequences(const std::vector<Lrs>& seqs);
  std::size_t order() const { return recurrence.size(); }
  Lrs sequence(std::size_t i) const { return Lrs(recurrence, initial[i]); }
  std::size_t size() const { return initial.size(); }
};

/// Exact: every sequence is >= 0 at n.
bool verify_simultaneous(const SimposInstance& inst, const Integer& n);

/// Exact check of the arc system at one n.
bool arc_holds(const ArcSystem& sys, const Integer& n);
Decision arc_system_decide(const ArcSystem& sys, const SearchOptions& opts = {});

/// Independent numeric re-check of an empty intersection of closed arcs
/// (MPFR arccos half-widths); true when the arcs provably share no point.
bool verify_empty_arcs(const ArcSystem& sys);

/// General engine: is there n with Z(n) = 0 for every zero constraint and
/// P(n) >= 0 for every sign constraint?  Indices in certificates count the
/// zero constraints first.
struct LrsSystem {
  std::vector<Lrs> zeros;
  std::vector<Lrs> nonneg;
};
Decision decide_lrs_system(const LrsSystem& sys, const SearchOptions& opts = {});
/// Exact check of the system at n.
bool lrs_system_holds(const LrsSystem& sys, const Integer& n);

/// Order of the least recurrence annihilating all sequences of the instance.
RatPoly effective_char_poly(const SimposInstance& inst);
bool in_simpos_fragment(const SimposInstance& inst);

Decision decide_simpos(const SimposInstance& inst, const SearchOptions& opts = {});

}  // namespace orbitkit
