#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitkit/algnum.hpp"
#include "orbitkit/bounds.hpp"

namespace orbitkit {

enum class DecisionKind { Hit, NeverHits, Inconclusive, Unsupported };

enum class CertificateKind {
  EmptyArcIntersection,
  ArcPointNoPower,
  UltimatelyNegativeAll,
  CongruenceUnsat,
  SearchedToTheoreticalBound,
};

std::string to_string(DecisionKind k);
std::string to_string(CertificateKind k);

/// Cosine constraints cos(arg a_j + n arg lambda) >= c_j, |a_j| = |lambda| = 1.
struct ArcSystem {
  Algebraic lambda;
  std::vector<std::pair<Algebraic, Algebraic>> constraints;  // (a_j, c_j)
};

/// Why one residue class n = modulus*m + residue has no witness beyond a bound.
struct ResidueNote {
  unsigned long residue = 0;
  CertificateKind kind = CertificateKind::SearchedToTheoreticalBound;
  int sequence = -1;                  // index of the responsible constraint, if any
  std::optional<Threshold> bound;     // witnesses in the class satisfy m <= bound
  std::optional<ArcSystem> arcs;      // for the arc kinds
  bool arcs_exact = false;            // arcs describe the class for every m
  std::vector<Algebraic> points;      // isolated intersection points (ArcPointNoPower)
  std::string detail;
};

struct Certificate {
  CertificateKind kind = CertificateKind::SearchedToTheoreticalBound;
  unsigned long modulus = 1;
  std::vector<ResidueNote> residues;
  /// Largest n searched exhaustively.
  Integer searched_up_to = -1;
  /// For each n <= searched_up_to, the index of a violated constraint
  /// (kept only when the search was short enough).
  std::vector<int> violations;
  std::string detail;
};

struct Decision {
  DecisionKind kind = DecisionKind::Inconclusive;
  std::optional<Integer> witness;
  std::vector<Rational> coefficients;  // u for orbit-type witnesses
  std::optional<Certificate> certificate;
  Integer searched_up_to = -1;
  std::optional<Threshold> theoretical_bound;  // none = unknown
  std::string tag;                             // Unsupported
  std::string note;
  std::vector<std::string> trace;              // filled when SearchOptions::trace

  static Decision hit(const Integer& n);
  static Decision never(Certificate c);
  static Decision inconclusive(const Integer& searched, std::optional<Threshold> bound, std::string note = "");
  static Decision unsupported(std::string tag, std::string note = "");
};

struct SearchOptions {
  Integer max_n = 100000;                 // search cap
  unsigned long residue_cap = 1000000;    // largest interleaving modulus
  bool trace = false;
  unsigned jobs = 1;
};

/// Line-oriented key=value rendering (stable ordering).
std::string render(const Decision& d);

}  // namespace orbitkit
