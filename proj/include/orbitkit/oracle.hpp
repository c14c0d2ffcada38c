#pragma once

#include <optional>
#include <vector>

#include "orbitkit/linalg.hpp"
#include "orbitkit/lrs.hpp"
#include "orbitkit/polyhedron.hpp"

namespace orbitkit {

/// Naive exact search, kept independent of the decision procedures.
struct SearchReport {
  std::optional<unsigned long> found;
  unsigned long searched_up_to = 0;
  std::vector<RatVector> trace;  // per-step states when requested
};

/// Least n <= limit with A^n x in P, by repeated multiplication.
SearchReport orbit_brute(const RatMatrix& a, const RatVector& x, const HPolyhedron& p, unsigned long limit,
                         bool keep_trace = false);

/// Least n <= limit with every sequence >= 0.  The sequences must share one
/// recurrence (std::invalid_argument otherwise).
SearchReport simpos_brute(const std::vector<Lrs>& seqs, unsigned long limit, bool keep_trace = false);

/// Least n <= limit with A^n = sum u_i p_i(A) and B u >= 0 (p_i(A) independent).
/// The matching u is stored in the report.
SearchReport extended_orbit_brute(const RatMatrix& a, const std::vector<RatPoly>& polys, const RatMatrix& b,
                                  unsigned long limit, RatVector* u = nullptr);

}  // namespace orbitkit
