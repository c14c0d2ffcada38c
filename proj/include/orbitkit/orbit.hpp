#pragma once

#include <optional>
#include <vector>

#include "orbitkit/decision.hpp"
#include "orbitkit/linalg.hpp"
#include "orbitkit/lrs.hpp"

namespace orbitkit {

/// Is there n with A^n = u_1 p_1(A) + ... + u_d p_d(A) and B u >= 0?
/// d = 0 asks whether A^n = 0.
struct ExtendedOrbitInstance {
  RatMatrix a;
  RatMatrix b;  // k x d, may have zero rows
  std::vector<RatPoly> polys;
  /// Coefficients of the originating problem are lift * u (empty: identity).
  RatMatrix lift;

  std::size_t dim() const { return polys.size(); }
  /// Square A, B has d columns, p_i(A) independent.  Throws std::invalid_argument.
  void validate() const;
};

/// A^n x = sum u_i b_i with B u >= 0, restated as an Extended Orbit instance on
/// the cyclic subspace of x.
ExtendedOrbitInstance orbit_to_matrix_power(const RatMatrix& a, const RatVector& x, const std::vector<RatVector>& basis,
                                            const RatMatrix& b);

struct MasterEquation {
  std::size_t root;           // index into eigen_mults
  int order;                  // derivative order j
  std::vector<Algebraic> rhs; // p_i^{(j)}(alpha)
};

struct MasterSystem {
  std::vector<CharRoot> eigen_mults;  // nonzero roots of the minimal polynomial
  std::vector<MasterEquation> equations;
  RatMatrix b;
  std::size_t dim = 0;
  /// Zero eigenvalue: for n >= zero_multiplicity the equations at 0 read
  /// row . u = 0 for each row here.
  int zero_multiplicity = 0;
  std::vector<RatVector> zero_relations;
  std::vector<RatPoly> polys;
};

MasterSystem build_master_system(const ExtendedOrbitInstance& inst);
/// Exact check of every equation (and of the zero-eigenvalue part) at (n, u).
bool master_holds(const MasterSystem& ms, unsigned long n, const RatVector& u);

struct EqClass {
  Algebraic representative;           // real for self-conjugate classes
  std::vector<Algebraic> members;     // representative * omega_s
  std::vector<Algebraic> omegas;
  std::vector<RootOfUnityInfo> omega_info;
  std::vector<int> member_mult;
  bool self_conjugate = false;
  int paired_with = -1;               // index of the conjugate class
  int multiplicity = 0;               // largest member multiplicity
};

struct EqClassPartition {
  std::vector<EqClass> classes;
  unsigned long modulus = 1;           // lcm of ratio orders (L)
  unsigned long collapse_modulus = 1;  // lcm of L and the omega orders
};

EqClassPartition eq_class_partition(const std::vector<CharRoot>& roots);

struct CollapsedEquation {
  std::size_t cls;
  int order;
  std::vector<Algebraic> phi;  // n(n-1)..(n-j+1) alpha^{n-j} = sum u_i phi_i
};

struct CollapseResult {
  enum Kind { Collapsed, LinearDependency, Unsatisfiable } kind = Collapsed;
  std::vector<CollapsedEquation> equations;
  std::vector<Algebraic> psi;  // psi . u = 0 (LinearDependency)
};

/// residue is taken modulo part.collapse_modulus.
CollapseResult collapse_residue(const MasterSystem& ms, const EqClassPartition& part, unsigned long residue);

/// Exact check of A^n = sum u_i p_i(A) and B u >= 0.
bool verify_extended_orbit(const ExtendedOrbitInstance& inst, const Integer& n, const RatVector& u);

Decision decide_extended_orbit(const ExtendedOrbitInstance& inst, const SearchOptions& opts = {});

/// x^n mod m.
RatPoly xpow_mod(const Integer& n, const RatPoly& m);

}  // namespace orbitkit
