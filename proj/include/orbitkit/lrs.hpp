#pragma once

#include <vector>

#include "orbitkit/algnum.hpp"
#include "orbitkit/bounds.hpp"
#include "orbitkit/linalg.hpp"

namespace orbitkit {

/// S(n+k) = a_1 S(n+k-1) + ... + a_k S(n), rational coefficients, a_k != 0.
struct Lrs {
  std::vector<Rational> recurrence;  // a_1 .. a_k
  std::vector<Rational> initial;     // S(0) .. S(k-1)

  Lrs() = default;
  Lrs(std::vector<Rational> rec, std::vector<Rational> init);
  std::size_t order() const { return recurrence.size(); }
  /// x^k - a_1 x^{k-1} - ... - a_k
  RatPoly char_poly() const;
  /// The all-zero sequence (order 1).
  static Lrs zero();
  /// Sequence with the given characteristic polynomial (monic, nonzero constant term).
  static Lrs from_char_poly(const RatPoly& monic, std::vector<Rational> init);
};

struct CharRoot {
  Algebraic value;
  int multiplicity;
};

/// Minimal recurrence of a finite sequence; a trailing zero coefficient means
/// a zero characteristic root.
std::vector<Rational> berlekamp_massey(const std::vector<Rational>& seq);

/// v^T M^n w as an Lrs (minimal order).  Throws std::domain_error when the
/// sequence needs a zero characteristic root; use lrs_from_triple_shifted.
Lrs lrs_from_triple(const RatVector& v, const RatMatrix& m, const RatVector& w);

struct ShiftedLrs {
  std::vector<Rational> prefix;  // S(0) .. S(s-1)
  Lrs tail;                      // tail(n) = S(n + s)
  std::size_t shift() const { return prefix.size(); }
};
ShiftedLrs lrs_from_triple_shifted(const RatVector& v, const RatMatrix& m, const RatVector& w);

struct CompanionTriple {
  RatVector v;
  RatMatrix m;
  RatVector w;
};
/// v = (S(k-1), ..., S(0)), w = (0, ..., 0, 1), v^T M^n w = S(n).
CompanionTriple to_companion(const Lrs& s);

Rational lrs_eval(const Lrs& s, const Integer& n);
Rational lrs_eval(const Lrs& s, unsigned long n);
/// S(0) .. S(count-1) by iteration.
std::vector<Rational> lrs_terms(const Lrs& s, std::size_t count);

std::vector<CharRoot> char_roots(const Lrs& s);

struct ClosedFormTerm {
  CharRoot root;
  std::vector<Algebraic> coeff;  // coeff[t] multiplies n^t; size = multiplicity
  bool is_zero() const;
};

/// Coefficients grouped by irreducible factor q^m of the characteristic
/// polynomial: the coefficient of n^t at a root lambda of q is g[t](lambda).
struct ClosedFormBlock {
  RatPoly factor;
  int multiplicity;
  std::vector<RatPoly> g;
  std::vector<Rational> power_sums;  // p_0 .. p_{deg-1} of the roots of factor
};

struct ClosedForm {
  std::vector<ClosedFormTerm> terms;
  std::vector<ClosedFormBlock> blocks;
};

ClosedForm closed_form(const Lrs& s);
/// Exact value through traces over each block.
Rational closed_form_eval(const ClosedForm& cf, const Integer& n);
/// Enclosure computed from the algebraic roots and coefficients.
Ball closed_form_ball(const ClosedForm& cf, unsigned long n, unsigned bits);
/// Exact value using algebraic arithmetic term by term (slow; small n only).
Algebraic closed_form_eval_algebraic(const ClosedForm& cf, unsigned long n);
/// Product of q^{t+1} over blocks, t the top nonzero g index.
RatPoly minimal_annihilator(const ClosedForm& cf);
bool is_zero_sequence(const Lrs& s);

struct SplitResult {
  unsigned long modulus;
  std::vector<Lrs> subsequences;  // subsequences[j](n) = S(n*modulus + j)
};

/// Interleaving split into non-degenerate subsequences.  The modulus is the
/// lcm of the orders of all root-of-unity ratios of distinct roots and of the
/// roots that are themselves roots of unity.  Throws std::range_error beyond
/// max_modulus.
SplitResult nondegenerate_split(const Lrs& s, unsigned long max_modulus = 1000000);
/// The modulus alone.
unsigned long degeneracy_modulus(const std::vector<Algebraic>& roots, unsigned long max_modulus = 1000000);
/// S(n*step + offset) as an Lrs with the same order.
Lrs subsequence(const Lrs& s, unsigned long step, unsigned long offset);

struct ShrinkBound {
  Rational epsilon;
  Threshold threshold;
};

struct DominantAnalysis {
  std::vector<CharRoot> dominant;
  std::vector<ClosedFormTerm> dominant_terms;
  ShrinkBound bound;
  // |r(n)| <= rest_const * n^rest_degree * (ratio |lambda_1|)^n for n >= 1
  Rational ratio = 0;
  Rational rest_const = 0;
  int rest_degree = 0;
};

/// Dominant roots among the roots carrying a nonzero closed-form coefficient,
/// and a bound with |r(n)| / |lambda_1|^n < (1-eps)^n for all n > N, r(n)
/// being the non-dominant part.
DominantAnalysis dominant_analysis(const Lrs& s);
DominantAnalysis dominant_analysis(const ClosedForm& cf);

}  // namespace orbitkit
