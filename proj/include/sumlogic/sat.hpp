#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sumlogic/ast.hpp"
#include "sumlogic/constraints.hpp"
#include "sumlogic/scm.hpp"
#include "sumlogic/state_desc.hpp"

namespace sumlogic {

// Scale of the bounded search. n is the uniform range size, max_denom the
// denominator bound of the probability grid, max_support the largest
// candidate support tried. Defaults are desk scale; the documented caps
// (n <= 3, max_denom <= 16, max_support <= 64) are enforced unless
// `unchecked` is set.
struct SatOptions {
  int n = 2;
  int max_denom = 4;
  int max_support = 4;
  size_t max_descs = 1u << 20;   // full enumeration budget for the screen
  size_t max_candidates = 1u << 21;  // total supports tried before truncating
  bool positive = false;         // search positive models only
  bool causal = true;            // false rejects intervention boxes
  bool unchecked = false;
};

struct SatVerdict {
  enum class Kind { Sat, UnsatAtScale, Unknown };
  Kind kind = Kind::Unknown;
  // Sat only: validated model, re-checked against the original input by the
  // semantics module (never against the transformed formula).
  std::optional<Scm> witness;
  // Infeasibility was proven by range analysis or linear elimination over
  // the full description set: sound for every denominator bound at this n.
  bool analytic = false;
  std::string detail;
};

// Satisfiability of a sequent at scale: some model over ranges {1..n} with
// identity constants satisfies it (some premise invalid or the conclusion
// valid). Pipeline: universal closure, conditional elimination, constant
// equality resolution, sum unfolding, then a search over state-description
// supports per variable order, each support reduced to a constraint system
// and solved on the rational grid. UNSAT-at-scale means every support and
// grid point at (n, max_denom) was exhausted; UNKNOWN reports truncation.
// With conditionals present, the elimination step assumes conditions of
// positive mass, so an UNSAT verdict is relative to such models (witnesses
// are re-verified and unaffected).
SatVerdict sat_bounded(const Signature& sig, const Sequent& s, const SatOptions& opt);

// Same search for a single formula, free range variables read universally.
SatVerdict sat_formula_bounded(const Signature& sig, const FormulaP& f,
                               const SatOptions& opt);

// Searches for a model where every premise is valid and the conclusion is
// not. Sat kind means a countermodel was found (the sequent is not valid at
// this scale).
SatVerdict find_countermodel_bounded(const Signature& sig, const Sequent& s,
                                     const SatOptions& opt);

// phi must be closed, sum-free, coefficient-free and conditional-free. Each
// probability atom P(eps) becomes the sum of p_delta over support members
// entailing eps; constant equalities resolve under the identity
// interpretation; normalization and nonnegativity side conditions are
// attached. Under `positive`, the unknowns are strict and every complete
// observational assignment must receive positive mass.
ConstraintSystem reduce_to_constraints(const FormulaP& f, const IvSet& iv,
                                       const std::vector<StateDesc>& support,
                                       bool positive);

// The model a support and pmf determine: exogenous outcomes are the support
// descriptions, the mechanism of a scoped variable reads the description row
// of the intervention forcing all other scoped variables, unscoped variables
// are constant 1. `order` ranks the scoped variable positions.
Scm scm_from_support(const Signature& sig, const IvSet& iv,
                     const std::vector<StateDesc>& support,
                     const std::vector<Rational>& pmf, const std::vector<int>& order);

struct BruteVerdict {
  bool sat = false;
  std::optional<Scm> witness;
};

// Independent oracle at tiny scale (<= 2 scoped variables, n <= 2, <= 4
// exogenous outcomes, denominators <= max_denom): enumerates models directly
// as response-function profiles with exact pmfs and applies the semantics
// module. Covering profiles instead of raw mechanism tables loses nothing:
// every probability a formula can mention depends only on the induced
// distribution over profiles, so the lattice is covered modulo exogenous
// relabeling. No state-description machinery is involved.
BruteVerdict brute_force_sat(const Signature& sig, const Sequent& s,
                             const SatOptions& opt);

}  // namespace sumlogic
