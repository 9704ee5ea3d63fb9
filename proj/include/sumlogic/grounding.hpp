#pragma once

#include "sumlogic/ast.hpp"

namespace sumlogic {

// Bounded signature: every variable carries constants c1..cN, read under the
// identity interpretation (ck denotes k, ranges are {1..N}). All grounding
// transformations are exact over that model class; unfold_sums additionally
// needs the constants to denote pairwise distinct values, which the identity
// class gives for free.
struct GroundCtx {
  int n = 2;
};

// Replaces every sum by the explicit instantiation over c1..cN and every
// constant coefficient by its value as a repeated-P(T) numeral. The result
// has no Sum and no Coef nodes. Multiplication by a coefficient of value 1
// is elided, matching the parser's canonical form. Throws on constant
// indices above ctx.n and on free range-variable coefficients (close the
// formula first).
TermP unfold_sums(const TermP& t, const GroundCtx& ctx);
FormulaP unfold_sums(const FormulaP& f, const GroundCtx& ctx);

// Conjunction of all instantiations of the free range variables by
// constants, each variable running over c1..cN; the last variable in symbol
// order cycles fastest. Closed formulas are returned unchanged.
FormulaP universal_closure(const FormulaP& f, const GroundCtx& ctx);

// Rewrites every comparison so that no conditional probability remains,
// multiplying both sides by the conditions' probabilities. The rewrite is an
// equivalence over models where every condition has positive probability; in
// particular over positive models when the input is cond-guarded. Throws
// when a conditional under a sum binds part of its own condition, since the
// multiplied-out form would move the bound variable into a denominator; the
// message names the offending position.
FormulaP eliminate_conditionals(const FormulaP& f);

// Node counts, used for the size-growth report of the ground subcommand:
// |unfold_sums(f)| <= |f| * (2N)^d where d nests sums, each sum multiplying
// the body N times and each coefficient expanding to at most 2N-1 nodes.
size_t event_size(const EventP& e);
size_t term_size(const TermP& t);
size_t formula_size(const FormulaP& f);

}  // namespace sumlogic
