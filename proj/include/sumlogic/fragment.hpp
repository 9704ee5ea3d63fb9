#pragma once

#include "sumlogic/ast.hpp"

namespace sumlogic {

// T and conjunctions of atoms only (the intervention fragment).
bool is_int_formula(const EventP& e);
bool has_box(const EventP& e);
// T or a conjunction of literals (V=d or !V=d) with at most one literal per
// random variable: the class of conditions that stay positive in positive
// models of large enough range.
bool is_cond_formula(const EventP& e);

struct FragmentInfo {
  bool causal = false;        // some intervention box occurs
  bool closed = true;         // no free range variable
  bool circle = true;         // no negated term, no symbol coefficient
  bool cond_guarded = true;   // every condition is in the guarded class
  int max_const_index = 0;    // 0 when no constants occur
};

FragmentInfo classify_fragment(const FormulaP& f);

}  // namespace sumlogic
