#pragma once

#include <set>

#include "sumlogic/ast.hpp"

namespace sumlogic {

// Free range variables (a bound occurrence is one under a sum binding the
// same symbol).
std::set<DSym> free_range_vars(const EventP& e);
std::set<DSym> free_range_vars(const TermP& t);
std::set<DSym> free_range_vars(const FormulaP& f);

bool has_free(const TermP& t, const DSym& v);
bool has_free(const FormulaP& f, const DSym& v);

// Replaces every free occurrence of range variable v (event atoms, symbol
// equalities, coefficients) by d. Substituting one range variable by another
// refuses capture.
EventP substitute_range_var(const EventP& e, const DSym& v, const DSym& d);
TermP substitute_range_var(const TermP& t, const DSym& v, const DSym& d);
FormulaP substitute_range_var(const FormulaP& f, const DSym& v, const DSym& d);

// Replaces every event subtree structurally equal to pat by repl.
EventP substitute_event(const EventP& e, const EventP& pat, const EventP& repl);
TermP substitute_event(const TermP& t, const EventP& pat, const EventP& repl);
FormulaP substitute_event(const FormulaP& f, const EventP& pat, const EventP& repl);

// Variables (VarIds) occurring anywhere in the formula: atoms, boxes, symbol
// equalities, coefficients, sum binders.
std::set<VarId> vars_of(const FormulaP& f);
std::set<VarId> vars_of(const Sequent& s);

}  // namespace sumlogic
