#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "sumlogic/ast.hpp"

namespace sumlogic {

// Structural inverses of the derived builders. An implication is !(a & !b),
// an equality a >= b & b >= a, a strict comparison a >= b & !(b >= a), a
// biconditional the conjunction of both implications. Matching is purely
// syntactic, so fm_lt(a, b) also matches as the strict comparison (b, a).
struct ImpParts {
  FormulaP a, b;
};

std::optional<ImpParts> match_imp(const FormulaP& f);
std::optional<std::pair<TermP, TermP>> match_eq(const FormulaP& f);
std::optional<std::pair<TermP, TermP>> match_gt(const FormulaP& f);
std::optional<std::pair<FormulaP, FormulaP>> match_iff(const FormulaP& f);
// !( !a & !b ) as a disjunction.
std::optional<std::pair<FormulaP, FormulaP>> match_or(const FormulaP& f);
std::optional<std::pair<EventP, EventP>> match_or_event(const EventP& e);

// Left-nested fold flattening, in operand order.
void flatten_add(const TermP& t, std::vector<TermP>& out);
void flatten_and(const FormulaP& f, std::vector<FormulaP>& out);
void flatten_and_event(const EventP& e, std::vector<EventP>& out);

// All constant symbols occurring in the formula (events, equalities,
// coefficients).
std::set<DSym> consts_in(const FormulaP& f);

bool is_zero_numeral(const TermP& t);

}  // namespace sumlogic
