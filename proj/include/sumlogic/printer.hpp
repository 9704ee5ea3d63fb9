#pragma once

#include <string>

#include "sumlogic/ast.hpp"

namespace sumlogic {

// Canonical unambiguous rendering of the core syntax. Derived connectives and
// rational comparisons are printed in their expanded form, so
// parse(print(x)) == x structurally.
std::string print_event(const EventP& e, const Signature& sig);
std::string print_term(const TermP& t, const Signature& sig);
std::string print_formula(const FormulaP& f, const Signature& sig);
std::string print_sequent(const Sequent& s, const Signature& sig);

}  // namespace sumlogic
