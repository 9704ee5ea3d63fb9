#pragma once

#include <string>

#include "sumlogic/scm.hpp"

namespace sumlogic {

// Text model format. Sections:
//   vars X Y            declaration order fixes variable ids
//   order X Y           evaluation order (defaults to declaration order)
//   range X : 1 2
//   consts X : 1 2      values of c1@X, c2@X, ...
//   exo u0 : 1/2        one line per outcome
//   fn X : Y u          header names the other variables in id order, then u
//   1 u0 -> 2           one row per (other values, outcome)
// '#' starts a comment. Rows must cover the domain exactly once.
Scm parse_model(const std::string& text);
Scm load_model(const std::string& path);
std::string print_model(const Scm& m);
void save_model(const Scm& m, const std::string& path);

}  // namespace sumlogic
