#pragma once

#include <string>
#include <vector>

#include "sumlogic/ast.hpp"

namespace sumlogic {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& m, size_t pos)
      : std::runtime_error(m + " (at offset " + std::to_string(pos) + ")"),
        pos(pos) {}
  size_t pos;
};

// Numerator/denominator pair used while clearing division and conditional
// probabilities; the denominator P(T) stands for "none".
struct TermQ {
  TermP num;
  TermP den;
};

TermQ qnum(TermP t);
TermQ q_add(const TermQ& a, const TermQ& b);
TermQ q_mul(const TermQ& a, const TermQ& b);
TermQ q_div(const TermQ& a, const TermQ& b);
TermQ q_neg(const TermQ& a);
TermQ q_sum(const DSym& v, const TermQ& a);  // rejects v free in a.den
// a * b with multiplication by the literal P(T) elided on either side.
TermP mul_elide(const TermP& a, const TermP& b);
bool is_trivial_den(const TermP& t);

struct ParseOpts {
  // Declare unseen variables on first use ("X=..." or "c1@X" or range
  // variable "x1" declaring X).
  bool auto_declare = true;
};

FormulaP parse_formula(const std::string& text, Signature& sig,
                       ParseOpts opts = {});
TermP parse_term(const std::string& text, Signature& sig, ParseOpts opts = {});
EventP parse_event(const std::string& text, Signature& sig, ParseOpts opts = {});
Sequent parse_sequent(const std::string& text, Signature& sig,
                      ParseOpts opts = {});
// One formula per non-empty line; '#' starts a comment.
std::vector<FormulaP> parse_formula_file(const std::string& text, Signature& sig,
                                         ParseOpts opts = {});

}  // namespace sumlogic
