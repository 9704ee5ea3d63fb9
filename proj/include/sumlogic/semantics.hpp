#pragma once

#include <optional>

#include "sumlogic/extended_real.hpp"
#include "sumlogic/scm.hpp"

namespace sumlogic {

struct TraceEntry {
  std::string what;   // printed probability term
  std::string value;  // "p/q", "inf", "-inf", "undef"
};

// Evaluates terms and formulas in one model, sharing the solved-table cache.
// An optional trace collects every probability evaluation.
class Evaluator {
public:
  explicit Evaluator(const Scm& m, std::vector<TraceEntry>* trace = nullptr)
      : ev_(m), trace_(trace) {}

  XReal eval_term(const TermP& t, Assignment& iota);
  bool satisfies(const FormulaP& f, Assignment& iota);
  ScmEval& scm_eval() { return ev_; }

private:
  ScmEval ev_;
  std::vector<TraceEntry>* trace_;
};

XReal eval_term(const Scm& m, const TermP& t, const Assignment& iota = {});
bool satisfies(const Scm& m, const FormulaP& f, const Assignment& iota = {});

struct ValidityReport {
  bool valid = true;
  // A failing assignment of the free range variables, when not valid.
  std::optional<Assignment> counterexample;
};

// Free range variables are read universally: the formula must hold under
// every assignment of them to values in the respective ranges.
ValidityReport valid_in_model(const Scm& m, const FormulaP& f);

struct SequentReport {
  bool satisfied = false;
  int invalid_premise = -1;  // index of some premise not valid, or -1
  bool conclusion_valid = false;
};

// The model satisfies premises |- conclusion when some premise is not valid
// in it or the conclusion is.
SequentReport satisfies_sequent(const Scm& m, const Sequent& s);

}  // namespace sumlogic
