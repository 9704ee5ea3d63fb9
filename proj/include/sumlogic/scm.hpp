#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sumlogic/ast.hpp"
#include "sumlogic/rational.hpp"

namespace sumlogic {

class SemanticsError : public std::runtime_error {
public:
  explicit SemanticsError(const std::string& m) : std::runtime_error(m) {}
};

// Forced values per variable.
using Intervention = std::map<VarId, int>;
// Values of free range variables.
using Assignment = std::map<DSym, int>;

// Finite structural causal model. Each endogenous variable carries a total
// mechanism table over the values of all *other* endogenous variables (in id
// order) and the exogenous outcome. Recursiveness with respect to `order` is
// a validation property, not a structural one.
struct Scm {
  struct Var {
    std::string name;
    std::vector<int> range;      // sorted, positive, nonempty
    std::vector<int> const_val;  // const_val[i-1] = value of c_i@V
  };

  Signature sig;  // names aligned with vars
  std::vector<Var> vars;
  std::vector<VarId> order;  // evaluation order, permutation of 0..n-1
  std::vector<std::string> exo_labels;
  std::vector<Rational> exo_pmf;
  std::vector<std::vector<int>> fn;  // fn[v][flat(other values, u)]

  int n_vars() const { return (int)vars.size(); }
  int n_exo() const { return (int)exo_labels.size(); }
  // Position of value in range(v); -1 if absent.
  int val_index(VarId v, int value) const;
  size_t fn_index(VarId v, const std::vector<int>& values, int u) const;
  size_t fn_size(VarId v) const;
  // Value denoted by a symbol; range variables are looked up in iota.
  int dsym_value(const DSym& d, const Assignment& iota) const;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> errors;
  void fail(std::string msg) {
    ok = false;
    errors.push_back(std::move(msg));
  }
};

// Checks ranges, closed-world constants (surjective, in range), pmf
// normalization, table sizes/values, and recursiveness with respect to
// `order` (reporting a witness pair of settings when violated).
ValidationReport validate(const Scm& m);

// Replaces the mechanisms of intervened variables by constants.
Scm apply_intervention(const Scm& m, const Intervention& iv);

// Unique solution for exogenous outcome u under an intervention. The model
// must be valid (recursive); evaluation follows `order`.
std::vector<int> solve(const Scm& m, int u, const Intervention& iv = {});

// Caches solved tables per intervention for one model.
class ScmEval {
public:
  explicit ScmEval(const Scm& m) : m_(m) {}
  const Scm& model() const { return m_; }
  // values[var] for outcome u under intervention.
  const std::vector<std::vector<int>>& solved(const Intervention& iv);
  bool event_holds(const EventP& e, int u, const Assignment& iota);
  Rational event_probability(const EventP& e, const Assignment& iota);

private:
  const Scm& m_;
  std::map<std::vector<int>, std::vector<std::vector<int>>> cache_;
};

Rational event_probability(const Scm& m, const EventP& e,
                           const Assignment& iota = {});

// Builds the forced-value map of an intervention formula (T / conjunction of
// atoms). Rejects two atoms forcing different values on one variable.
Intervention intervention_of(const Scm& m, const EventP& int_formula,
                             const Assignment& iota);

// Pairs (cause, effect): some pair of interventions over `vars` differing
// only in the value imposed on `cause` changes `effect` on a positive-mass
// outcome.
std::set<std::pair<VarId, VarId>> induced_influences(const Scm& m,
                                                     const std::vector<VarId>& vars);

struct PositivityReport {
  bool positive = true;
  std::vector<int> missing;  // a zero-probability complete assignment
};
PositivityReport check_positivity(const Scm& m);

}  // namespace sumlogic
