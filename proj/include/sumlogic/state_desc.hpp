#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "sumlogic/ast.hpp"
#include "sumlogic/scm.hpp"

namespace sumlogic {

// The intervention lattice over a set of scoped variables with uniform range
// {1..n} under the identity interpretation: every partial assignment of
// values to variables, the empty (observational) one first. Interventions
// and values are not restricted to those occurring in any particular
// formula.
struct IvSet {
  std::vector<VarId> vars;  // ascending
  int n = 2;
  std::vector<Intervention> list;
  std::map<Intervention, int> pos;

  int size() const { return (int)list.size(); }
  // -1 when absent.
  int index_of(const Intervention& a) const {
    auto it = pos.find(a);
    return it == pos.end() ? -1 : it->second;
  }
};

IvSet make_ivset(const std::vector<VarId>& vars, int n);

// One state description: a total assignment of the scoped variables under
// every intervention of the lattice. rows[i][j] is the value of vars[j]
// under list[i]; every row agrees with the values its intervention forces
// (descriptions record outcomes *resulting from* the interventions).
// Distinct descriptions denote mutually exclusive events, and the consistent
// descriptions are jointly exhaustive.
struct StateDesc {
  std::vector<std::vector<int>> rows;

  bool operator==(const StateDesc&) const = default;
  auto operator<=>(const StateDesc&) const = default;
};

// Number of consistent descriptions: n^(free slots). Exact, may be
// astronomically large.
Rational state_desc_count(const IvSet& iv);

// All consistent descriptions, lexicographically by their free slots (slots
// ordered by intervention index then variable position, the last slot
// cycling fastest). Throws SemanticsError when the count exceeds cap.
std::vector<StateDesc> enumerate_state_descs(const IvSet& iv, size_t cap);

// Forced-value map of an intervention formula whose atoms bind constants
// under the identity interpretation. Throws SemanticsError on out-of-scope
// variables, constant indices above n, range variables, and conflicting
// forced values.
Intervention intervention_of_identity(const IvSet& iv, const EventP& int_formula);

// delta |= ev, decided against the description's rows: atoms outside any box
// read the observational row, [alpha]body reads the row of alpha.
bool desc_entails(const IvSet& iv, const StateDesc& d, const EventP& ev);

// Composition law: forcing onto a row a value it already has leaves the row
// unchanged. Effectiveness is built into consistency.
bool desc_composition_closed(const IvSet& iv, const StateDesc& d);

// Influence pairs (cause, effect) read off the support, as variable
// positions into iv.vars: some description gives vars[effect] different
// values under two interventions that force vars[cause] to different values
// and agree everywhere else. A single description decides this, being the
// event that one outcome satisfies all its rows at once.
std::set<std::pair<int, int>> support_influences(const IvSet& iv,
                                                 const std::vector<StateDesc>& support);

// True iff no influence pair runs against the order (effect placed before
// cause). `order` is a permutation of the variable positions 0..k-1; the
// empty support is vacuously compatible.
bool check_support_compatibility(const IvSet& iv, const std::vector<StateDesc>& support,
                                 const std::vector<int>& order);

// Descriptions of the deterministic recursive models over iv.vars with the
// given variable order, generated directly from response functions (each
// variable a total function of its order-predecessors). These are exactly
// the composition-closed descriptions whose singleton support is compatible
// with the order.
std::vector<StateDesc> deterministic_descs(const IvSet& iv, const std::vector<int>& order);

// All partitions of {0..k-1} as restricted-growth strings: s[0] = 0 and
// s[i] <= 1 + max(s[0], ..., s[i-1]); the block count is max(s)+1. Used for
// the equality-casing structure shared with the proof rules that enumerate
// premise sets per partition.
std::vector<std::vector<int>> partitions_rgs(int k);

}  // namespace sumlogic
