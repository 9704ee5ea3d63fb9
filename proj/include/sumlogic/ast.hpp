#pragma once

#include <memory>
#include <vector>

#include "sumlogic/signature.hpp"

namespace sumlogic {

// Events are the base formulas probabilities are taken of: T, atoms V=d,
// negation, conjunction, and intervention boxes [alpha]beta. Box bodies and
// intervention formulas may not themselves contain boxes; intervention
// formulas are conjunctions of atoms and T only. Unboxed atoms in a causal
// event are read observationally (an implicit empty intervention).
struct Event;
using EventP = std::shared_ptr<const Event>;

struct Event {
  enum class Kind { Top, Atom, Not, And, Box };
  Kind kind;
  VarId var = -1;  // Atom
  DSym val{};      // Atom
  EventP a, b;     // Not: a; And: a,b; Box: a = intervention, b = body
};

EventP ev_top();
EventP ev_bot();  // !T
EventP ev_atom(VarId v, DSym d);
EventP ev_not(EventP e);
EventP ev_and(EventP a, EventP b);
EventP ev_or(EventP a, EventP b);  // derived: !(!a & !b)
EventP ev_box(EventP intervention, EventP body);

// Terms: probabilities P(ev|cond), range sums, +, *, unary -, and symbol
// coefficients (a constant or range variable used as a number).
struct Term;
using TermP = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Prob, Sum, Add, Mul, Neg, Coef };
  Kind kind;
  EventP ev, cond;  // Prob
  DSym bound{};     // Sum (a range symbol)
  DSym sym{};       // Coef
  TermP a, b;       // Sum: a = body; Add/Mul: a,b; Neg: a
};

TermP tm_prob(EventP ev, EventP cond);
TermP tm_prob(EventP ev);  // condition T
TermP tm_sum(DSym range_var, TermP body);
TermP tm_add(TermP a, TermP b);
TermP tm_mul(TermP a, TermP b);
TermP tm_neg(TermP a);
TermP tm_coef(DSym d);
// Canonical numerals: 0 is P(!T), n >= 1 is a left-nested sum of n copies of
// P(T).
TermP tm_num(long n);

// Formulas: polynomial comparisons t >= t', symbol equalities d ~ d',
// negation, conjunction.
struct Formula;
using FormulaP = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Geq, SymEq, Not, And };
  Kind kind;
  TermP t1, t2;       // Geq
  DSym d1{}, d2{};    // SymEq
  FormulaP a, b;      // Not: a; And: a,b
};

FormulaP fm_geq(TermP a, TermP b);
FormulaP fm_symeq(DSym a, DSym b);
FormulaP fm_not(FormulaP a);
FormulaP fm_and(FormulaP a, FormulaP b);
// Derived connectives and comparisons, expanded structurally.
FormulaP fm_or(FormulaP a, FormulaP b);    // !(!a & !b)
FormulaP fm_imp(FormulaP a, FormulaP b);   // !(a & !b)
FormulaP fm_iff(FormulaP a, FormulaP b);   // (a -> b) & (b -> a)
FormulaP fm_eq(TermP a, TermP b);          // a >= b & b >= a
FormulaP fm_leq(TermP a, TermP b);         // b >= a
FormulaP fm_gt(TermP a, TermP b);          // a >= b & !(b >= a)
FormulaP fm_lt(TermP a, TermP b);          // b >= a & !(a >= b)
FormulaP fm_and_all(const std::vector<FormulaP>& fs);  // left-nested; fs nonempty

struct Sequent {
  std::vector<FormulaP> premises;
  FormulaP conclusion;
};

bool equal(const EventP& a, const EventP& b);
bool equal(const TermP& a, const TermP& b);
bool equal(const FormulaP& a, const FormulaP& b);

size_t hash_of(const EventP& e);
size_t hash_of(const TermP& t);
size_t hash_of(const FormulaP& f);

// True when the term is the canonical numeral for n (n >= 0); returns n.
std::optional<long> as_numeral(const TermP& t);
bool is_one_numeral(const TermP& t);

}  // namespace sumlogic
