#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sumlogic/polynomial.hpp"

namespace sumlogic {

// Comparison of a polynomial against zero.
enum class Rel { GE, GT, EQ };

// Boolean combination of polynomial atoms. Leaves are True/False/Atom; inner
// nodes are Not (one child) and And/Or (n-ary). Value semantics, the trees
// involved are tiny.
struct BTree {
  enum class Kind { True, False, Atom, Not, And, Or };
  Kind kind = Kind::True;
  Poly poly;  // Atom only
  Rel rel = Rel::GE;
  std::vector<BTree> kids;

  static BTree make_true() { return BTree{}; }
  static BTree make_false() {
    BTree b;
    b.kind = Kind::False;
    return b;
  }
  static BTree atom(Poly p, Rel r);
  static BTree negate(BTree b);
  static BTree conj(std::vector<BTree> kids);
  static BTree disj(std::vector<BTree> kids);
};

// Decision problem over n unknowns: do the side constraints and the root tree
// hold simultaneously for some point of the domain?
//
// Simplex domain: x >= 0 and sum x = 1 are implicit (strict > 0 per unknown
// when strict_positive). Box domain: each unknown ranges over [box_lo,
// box_hi] with no normalization.
struct ConstraintSystem {
  enum class Domain { Simplex, Box };
  int n = 0;
  Domain domain = Domain::Simplex;
  bool strict_positive = false;
  Rational box_lo = Rational(-1), box_hi = Rational(1);
  std::vector<BTree> side;  // conjoined with root
  BTree root;

  // Exact truth of root && side at a point (no domain check).
  bool holds_at(const std::vector<Rational>& x) const;
  // Domain membership, including normalization/positivity for simplexes.
  bool in_domain(const std::vector<Rational>& x) const;
};

// Three-valued truth under range analysis.
enum class Tri { False, Unknown, True };

// Conservative evaluation of the system over its whole domain: True means
// every domain point satisfies it, False means none does, Unknown otherwise.
Tri prune(const ConstraintSystem& cs);

// Exact feasibility for systems that are conjunctions of linear atoms after
// pushing negations down (Fourier-Motzkin elimination, strictness tracked).
// nullopt when the system is not conjunctive-linear or exceeds the internal
// size caps; otherwise a definite verdict.
std::optional<bool> linear_feasible(const ConstraintSystem& cs);

}  // namespace sumlogic
