#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumlogic/constraints.hpp"

namespace sumlogic {

struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveOutcome {
  enum class Kind {
    Witness,           // x satisfies the system, verified exactly
    Infeasible,        // proven empty by range analysis or linear elimination
    NoWitnessAtBound,  // grid exhausted; inconclusive for satisfiability
  };
  Kind kind = Kind::NoWitnessAtBound;
  std::vector<Rational> x;
  std::string note;
};

// Extra test a grid point must pass beyond the constraint system itself;
// points it rejects are skipped and the scan continues.
using AcceptFn = std::function<bool(const std::vector<Rational>&)>;

// Exhaustive search over rational vectors with denominators <= max_denom.
// Candidates share a common denominator d, iterated d = max_denom down to 1
// (the coarser grids are revisited only through denominators that do not
// divide max_denom); numerator vectors are iterated in ascending
// lexicographic order, so the first witness is deterministic. Simplex
// domains enumerate compositions of d; box domains enumerate all numerators
// in [box_lo*d, box_hi*d] by magnitude, nonnegative first (0, 1, -1, 2, -2,
// ...), so the first witness has the smallest coordinates the grid allows.
// Infeasibility is first attempted analytically
// (interval pruning, then linear elimination), making the Infeasible verdict
// sound for every denominator bound; the accept callback cannot strengthen
// that verdict since it only thins the witness set.
//
// Caps: at most 16 unknowns and ~4e6 grid candidates; beyond either, throws
// SolveError.
SolveOutcome solve_constraints_small(const ConstraintSystem& cs, int max_denom,
                                     const AcceptFn& accept = {});

}  // namespace sumlogic
