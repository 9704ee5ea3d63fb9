#include "sumlogic/solver.hpp"

#include <functional>

namespace sumlogic {

namespace {

constexpr int kMaxUnknowns = 16;
constexpr double kMaxCandidates = 4e6;

double simplex_grid_size(int n, int max_denom) {
  // sum over d of C(d+n-1, n-1)
  double total = 0;
  for (int d = 1; d <= max_denom; ++d) {
    double c = 1;
    for (int k = 1; k < n; ++k)
      c = c * (d + k) / k;
    total += c;
    if (total > 2 * kMaxCandidates)
      break;
  }
  return total;
}

}  // namespace

SolveOutcome solve_constraints_small(const ConstraintSystem& cs, int max_denom,
                                     const AcceptFn& accept) {
  if (cs.n > kMaxUnknowns)
    throw SolveError("solver cap exceeded: " + std::to_string(cs.n) +
                     " unknowns (limit " + std::to_string(kMaxUnknowns) + ")");
  if (max_denom < 1)
    throw SolveError("denominator bound must be positive");

  // Analytic phase: range pruning, then exact linear elimination.
  if (prune(cs) == Tri::False)
    return {SolveOutcome::Kind::Infeasible, {}, "interval pruning"};
  if (auto lf = linear_feasible(cs); lf.has_value() && !*lf)
    return {SolveOutcome::Kind::Infeasible, {}, "linear elimination"};

  SolveOutcome out;
  std::vector<Rational> x(static_cast<size_t>(cs.n));
  bool found = false;

  auto try_point = [&](const std::vector<long>& a, long d) {
    for (size_t i = 0; i < a.size(); ++i)
      x[i] = Rational(a[i], d);
    if (cs.holds_at(x) && cs.in_domain(x) && (!accept || accept(x))) {
      out.kind = SolveOutcome::Kind::Witness;
      out.x = x;
      found = true;
    }
    return found;
  };

  if (cs.domain == ConstraintSystem::Domain::Simplex) {
    if (simplex_grid_size(cs.n, max_denom) > kMaxCandidates)
      throw SolveError("solver cap exceeded: simplex grid too large");
    std::vector<long> a(static_cast<size_t>(cs.n), 0);
    // Compositions of d into n parts, lexicographic; parts >= 1 when strict.
    std::function<bool(int, long, long)> gen = [&](int i, long rest, long d) {
      long lo = cs.strict_positive ? 1 : 0;
      if (i == cs.n - 1) {
        if (rest < lo)
          return false;
        a[static_cast<size_t>(i)] = rest;
        return try_point(a, d);
      }
      for (long v = lo; v <= rest; ++v) {
        a[static_cast<size_t>(i)] = v;
        if (gen(i + 1, rest - v, d))
          return true;
      }
      return false;
    };
    if (cs.n == 0) {
      // Empty simplex; the analytic phase already refuted the normalization.
      return {SolveOutcome::Kind::NoWitnessAtBound, {}, ""};
    }
    for (long d = max_denom; d >= 1 && !found; --d)
      gen(0, d, d);
  } else {
    double per_var = 0, total = 0;
    for (long d = max_denom; d >= 1; --d) {
      Rational span = cs.box_hi - cs.box_lo;
      per_var = span.num_long() * static_cast<double>(d) /
                    static_cast<double>(span.den_long() ? span.den_long() : 1) +
                1;
      double t = 1;
      for (int i = 0; i < cs.n; ++i)
        t *= per_var;
      total += t;
    }
    if (total > kMaxCandidates)
      throw SolveError("solver cap exceeded: box grid too large");
    if (cs.n == 0) {
      std::vector<Rational> empty;
      if (cs.holds_at(empty) && (!accept || accept(empty)))
        return {SolveOutcome::Kind::Witness, {}, ""};
      return {SolveOutcome::Kind::NoWitnessAtBound, {}, ""};
    }
    std::vector<long> a(static_cast<size_t>(cs.n));
    std::vector<long> seq;
    std::function<bool(int, long)> gen = [&](int i, long d) {
      if (i == cs.n) {
        return try_point(a, d);
      }
      for (long v : seq) {
        a[static_cast<size_t>(i)] = v;
        if (gen(i + 1, d))
          return true;
      }
      return false;
    };
    for (long d = max_denom; d >= 1 && !found; --d) {
      // Numerator range covering [box_lo, box_hi] at denominator d; bounds
      // are rounded inward so every candidate stays inside the box.
      Rational lo_r = cs.box_lo * Rational(d), hi_r = cs.box_hi * Rational(d);
      long lo = lo_r.num_long() / (lo_r.den_long() ? lo_r.den_long() : 1);
      while (Rational(lo, 1) < lo_r)
        ++lo;
      long hi = hi_r.num_long() / (hi_r.den_long() ? hi_r.den_long() : 1);
      while (Rational(hi, 1) > hi_r)
        --hi;
      if (lo > hi)
        continue;
      // Magnitude order, nonnegative first: small witnesses come out first.
      seq.clear();
      long m = std::max(std::abs(lo), std::abs(hi));
      for (long k = 0; k <= m; ++k) {
        if (k == 0) {
          if (lo <= 0 && 0 <= hi)
            seq.push_back(0);
          continue;
        }
        if (k <= hi && k >= lo)
          seq.push_back(k);
        if (-k >= lo && -k <= hi)
          seq.push_back(-k);
      }
      gen(0, d);
    }
  }

  if (found)
    return out;
  return {SolveOutcome::Kind::NoWitnessAtBound, {}, ""};
}

}  // namespace sumlogic
