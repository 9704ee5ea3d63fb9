#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sumlogic/rational.hpp"

namespace sumlogic {

// Closed interval with rational endpoints. Used for conservative range
// analysis of polynomials over box and simplex domains.
struct Interval {
  Rational lo, hi;
};

// Sparse multivariate polynomial over Rational. Unknowns are identified by
// dense indices 0..n-1 chosen by the caller; the polynomial itself only
// stores the indices it mentions. Zero coefficients are never stored.
class Poly {
public:
  // Monomial: sorted (unknown, exponent) pairs, exponents >= 1.
  using Mono = std::vector<std::pair<int, int>>;

  Poly() = default;

  static Poly constant(const Rational& c);
  static Poly var(int i);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // The constant term (zero if absent).
  Rational constant_term() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  Rational eval(const std::vector<Rational>& x) const;

  // Largest unknown index mentioned, -1 for constants.
  int max_var() const;
  // Total degree, 0 for constants (including zero).
  int degree() const;
  bool is_linear() const { return degree() <= 1; }

  // For linear polynomials: coefficient of unknown i (zero if absent).
  Rational coef_of(int i) const;

  // Conservative enclosure of the polynomial's range when each unknown i
  // ranges over box[i]. Even powers are bounded below by zero. Exact for
  // single-monomial-per-variable occurrences; conservative in general.
  Interval bound_box(const std::vector<Interval>& box) const;

  // Enclosure over the standard simplex {x >= 0, sum x = 1} on n unknowns.
  // Tight for linear polynomials (extrema at vertices); for nonlinear ones
  // this falls back to the [0,1] box.
  Interval bound_simplex(int n) const;

  std::string str() const;  // diagnostics only

  const std::map<Mono, Rational>& terms() const { return terms_; }

private:
  void add_term(const Mono& m, const Rational& c);

  std::map<Mono, Rational> terms_;
};

}  // namespace sumlogic
