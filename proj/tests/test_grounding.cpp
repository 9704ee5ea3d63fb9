#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sumlogic/grounding.hpp"
#include "sumlogic/parser.hpp"
#include "sumlogic/printer.hpp"
#include "sumlogic/scm_io.hpp"
#include "sumlogic/semantics.hpp"
#include "sumlogic/subst.hpp"

using namespace sumlogic;

namespace {
std::string corpus(const std::string& rel) {
  return std::string(SUMLOGIC_CORPUS_DIR) + "/" + rel;
}
}  // namespace

TEST_CASE("sums unfold to explicit instantiations") {
  Signature sig;
  GroundCtx two{2}, three{3};

  // expectation form: coefficient k becomes the k-term P(T) numeral, with
  // the multiplication by 1 elided
  TermP t = parse_term("sum x1 . x1 * P(X=x1)", sig);
  TermP want = parse_term("P(X=c1) + 2 * P(X=c2)", sig);
  CHECK(equal(unfold_sums(t, two), want));

  // a bare sum of P(T) is exactly the numeral N
  t = parse_term("sum x1 . P(T)", sig);
  CHECK(equal(unfold_sums(t, three), tm_num(3)));
  CHECK(as_numeral(unfold_sums(t, three)) == 3);

  // nested sums give the 4-term explicit sum, grouped per outer instance
  t = parse_term("sum x1 . sum y1 . P(X=x1 & Y=y1)", sig);
  want = parse_term(
      "(P(X=c1 & Y=c1) + P(X=c1 & Y=c2)) + (P(X=c2 & Y=c1) + P(X=c2 & Y=c2))",
      sig);
  CHECK(equal(unfold_sums(t, two), want));

  // constant coefficients expand by their value
  t = parse_term("c2@X * P(X=c2)", sig);
  CHECK(equal(unfold_sums(t, two), parse_term("2 * P(X=c2)", sig)));
  t = parse_term("c1@X * P(X=c2)", sig);
  CHECK(equal(unfold_sums(t, two), parse_term("P(X=c2)", sig)));

  // sum-free coefficient-free inputs come back unchanged
  FormulaP f = parse_formula("P(X=c1) >= P(X=c2)", sig);
  CHECK(unfold_sums(f, two) == f);
}

TEST_CASE("unfolding rejects out-of-signature pieces") {
  Signature sig;
  GroundCtx two{2};
  CHECK_THROWS_AS(unfold_sums(parse_term("P(X=c3)", sig), two), SyntaxError);
  CHECK_THROWS_AS(unfold_sums(parse_term("c3@X * P(T)", sig), two),
                  SyntaxError);
  CHECK_THROWS_AS(
      unfold_sums(parse_formula("c3@X ~ c1@X", sig), two), SyntaxError);
  // free range variable as a coefficient has no numeral value
  CHECK_THROWS_AS(unfold_sums(parse_term("x1 * P(T)", sig), two), SyntaxError);
  // but free range variables in events are untouched
  TermP t = parse_term("P(X=x1)", sig);
  CHECK(unfold_sums(t, two) == t);
  CHECK_THROWS_AS(unfold_sums(t, GroundCtx{0}), SyntaxError);
}

TEST_CASE("unfolding preserves satisfaction on identity models") {
  Scm a = load_model(corpus("models/coin_parity.model"));
  Scm b = load_model(corpus("models/coin_agree.model"));
  const char* samples[] = {
      "sum x1 . P(X=x1) >= P(T)",
      "sum x1 . x1 * P(X=x1) >= 3/2",
      "sum x1 . sum y1 . P(X=x1 & Y=y1) == 1",
      "!(sum y1 . y1 * P(Y=y1) >= 2)",
      "sum x1 . P([X=x1] Y=c1) >= P(T)",
      "sum y1 . (P(X=c1) - P(Y=y1)) == 0",
      "sum x1 . x1 * x1 * P(X=x1) >= 2 & P(T) >= P(X=c1)",
  };
  for (const Scm* m : {&a, &b}) {
    Signature sig = m->sig;
    for (const char* s : samples) {
      CAPTURE(s);
      FormulaP f = parse_formula(s, sig);
      FormulaP g = unfold_sums(f, GroundCtx{2});
      CHECK(satisfies(*m, f) == satisfies(*m, g));
    }
  }
}

TEST_CASE("universal closure instantiates free variables") {
  Signature sig;
  GroundCtx two{2};

  FormulaP f = parse_formula("P(X=x1) >= 0", sig);
  FormulaP want = parse_formula("P(X=c1) >= 0 & P(X=c2) >= 0", sig);
  CHECK(equal(universal_closure(f, two), want));

  // closed formulas are returned as-is
  FormulaP closed = parse_formula("P(X=c1) >= 0", sig);
  CHECK(universal_closure(closed, two) == closed);

  // two free variables make the 4-conjunct closure, last symbol fastest
  f = parse_formula("P(X=x1 & Y=y1) >= 0", sig);
  want = parse_formula(
      "((P(X=c1 & Y=c1) >= 0 & P(X=c1 & Y=c2) >= 0) & P(X=c2 & Y=c1) >= 0) & "
      "P(X=c2 & Y=c2) >= 0",
      sig);
  CHECK(equal(universal_closure(f, two), want));
  CHECK(free_range_vars(universal_closure(f, two)).empty());
}

TEST_CASE("closure agrees with universal validity on covering models") {
  Scm a = load_model(corpus("models/coin_parity.model"));
  Scm b = load_model(corpus("models/coin_agree.model"));
  const char* samples[] = {
      "P(X=x1) >= 0",
      "P(X=x1) >= 1/2",
      "P(X=x1 & Y=y1) >= 1/4",
      "x1 ~ c1@X",
      "P(Y=y1 | X=x1) >= P(Y=y1)",
  };
  for (const Scm* m : {&a, &b}) {
    Signature sig = m->sig;
    for (const char* s : samples) {
      CAPTURE(s);
      FormulaP f = parse_formula(s, sig);
      bool closed_sat = satisfies(*m, universal_closure(f, GroundCtx{2}));
      CHECK(valid_in_model(*m, f).valid == closed_sat);
    }
  }
}

TEST_CASE("conditionals are cleared by cross multiplication") {
  Signature sig;

  FormulaP f = parse_formula("P(Y=c1 | X=c1) >= 0", sig);
  FormulaP want = parse_formula("P(Y=c1 & X=c1) >= 0 * P(X=c1)", sig);
  CHECK(equal(eliminate_conditionals(f), want));

  // unconditional input is untouched
  f = parse_formula("P(Y=c1 & X=c1) >= P(X=c1)", sig);
  CHECK(eliminate_conditionals(f) == f);

  // products of conditionals multiply denominators across
  f = parse_formula("P(Y=c1 | Z=c1 & X=c1) * P(X=c1) >= P(T)", sig);
  FormulaP g = eliminate_conditionals(f);
  want = parse_formula(
      "P(Y=c1 & (Z=c1 & X=c1)) * P(X=c1) >= P(Z=c1 & X=c1)", sig);
  CHECK(equal(g, want));

  // sums clear when the condition avoids the bound variable
  f = parse_formula("sum y1 . P(Y=y1 | X=c1) >= P(T)", sig);
  g = eliminate_conditionals(f);
  want = parse_formula("sum y1 . P(Y=y1 & X=c1) >= P(X=c1)", sig);
  CHECK(equal(g, want));

  // ... and are refused when it does not
  f = parse_formula("sum x1 . P(Y=c1 | X=x1) >= P(T)", sig);
  CHECK_THROWS_WITH_AS(eliminate_conditionals(f),
                       doctest::Contains("bound variable"), SyntaxError);
}

TEST_CASE("clearing is an equivalence wherever conditions have positive mass") {
  Scm a = load_model(corpus("models/coin_parity.model"));  // positive model
  Signature sig = a.sig;
  const char* samples[] = {
      "P(Y=c1 | X=c1) >= 1/2",
      "P(Y=c1 | X=c1) >= P(Y=c1 | X=c2)",
      "P(X=c1 | Y=c1) + P(X=c2 | Y=c1) == 1",
      "!(P(Y=c2 | X=c1 & Y=c1) >= 1/4)",
      "P(Y=c1 | !X=c2) >= 1/2 & P(T) >= P(X=c1)",
  };
  for (const char* s : samples) {
    CAPTURE(s);
    FormulaP f = parse_formula(s, sig);
    FormulaP g = eliminate_conditionals(f);
    CHECK(satisfies(a, f) == satisfies(a, g));
  }

  // On a zero-mass condition the two sides differ: the original comparison
  // is undefined-hence-false, the cleared one is 0 >= 0. Witnesses from the
  // cleared form must be re-verified against the original semantics.
  FormulaP f = parse_formula("P(Y=c1 | X=c1 & X=c2) >= 0", sig);
  CHECK(!satisfies(a, f));
  CHECK(satisfies(a, eliminate_conditionals(f)));
}

TEST_CASE("node counts") {
  Signature sig;
  CHECK(formula_size(parse_formula("P(X=c1) >= P(T)", sig)) == 7);
  TermP t = parse_term("sum x1 . sum y1 . P(X=x1 & Y=y1)", sig);
  size_t before = term_size(t);
  size_t after = term_size(unfold_sums(t, GroundCtx{2}));
  CHECK(before == 7);   // two Sum nodes over a 5-node probability
  CHECK(after == 23);   // four 5-node probabilities under three Adds
}
