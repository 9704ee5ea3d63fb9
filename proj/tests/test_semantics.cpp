#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sumlogic/parser.hpp"
#include "sumlogic/scm_io.hpp"
#include "sumlogic/semantics.hpp"

using namespace sumlogic;

namespace {
std::string corpus(const std::string& rel) {
  return std::string(SUMLOGIC_CORPUS_DIR) + "/" + rel;
}
XReal ev(const Scm& m, const char* term) {
  Signature sig = m.sig;
  return eval_term(m, parse_term(term, sig));
}
bool sat(const Scm& m, const char* formula) {
  Signature sig = m.sig;
  return satisfies(m, parse_formula(formula, sig));
}
}  // namespace

TEST_CASE("interventional probabilities separate the coin pair") {
  Scm a = load_model(corpus("models/coin_parity.model"));
  Scm b = load_model(corpus("models/coin_agree.model"));
  REQUIRE(validate(a).ok);
  REQUIRE(validate(b).ok);

  CHECK(ev(a, "P([X=c1] Y=c1)") == XReal::finite(Rational(1, 2)));
  CHECK(ev(a, "P([X=c2] Y=c1)") == XReal::finite(Rational(1, 2)));
  CHECK(ev(b, "P([X=c1] Y=c1)") == XReal::finite(Rational(3, 4)));
  CHECK(ev(b, "P([X=c2] Y=c1)") == XReal::finite(Rational(1, 4)));

  const char* eq = "P([X=c1] Y=c1) == P([X=c2] Y=c1)";
  CHECK(sat(a, eq));
  CHECK(!sat(b, eq));

  // The parity model hides the influence observationally.
  CHECK(ev(a, "P(Y=c1)") == XReal::finite(Rational(1, 2)));
  CHECK(ev(a, "P(Y=c1 | X=c1)") == XReal::finite(Rational(1, 2)));
  CHECK(ev(a, "P(X=c1 & Y=c1)") == XReal::finite(Rational(1, 4)));
  // Forcing X still flips Y on every outcome.
  CHECK(ev(a, "P([X=c1] Y=c2 & [X=c2] Y=c1)") == XReal::finite(Rational(1, 2)));

  CHECK(ev(b, "P(Y=c1)") == XReal::finite(Rational(3, 4)));
  CHECK(ev(b, "P(Y=c1 | X=c1)") == XReal::finite(Rational(1)));
  CHECK(ev(b, "P(Y=c1 | X=c2)") == XReal::finite(Rational(1, 2)));
}

TEST_CASE("terms evaluate exactly") {
  Scm a = load_model(corpus("models/coin_parity.model"));
  CHECK(ev(a, "2") == XReal::finite(Rational(2)));
  CHECK(ev(a, "0") == XReal::finite(Rational(0)));
  CHECK(ev(a, "sum x1 . P(X=x1)") == XReal::finite(Rational(1)));
  CHECK(ev(a, "sum x1 . x1 * P(X=x1)") == XReal::finite(Rational(3, 2)));
  CHECK(ev(a, "c2@X * P(T)") == XReal::finite(Rational(2)));
  CHECK(ev(a, "P(X=c1) - P(Y=c1)") == XReal::finite(Rational(0)));
  CHECK(ev(a, "sum x1 . sum y1 . P(X=x1 & Y=y1)") == XReal::finite(Rational(1)));
}

TEST_CASE("conditioning on a null event is undefined") {
  Scm a = load_model(corpus("models/coin_parity.model"));
  CHECK(ev(a, "P(Y=c1 | !T)") == XReal::undef());
  CHECK(ev(a, "P(Y=c1 | !T) + P(T)") == XReal::undef());
  CHECK(ev(a, "0 * P(Y=c1 | !T)") == XReal::undef());  // undef absorbs
  CHECK(ev(a, "sum x1 . P(Y=c1 | X=x1 & Y=c1 & Y=c2)") == XReal::undef());

  // Comparisons with an undefined side are false, so the negation holds.
  CHECK(!sat(a, "P(Y=c1 | !T) >= 0"));
  CHECK(!sat(a, "0 >= P(Y=c1 | !T)"));
  CHECK(sat(a, "!(P(Y=c1 | !T) >= 0)"));
}

TEST_CASE("symbol equality formulas") {
  Scm a = load_model(corpus("models/coin_parity.model"));
  CHECK(sat(a, "c1@X ~ c1@X"));
  CHECK(!sat(a, "c1@X ~ c2@X"));
  CHECK(sat(a, "c1@X !~ c2@X"));
  Signature sig = a.sig;
  FormulaP f = parse_formula("x1 ~ c2@X", sig);
  CHECK(satisfies(a, f, {{range_sym(0, 1), 2}}));
  CHECK(!satisfies(a, f, {{range_sym(0, 1), 1}}));
}

TEST_CASE("free range variables are universal") {
  Scm a = load_model(corpus("models/coin_parity.model"));
  Signature sig = a.sig;

  auto r = valid_in_model(a, parse_formula("P(X=x1) >= P(!T)", sig));
  CHECK(r.valid);

  r = valid_in_model(a, parse_formula("x1 ~ c1@X", sig));
  CHECK(!r.valid);
  REQUIRE(r.counterexample.has_value());
  CHECK(r.counterexample->at(range_sym(0, 1)) == 2);

  // Two free variables enumerate the product of the ranges.
  r = valid_in_model(a, parse_formula("P(X=x1 & Y=y1) >= 1/4", sig));
  CHECK(r.valid);
  Scm b = load_model(corpus("models/coin_agree.model"));
  r = valid_in_model(b, parse_formula("P(X=x1 & Y=y1) >= 1/4", sig));
  CHECK(!r.valid);  // (1,2) and (2,1) have mass 0 and 1/4 is positive
}

TEST_CASE("sequent satisfaction") {
  Scm a = load_model(corpus("models/coin_parity.model"));
  Signature sig = a.sig;

  // Invalid premise satisfies the sequent vacuously.
  Sequent s = parse_sequent("P(X=c1) >= P(T) |- P(!T) >= P(T)", sig);
  auto rep = satisfies_sequent(a, s);
  CHECK(rep.satisfied);
  CHECK(rep.invalid_premise == 0);

  // Valid premises force the conclusion to be checked.
  s = parse_sequent("P(X=c1) >= 1/2 |- P(!T) >= P(T)", sig);
  rep = satisfies_sequent(a, s);
  CHECK(!rep.satisfied);
  CHECK(rep.invalid_premise == -1);

  s = parse_sequent("P(X=c1) >= 1/2 |- P(X=x1) >= 1/2", sig);
  rep = satisfies_sequent(a, s);
  CHECK(rep.satisfied);
  CHECK(rep.conclusion_valid);
}

TEST_CASE("evaluation traces record probability lookups") {
  Scm a = load_model(corpus("models/coin_parity.model"));
  Signature sig = a.sig;
  std::vector<TraceEntry> trace;
  Evaluator e(a, &trace);
  Assignment iota;
  e.eval_term(parse_term("P(X=c1) + P(Y=c1 | !T)", sig), iota);
  REQUIRE(trace.size() == 2);
  CHECK(trace[0].value == "1/2");
  CHECK(trace[1].value == "undef");
  CHECK(trace[0].what.find("P(X=c1)") != std::string::npos);
}

TEST_CASE("nested boxes are rejected at evaluation") {
  Scm a = load_model(corpus("models/coin_parity.model"));
  EventP inner = ev_box(ev_atom(0, const_sym(0, 1)), ev_atom(1, const_sym(1, 1)));
  EventP nested = ev_box(ev_atom(1, const_sym(1, 2)), inner);
  CHECK_THROWS_AS(event_probability(a, nested), SemanticsError);
}
