#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sumlogic/fragment.hpp"
#include "sumlogic/parser.hpp"
#include "sumlogic/printer.hpp"
#include "sumlogic/subst.hpp"

using namespace sumlogic;

namespace {
FormulaP reparse(const FormulaP& f, Signature& sig) {
  return parse_formula(print_formula(f, sig), sig);
}
}  // namespace

TEST_CASE("parse/print round trip") {
  const char* samples[] = {
      "P(X=c1) >= P(X=c2)",
      "P(X=c1 & Y=c2 | Y=c1) >= P(T)",
      "sum x1 . P(X=x1) >= P(T)",
      "sum x1 . sum y1 . P(X=x1 & Y=y1) >= P(!T)",
      "P([X=c1] Y=c2) >= P([X=c1 & Z=c1] Y=c2 & Y=c2)",
      "x1 ~ c2@X",
      "!(c1@X ~ c2@X) & P(T) >= P(X=c1)",
      "P(X=c1 || X=c2) >= P(T)",
      "sum x1 . x1 * P(X=x1) >= c2@X * P(X=c2)",
      "-P(X=c1) + P(T) >= P(X=c2) - P(X=c1)",
      "P(T) + P(T) >= P(T) * P(X=c1)",
  };
  for (const char* s : samples) {
    CAPTURE(s);
    Signature sig;
    FormulaP f = parse_formula(s, sig);
    FormulaP g = reparse(f, sig);
    CHECK(equal(f, g));
  }
}

TEST_CASE("derived connectives expand structurally") {
  Signature sig;
  FormulaP f = parse_formula("P(X=c1) >= P(T) -> P(X=c1) >= P(T)", sig);
  // a -> b is !(a & !b)
  CHECK(f->kind == Formula::Kind::Not);
  CHECK(f->a->kind == Formula::Kind::And);
  CHECK(f->a->b->kind == Formula::Kind::Not);

  FormulaP e = parse_formula("P(X=c1) == P(X=c2)", sig);
  CHECK(e->kind == Formula::Kind::And);
  CHECK(e->a->kind == Formula::Kind::Geq);
  CHECK(e->b->kind == Formula::Kind::Geq);

  FormulaP l = parse_formula("P(X=c1) <= P(X=c2)", sig);
  CHECK(l->kind == Formula::Kind::Geq);
  Signature sig2;
  FormulaP l2 = parse_formula("P(X=c2) >= P(X=c1)", sig2);
  CHECK(equal(l, l2));

  FormulaP g = parse_formula("P(X=c1) > P(X=c2)", sig);
  CHECK(g->kind == Formula::Kind::And);
  CHECK(g->b->kind == Formula::Kind::Not);

  FormulaP q = parse_formula("x1 !~ c1@X", sig);
  CHECK(q->kind == Formula::Kind::Not);
  CHECK(q->a->kind == Formula::Kind::SymEq);
}

TEST_CASE("rational comparisons clear denominators") {
  Signature sig;
  FormulaP f = parse_formula("P(X=c1) >= 1/2", sig);
  // t >= 1/2 becomes t * (P(T)+P(T)) >= P(T)
  Signature sig2;
  FormulaP want = parse_formula("P(X=c1) * (P(T) + P(T)) >= P(T)", sig2);
  CHECK(equal(f, want));

  FormulaP h = parse_formula("P(X=c1)/P(X=c2) >= 2", sig);
  Signature sig3;
  FormulaP want2 = parse_formula("P(X=c1) >= (P(T) + P(T)) * P(X=c2)", sig3);
  CHECK(equal(h, want2));

  // numerals
  CHECK(equal(parse_term("0", sig), tm_prob(ev_bot())));
  CHECK(equal(parse_term("3", sig), tm_num(3)));
  CHECK(as_numeral(parse_term("7", sig)) == 7);
  CHECK(as_numeral(parse_term("0", sig)) == 0);
}

TEST_CASE("bound range variable may not appear in a denominator") {
  Signature sig;
  CHECK_THROWS_AS(parse_formula("sum x1 . P(X=x1)/x1 >= 1", sig), SyntaxError);
  // unbound denominators are fine
  CHECK_NOTHROW(parse_formula("P(X=c1)/x1 >= 1", sig));
}

TEST_CASE("event grammar") {
  Signature sig;
  EventP e = parse_event("X=c1 || X=c2", sig);
  CHECK(e->kind == Event::Kind::Not);  // !(!a & !b)
  CHECK(e->a->kind == Event::Kind::And);

  CHECK_THROWS_AS(parse_event("[!X=c1] Y=c1", sig), ParseError);
  CHECK_THROWS_AS(parse_event("[X=c1] [Y=c1] Z=c1", sig), ParseError);
  CHECK_NOTHROW(parse_event("[X=c1 & Y=y1] Z=c2 & !Z=c1", sig));

  // conditioning bar vs disjunction inside P(...)
  FormulaP f = parse_formula("P(X=c1 || X=c2 | Y=c1) >= P(T)", sig);
  CHECK(f->t1->ev->kind == Event::Kind::Not);
  CHECK(f->t1->cond->kind == Event::Kind::Atom);
}

TEST_CASE("range variables belong to their variable") {
  Signature sig;
  CHECK_THROWS_AS(parse_formula("P(X=y1) >= P(T)", sig), ParseError);
  CHECK_THROWS_AS(parse_formula("P(X=c1@Y) >= P(T)", sig), ParseError);
  FormulaP f = parse_formula("P(Foo=foo2) >= P(T)", sig);
  CHECK(sig.lookup("Foo").has_value());
  CHECK(free_range_vars(f).count(range_sym(*sig.lookup("Foo"), 2)) == 1);
}

TEST_CASE("signature naming rules") {
  Signature sig;
  CHECK_THROWS_AS(sig.add_var("x"), SyntaxError);
  CHECK_THROWS_AS(sig.add_var("X2"), SyntaxError);
  CHECK_THROWS_AS(sig.add_var("Sum"), SyntaxError);
  CHECK_THROWS_AS(sig.add_var("C"), SyntaxError);
  CHECK_THROWS_AS(sig.add_var("P"), SyntaxError);
  VarId x = sig.add_var("X");
  CHECK_THROWS_AS(sig.add_var("X"), SyntaxError);
  CHECK(sig.dsym_str(const_sym(x, 2)) == "c2@X");
  CHECK(sig.dsym_str(range_sym(x, 1)) == "x1");
  sig.set_bound(2);
  CHECK(sig.index_ok(2));
  CHECK(!sig.index_ok(3));
}

TEST_CASE("fragment classification") {
  Signature sig;
  auto info = classify_fragment(parse_formula("P([X=c1] Y=c1) >= P(T)", sig));
  CHECK(info.causal);
  CHECK(info.closed);
  CHECK(info.circle);
  CHECK(info.cond_guarded);
  CHECK(info.max_const_index == 1);

  info = classify_fragment(parse_formula("sum x1 . x1 * P(X=x1) >= P(X=c3)", sig));
  CHECK(!info.causal);
  CHECK(info.closed);
  CHECK(!info.circle);  // coefficient occurs
  CHECK(info.max_const_index == 3);

  info = classify_fragment(parse_formula("P(X=x1) >= P(T)", sig));
  CHECK(!info.closed);

  // Condition with two literals on one variable is not guarded (a model
  // whose range has exactly the two named values gives it probability zero).
  info = classify_fragment(parse_formula("P(Y=c1 | !X=c1 & !X=c2) >= P(T)", sig));
  CHECK(!info.cond_guarded);
  info = classify_fragment(parse_formula("P(Y=c1 | !X=c1 & Y=c2) >= P(T)", sig));
  CHECK(info.cond_guarded);
  info = classify_fragment(parse_formula("P(Y=c1 | X=c1 || X=c2) >= P(T)", sig));
  CHECK(!info.cond_guarded);  // disjunction is not a literal conjunction
}

TEST_CASE("substitution") {
  Signature sig;
  FormulaP f = parse_formula("sum x1 . P(X=x1 & Y=y1) >= P(X=x2)", sig);
  VarId X = *sig.lookup("X"), Y = *sig.lookup("Y");

  // free x2 replaced, bound x1 untouched
  FormulaP g = substitute_range_var(f, range_sym(X, 2), const_sym(X, 1));
  Signature sig2;
  FormulaP want = parse_formula("sum x1 . P(X=x1 & Y=y1) >= P(X=c1)", sig2);
  CHECK(equal(g, want));

  // substituting the bound symbol is a no-op
  CHECK(equal(substitute_range_var(f, range_sym(X, 1), const_sym(X, 2)), f));

  // coefficients, equalities and atoms are all substituted
  FormulaP h = parse_formula("y1 ~ c2@Y & P(Y=y1) >= y1 * P(T)", sig);
  FormulaP h2 = substitute_range_var(h, range_sym(Y, 1), const_sym(Y, 2));
  // parsed in the same signature so the variable ids line up
  FormulaP want2 = parse_formula("c2@Y ~ c2@Y & P(Y=c2) >= c2@Y * P(T)", sig);
  CHECK(equal(h2, want2));

  // capture is refused: x2 := x1 under the binder sum x1
  FormulaP c = parse_formula("sum x1 . P(X=x1 & X=x2) >= P(T)", sig);
  CHECK_THROWS_AS(substitute_range_var(c, range_sym(X, 2), range_sym(X, 1)),
                  SyntaxError);
  // so is changing the sort of an atom's value
  FormulaP d = parse_formula("P(Y=y1) >= P(T)", sig);
  CHECK_THROWS_AS(substitute_range_var(d, range_sym(Y, 1), range_sym(X, 1)),
                  SyntaxError);
}

TEST_CASE("event substitution rewrites matching subtrees") {
  Signature sig;
  TermP t = parse_term("P(X=x1)", sig);
  VarId X = *sig.lookup("X");
  EventP pat = ev_atom(X, range_sym(X, 1));
  EventP repl = parse_event("X=c1 || X=c2", sig);
  TermP r = substitute_event(t, pat, repl);
  Signature sig2;
  CHECK(equal(r, parse_term("P(X=c1 || X=c2)", sig2)));
}

TEST_CASE("sequent parsing") {
  Signature sig;
  Sequent s = parse_sequent("P(X=c1) >= P(T); P(X=c2) >= P(!T) |- P(X=c1) >= P(X=c2)", sig);
  CHECK(s.premises.size() == 2);
  Sequent s2 = parse_sequent("|- P(T) >= P(!T)", sig);
  CHECK(s2.premises.empty());
  std::string printed = print_sequent(s, sig);
  Sequent s3 = parse_sequent(printed, sig);
  CHECK(s3.premises.size() == 2);
  CHECK(equal(s3.conclusion, s.conclusion));
}

TEST_CASE("formula files skip comments and blanks") {
  Signature sig;
  auto fs = parse_formula_file(
      "# header\nP(X=c1) >= P(T)\n\nP(X=c2) >= P(T) # trailing\n", sig);
  CHECK(fs.size() == 2);
}
