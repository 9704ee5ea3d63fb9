#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "sumlogic/parser.hpp"
#include "sumlogic/sat.hpp"
#include "sumlogic/scm.hpp"
#include "sumlogic/semantics.hpp"
#include "sumlogic/solver.hpp"
#include "sumlogic/state_desc.hpp"

using namespace sumlogic;

namespace {

// Two binary variables X (id 0) and Y (id 1).
Signature sig_xy() {
  Signature s;
  s.add_var("X");
  s.add_var("Y");
  s.set_bound(2);
  return s;
}

Signature sig_x() {
  Signature s;
  s.add_var("X");
  s.set_bound(2);
  return s;
}

// Lattice order for make_ivset({X, Y}, 2): the choice for Y cycles fastest,
// untouched before forced, do() first:
//   0 do()        1 do(Y=1)      2 do(Y=2)
//   3 do(X=1)     4 do(X=1,Y=1)  5 do(X=1,Y=2)
//   6 do(X=2)     7 do(X=2,Y=1)  8 do(X=2,Y=2)
StateDesc desc_copy() {
  // X exogenous 1, Y copies X, X ignores Y.
  return StateDesc{{{1, 1},
                    {1, 1},
                    {1, 2},
                    {1, 1},
                    {1, 1},
                    {1, 2},
                    {2, 2},
                    {2, 1},
                    {2, 2}}};
}

StateDesc desc_const2() {
  // Both mechanisms constantly 2.
  return StateDesc{{{2, 2},
                    {2, 1},
                    {2, 2},
                    {1, 2},
                    {1, 1},
                    {1, 2},
                    {2, 2},
                    {2, 1},
                    {2, 2}}};
}

StateDesc desc_cyclic() {
  // Y copies X and X copies Y; observationally (1,1). Composition closed but
  // compatible with no recursive order.
  return StateDesc{{{1, 1},
                    {1, 1},
                    {2, 2},
                    {1, 1},
                    {1, 1},
                    {1, 2},
                    {2, 2},
                    {2, 1},
                    {2, 2}}};
}

}  // namespace

TEST_CASE("restricted growth strings enumerate set partitions") {
  auto p1 = partitions_rgs(1);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0] == std::vector<int>{0});

  auto p3 = partitions_rgs(3);
  std::vector<std::vector<int>> want = {
      {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 2}};
  CHECK(p3 == want);

  // Bell numbers.
  CHECK(partitions_rgs(4).size() == 15);
  CHECK(partitions_rgs(5).size() == 52);
}

TEST_CASE("intervention lattice shape and description counts") {
  SUBCASE("one binary variable") {
    auto iv = make_ivset({0}, 2);
    REQUIRE(iv.size() == 3);
    CHECK(iv.list[0].empty());
    CHECK(iv.list[1] == Intervention{{0, 1}});
    CHECK(iv.list[2] == Intervention{{0, 2}});
    CHECK(iv.index_of({{0, 2}}) == 2);
    CHECK(iv.index_of({{0, 3}}) == -1);

    CHECK(state_desc_count(iv) == Rational(2));
    auto descs = enumerate_state_descs(iv, 100);
    REQUIRE(descs.size() == 2);
    CHECK(descs[0].rows == std::vector<std::vector<int>>{{1}, {1}, {2}});
    CHECK(descs[1].rows == std::vector<std::vector<int>>{{2}, {1}, {2}});
  }

  SUBCASE("two binary variables") {
    auto iv = make_ivset({0, 1}, 2);
    REQUIRE(iv.size() == 9);
    CHECK(iv.list[0].empty());
    CHECK(iv.list[1] == Intervention{{1, 1}});
    CHECK(iv.list[3] == Intervention{{0, 1}});
    CHECK(iv.list[8] == Intervention{{0, 2}, {1, 2}});

    // Each description assigns every intervention a row consistent with the
    // forced values, so the count is the product over the lattice of
    // n^(free variables).
    Rational oracle(1);
    for (const auto& a : iv.list) {
      int free = 2 - (int)a.size();
      for (int i = 0; i < free; ++i) oracle = oracle * Rational(2);
    }
    CHECK(oracle == Rational(64));
    CHECK(state_desc_count(iv) == oracle);
    CHECK(enumerate_state_descs(iv, 1000).size() == 64);
  }

  SUBCASE("no scoped variables leaves the single empty description") {
    auto iv = make_ivset({}, 2);
    REQUIRE(iv.size() == 1);
    CHECK(state_desc_count(iv) == Rational(1));
    REQUIRE(enumerate_state_descs(iv, 10).size() == 1);
    CHECK(enumerate_state_descs(iv, 10)[0].rows ==
          std::vector<std::vector<int>>{{}});
  }

  SUBCASE("three binary variables are far beyond enumeration") {
    auto iv = make_ivset({0, 1, 2}, 2);
    REQUIRE(iv.size() == 27);
    Rational oracle(1);
    for (const auto& a : iv.list) {
      int free = 3 - (int)a.size();
      for (int i = 0; i < free; ++i) oracle = oracle * Rational(2);
    }
    CHECK(state_desc_count(iv) == oracle);
    CHECK(state_desc_count(iv).str() == "134217728");
    CHECK_THROWS_AS(enumerate_state_descs(iv, 1u << 20), SemanticsError);
    try {
      enumerate_state_descs(iv, 1u << 20);
    } catch (const SemanticsError& e) {
      CHECK(std::string(e.what()).find("budget") != std::string::npos);
    }
  }

  SUBCASE("ternary pair") {
    auto iv = make_ivset({0, 1}, 3);
    REQUIRE(iv.size() == 16);
    CHECK(state_desc_count(iv) == Rational(6561));  // 3^8
    CHECK(enumerate_state_descs(iv, 10000).size() == 6561);
  }
}

TEST_CASE("composition closure and deterministic descriptions") {
  auto iv = make_ivset({0, 1}, 2);
  auto all = enumerate_state_descs(iv, 1000);
  REQUIRE(all.size() == 64);

  std::vector<StateDesc> closed;
  for (const auto& d : all)
    if (desc_composition_closed(iv, d)) closed.push_back(d);
  CHECK(closed.size() == 16);

  // Oracle: a composition closed description is a pair of response functions
  // g (Y under do(X=.)) and h (X under do(Y=.)) together with an
  // observational fixed point y = g(x), x = h(y). Count the fixed points
  // over all 16 function pairs.
  int oracle = 0;
  for (int g1 = 1; g1 <= 2; ++g1)
    for (int g2 = 1; g2 <= 2; ++g2)
      for (int h1 = 1; h1 <= 2; ++h1)
        for (int h2 = 1; h2 <= 2; ++h2)
          for (int x = 1; x <= 2; ++x)
            for (int y = 1; y <= 2; ++y) {
              int gy = x == 1 ? g1 : g2;
              int hx = y == 1 ? h1 : h2;
              if (gy == y && hx == x) ++oracle;
            }
  CHECK(oracle == (int)closed.size());

  auto det_xy = deterministic_descs(iv, {0, 1});
  auto det_yx = deterministic_descs(iv, {1, 0});
  CHECK(det_xy.size() == 8);
  CHECK(det_yx.size() == 8);

  std::set<StateDesc> unioned(det_xy.begin(), det_xy.end());
  unioned.insert(det_yx.begin(), det_yx.end());
  CHECK(unioned.size() == 12);

  for (const auto& d : det_xy) {
    CHECK(desc_composition_closed(iv, d));
    CHECK(check_support_compatibility(iv, {d}, {0, 1}));
  }
  for (const auto& d : det_yx) CHECK(check_support_compatibility(iv, {d}, {1, 0}));

  // The deterministic union is exactly the closed descriptions compatible
  // with at least one order.
  std::set<StateDesc> filtered;
  for (const auto& d : closed) {
    if (check_support_compatibility(iv, {d}, {0, 1}) ||
        check_support_compatibility(iv, {d}, {1, 0}))
      filtered.insert(d);
  }
  CHECK(filtered == unioned);

  CHECK(desc_composition_closed(iv, desc_cyclic()));
  CHECK_FALSE(check_support_compatibility(iv, {desc_cyclic()}, {0, 1}));
  CHECK_FALSE(check_support_compatibility(iv, {desc_cyclic()}, {1, 0}));
}

TEST_CASE("descriptions entail events by row lookup") {
  auto sig = sig_xy();
  auto iv = make_ivset({0, 1}, 2);
  auto d = desc_copy();

  CHECK(desc_composition_closed(iv, d));
  CHECK(desc_entails(iv, d, parse_event("T", sig)));
  CHECK(desc_entails(iv, d, parse_event("X=c1", sig)));
  CHECK(desc_entails(iv, d, parse_event("X=c1 & Y=c1", sig)));
  CHECK(desc_entails(iv, d, parse_event("[X=c2] Y=c2", sig)));
  CHECK_FALSE(desc_entails(iv, d, parse_event("[X=c2] Y=c1", sig)));
  CHECK(desc_entails(iv, d, parse_event("!([X=c2] Y=c1)", sig)));
  // Forced values win inside the box.
  CHECK(desc_entails(iv, d, parse_event("[X=c2 & Y=c1] X=c2", sig)));
  CHECK(desc_entails(iv, d, parse_event("X=c1 & [X=c2] Y=c2", sig)));

  // Out of scope or out of range symbols are semantic errors. Constant
  // indices above the bound never survive parsing, so build that one by hand.
  CHECK_THROWS_AS(desc_entails(iv, d, parse_event("Z=c1", sig)), SemanticsError);
  CHECK_THROWS_AS(desc_entails(iv, d, ev_atom(0, const_sym(0, 3))),
                  SemanticsError);
  CHECK_THROWS_AS(desc_entails(iv, d, parse_event("X=x1", sig)), SemanticsError);

  SUBCASE("influence reading") {
    auto infl = support_influences(iv, {d});
    CHECK(infl == std::set<std::pair<int, int>>{{0, 1}});
    CHECK(check_support_compatibility(iv, {d}, {0, 1}));
    CHECK_FALSE(check_support_compatibility(iv, {d}, {1, 0}));

    CHECK(support_influences(iv, {desc_const2()}).empty());
    CHECK(check_support_compatibility(iv, {desc_const2()}, {0, 1}));
    CHECK(check_support_compatibility(iv, {desc_const2()}, {1, 0}));

    auto cyc = support_influences(iv, {desc_cyclic()});
    CHECK(cyc == std::set<std::pair<int, int>>{{0, 1}, {1, 0}});

    CHECK(check_support_compatibility(iv, {}, {0, 1}));
  }

  SUBCASE("intervention extraction under the identity interpretation") {
    CHECK(intervention_of_identity(iv, parse_event("T", sig)).empty());
    CHECK(intervention_of_identity(iv, parse_event("X=c1", sig)) ==
          Intervention{{0, 1}});
    CHECK(intervention_of_identity(iv, parse_event("X=c1 & Y=c2", sig)) ==
          Intervention{{0, 1}, {1, 2}});
    CHECK_THROWS_AS(intervention_of_identity(iv, ev_atom(0, const_sym(0, 3))),
                    SemanticsError);
    CHECK_THROWS_AS(intervention_of_identity(iv, parse_event("Z=c1", sig)),
                    SemanticsError);
    CHECK_THROWS_AS(intervention_of_identity(iv, parse_event("X=x1", sig)),
                    SemanticsError);
    CHECK_THROWS_AS(
        intervention_of_identity(iv, parse_event("X=c1 & X=c2", sig)),
        SemanticsError);
  }
}

TEST_CASE("probability formulas reduce to polynomial constraint systems") {
  auto sig = sig_x();
  auto iv = make_ivset({0}, 2);
  auto support = enumerate_state_descs(iv, 100);
  REQUIRE(support.size() == 2);

  SUBCASE("tautology and atoms") {
    auto f = parse_formula("P(T) >= 0", sig);
    auto cs = reduce_to_constraints(f, iv, support, false);
    CHECK(cs.n == 2);
    CHECK(cs.domain == ConstraintSystem::Domain::Simplex);
    CHECK_FALSE(cs.strict_positive);
    REQUIRE(cs.root.kind == BTree::Kind::Atom);
    CHECK(cs.root.rel == Rel::GE);
    // A sum over the whole support folds to the normalization constant.
    CHECK(cs.root.poly == Poly::constant(Rational(1)));
    // Normalization side: the pmf sums to one.
    REQUIRE(cs.side.size() == 1);
    CHECK(cs.side[0].kind == BTree::Kind::Atom);
    CHECK(cs.side[0].rel == Rel::EQ);
    CHECK(cs.side[0].poly ==
          Poly::var(0) + Poly::var(1) - Poly::constant(Rational(1)));

    auto g = parse_formula("P(X=c1) >= 0", sig);
    auto cs2 = reduce_to_constraints(g, iv, support, false);
    REQUIRE(cs2.root.kind == BTree::Kind::Atom);
    CHECK(cs2.root.poly == Poly::var(0));
  }

  SUBCASE("causal membership agrees with entailment") {
    auto sig2 = sig_xy();
    auto iv2 = make_ivset({0, 1}, 2);
    auto sup2 = deterministic_descs(iv2, {0, 1});
    auto ev = parse_event("[X=c1] Y=c1 & [X=c2] Y=c1", sig2);
    auto f = parse_formula("P([X=c1] Y=c1 & [X=c2] Y=c1) >= 0", sig2);
    auto cs = reduce_to_constraints(f, iv2, sup2, false);
    Poly want;
    for (size_t i = 0; i < sup2.size(); ++i) {
      // Manual row reading: do(X=1) sits at index 3, do(X=2) at 6.
      bool manual = sup2[i].rows[3][1] == 1 && sup2[i].rows[6][1] == 1;
      CHECK(manual == desc_entails(iv2, sup2[i], ev));
      if (manual) want = want + Poly::var((int)i);
    }
    REQUIRE(cs.root.kind == BTree::Kind::Atom);
    CHECK(cs.root.poly == want);
  }

  SUBCASE("unprepared input is rejected") {
    auto sig2 = sig_xy();
    auto iv2 = make_ivset({0, 1}, 2);
    CHECK_THROWS_AS(
        reduce_to_constraints(parse_formula("P(Y=c1 | X=c1) >= 0", sig2), iv2,
                              deterministic_descs(iv2, {0, 1}), false),
        SemanticsError);
    auto s2 = sig_x();
    CHECK_THROWS_AS(
        reduce_to_constraints(parse_formula("sum x1 . P(X=x1) >= 0", s2), iv,
                              support, false),
        SemanticsError);
    CHECK_THROWS_AS(
        reduce_to_constraints(parse_formula("P(Z=c1) >= 0", s2), iv, support,
                              false),
        SemanticsError);
  }

  SUBCASE("positive mode adds strictness and observational coverage") {
    auto sig2 = sig_xy();
    auto iv2 = make_ivset({0, 1}, 2);
    std::vector<StateDesc> single = {desc_copy()};
    auto f = parse_formula("P(T) >= 0", sig2);
    auto cs = reduce_to_constraints(f, iv2, single, true);
    CHECK(cs.strict_positive);
    // One normalization side plus one coverage side per complete
    // observational assignment.
    CHECK(cs.side.size() == 5);
    // A single description covers only its own observational row, so the
    // other three coverage sums are empty and range pruning refutes the
    // whole system.
    CHECK(prune(cs) == Tri::False);
  }
}

TEST_CASE("grid solver finds the documented witnesses") {
  SUBCASE("half is the first point of the descending grid") {
    ConstraintSystem cs;
    cs.n = 2;
    cs.root = BTree::atom(Poly::var(0) - Poly::constant(Rational(1, 2)), Rel::GE);
    auto out = solve_constraints_small(cs, 2);
    REQUIRE(out.kind == SolveOutcome::Kind::Witness);
    CHECK(out.x == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  }

  SUBCASE("probability above one is pruned by intervals") {
    ConstraintSystem cs;
    cs.n = 2;
    cs.root = BTree::atom(Poly::var(0) - Poly::constant(Rational(1)), Rel::GT);
    auto out = solve_constraints_small(cs, 8);
    REQUIRE(out.kind == SolveOutcome::Kind::Infeasible);
    CHECK(out.note == "interval pruning");
  }

  SUBCASE("a quadratic product meets its maximum at the uniform point") {
    ConstraintSystem cs;
    cs.n = 2;
    cs.root = BTree::atom(Poly::var(0) * Poly::var(1) -
                              Poly::constant(Rational(1, 4)),
                          Rel::GE);
    auto out = solve_constraints_small(cs, 4);
    REQUIRE(out.kind == SolveOutcome::Kind::Witness);
    CHECK(out.x == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  }

  SUBCASE("strict positivity skips boundary compositions") {
    ConstraintSystem cs;
    cs.n = 2;
    cs.strict_positive = true;
    auto out = solve_constraints_small(cs, 2);
    REQUIRE(out.kind == SolveOutcome::Kind::Witness);
    CHECK(out.x == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  }

  SUBCASE("pairwise contradictions need linear elimination") {
    // p0 <= 0 together with p0 > 0: each atom alone survives interval
    // analysis on the simplex.
    ConstraintSystem cs;
    cs.n = 2;
    cs.root = BTree::conj({BTree::atom(-Poly::var(0), Rel::GE),
                           BTree::atom(Poly::var(0), Rel::GT)});
    CHECK(prune(cs) == Tri::Unknown);
    auto out = solve_constraints_small(cs, 4);
    REQUIRE(out.kind == SolveOutcome::Kind::Infeasible);
    CHECK(out.note == "linear elimination");
  }

  SUBCASE("box domains prefer small magnitudes, nonnegative first") {
    ConstraintSystem cs;
    cs.n = 1;
    cs.domain = ConstraintSystem::Domain::Box;
    cs.box_lo = Rational(-2);
    cs.box_hi = Rational(2);
    cs.root = BTree::atom(Poly::var(0) * Poly::var(0) -
                              Poly::constant(Rational(1)),
                          Rel::EQ);
    auto out = solve_constraints_small(cs, 1);
    REQUIRE(out.kind == SolveOutcome::Kind::Witness);
    CHECK(out.x == std::vector<Rational>{Rational(1)});

    // The negative root comes out when the positive one is excluded.
    cs.root = BTree::conj(
        {cs.root, BTree::atom(-Poly::var(0), Rel::GT)});
    auto neg = solve_constraints_small(cs, 1);
    REQUIRE(neg.kind == SolveOutcome::Kind::Witness);
    CHECK(neg.x == std::vector<Rational>{Rational(-1)});
  }

  SUBCASE("even powers bound below by zero") {
    ConstraintSystem cs;
    cs.n = 1;
    cs.domain = ConstraintSystem::Domain::Box;
    cs.box_lo = Rational(-2);
    cs.box_hi = Rational(2);
    cs.root = BTree::atom(Poly::var(0) * Poly::var(0) +
                              Poly::constant(Rational(1)),
                          Rel::EQ);
    auto out = solve_constraints_small(cs, 4);
    REQUIRE(out.kind == SolveOutcome::Kind::Infeasible);
    CHECK(out.note == "interval pruning");
  }

  SUBCASE("rejected candidates resume the scan") {
    ConstraintSystem cs;
    cs.n = 2;
    int calls = 0;
    auto out = solve_constraints_small(cs, 2, [&](const std::vector<Rational>& x) {
      ++calls;
      return x[0] == x[1];
    });
    REQUIRE(out.kind == SolveOutcome::Kind::Witness);
    CHECK(out.x == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(calls == 2);  // (0,1) offered first, then (1/2,1/2)
  }

  SUBCASE("disjunctions split into elimination branches") {
    // (p0 >= 3/4 or p0 <= 1/8) and p0 = 1/2: both branches are refuted,
    // which no single conjunctive pass can see.
    ConstraintSystem cs;
    cs.n = 2;
    cs.root = BTree::conj(
        {BTree::disj({BTree::atom(Poly::var(0) - Poly::constant(Rational(3, 4)),
                                  Rel::GE),
                      BTree::atom(Poly::constant(Rational(1, 8)) - Poly::var(0),
                                  Rel::GE)}),
         BTree::atom(Poly::var(0) - Poly::constant(Rational(1, 2)), Rel::EQ)});
    CHECK(prune(cs) == Tri::Unknown);
    auto lf = linear_feasible(cs);
    REQUIRE(lf.has_value());
    CHECK_FALSE(*lf);
    auto out = solve_constraints_small(cs, 4);
    REQUIRE(out.kind == SolveOutcome::Kind::Infeasible);
    CHECK(out.note == "linear elimination");
  }

  SUBCASE("negated equality splits into two strict branches") {
    // not(p0 = p1) and p0 = p1 is unsatisfiable; the negation alone is not
    // conjunctive.
    ConstraintSystem cs;
    cs.n = 2;
    cs.root = BTree::conj(
        {BTree::negate(BTree::atom(Poly::var(0) - Poly::var(1), Rel::EQ)),
         BTree::atom(Poly::var(0) - Poly::var(1), Rel::EQ)});
    auto lf = linear_feasible(cs);
    REQUIRE(lf.has_value());
    CHECK_FALSE(*lf);
  }

  SUBCASE("unknown count is capped") {
    ConstraintSystem cs;
    cs.n = 17;
    CHECK_THROWS_AS(solve_constraints_small(cs, 2), SolveError);
  }
}

TEST_CASE("bounded satisfiability finds the uniform coin") {
  auto sig = sig_x();
  auto seq = parse_sequent("|- P(X=c1) > 0 & P(X=c2) > 0", sig);
  SatOptions opt;
  opt.n = 2;
  opt.max_denom = 2;
  auto v = sat_bounded(sig, seq, opt);
  REQUIRE(v.kind == SatVerdict::Kind::Sat);
  REQUIRE(v.witness.has_value());
  CHECK(validate(*v.witness).ok);
  CHECK(satisfies_sequent(*v.witness, seq).satisfied);
  CHECK(event_probability(*v.witness, parse_event("X=c1", sig)) ==
        Rational(1, 2));
  CHECK(v.detail.find("support") != std::string::npos);
}

TEST_CASE("shrinking caps stay satisfiable while the limit is refuted") {
  auto sig = sig_x();
  SatOptions opt;
  opt.n = 2;
  opt.max_denom = 16;

  for (int n = 1; n <= 10; ++n) {
    std::string text = "P(X=c1) > 0";
    for (int k = 1; k <= n; ++k)
      text += " & P(X=c1) <= 1/" + std::to_string(k);
    auto f = parse_formula(text, sig);
    auto v = sat_formula_bounded(sig, f, opt);
    REQUIRE(v.kind == SatVerdict::Kind::Sat);
    auto p = event_probability(*v.witness, parse_event("X=c1", sig));
    CHECK(p > Rational(0));
    CHECK(p <= Rational(1, n));
    if (n == 10) CHECK(p == Rational(1, 16));
  }

  // The limit of the family: no single scale refutes every member, but the
  // one-variable shadow P(T) < P(!T) dies analytically at any scale.
  auto f = parse_formula("P(T) < P(!T)", sig);
  for (int n = 1; n <= 3; ++n) {
    SatOptions o;
    o.n = n;
    o.max_denom = 4;
    auto v = sat_formula_bounded(sig, f, o);
    REQUIRE(v.kind == SatVerdict::Kind::UnsatAtScale);
    CHECK(v.analytic);
    CHECK(v.detail.find("analytically infeasible") != std::string::npos);
  }
}

TEST_CASE("witnesses are re-verified against the original formula") {
  auto sig = sig_xy();
  SatOptions opt;
  opt.n = 2;
  opt.max_denom = 2;

  // The condition is contradictory, so the conditional is undefined in every
  // model and the comparison false; the cleared form however is a tautology.
  // Every grid witness must be rejected by semantic re-verification.
  auto f = parse_formula("P(Y=c1 | X=c1 & X=c2) >= P(T)", sig);
  auto v = sat_formula_bounded(sig, f, opt);
  CHECK(v.kind == SatVerdict::Kind::UnsatAtScale);
  CHECK_FALSE(v.analytic);
  CHECK(v.detail.find("re-verification") != std::string::npos);

  // A satisfiable conditional goes through and the witness satisfies the
  // original, not just the cleared form.
  auto g = parse_formula("P(Y=c1 | X=c1) == P(T)", sig);
  auto w = sat_formula_bounded(sig, g, opt);
  REQUIRE(w.kind == SatVerdict::Kind::Sat);
  CHECK(valid_in_model(*w.witness, g).valid);
}

TEST_CASE("summation and conditionals compose in either order") {
  auto sig = sig_xy();
  SatOptions opt;
  opt.n = 2;
  opt.max_denom = 2;

  // The condition mentions the bound variable, so conditional elimination
  // only applies after unfolding.
  auto f = parse_formula("sum x1 . P(Y=c1 | X=x1) >= 0", sig);
  auto v = sat_formula_bounded(sig, f, opt);
  CHECK(v.kind == SatVerdict::Kind::Sat);

  auto g = parse_formula("sum x1 . P(X=x1) == P(T) & P(X=c1) == 1/2", sig);
  auto w = sat_formula_bounded(sig, g, opt);
  REQUIRE(w.kind == SatVerdict::Kind::Sat);
  CHECK(event_probability(*w.witness, parse_event("X=c1", sig)) ==
        Rational(1, 2));
}

TEST_CASE("the verdict is relative to the denominator bound") {
  auto sig = sig_x();
  auto f = parse_formula("P(X=c1) == 1/3", sig);

  SatOptions coarse;
  coarse.n = 2;
  coarse.max_denom = 2;
  auto v = sat_formula_bounded(sig, f, coarse);
  REQUIRE(v.kind == SatVerdict::Kind::UnsatAtScale);
  CHECK_FALSE(v.analytic);
  CHECK(v.detail.find("exhausted") != std::string::npos);

  SatOptions fine = coarse;
  fine.max_denom = 3;
  auto w = sat_formula_bounded(sig, f, fine);
  REQUIRE(w.kind == SatVerdict::Kind::Sat);
  CHECK(event_probability(*w.witness, parse_event("X=c1", sig)) ==
        Rational(1, 3));
}

TEST_CASE("positive mode excludes null events") {
  auto sig = sig_xy();
  auto f = parse_formula("P(X=c1 & Y=c1) == 0", sig);

  SatOptions opt;
  opt.n = 2;
  opt.max_denom = 4;
  auto v = sat_formula_bounded(sig, f, opt);
  REQUIRE(v.kind == SatVerdict::Kind::Sat);
  CHECK_FALSE(check_positivity(*v.witness).positive);

  SatOptions pos = opt;
  pos.positive = true;
  auto w = sat_formula_bounded(sig, f, pos);
  CHECK(w.kind == SatVerdict::Kind::UnsatAtScale);
  if (w.witness.has_value()) CHECK(false);
}

TEST_CASE("fragment and cap validation") {
  auto sig = sig_xy();
  SatOptions opt;
  opt.n = 2;

  auto causal = parse_formula("P([X=c1] Y=c1) >= 0", sig);
  SatOptions probonly = opt;
  probonly.causal = false;
  CHECK_THROWS_AS(sat_formula_bounded(sig, causal, probonly),
                  std::runtime_error);

  SatOptions big = opt;
  big.n = 4;
  auto s2 = sig_x();
  auto plain = parse_formula("P(X=c1) > 0", s2);
  CHECK_THROWS_WITH_AS(sat_formula_bounded(s2, plain, big),
                       doctest::Contains("scale caps"), SemanticsError);

  big.unchecked = true;
  big.max_denom = 2;
  auto v = sat_formula_bounded(s2, plain, big);
  CHECK(v.kind == SatVerdict::Kind::Sat);
}

TEST_CASE("countermodel search separates premises from conclusion") {
  auto sig = sig_x();
  SatOptions opt;
  opt.n = 2;
  opt.max_denom = 4;

  auto seq = parse_sequent("P(X=c1) >= 1/2 |- P(X=c1) >= 3/4", sig);
  auto v = find_countermodel_bounded(sig, seq, opt);
  REQUIRE(v.kind == SatVerdict::Kind::Sat);
  auto& m = *v.witness;
  CHECK(event_probability(m, parse_event("X=c1", sig)) == Rational(1, 2));
  auto rep = satisfies_sequent(m, seq);
  CHECK_FALSE(rep.satisfied);

  auto valid = parse_sequent("P(X=c1) >= 1/2 |- P(X=c1) > 0", sig);
  auto w = find_countermodel_bounded(sig, valid, opt);
  REQUIRE(w.kind == SatVerdict::Kind::UnsatAtScale);
  CHECK(w.analytic);
}

TEST_CASE("support models reproduce their descriptions") {
  auto sig = sig_xy();
  auto iv = make_ivset({0, 1}, 2);

  SUBCASE("a singleton support is deterministic row by row") {
    auto m = scm_from_support(sig, iv, {desc_copy()}, {Rational(1)}, {0, 1});
    CHECK(validate(m).ok);
    auto d = desc_copy();
    for (int i = 0; i < iv.size(); ++i) {
      EventP forces = ev_top();
      for (const auto& [var, val] : iv.list[i])
        forces = ev_and(forces, ev_atom(var, const_sym(var, val)));
      EventP body = ev_and(ev_atom(0, const_sym(0, d.rows[i][0])),
                           ev_atom(1, const_sym(1, d.rows[i][1])));
      CHECK(event_probability(m, ev_box(forces, body)) == Rational(1));
    }
  }

  SUBCASE("mixtures weigh descriptions by the pmf") {
    auto m = scm_from_support(sig, iv, {desc_copy(), desc_const2()},
                              {Rational(1, 4), Rational(3, 4)}, {0, 1});
    CHECK(validate(m).ok);
    CHECK(event_probability(m, parse_event("X=c1 & Y=c1", sig)) ==
          Rational(1, 4));
    CHECK(event_probability(m, parse_event("X=c2 & Y=c2", sig)) ==
          Rational(3, 4));
    CHECK(event_probability(m, parse_event("[X=c1] Y=c1", sig)) ==
          Rational(1, 4));
    CHECK(event_probability(m, parse_event("[X=c2] Y=c2", sig)) == Rational(1));
  }
}

TEST_CASE("exhaustive model search at tiny scale") {
  auto sig = sig_x();
  SatOptions opt;
  opt.n = 2;
  opt.max_denom = 2;

  auto taut = parse_sequent("|- P(X=c1) >= 0", sig);
  auto v = brute_force_sat(sig, taut, opt);
  CHECK(v.sat);
  REQUIRE(v.witness.has_value());
  CHECK(satisfies_sequent(*v.witness, taut).satisfied);

  auto bad = parse_sequent("|- P(X=c1) > 1", sig);
  CHECK_FALSE(brute_force_sat(sig, bad, opt).sat);

  // The caps count scoped variables, not declared ones.
  Signature wide;
  wide.add_var("X");
  wide.add_var("Y");
  wide.add_var("Z");
  wide.set_bound(2);
  auto seq3 = parse_sequent("|- P(X=c1 & Y=c1 & Z=c1) >= 0", wide);
  CHECK_THROWS_WITH_AS(brute_force_sat(wide, seq3, opt),
                       doctest::Contains("brute force caps"), SemanticsError);
}

TEST_CASE("bounded search agrees with the exhaustive oracle") {
  auto sig = sig_xy();
  SatOptions opt;
  opt.n = 2;
  opt.max_denom = 4;
  opt.max_support = 4;

  struct Case {
    const char* text;
    bool sat;
  };
  const Case cases[] = {
      {"|- P(X=c1) >= 0", true},
      {"|- P(X=c1) > 1", false},
      {"P(X=c1) >= 0 |- P(T) < P(T)", false},
      {"P(X=c1) >= 1/2 |- P(X=c1) > 0", true},
      {"|- P([X=c1] Y=c1) == 1 & P([X=c2] Y=c1) == 0", true},
      {"|- P([X=c1] Y=c1) == 1 & P([X=c1] Y=c2) == 1", false},
      {"|- P(X=c1 & Y=c1) == 1 & P(X=c1) == 1/2", false},
      {"|- P(X=c1) == 1/2 & P(Y=c1 | X=c1) == 1 & P(Y=c1) == 1/2", true},
      {"|- P(Y=c1 | X=c1) == 1 & P(Y=c2 | X=c1) == 1", false},
      {"P(Y=c1 | X=c1) == 1; P(X=c1) >= 1/2 |- P(Y=c1) >= 1/2", true},
  };

  for (const auto& c : cases) {
    CAPTURE(c.text);
    auto seq = parse_sequent(c.text, sig);
    auto brute = brute_force_sat(sig, seq, opt);
    CHECK(brute.sat == c.sat);
    auto v = sat_bounded(sig, seq, opt);
    REQUIRE(v.kind != SatVerdict::Kind::Unknown);
    CHECK((v.kind == SatVerdict::Kind::Sat) == c.sat);
    if (v.kind == SatVerdict::Kind::Sat) {
      CHECK(satisfies_sequent(*v.witness, seq).satisfied);
      CHECK(satisfies_sequent(*brute.witness, seq).satisfied);
    }
  }
}
