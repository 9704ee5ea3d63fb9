#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sumlogic/parser.hpp"
#include "sumlogic/scm.hpp"
#include "sumlogic/scm_io.hpp"

using namespace sumlogic;

namespace {

// X is a fair coin, Y copies X.
const char* kCoinCopy = R"(
vars X Y
order X Y
range X : 1 2
range Y : 1 2
consts X : 1 2
consts Y : 1 2
exo u1 : 1/2
exo u2 : 1/2
fn X : Y u
1 u1 -> 1
1 u2 -> 2
2 u1 -> 1
2 u2 -> 2
fn Y : X u
1 u1 -> 1
1 u2 -> 1
2 u1 -> 2
2 u2 -> 2
)";

// X -> Y -> Z, each copying its parent, X a fair coin.
Scm chain3() {
  Scm m;
  for (const char* n : {"X", "Y", "Z"}) {
    m.sig.add_var(n);
    m.vars.push_back({n, {1, 2}, {1, 2}});
  }
  m.order = {0, 1, 2};
  m.exo_labels = {"u1", "u2"};
  m.exo_pmf = {Rational(1, 2), Rational(1, 2)};
  m.fn.resize(3);
  for (VarId v = 0; v < 3; ++v)
    m.fn[v].resize(m.fn_size(v));
  std::vector<int> vals(3);
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int u = 0; u < 2; ++u) {
        vals = {0, a, b};
        m.fn[0][m.fn_index(0, vals, u)] = u + 1;  // X reads the coin
        vals = {a, 0, b};
        m.fn[1][m.fn_index(1, vals, u)] = a;  // Y copies X
        vals = {a, b, 0};
        m.fn[2][m.fn_index(2, vals, u)] = b;  // Z copies Y
      }
  return m;
}

}  // namespace

TEST_CASE("model parsing and validation") {
  Scm m = parse_model(kCoinCopy);
  CHECK(m.n_vars() == 2);
  CHECK(m.n_exo() == 2);
  CHECK(validate(m).ok);

  SUBCASE("pmf must sum to one") {
    Scm bad = m;
    bad.exo_pmf = {Rational(2, 3), Rational(1, 2)};
    auto r = validate(bad);
    CHECK(!r.ok);
    bool mentions = false;
    for (const auto& e : r.errors)
      mentions |= e.find("sum") != std::string::npos;
    CHECK(mentions);
  }
  SUBCASE("negative mass is rejected") {
    Scm bad = m;
    bad.exo_pmf = {Rational(3, 2), Rational(-1, 2)};
    CHECK(!validate(bad).ok);
  }
  SUBCASE("constants must cover the range") {
    Scm bad = m;
    bad.vars[1].const_val = {1, 1};
    CHECK(!validate(bad).ok);
    bad.vars[1].const_val = {1, 3};
    CHECK(!validate(bad).ok);
  }
  SUBCASE("ranges are sorted positive") {
    Scm bad = m;
    bad.vars[0].range = {2, 1};
    CHECK(!validate(bad).ok);
  }
  SUBCASE("recursiveness is checked against the order") {
    Scm bad = m;
    // Make X copy Y and Y a plain coin while the order still puts X first.
    std::vector<int> vals(2);
    for (int o = 1; o <= 2; ++o)
      for (int u = 0; u < 2; ++u) {
        vals = {0, o};
        bad.fn[0][bad.fn_index(0, vals, u)] = o;
        vals = {o, 0};
        bad.fn[1][bad.fn_index(1, vals, u)] = u + 1;
      }
    auto r = validate(bad);
    CHECK(!r.ok);
    // Reordering repairs it.
    bad.order = {1, 0};
    CHECK(validate(bad).ok);
  }
}

TEST_CASE("model file errors") {
  std::string text = kCoinCopy;
  SUBCASE("missing row") {
    auto pos = text.find("2 u2 -> 2\nfn Y");
    text.erase(pos, 10);
    CHECK_THROWS_AS(parse_model(text), SemanticsError);
  }
  SUBCASE("duplicate row") {
    text += "2 u2 -> 2\n";
    CHECK_THROWS_AS(parse_model(text), SemanticsError);
  }
  SUBCASE("unknown outcome label") {
    text += "\nfn Y : X u\n1 u9 -> 1\n";
    CHECK_THROWS_AS(parse_model(text), SemanticsError);
  }
  SUBCASE("value outside range") {
    auto pos = text.find("1 u1 -> 1");
    text.replace(pos, 9, "7 u1 -> 1");
    CHECK_THROWS_AS(parse_model(text), SemanticsError);
  }
}

TEST_CASE("model io round trip") {
  Scm m = parse_model(kCoinCopy);
  std::string printed = print_model(m);
  Scm m2 = parse_model(printed);
  CHECK(print_model(m2) == printed);
  CHECK(validate(m2).ok);

  Scm c = chain3();
  Scm c2 = parse_model(print_model(c));
  CHECK(print_model(c2) == print_model(c));
}

TEST_CASE("solve follows mechanisms and interventions") {
  Scm m = parse_model(kCoinCopy);
  CHECK(solve(m, 0) == std::vector<int>{1, 1});
  CHECK(solve(m, 1) == std::vector<int>{2, 2});
  CHECK(solve(m, 0, {{0, 2}}) == std::vector<int>{2, 2});
  CHECK(solve(m, 0, {{1, 2}}) == std::vector<int>{1, 2});  // X unaffected

  Scm cut = apply_intervention(m, {{1, 2}});
  CHECK(validate(cut).ok);
  CHECK(solve(cut, 0) == solve(m, 0, {{1, 2}}));
  CHECK(solve(cut, 1) == solve(m, 1, {{1, 2}}));
}

TEST_CASE("event probabilities") {
  Scm m = parse_model(kCoinCopy);
  Signature sig = m.sig;
  CHECK(event_probability(m, parse_event("X=c1", sig)) == Rational(1, 2));
  CHECK(event_probability(m, parse_event("X=c1 & Y=c1", sig)) == Rational(1, 2));
  CHECK(event_probability(m, parse_event("X=c1 & Y=c2", sig)) == Rational(0));
  CHECK(event_probability(m, parse_event("T", sig)) == Rational(1));
  CHECK(event_probability(m, parse_event("!T", sig)) == Rational(0));
  CHECK(event_probability(m, parse_event("[X=c1] Y=c1", sig)) == Rational(1));
  CHECK(event_probability(m, parse_event("[Y=c2] X=c1", sig)) == Rational(1, 2));
  CHECK(event_probability(m, parse_event("X=x1", sig), {{range_sym(0, 1), 2}}) ==
        Rational(1, 2));
}

TEST_CASE("intervention maps") {
  Scm m = parse_model(kCoinCopy);
  Signature sig = m.sig;
  Intervention iv = intervention_of(m, parse_event("X=c1 & Y=c2", sig), {});
  CHECK(iv == Intervention{{0, 1}, {1, 2}});
  CHECK(intervention_of(m, parse_event("T", sig), {}).empty());
  CHECK(intervention_of(m, parse_event("X=c1 & X=c1", sig), {}) ==
        Intervention{{0, 1}});
  CHECK_THROWS_AS(intervention_of(m, parse_event("X=c1 & X=c2", sig), {}),
                  SemanticsError);
  Assignment iota{{range_sym(0, 1), 2}};
  CHECK(intervention_of(m, parse_event("X=x1", sig), iota) ==
        Intervention{{0, 2}});
}

TEST_CASE("induced influences on a chain") {
  Scm c = chain3();
  REQUIRE(validate(c).ok);
  auto infl = induced_influences(c, {0, 1, 2});
  std::set<std::pair<VarId, VarId>> want{{0, 1}, {0, 2}, {1, 2}};
  CHECK(infl == want);

  // Cutting Y from X removes both downstream influences of X.
  Scm cut = apply_intervention(c, {{1, 1}});
  auto infl2 = induced_influences(cut, {0, 1, 2});
  std::set<std::pair<VarId, VarId>> want2{{1, 2}};
  CHECK(infl2 == want2);
}

TEST_CASE("positivity") {
  Scm m = parse_model(kCoinCopy);
  auto r = check_positivity(m);
  CHECK(!r.positive);  // X=1,Y=2 never happens
  CHECK(r.missing.size() == 2);

  // Two independent coins are positive. Four exogenous outcomes, one per
  // joint value.
  Scm ind;
  for (const char* n : {"X", "Y"}) {
    ind.sig.add_var(n);
    ind.vars.push_back({n, {1, 2}, {1, 2}});
  }
  ind.order = {0, 1};
  ind.exo_labels = {"u1", "u2", "u3", "u4"};
  ind.exo_pmf = std::vector<Rational>(4, Rational(1, 4));
  ind.fn.resize(2);
  for (VarId v = 0; v < 2; ++v)
    ind.fn[v].resize(ind.fn_size(v));
  std::vector<int> vals(2);
  for (int o = 1; o <= 2; ++o)
    for (int u = 0; u < 4; ++u) {
      vals = {0, o};
      ind.fn[0][ind.fn_index(0, vals, u)] = u < 2 ? 1 : 2;
      vals = {o, 0};
      ind.fn[1][ind.fn_index(1, vals, u)] = u % 2 == 0 ? 1 : 2;
    }
  REQUIRE(validate(ind).ok);
  CHECK(check_positivity(ind).positive);
}

TEST_CASE("symbol values") {
  Scm m = parse_model(kCoinCopy);
  CHECK(m.dsym_value(const_sym(0, 2), {}) == 2);
  CHECK(m.dsym_value(range_sym(1, 1), {{range_sym(1, 1), 2}}) == 2);
  CHECK_THROWS_AS(m.dsym_value(range_sym(1, 1), {}), SemanticsError);
  CHECK(m.val_index(0, 2) == 1);
  CHECK(m.val_index(0, 3) == -1);
}
