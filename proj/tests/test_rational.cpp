#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sumlogic/extended_real.hpp"
#include "sumlogic/rational.hpp"

using namespace sumlogic;

TEST_CASE("rational arithmetic is exact and reduced") {
  Rational a(1, 3), b(1, 6);
  CHECK((a + b).str() == "1/2");
  CHECK((a - b).str() == "1/6");
  CHECK((a * b).str() == "1/18");
  CHECK((a / b).str() == "2");
  CHECK((-a).str() == "-1/3");
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(0).is_zero());
  CHECK(Rational(7).is_integer());
  CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/4")->str() == "3/4");
  CHECK(Rational::parse("-3/6")->str() == "-1/2");
  CHECK(Rational::parse("12")->str() == "12");
  CHECK(!Rational::parse(""));
  CHECK(!Rational::parse("1/"));
  CHECK(!Rational::parse("a/b"));
  CHECK(!Rational::parse("1/0"));
  CHECK(!Rational::parse("1.5"));
  // arbitrary precision survives round trips (numerator is divisible by 7)
  std::string big = "123456789012345678901234567890/7";
  std::string reduced = "17636684144620811271604938270";
  CHECK(Rational::parse(big)->str() == reduced);
  CHECK(Rational::parse(reduced)->str() == reduced);
  CHECK(*Rational::parse(big) == *Rational::parse(reduced));
  std::string coprime = "123456789012345678901234567891/7";
  CHECK(Rational::parse(coprime)->str() == coprime);
}

TEST_CASE("extended reals follow the convention table") {
  XReal inf = XReal::pos_inf(), ninf = XReal::neg_inf(), und = XReal::undef();
  XReal zero = XReal::finite(Rational(0));
  XReal two = XReal::finite(Rational(2));
  XReal mtwo = XReal::finite(Rational(-2));

  CHECK((inf + ninf) == zero);
  CHECK((ninf + inf) == zero);
  CHECK((inf + inf) == inf);
  CHECK((ninf + ninf) == ninf);
  CHECK((inf + two) == inf);
  CHECK((ninf + two) == ninf);

  CHECK((zero * inf) == zero);
  CHECK((inf * zero) == zero);
  CHECK((zero * ninf) == zero);
  CHECK((two * inf) == inf);
  CHECK((mtwo * inf) == ninf);
  CHECK((inf * inf) == inf);
  CHECK((inf * ninf) == ninf);
  CHECK((ninf * ninf) == inf);

  CHECK((und + inf).is_undef());
  CHECK((inf + und).is_undef());
  CHECK((und * zero).is_undef());
  CHECK((zero * und).is_undef());
  CHECK((-und).is_undef());
  CHECK((-inf) == ninf);

  CHECK(*XReal::compare(inf, two) == 1);
  CHECK(*XReal::compare(ninf, mtwo) == -1);
  CHECK(*XReal::compare(two, two) == 0);
  CHECK(*XReal::compare(inf, inf) == 0);
  CHECK(!XReal::compare(und, two));
  CHECK(!XReal::compare(two, und));
}
