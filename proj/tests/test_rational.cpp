#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/error.hpp"
#include "core/rational.hpp"

using namespace kt;

TEST_CASE("parse accepts canonical and non-canonical literals") {
  CHECK(parse_rational("3") == Rat(3));
  CHECK(parse_rational("-7") == Rat(-7));
  CHECK(parse_rational("1/2") == Rat(1, 2));
  CHECK(parse_rational("-3/4") == Rat(-3, 4));
  CHECK(parse_rational("7/14") == Rat(1, 2));
  CHECK(parse_rational("0/5") == 0);
  CHECK(parse_rational("+3") == Rat(3));
  CHECK(parse_rational("1/-2") == Rat(-1, 2));  // sign moves to the numerator
  CHECK(parse_rational("123456789123456789123456789/3") ==
        parse_rational("41152263041152263041152263"));
}

TEST_CASE("parse rejects malformed literals") {
  for (const char* bad : {"", " ", "1/0", "0/0", "1.5", "1e3", "--2",
                          "2/", "/3", "a", "1 2", "0x10", "1/2/3"}) {
    CHECK_THROWS_AS(parse_rational(bad), Error);
  }
  try {
    parse_rational("1/0");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("1/0") != std::string::npos);
  }
}

TEST_CASE("format emits canonical form and round-trips") {
  CHECK(format_rational(Rat(1, 2)) == "1/2");
  CHECK(format_rational(Rat(-4, 8)) == "-1/2");
  CHECK(format_rational(Rat(5)) == "5");
  CHECK(format_rational(Rat(0)) == "0");
  for (const char* text : {"0", "17/3", "-2", "1000000000000002/7"}) {
    CHECK(format_rational(parse_rational(text)) == text);
  }
  CHECK(format_rational_vector({Rat(1), Rat(1, 2)}) == "1 1/2");
  CHECK(format_rational_vector({Rat(1), Rat(2)}, ",") == "1,2");
}

TEST_CASE("conversion from double is exact") {
  CHECK(Rat(0.5) == Rat(1, 2));
  CHECK(Rat(0.1) != Rat(1, 10));  // 0.1 is not representable in binary
  CHECK(Rat(3.0) == 3);
}

TEST_CASE("rational_root finds exact roots and rejects the rest") {
  CHECK(rational_root(Rat(8), 3) == Rat(2));
  CHECK(rational_root(Rat(4), 2) == Rat(2));
  CHECK(rational_root(Rat(8, 27), 3) == Rat(2, 3));
  CHECK(rational_root(Rat(1), 7) == Rat(1));
  CHECK(rational_root(Rat(0), 3) == Rat(0));
  CHECK(!rational_root(Rat(2), 2).has_value());
  CHECK(!rational_root(Rat(9, 2), 2).has_value());
  CHECK(rational_root(Rat(1024, 59049), 5) == Rat(4, 9));
}

TEST_CASE("binomial and factorial match hand values") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(10, 0) == 1);
  CHECK(binomial(10, 10) == 1);
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  // Pascal's rule over a small triangle.
  for (uint32_t n = 1; n <= 12; ++n) {
    for (uint32_t k = 1; k < n; ++k) {
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

TEST_CASE("pow_rat") {
  CHECK(pow_rat(Rat(2, 3), 3) == Rat(8, 27));
  CHECK(pow_rat(Rat(-2), 2) == 4);
  CHECK(pow_rat(Rat(7), 0) == 1);
  CHECK(pow_rat(Rat(0), 4) == 0);
}
