#include <doctest.h>

#include "macscope/rational.hpp"

using namespace macscope;

TEST_CASE("rational text form") {
  CHECK(rat_to_string(Rat(3, 4)) == "3/4");
  CHECK(rat_to_string(Rat(4, 2)) == "2");
  CHECK(rat_to_string(Rat(-1, 3)) == "-1/3");
  CHECK(*rat_from_string("3/4") == Rat(3, 4));
  CHECK(*rat_from_string("-7") == Rat(-7));
  CHECK(!rat_from_string("1/0"));
  CHECK(!rat_from_string("abc"));
  CHECK(!rat_from_string(""));
}

TEST_CASE("integer powers and roots") {
  CHECK(ipow(Int(2), 10) == 1024);
  CHECK(ipow(Int(5), 0) == 1);
  CHECK(*exact_root(Int(1024), 10) == 2);
  CHECK(*exact_root(Int(729), 3) == 9);
  CHECK(!exact_root(Int(10), 2));
  CHECK(!exact_root(Int(-8), 3));
}

TEST_CASE("rational powers") {
  CHECK(*rat_pow(Rat(2), Rat(10)) == Rat(1024));
  CHECK(*rat_pow(Rat(4), Rat(1, 2)) == Rat(2));
  CHECK(*rat_pow(Rat(8, 27), Rat(2, 3)) == Rat(4, 9));
  CHECK(*rat_pow(Rat(2), Rat(-1)) == Rat(1, 2));
  CHECK(*rat_pow(Rat(16), Rat(-1, 2)) == Rat(1, 4));
  CHECK(!rat_pow(Rat(2), Rat(1, 2)));  // sqrt(2) has no rational value
  CHECK(*rat_pow(Rat(0), Rat(3)) == Rat(0));
  CHECK(!rat_pow(Rat(0), Rat(-1)));
}

TEST_CASE("rationalize recovers small fractions") {
  CHECK(rationalize(0.25, 100) == Rat(1, 4));
  CHECK(rationalize(-0.5, 100) == Rat(-1, 2));
  CHECK(rationalize(25.0 / 101.0, 1000000) == Rat(25, 101));
  CHECK(rationalize(3.0, 10) == Rat(3));
}
