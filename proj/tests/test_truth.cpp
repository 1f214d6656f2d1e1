#include <doctest.h>

#include "simpepist/truth.hpp"

using namespace simpepist;

TEST_CASE("truth values and helpers") {
  CHECK(to_string(Truth::True) == "true");
  CHECK(to_string(Truth::False) == "false");
  CHECK(to_string(Truth::Undefined) == "undefined");

  CHECK(defined(Truth::True));
  CHECK(defined(Truth::False));
  CHECK_FALSE(defined(Truth::Undefined));

  CHECK(truth_of(true) == Truth::True);
  CHECK(truth_of(false) == Truth::False);
}

TEST_CASE("negation flips only defined values") {
  CHECK(flip(Truth::True) == Truth::False);
  CHECK(flip(Truth::False) == Truth::True);
  CHECK(flip(Truth::Undefined) == Truth::Undefined);
}

TEST_CASE("conjunction is contaminating: any undefined operand poisons") {
  CHECK(and3(Truth::True, Truth::True) == Truth::True);
  CHECK(and3(Truth::True, Truth::False) == Truth::False);
  CHECK(and3(Truth::False, Truth::True) == Truth::False);
  CHECK(and3(Truth::False, Truth::False) == Truth::False);
  // The weak reading: False & Undefined is Undefined, not False.
  CHECK(and3(Truth::False, Truth::Undefined) == Truth::Undefined);
  CHECK(and3(Truth::Undefined, Truth::False) == Truth::Undefined);
  CHECK(and3(Truth::True, Truth::Undefined) == Truth::Undefined);
  CHECK(and3(Truth::Undefined, Truth::Undefined) == Truth::Undefined);
}
