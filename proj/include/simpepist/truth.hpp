#pragma once

#include <cstdint>
#include <string_view>

namespace simpepist {

// Outcome of evaluating a formula at a point of a model.  Definability and
// satisfaction are folded into one value: Undefined means the formula has no
// truth value at the point, False means it is defined but does not hold.
enum class Truth : std::uint8_t { False = 0, True = 1, Undefined = 2 };

constexpr bool defined(Truth t) { return t != Truth::Undefined; }

constexpr Truth truth_of(bool b) { return b ? Truth::True : Truth::False; }

constexpr Truth flip(Truth t) {
  if (t == Truth::Undefined) return Truth::Undefined;
  return t == Truth::True ? Truth::False : Truth::True;
}

// Weak conjunction: an undefined conjunct contaminates the whole conjunction,
// even when the other conjunct is False.
constexpr Truth and3(Truth a, Truth b) {
  if (!defined(a) || !defined(b)) return Truth::Undefined;
  return truth_of(a == Truth::True && b == Truth::True);
}

constexpr std::string_view to_string(Truth t) {
  switch (t) {
    case Truth::False: return "false";
    case Truth::True: return "true";
    default: return "undefined";
  }
}

}  // namespace simpepist
