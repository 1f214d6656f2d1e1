#include <doctest.h>

#include "simpepist/formula.hpp"
#include "simpepist/parse.hpp"
#include "simpepist/symbols.hpp"

using namespace simpepist;

namespace {

VarId pv(const char* agent) { return intern_variable("p", intern_agent(agent)); }

}  // namespace

TEST_CASE("atoms") {
  CHECK(parse_formula("p_a") == var(pv("a")));
  CHECK(parse_formula("  p_a  ") == var(pv("a")));
  CHECK(parse_formula("T_a") == agent_top(intern_agent("a")));
  CHECK(parse_formula("(p_a)") == var(pv("a")));
  CHECK(parse_formula("q1_b") == var(intern_variable("q1", intern_agent("b"))));
}

TEST_CASE("modalities and negation chain") {
  AgentId a = intern_agent("a"), b = intern_agent("b");
  CHECK(parse_formula("~p_a") == neg(var(pv("a"))));
  CHECK(parse_formula("~~p_a") == neg(neg(var(pv("a")))));
  CHECK(parse_formula("[a] p_b") == know(a, var(pv("b"))));
  CHECK(parse_formula("<a> p_b") == hat(a, var(pv("b"))));
  CHECK(parse_formula("[a]<b>~p_a") == know(a, hat(b, neg(var(pv("a"))))));
}

TEST_CASE("precedence: unary over & over | over -> over <->") {
  Formula pa = var(pv("a")), pb = var(pv("b")), pc = var(pv("c"));
  CHECK(parse_formula("p_a & p_b | p_c") == disj(conj(pa, pb), pc));
  CHECK(parse_formula("p_a | p_b & p_c") == disj(pa, conj(pb, pc)));
  CHECK(parse_formula("~p_a & p_b") == conj(neg(pa), pb));
  CHECK(parse_formula("p_a -> p_b | p_c") == implies(pa, disj(pb, pc)));
  CHECK(parse_formula("p_a <-> p_b -> p_c") == iff(pa, implies(pb, pc)));
  CHECK(parse_formula("[a] p_b -> p_b") == implies(know(intern_agent("a"), pb), pb));
}

TEST_CASE("associativity") {
  Formula pa = var(pv("a")), pb = var(pv("b")), pc = var(pv("c"));
  // Implication nests to the right ...
  CHECK(parse_formula("p_a -> p_b -> p_c") == implies(pa, implies(pb, pc)));
  // ... conjunction, disjunction and equivalence to the left.
  CHECK(parse_formula("p_a & p_b & p_c") == conj(conj(pa, pb), pc));
  CHECK(parse_formula("p_a | p_b | p_c") == disj(disj(pa, pb), pc));
  CHECK(parse_formula("p_a <-> p_b <-> p_c") == iff(iff(pa, pb), pc));
}

TEST_CASE("parentheses override") {
  Formula pa = var(pv("a")), pb = var(pv("b")), pc = var(pv("c"));
  CHECK(parse_formula("(p_a -> p_b) -> p_c") == implies(implies(pa, pb), pc));
  CHECK(parse_formula("p_a & (p_b | p_c)") == conj(pa, disj(pb, pc)));
  CHECK(parse_formula("<d>((T_a & p_c) | <d>(T_b & ~p_c))") ==
        hat(intern_agent("d"),
            disj(conj(agent_top(intern_agent("a")), pc),
                 hat(intern_agent("d"),
                     conj(agent_top(intern_agent("b")), neg(pc))))));
}

TEST_CASE("syntax errors carry a column") {
  auto col = [](const char* text) {
    try {
      (void)parse_formula(text);
    } catch (const ParseError& e) {
      return e.column();
    }
    return std::size_t{0};
  };
  CHECK(col("") > 0);
  CHECK(col("p_a &") >= 5);        // missing right operand, flagged at the end
  CHECK(col("p_a & & p_b") >= 6);  // the stray operator itself
  CHECK(col("(p_a") >= 4);         // unclosed parenthesis
  CHECK(col("p") > 0);       // a variable needs its owner suffix
  CHECK(col("p_a p_b") > 0); // trailing garbage
  CHECK(col("[a p_b") > 0);  // unclosed modality bracket
  CHECK_THROWS_AS((void)parse_formula("p_a <- p_b"), ParseError);
}
