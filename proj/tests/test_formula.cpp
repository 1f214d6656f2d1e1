#include <doctest.h>

#include <string>
#include <vector>

#include "simpepist/formula.hpp"
#include "simpepist/parse.hpp"
#include "simpepist/symbols.hpp"

using namespace simpepist;

namespace {

Signature abc_sig() {
  Signature sig;
  for (const char* a : {"a", "b", "c"}) {
    AgentId id = intern_agent(a);
    sig.agents.push_back(id);
    sig.variables.push_back(intern_variable("p", id));
  }
  return sig;
}

VarId pv(const char* agent) { return intern_variable("p", intern_agent(agent)); }

}  // namespace

TEST_CASE("interning gives structural identity") {
  Formula f = conj(var(pv("a")), neg(var(pv("b"))));
  Formula g = conj(var(pv("a")), neg(var(pv("b"))));
  CHECK(f == g);
  CHECK(node(f).kind == FKind::And);
  CHECK(node(node(f).kid[1]).kind == FKind::Neg);
  // Children intern before parents, so handles are topologically ordered.
  CHECK(node(f).kid[0].id() < f.id());
  CHECK(node(f).kid[1].id() < f.id());

  std::size_t before = formula_arena_size();
  Formula h = conj(var(pv("a")), neg(var(pv("b"))));
  CHECK(h == f);
  CHECK(formula_arena_size() == before);
}

TEST_CASE("height and primitivity") {
  Formula pa = var(pv("a"));
  CHECK(height(pa) == 0);
  CHECK(height(neg(pa)) == 1);
  CHECK(height(conj(neg(pa), pa)) == 2);
  CHECK(is_primitive(conj(neg(pa), hat(intern_agent("a"), pa))));
  CHECK_FALSE(is_primitive(know(intern_agent("a"), pa)));
  CHECK_FALSE(is_primitive(disj(pa, pa)));
  CHECK_FALSE(is_primitive(agent_top(intern_agent("a"))));
}

TEST_CASE("agents_of collects owners, modal agents and aliveness atoms") {
  AgentId a = intern_agent("a"), b = intern_agent("b"), c = intern_agent("c");
  CHECK(agents_of(var(pv("a"))) == std::vector<AgentId>{a});
  CHECK(agents_of(hat(a, var(pv("b")))) == std::vector<AgentId>{a, b});
  Formula l = disj(know(a, var(pv("a"))), know(a, neg(var(pv("a")))));
  CHECK(agents_of(l) == std::vector<AgentId>{a});
  CHECK(agents_of(agent_top(c)) == std::vector<AgentId>{c});
  CHECK(variables_of(hat(a, var(pv("b")))) == std::vector<VarId>{pv("b")});
}

TEST_CASE("desugar expands sugar into the primitive fragment") {
  Signature sig = abc_sig();
  AgentId a = intern_agent("a");
  Formula pa = var(pv("a")), pb = var(pv("b"));

  CHECK(desugar(know(a, pa), sig) == neg(hat(a, neg(pa))));
  CHECK(desugar(disj(pa, pb), sig) == neg(conj(neg(pa), neg(pb))));
  CHECK(desugar(implies(pa, pb), sig) == neg(conj(pa, neg(pb))));
  // An equivalence is the conjunction of the two implications.
  CHECK(desugar(iff(pa, pb), sig) ==
        conj(desugar(implies(pa, pb), sig), desugar(implies(pb, pa), sig)));
  // T_a expands over the agent's first declared variable.
  CHECK(desugar(agent_top(a), sig) == desugar(disj(pa, neg(pa)), sig));

  Formula f = desugar(iff(know(a, pa), agent_top(a)), sig);
  CHECK(is_primitive(f));
  // Idempotent.
  CHECK(desugar(f, sig) == f);
  // Agent set preserved.
  CHECK(agents_of(desugar(know(a, pb), sig)) == agents_of(know(a, pb)));
}

TEST_CASE("desugar rejects aliveness atoms of variable-less agents") {
  Signature sig;
  AgentId a = intern_agent("a"), d = intern_agent("lonely");
  sig.agents.push_back(a);
  sig.agents.push_back(d);
  sig.variables.push_back(pv("a"));
  CHECK_THROWS_AS((void)desugar(agent_top(d), sig), std::invalid_argument);
}

TEST_CASE("top transform builds the always-valid companion") {
  Signature sig = abc_sig();
  AgentId a = intern_agent("a");
  Formula pa = var(pv("a")), pb = var(pv("b")), pc = var(pv("c"));

  // The produced guards stay as written disjunctions; everything around them
  // is primitive.
  CHECK(top_transform(pa, sig) == disj(pa, neg(pa)));
  // Negations drop out: the companion only cares about definedness.
  CHECK(top_transform(neg(pa), sig) == top_transform(pa, sig));
  // Conjunction distributes, modalities stay existential.
  Formula f = hat(a, conj(pb, neg(pc)));
  Formula expect = hat(a, conj(disj(pb, neg(pb)), disj(pc, neg(pc))));
  CHECK(top_transform(f, sig) == expect);
  // The universal modality first desugars into Neg-Hat-Neg, whose guard is
  // again existential.
  CHECK(top_transform(know(a, pb), sig) == hat(a, top_transform(pb, sig)));
}

TEST_CASE("substitution replaces every occurrence") {
  AgentId a = intern_agent("a");
  Formula pa = var(pv("a")), pb = var(pv("b"));
  CHECK(substitute(pa, pv("a"), pb) == pb);
  CHECK(substitute(hat(a, pa), pv("a"), neg(pa)) == hat(a, neg(pa)));
  Formula x = conj(pa, disj(pa, pb));
  CHECK(substitute(x, pv("a"), pb) == conj(pb, disj(pb, pb)));
  CHECK(substitute(x, pv("c"), pb) == x);
}

TEST_CASE("print round-trips through the parser") {
  Signature sig = abc_sig();
  AgentId a = intern_agent("a"), b = intern_agent("b");
  Formula pa = var(pv("a")), pb = var(pv("b")), pc = var(pv("c"));
  std::vector<Formula> samples = {
      pa,
      neg(neg(pa)),
      conj(pa, disj(pb, pc)),
      implies(pa, implies(pb, pc)),
      iff(disj(pa, pb), neg(pc)),
      know(a, hat(b, conj(pa, neg(pb)))),
      agent_top(a),
      implies(agent_top(a), know(a, agent_top(b))),
      desugar(know(a, implies(pc, neg(pb))), sig),
  };
  for (Formula f : samples) {
    CAPTURE(print(f));
    CHECK(parse_formula(print(f)) == f);
  }
}

TEST_CASE("bind check reports undeclared symbols") {
  Signature sig = abc_sig();
  Formula ok = know(intern_agent("a"), var(pv("b")));
  CHECK(bind_check(ok, sig).ok());

  Formula foreign_var = var(intern_variable("q", intern_agent("a")));
  CHECK_FALSE(bind_check(foreign_var, sig).ok());

  Formula foreign_agent = hat(intern_agent("z"), var(pv("a")));
  CHECK_FALSE(bind_check(foreign_agent, sig).ok());

  // T_z binds only when z owns a variable.
  CHECK_FALSE(bind_check(agent_top(intern_agent("z")), sig).ok());
}
