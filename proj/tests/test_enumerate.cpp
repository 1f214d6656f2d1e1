#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "simpepist/complex.hpp"
#include "simpepist/enumerate.hpp"
#include "simpepist/formula.hpp"

using namespace simpepist;

namespace {

EnumerationSpec family(int agents, int facets) {
  EnumerationSpec s;
  s.agent_count = agents;
  s.max_facets = facets;
  return s;
}

// Independent count of the formula pool: levels by exact height, n atoms,
// unary ~/<x>/[x] over the previous level, binary &/|/-> over all pairs with
// at least one operand of the previous level.  All shapes are distinct, so
// sizes add up without collision corrections.
std::uint64_t expected_pool_size(int agents, int depth) {
  const std::uint64_t n = static_cast<std::uint64_t>(agents);
  std::uint64_t exact = n;  // level 0
  std::uint64_t sum = n;
  for (int d = 1; d <= depth; ++d) {
    const std::uint64_t lower = sum;
    const std::uint64_t next =
        exact                                              // ~
        + 3 * (lower * lower - (lower - exact) * (lower - exact))  // & | ->
        + 2 * n * exact;                                   // <x> [x]
    sum += next;
    exact = next;
  }
  return sum;
}

SimplicialModel expected_single(const char* agent, bool value) {
  SimplicialModel m;
  m.sig = family(2, 1).signature();
  const AgentId a = intern_agent(agent);
  Vertex v;
  v.id = std::string(agent) + "0";
  v.colour = a;
  if (value) v.true_vars.push_back(intern_variable("p", a));
  m.vertices.push_back(v);
  m.facets.push_back(1);
  m.finalize();
  return m;
}

SimplicialModel expected_edge(bool va, bool vb) {
  SimplicialModel m;
  m.sig = family(2, 1).signature();
  const AgentId a = intern_agent("a");
  const AgentId b = intern_agent("b");
  Vertex x{"a0", a, {}};
  Vertex y{"b0", b, {}};
  if (va) x.true_vars.push_back(intern_variable("p", a));
  if (vb) y.true_vars.push_back(intern_variable("p", b));
  m.vertices = {x, y};
  m.facets.push_back(0b11);
  m.finalize();
  return m;
}

}  // namespace

TEST_CASE("family sizes at small bounds") {
  // One facet: one model per non-empty colour set and valuation.
  CHECK(simplicial_family(family(2, 1)).size() == 8);    // 2+2+4
  CHECK(simplicial_family(family(3, 1)).size() == 26);   // 3*2 + 3*4 + 8
  // Two agents, up to two facets: 8 one-facet models plus 60 two-facet ones
  // (4+4+8 for {a}-led combos, 4+8 for {b}-led, 8+8+16 for the edge pairs).
  CHECK(simplicial_family(family(2, 2)).size() == 68);
}

TEST_CASE("the two-agent one-facet family is exactly the hand-built list") {
  const std::vector<SimplicialModel> fam = simplicial_family(family(2, 1));
  REQUIRE(fam.size() == 8);

  const std::vector<SimplicialModel> expected = {
      expected_single("a", false), expected_single("a", true),
      expected_single("b", false), expected_single("b", true),
      expected_edge(false, false), expected_edge(true, false),
      expected_edge(false, true),  expected_edge(true, true)};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK_MESSAGE(fam[i] == expected[i], "stream position ", i);
  }
}

TEST_CASE("the stream is deterministic and indices are sequential") {
  const EnumerationSpec spec = family(3, 2);
  const std::vector<SimplicialModel> once = simplicial_family(spec);
  const std::vector<SimplicialModel> twice = simplicial_family(spec);
  REQUIRE(once.size() == twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) REQUIRE(once[i] == twice[i]);

  std::uint64_t next = 0;
  enumerate_simplicial(spec, [&](const SimplicialModel&, std::uint64_t idx) {
    CHECK(idx == next);
    ++next;
    return true;
  });
  CHECK(next == once.size());

  // Returning false stops the stream.
  int calls = 0;
  enumerate_simplicial(spec, [&](const SimplicialModel&, std::uint64_t idx) {
    ++calls;
    return idx < 2;
  });
  CHECK(calls == 3);
}

TEST_CASE("every streamed model is valid, finalized and maximal") {
  enumerate_simplicial(family(3, 2), [&](const SimplicialModel& m, std::uint64_t) {
    REQUIRE(m.finalized);
    REQUIRE(validate(m).ok());
    for (std::size_t i = 0; i < m.facets.size(); ++i) {
      for (std::size_t j = 0; j < m.facets.size(); ++j) {
        if (i != j) REQUIRE((m.facets[i] & ~m.facets[j]) != 0);
      }
    }
    return true;
  });
}

TEST_CASE("no model appears twice in the stream") {
  const std::vector<SimplicialModel> fam = simplicial_family(family(2, 2));
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      CHECK_FALSE(fam[i] == fam[j]);
    }
  }
}

TEST_CASE("sampling keeps a deterministic subset of the exhaustive stream") {
  EnumerationSpec all = family(3, 2);
  EnumerationSpec sampled = all;
  sampled.sample_every = 3;
  sampled.seed = 42;

  const std::vector<SimplicialModel> full = simplicial_family(all);
  const std::vector<SimplicialModel> kept = simplicial_family(sampled);
  const std::vector<SimplicialModel> kept_again = simplicial_family(sampled);
  REQUIRE(kept.size() == kept_again.size());
  CHECK(kept.size() < full.size());
  CHECK(kept.size() > 0);

  std::vector<std::uint64_t> expected_indices;
  for (std::uint64_t i = 0; i < full.size(); ++i) {
    if (splitmix64(42ull ^ i) % 3 == 0) expected_indices.push_back(i);
  }
  REQUIRE(kept.size() == expected_indices.size());
  for (std::size_t j = 0; j < kept.size(); ++j) {
    CHECK(kept[j] == full[expected_indices[j]]);
    CHECK(kept[j] == kept_again[j]);
  }
}

TEST_CASE("dedup folds isomorphic family members") {
  EnumerationSpec plain = family(2, 1);
  EnumerationSpec dedup = plain;
  dedup.dedup_isomorphic = true;
  const std::vector<SimplicialModel> folded = simplicial_family(dedup);
  // The a-only and b-only singles are not isomorphic (different colours), so
  // only colour-preserving duplicates fold; at these bounds nothing does.
  CHECK(folded.size() == 8);

  // With two facets the unsymmetric edge pairs stay, but a model equal to
  // another up to vertex renaming collapses.
  EnumerationSpec two = family(2, 2);
  two.dedup_isomorphic = true;
  CHECK(simplicial_family(two).size() < 68);
}

TEST_CASE("formula pools have the derived sizes and are duplicate-free") {
  EnumerationSpec a2 = family(2, 2);
  EnumerationSpec a3 = family(3, 2);

  CHECK(expected_pool_size(2, 1) == 24);
  CHECK(expected_pool_size(3, 1) == 51);
  CHECK(expected_pool_size(2, 2) == 1850);
  CHECK(expected_pool_size(3, 2) == 8163);

  a2.max_formula_depth = 1;
  CHECK(formula_pool(a2).size() == 24);
  a2.max_formula_depth = 2;
  const std::vector<Formula> pool2 = formula_pool(a2);
  CHECK(pool2.size() == 1850);

  a3.max_formula_depth = 1;
  CHECK(formula_pool(a3).size() == 51);
  a3.max_formula_depth = 2;
  CHECK(formula_pool(a3).size() == 8163);

  std::set<std::uint32_t> ids;
  for (Formula f : pool2) ids.insert(f.id());
  CHECK(ids.size() == pool2.size());

  // Heights never exceed the bound and are non-decreasing along the pool.
  int last = 0;
  for (Formula f : pool2) {
    const int h = height(f);
    CHECK(h <= 2);
    CHECK(h >= last);
    last = h;
  }

  // The shallow pool is a prefix of the deeper one.
  const std::vector<Formula> shallow = formula_pool_of_depth(a2, 1);
  REQUIRE(shallow.size() == 24);
  for (std::size_t i = 0; i < shallow.size(); ++i) CHECK(shallow[i] == pool2[i]);

  // The first entries are the agents' atoms in signature order.
  const Signature sig = a2.signature();
  CHECK(pool2[0] == var(sig.variables[0]));
  CHECK(pool2[1] == var(sig.variables[1]));
}

TEST_CASE("connective masks restrict the pool") {
  EnumerationSpec spec = family(2, 2);
  spec.max_formula_depth = 1;
  spec.connectives = kNeg | kAnd;
  const std::vector<Formula> pool = formula_pool(spec);
  CHECK(pool.size() == 8);  // 2 atoms + 2 negations + 4 conjunctions
  for (Formula f : pool) {
    const FormulaNode n = node(f);
    CHECK(n.kind != FKind::Or);
    CHECK(n.kind != FKind::Implies);
    CHECK(n.kind != FKind::Hat);
    CHECK(n.kind != FKind::Know);
  }
}

TEST_CASE("bounds are enforced") {
  EnumerationSpec s;
  s.agent_count = 1;
  CHECK_THROWS_AS(s.check(), std::invalid_argument);
  s.agent_count = 5;
  CHECK_THROWS_AS(s.check(), std::invalid_argument);
  s = EnumerationSpec{};
  s.max_facets = 0;
  CHECK_THROWS_AS(s.check(), std::invalid_argument);
  s.max_facets = 5;
  CHECK_THROWS_AS(s.check(), std::invalid_argument);
  s = EnumerationSpec{};
  s.max_formula_depth = 0;
  CHECK_THROWS_AS(s.check(), std::invalid_argument);
  s.max_formula_depth = 4;
  CHECK_THROWS_AS(s.check(), std::invalid_argument);
  s = EnumerationSpec{};
  s.vars_per_agent = 2;
  CHECK_THROWS_AS(s.check(), std::invalid_argument);
  s = EnumerationSpec{};
  s.sample_every = -1;
  CHECK_THROWS_AS(s.check(), std::invalid_argument);
  s = EnumerationSpec{};
  CHECK_NOTHROW(s.check());
}

TEST_CASE("the sampling hash matches the reference constants") {
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFull);
  CHECK(splitmix64(splitmix64(0)) != splitmix64(0));
}
