#pragma once

#include <string>
#include <vector>

#include "simpepist/complex.hpp"
#include "simpepist/kripke.hpp"

namespace simpepist::builtin {

// Bundled example models.  Each one exists to pin down a specific semantic
// effect — undefinedness at small facets, nested knowledge across dead
// agents, rule failures, conversion round trips, properness defects — and is
// shared by the test suites, the golden tables, and the `examples` command.
// All of them use one variable `p` per agent.

// An a-b edge and an a-b-c triangle sharing the a-vertex.  The smallest model
// where a formula is undefined at one facet yet true at another: p_c has no
// value on the edge, but agent a still knows it.  Vertices: a0 (false),
// b0 (true, edge), b1 (false, triangle), c0 (true).
SimplicialModel edge_triangle();

// Two triangles joined through a lone b-vertex `v` by two b-c edges.  At {v},
// K_b K_c p_a is true even though p_a, K_c p_a and K_b p_a are all undefined
// there: knowledge can stack across agents that are dead in every world the
// knower considers possible.  Left triangle all-true; right triangle has
// p_b false; v is false.
SimplicialModel bridged_triangles();

// Four agents; two triangles sharing only the d-vertex, p_c true on exactly
// one side, every other value false.  Distinguishes the definedness-guarded
// modus ponens rule from the unguarded one: two premise validities hold here
// while the unguarded conclusion is false at both facets.
SimplicialModel two_triangles_shared_d();

// A triangle inside a nine-edge cycle: each edge facet of the ring lacks one
// agent.  From the central triangle {v,x,z}, agent a cannot rule out either
// adjacent edge, yet knows p_c because p_c is true wherever c is alive.
SimplicialModel triangle_edge_cycle();

// Two edges sharing the a-vertex; b and c are each alive on one side only.
// The minimal impure model whose state-based counterpart has two a-related
// states with different live sets.
SimplicialModel two_edges();

// Two triangles sharing the a-vertex, with p_b true on the left and p_c true
// on the right; agent a is uncertain of both other agents' values.
SimplicialModel two_triangles_shared_a();

// One full triangle (p_b true, others false): a singleton model with no
// uncertainty and no undefinedness at the facet.
SimplicialModel single_triangle();

// Two all-true triangles joined by two a-b edges.  Agents a and b are
// uncertain whether c is alive; the model is the shape produced by
// converting four_state_cycle() to a complex.
SimplicialModel linked_triangles();

// A pure pair of triangles sharing the a-vertex: a is uncertain whether
// p_b holds while b knows its own value.  Classical two-valued evaluation
// applies at every facet.
SimplicialModel pure_two_triangles();

// State-based counterpart of two_edges(): two a-related states, b alive at
// exactly one and c at the other.  Converting in either direction reproduces
// the other model up to isomorphism.
LocalEpistemicModel two_edges_kripke();

// Four states in an alternating a/b cycle, c alive at two opposite states.
// Proper: every pair of states is distinguished by a live agent, even though
// the model expresses a and b's uncertainty about whether c is alive.
LocalEpistemicModel four_state_cycle();

// Two states related by both live agents, c alive (and true) only at the
// second; the first state records p_c false although c is dead there.  The
// recorded value is semantically inert, and the model is improper: no live
// agent distinguishes the two states.
LocalEpistemicModel improper_c_dead();

// Like improper_c_dead() but with p_c recorded true at the dead state;
// evaluation cannot tell the two models apart.
LocalEpistemicModel improper_c_true();

// Two agents; two a-related states with b alive at only one.  The smallest
// improper model: it has no complex-shaped counterpart.
LocalEpistemicModel improper_two_agent();

struct BuiltinInfo {
  std::string name;         // function name above; also the JSON file stem
  std::string kind;         // "simplicial" | "kripke"
  std::string description;  // one line, for manifests and --help
};

// Every bundled model, simplicial first, in a fixed order.
const std::vector<BuiltinInfo>& catalog();

// Lookup by catalog name; std::invalid_argument on unknown names or a kind
// mismatch.
SimplicialModel simplicial_by_name(const std::string& name);
LocalEpistemicModel kripke_by_name(const std::string& name);

}  // namespace simpepist::builtin
