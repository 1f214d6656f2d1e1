#include "simpepist/builtin_models.hpp"

#include <stdexcept>

namespace simpepist::builtin {

namespace {

const std::vector<std::string> kABC = {"a", "b", "c"};
const std::vector<std::pair<std::string, std::string>> kPABC = {
    {"p", "a"}, {"p", "b"}, {"p", "c"}};

}  // namespace

SimplicialModel edge_triangle() {
  return build_model(kABC, kPABC,
                     {{"a0", "a", {}},
                      {"b0", "b", {"p"}},
                      {"b1", "b", {}},
                      {"c0", "c", {"p"}}},
                     {{"a0", "b0"}, {"a0", "b1", "c0"}});
}

SimplicialModel bridged_triangles() {
  return build_model(kABC, kPABC,
                     {{"a0", "a", {"p"}},
                      {"b0", "b", {"p"}},
                      {"c0", "c", {"p"}},
                      {"a1", "a", {"p"}},
                      {"b1", "b", {}},
                      {"c1", "c", {"p"}},
                      {"v", "b", {}}},
                     {{"a0", "b0", "c0"}, {"a1", "b1", "c1"}, {"c0", "v"}, {"c1", "v"}});
}

SimplicialModel two_triangles_shared_d() {
  return build_model({"a", "b", "c", "d"},
                     {{"p", "a"}, {"p", "b"}, {"p", "c"}, {"p", "d"}},
                     {{"a0", "a", {}},
                      {"b0", "b", {}},
                      {"c0", "c", {}},
                      {"c1", "c", {"p"}},
                      {"d0", "d", {}}},
                     {{"a0", "c0", "d0"}, {"b0", "c1", "d0"}});
}

SimplicialModel triangle_edge_cycle() {
  return build_model(kABC, kPABC,
                     {{"v", "a", {}},
                      {"z", "b", {}},
                      {"x", "c", {"p"}},
                      {"u", "b", {}},
                      {"w", "c", {"p"}},
                      {"ta", "a", {}},
                      {"ba", "a", {}},
                      {"rc", "c", {"p"}},
                      {"tb", "b", {}}},
                     {{"v", "x", "z"},
                      {"u", "v"},
                      {"v", "w"},
                      {"w", "ta"},
                      {"ta", "x"},
                      {"ba", "u"},
                      {"ba", "z"},
                      {"z", "rc"},
                      {"rc", "tb"},
                      {"tb", "x"}});
}

SimplicialModel two_edges() {
  return build_model(kABC, kPABC,
                     {{"a0", "a", {}}, {"b0", "b", {"p"}}, {"c0", "c", {"p"}}},
                     {{"a0", "b0"}, {"a0", "c0"}});
}

SimplicialModel two_triangles_shared_a() {
  return build_model(kABC, kPABC,
                     {{"a0", "a", {}},
                      {"b0", "b", {"p"}},
                      {"c0", "c", {}},
                      {"b1", "b", {}},
                      {"c1", "c", {"p"}}},
                     {{"a0", "b0", "c0"}, {"a0", "b1", "c1"}});
}

SimplicialModel single_triangle() {
  return build_model(kABC, kPABC,
                     {{"a0", "a", {}}, {"b0", "b", {"p"}}, {"c0", "c", {}}},
                     {{"a0", "b0", "c0"}});
}

SimplicialModel linked_triangles() {
  return build_model(kABC, kPABC,
                     {{"a0", "a", {"p"}},
                      {"b0", "b", {"p"}},
                      {"c0", "c", {"p"}},
                      {"a1", "a", {"p"}},
                      {"b1", "b", {"p"}},
                      {"c1", "c", {"p"}}},
                     {{"a0", "b0", "c0"}, {"a1", "b1", "c1"}, {"a1", "b0"}, {"a0", "b1"}});
}

SimplicialModel pure_two_triangles() {
  return build_model(kABC, kPABC,
                     {{"a0", "a", {}},
                      {"b0", "b", {"p"}},
                      {"c0", "c", {"p"}},
                      {"b1", "b", {}},
                      {"c1", "c", {"p"}}},
                     {{"a0", "b0", "c0"}, {"a0", "b1", "c1"}});
}

LocalEpistemicModel two_edges_kripke() {
  return build_kripke(kABC, kPABC,
                      {{"s0", {"p_b"}}, {"s1", {"p_c"}}},
                      {{"a", {{"s0", "s1"}}}, {"b", {{"s0"}}}, {"c", {{"s1"}}}});
}

LocalEpistemicModel four_state_cycle() {
  return build_kripke(kABC, kPABC,
                      {{"s0", {"p_a", "p_b", "p_c"}},
                       {"s1", {"p_a", "p_b"}},
                       {"s2", {"p_a", "p_b"}},
                       {"s3", {"p_a", "p_b", "p_c"}}},
                      {{"a", {{"s0", "s2"}, {"s1", "s3"}}},
                       {"b", {{"s0", "s1"}, {"s2", "s3"}}},
                       {"c", {{"s0"}, {"s3"}}}});
}

LocalEpistemicModel improper_c_dead() {
  return build_kripke(kABC, kPABC,
                      {{"s0", {"p_a", "p_b"}}, {"s1", {"p_a", "p_b", "p_c"}}},
                      {{"a", {{"s0", "s1"}}}, {"b", {{"s0", "s1"}}}, {"c", {{"s1"}}}});
}

LocalEpistemicModel improper_c_true() {
  return build_kripke(kABC, kPABC,
                      {{"s0", {"p_a", "p_b", "p_c"}}, {"s1", {"p_a", "p_b", "p_c"}}},
                      {{"a", {{"s0", "s1"}}}, {"b", {{"s0", "s1"}}}, {"c", {{"s1"}}}});
}

LocalEpistemicModel improper_two_agent() {
  return build_kripke({"a", "b"}, {{"p", "a"}, {"p", "b"}},
                      {{"s0", {"p_a", "p_b"}}, {"s1", {"p_a", "p_b"}}},
                      {{"a", {{"s0", "s1"}}}, {"b", {{"s1"}}}});
}

const std::vector<BuiltinInfo>& catalog() {
  static const std::vector<BuiltinInfo> kCatalog = {
      {"edge_triangle", "simplicial",
       "an a-b edge and an a-b-c triangle sharing the a-vertex; p_c is undefined at "
       "the edge yet agent a knows it"},
      {"bridged_triangles", "simplicial",
       "two triangles joined through a lone b-vertex by two b-c edges; K_b K_c p_a "
       "is true at the bridge while its subformulas are undefined"},
      {"two_triangles_shared_d", "simplicial",
       "four agents, two triangles sharing the d-vertex, p_c true on one side; "
       "separates guarded from unguarded modus ponens"},
      {"triangle_edge_cycle", "simplicial",
       "a triangle inside a nine-edge cycle; every ring edge lacks one agent"},
      {"two_edges", "simplicial",
       "two edges sharing the a-vertex; b and c are each alive on one side only"},
      {"two_triangles_shared_a", "simplicial",
       "two triangles sharing the a-vertex; a is uncertain of b's and c's values"},
      {"single_triangle", "simplicial", "one full triangle; no uncertainty"},
      {"linked_triangles", "simplicial",
       "two all-true triangles joined by two a-b edges; a and b are uncertain "
       "whether c is alive"},
      {"pure_two_triangles", "simplicial",
       "pure pair of triangles sharing the a-vertex; a is uncertain of p_b while b "
       "knows it"},
      {"two_edges_kripke", "kripke",
       "two a-related states, b alive at one and c at the other; converts to "
       "two_edges and back"},
      {"four_state_cycle", "kripke",
       "four states in an alternating a/b cycle, c alive at two opposite states; "
       "proper"},
      {"improper_c_dead", "kripke",
       "two states related by both live agents, c alive only at one; improper, "
       "p_c recorded false at the dead state"},
      {"improper_c_true", "kripke",
       "like improper_c_dead but p_c recorded true at the dead state; the surplus "
       "value is inert"},
      {"improper_two_agent", "kripke",
       "two a-related states with b alive at only one; the smallest improper model"},
  };
  return kCatalog;
}

SimplicialModel simplicial_by_name(const std::string& name) {
  if (name == "edge_triangle") return edge_triangle();
  if (name == "bridged_triangles") return bridged_triangles();
  if (name == "two_triangles_shared_d") return two_triangles_shared_d();
  if (name == "triangle_edge_cycle") return triangle_edge_cycle();
  if (name == "two_edges") return two_edges();
  if (name == "two_triangles_shared_a") return two_triangles_shared_a();
  if (name == "single_triangle") return single_triangle();
  if (name == "linked_triangles") return linked_triangles();
  if (name == "pure_two_triangles") return pure_two_triangles();
  throw std::invalid_argument("no bundled simplicial model named '" + name + "'");
}

LocalEpistemicModel kripke_by_name(const std::string& name) {
  if (name == "two_edges_kripke") return two_edges_kripke();
  if (name == "four_state_cycle") return four_state_cycle();
  if (name == "improper_c_dead") return improper_c_dead();
  if (name == "improper_c_true") return improper_c_true();
  if (name == "improper_two_agent") return improper_two_agent();
  throw std::invalid_argument("no bundled state model named '" + name + "'");
}

}  // namespace simpepist::builtin
