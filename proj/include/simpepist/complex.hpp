#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "simpepist/symbols.hpp"

namespace simpepist {

using VertexMask = std::uint64_t;  // subset of a model's vertices, by index
using VarMask = std::uint64_t;     // subset of sig.variables, by index
using AgentMask = std::uint32_t;   // subset of sig.agents, by index

struct Vertex {
  std::string id;
  AgentId colour;
  std::vector<VarId> true_vars;  // owned by `colour`; everything else is false

  bool operator==(const Vertex&) const = default;
};

// Chromatic simplicial model over agent-coloured vertices.  Only the facets
// (maximal simplices) are stored; faces are derived.  Facets are vertex sets
// with pairwise distinct colours; the complex may be impure (facets of
// different dimensions), which is how agent death is represented.
//
// Construction protocol: fill the public fields (or use build_model), then
// call finalize() to check validity and build the derived caches.  All
// queries and evaluators require a finalized model; finalized models are
// immutable and safe for concurrent reads.
struct SimplicialModel {
  Signature sig;
  std::vector<Vertex> vertices;
  std::vector<VertexMask> facets;

  // Derived (built by finalize).
  bool finalized = false;
  std::vector<int> colour_local;                  // per-vertex agent index
  std::vector<VarMask> vertex_vars;               // per-vertex variable mask
  std::vector<AgentMask> facet_colours;           // per-facet colour set
  std::vector<VertexMask> simplex_list;           // every simplex, ascending
  std::unordered_map<VertexMask, int> simplex_pos;
  std::vector<std::vector<int>> facets_with_vertex;
  std::vector<int> facet_pos;                     // simplex position per facet
  std::vector<std::int8_t> vertex_of_colour_tab;  // [pos * n_agents + a] -> vertex | -1
  std::unordered_map<std::string, int> vertex_index;

  void finalize();  // throws std::invalid_argument when the model is invalid

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_agents() const { return static_cast<int>(sig.agents.size()); }
  int n_simplices() const { return static_cast<int>(simplex_list.size()); }

  AgentMask colours(VertexMask x) const;
  VarMask true_at(VertexMask x) const;
  // Vertex of the given local colour inside simplex x, or -1.
  int vertex_of_colour(VertexMask x, int agent_local) const;
  int vertex_of_colour_at(int simplex_position, int agent_local) const {
    return vertex_of_colour_tab[static_cast<std::size_t>(simplex_position) * n_agents() +
                                agent_local];
  }

  bool is_simplex(VertexMask x) const;
  int simplex_position_of(VertexMask x) const;  // -1 when not a simplex

  int dimension() const;  // max facet cardinality - 1
  bool pure() const;      // all facets share one dimension

  VertexMask mask_of_ids(std::span<const std::string> ids) const;  // throws on unknown id
  std::vector<std::string> ids_of(VertexMask x) const;

  bool operator==(const SimplicialModel& o) const {
    return sig == o.sig && vertices == o.vertices && facets == o.facets;
  }
};

struct Violation {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

// Structural diagnosis of a raw (possibly unfinalized) model.  Never throws;
// every problem is reported, including fixable ones such as subsumed facets.
ValidationReport validate(const SimplicialModel& m);

// Drops facets that are subsets of other facets (and duplicate facets), the
// only violation that normalization can repair.  Idempotent; the implied set
// of simplices is unchanged.  Result is raw (not finalized).
SimplicialModel normalized(const SimplicialModel& m);

// All non-empty subsets of x, ascending.
std::vector<VertexMask> faces(VertexMask x);

// Simplices / facets containing x.  Throw std::domain_error("unknown simplex")
// when x is not a simplex of m.
std::vector<VertexMask> star(const SimplicialModel& m, VertexMask x);
std::vector<VertexMask> star_facets(const SimplicialModel& m, VertexMask x);

// Restriction to the vertices coloured by the given agents.  Throws
// std::domain_error when no facet survives the restriction.
SimplicialModel skeleton_by_agents(const SimplicialModel& m,
                                   std::span<const AgentId> agents);

// Simplices of cardinality at most k+1.  Throws std::out_of_range unless
// 0 <= k <= dimension().
SimplicialModel skeleton_by_dimension(const SimplicialModel& m, int k);

struct SimplicialMapCheck {
  bool total = false;
  bool simplicial = false;        // facet images are simplices of the target
  bool rigid = false;             // no facet loses vertices
  bool chromatic = false;         // colours preserved pointwise
  bool value_preserving = false;  // vertex valuations preserved pointwise
  std::vector<std::string> violations;
};

// Checks a vertex map (by vertex id) between two finalized models.
SimplicialMapCheck check_simplicial_map(
    const SimplicialModel& from, const SimplicialModel& to,
    const std::unordered_map<std::string, std::string>& vertex_map);

struct IsoCheck {
  bool isomorphic = false;
  std::unordered_map<std::string, std::string> witness;  // from-id -> to-id
  std::string note;  // first structural obstruction when not isomorphic
};

// Colour- and value-preserving isomorphism via backtracking over colour
// classes.  Requires equal agent and variable universes.
IsoCheck isomorphic(const SimplicialModel& a, const SimplicialModel& b);

// Convenience constructor used by tests, bundled models and the JSON loader.
// variables are (base, owner) pairs; vertex tuples are (id, agent, true bases);
// facets list vertex ids.  The result is normalized and finalized.
SimplicialModel build_model(
    const std::vector<std::string>& agents,
    const std::vector<std::pair<std::string, std::string>>& variables,
    const std::vector<std::tuple<std::string, std::string, std::vector<std::string>>>&
        vertex_rows,
    const std::vector<std::vector<std::string>>& facet_rows);

}  // namespace simpepist
