#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "simpepist/complex.hpp"
#include "simpepist/formula.hpp"
#include "simpepist/semantics.hpp"
#include "simpepist/truth.hpp"

namespace simpepist {

// Local epistemic models: global states with one partial equivalence relation
// per agent.  Each relation partitions the states where the agent is alive
// and is empty elsewhere.  States valuate every declared variable, including
// variables of agents dead there; such values are semantically inert because
// a dead agent's variables are undefined at the state.

struct KripkeState {
  std::string id;
  std::vector<VarId> true_vars;

  bool operator==(const KripkeState&) const = default;
};

struct LocalEpistemicModel {
  Signature sig;
  std::vector<KripkeState> states;
  // partitions[agent index in sig] lists the agent's equivalence classes as
  // sets of state indices; states in no class are where the agent is dead.
  std::vector<std::vector<std::vector<int>>> partitions;

  // Derived (built by finalize).
  bool finalized = false;
  std::vector<VarMask> state_vars;         // per state, over sig.variables
  std::vector<AgentMask> alive;            // per state
  std::vector<std::vector<int>> class_of;  // [agent][state] -> class index | -1
  std::unordered_map<std::string, int> state_index;

  // Checks well-formedness (unique ids, partition shape, disjoint non-empty
  // classes, declared variables) and builds the caches; throws
  // std::invalid_argument on defects.  Locality and properness are *not*
  // required here: semantically deficient but well-formed models remain
  // representable and evaluable, and validate() reports their defects.
  void finalize();

  int n_states() const { return static_cast<int>(states.size()); }
  int n_agents() const { return static_cast<int>(sig.agents.size()); }
  bool alive_at(int state, int agent_local) const {
    return (alive[state] >> agent_local) & 1u;
  }

  bool operator==(const LocalEpistemicModel& o) const {
    return sig == o.sig && states == o.states && partitions == o.partitions;
  }
};

// Full diagnosis: the structural checks of finalize() plus locality (related
// states agree on the relating agent's variables) and properness (distinct
// states are distinguished by a live agent on each side).  Never throws.
ValidationReport validate(const LocalEpistemicModel& m);

// Bulk rows over the model's states, in state order; same independent
// truth/definability recursions as the simplicial evaluator, with the
// knowledge clauses scanning the agent's equivalence class.
Rows evaluate_rows(const LocalEpistemicModel& m, const LocalizedWorkset& lw);

// Point evaluation; std::domain_error("unknown state") for bad indices/ids.
Truth eval3(const LocalEpistemicModel& m, int state, Formula f);
Truth eval3(const LocalEpistemicModel& m, std::string_view state_id, Formula f);
bool is_defined(const LocalEpistemicModel& m, int state, Formula f);
bool is_defined(const LocalEpistemicModel& m, std::string_view state_id, Formula f);

// States where the formula is true, ascending.
std::vector<int> denotation(const LocalEpistemicModel& m, Formula f);

// Facets-to-states translation: state i is facet i (in facet order), its id
// joins the facet's vertex ids with '+', two facets are a-related iff they
// share their a-vertex, and the state valuation copies the facet valuation.
// The result is always proper and local.
LocalEpistemicModel kappa(const SimplicialModel& c);

// States-to-facets translation: one vertex per (equivalence class, agent)
// pair — its id joins the class's state ids with '+' and appends "_agent" —
// valuated by the class's variables of that agent; one facet per state,
// collecting the state's live agents' class vertices.  Requires a valid
// (proper, local) model with a live agent in every state; throws
// std::invalid_argument otherwise.
struct SigmaResult {
  SimplicialModel model;
  std::vector<VertexMask> state_facet;  // per state of the source
};
SigmaResult sigma_with_map(const LocalEpistemicModel& m);
SimplicialModel sigma(const LocalEpistemicModel& m);

struct KripkeIsoCheck {
  bool isomorphic = false;
  std::unordered_map<std::string, std::string> witness;  // from-id -> to-id
  std::string note;
};

// State bijection preserving each agent's relation and the valuations of
// live agents' variables.  Valuations of dead agents' variables are ignored:
// they are undefined at the state, so models differing only there are
// semantically indistinguishable.  Requires equal agent and variable
// universes.
KripkeIsoCheck isomorphic(const LocalEpistemicModel& a, const LocalEpistemicModel& b);

// Convenience constructor used by tests, bundled models and the JSON loader.
// variables are (base, owner) pairs; state rows are (id, true qualified
// names); partition rows are (agent, classes of state ids).  Agents without a
// partition row are dead everywhere.  The result is finalized; defects throw
// std::invalid_argument.
LocalEpistemicModel build_kripke(
    const std::vector<std::string>& agents,
    const std::vector<std::pair<std::string, std::string>>& variables,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& state_rows,
    const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>&
        partition_rows);

}  // namespace simpepist
