#include "simpepist/kripke.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace simpepist {

namespace {

struct KCaches {
  std::vector<VarMask> state_vars;
  std::vector<AgentMask> alive;
  std::vector<std::vector<int>> class_of;
  std::unordered_map<std::string, int> state_index;
};

void add(ValidationReport& r, std::string code, std::string detail) {
  r.violations.push_back(Violation{std::move(code), std::move(detail)});
}

// Well-formedness only; fills the caches when clean.
ValidationReport structural_check(const LocalEpistemicModel& m, KCaches& c) {
  ValidationReport r;
  const int S = m.n_states();
  const int A = m.n_agents();
  if (S == 0) add(r, "empty-domain", "model has no states");
  if (A == 0) add(r, "no-agents", "signature declares no agents");
  for (std::size_t i = 0; i < m.sig.agents.size(); ++i) {
    for (std::size_t j = i + 1; j < m.sig.agents.size(); ++j) {
      if (m.sig.agents[i] == m.sig.agents[j]) {
        add(r, "duplicate-agent", "agent '" + agent_name(m.sig.agents[i]) +
                                      "' declared twice");
      }
    }
  }
  for (std::size_t i = 0; i < m.sig.variables.size(); ++i) {
    for (std::size_t j = i + 1; j < m.sig.variables.size(); ++j) {
      if (m.sig.variables[i] == m.sig.variables[j]) {
        add(r, "duplicate-variable",
            "variable '" + variable_name(m.sig.variables[i]) + "' declared twice");
      }
    }
  }
  if (m.sig.variables.size() > 64) {
    add(r, "too-many-variables", "at most 64 variables are supported");
  }
  for (const auto& v : m.sig.variables) {
    if (!m.sig.has_agent(variable_owner(v))) {
      add(r, "foreign-variable",
          "variable '" + variable_name(v) + "' is owned by an undeclared agent");
    }
  }
  if (!r.ok()) return r;

  c.state_index.clear();
  for (int i = 0; i < S; ++i) {
    const auto& st = m.states[i];
    if (st.id.empty()) add(r, "empty-state-id", "state " + std::to_string(i));
    if (!c.state_index.emplace(st.id, i).second) {
      add(r, "duplicate-state-id", "state id '" + st.id + "' used twice");
    }
  }
  c.state_vars.assign(S, 0);
  for (int i = 0; i < S; ++i) {
    for (VarId v : m.states[i].true_vars) {
      const int vi = m.sig.variable_index(v);
      if (vi < 0) {
        add(r, "undeclared-variable", "state '" + m.states[i].id + "' values '" +
                                          variable_name(v) + "'");
        continue;
      }
      c.state_vars[i] |= VarMask{1} << vi;
    }
  }
  if (static_cast<int>(m.partitions.size()) != A) {
    add(r, "partition-shape",
        "expected one partition per agent, got " + std::to_string(m.partitions.size()));
    return r;
  }
  c.class_of.assign(A, std::vector<int>(S, -1));
  c.alive.assign(S, 0);
  for (int a = 0; a < A; ++a) {
    const std::string an = agent_name(m.sig.agents[a]);
    for (std::size_t ci = 0; ci < m.partitions[a].size(); ++ci) {
      const auto& cls = m.partitions[a][ci];
      if (cls.empty()) {
        add(r, "empty-class", "agent '" + an + "' has an empty equivalence class");
        continue;
      }
      for (int member : cls) {
        if (member < 0 || member >= S) {
          add(r, "bad-member",
              "agent '" + an + "' class references state index " + std::to_string(member));
          continue;
        }
        if (c.class_of[a][member] >= 0) {
          add(r, "overlapping-classes", "state '" + m.states[member].id +
                                            "' appears in two classes of agent '" + an +
                                            "'");
          continue;
        }
        c.class_of[a][member] = static_cast<int>(ci);
        c.alive[member] |= AgentMask{1} << a;
      }
    }
  }
  return r;
}

VarMask owned_mask(const Signature& sig, int agent_local) {
  VarMask mask = 0;
  for (std::size_t vi = 0; vi < sig.variables.size(); ++vi) {
    if (sig.agent_index(variable_owner(sig.variables[vi])) == agent_local) {
      mask |= VarMask{1} << vi;
    }
  }
  return mask;
}

}  // namespace

void LocalEpistemicModel::finalize() {
  finalized = false;
  KCaches c;
  const ValidationReport r = structural_check(*this, c);
  if (!r.ok()) throw std::invalid_argument("invalid local epistemic model: " + r.summary());
  state_vars = std::move(c.state_vars);
  alive = std::move(c.alive);
  class_of = std::move(c.class_of);
  state_index = std::move(c.state_index);
  finalized = true;
}

ValidationReport validate(const LocalEpistemicModel& m) {
  KCaches c;
  ValidationReport r = structural_check(m, c);
  if (!r.ok()) return r;  // locality and properness presuppose coherent structure
  const int S = m.n_states();
  const int A = m.n_agents();
  // Locality: related states agree on the relating agent's variables.
  for (int a = 0; a < A; ++a) {
    const VarMask owned = owned_mask(m.sig, a);
    for (const auto& cls : m.partitions[a]) {
      const VarMask v0 = c.state_vars[cls[0]] & owned;
      for (int member : cls) {
        if ((c.state_vars[member] & owned) != v0) {
          add(r, "not-local", "agent '" + agent_name(m.sig.agents[a]) +
                                  "' relates states '" + m.states[cls[0]].id + "' and '" +
                                  m.states[member].id +
                                  "' that disagree on the agent's variables");
          break;
        }
      }
    }
  }
  // Properness: each of two distinct states has a live agent distinguishing
  // it from the other.
  for (int s = 0; s < S; ++s) {
    for (int t = s + 1; t < S; ++t) {
      const auto distinguishes_from = [&](int x, int y) {
        for (int a = 0; a < A; ++a) {
          const int cx = c.class_of[a][x];
          if (cx >= 0 && cx != c.class_of[a][y]) return true;
        }
        return false;
      };
      if (!distinguishes_from(s, t)) {
        add(r, "not-proper", "no agent alive in '" + m.states[s].id +
                                 "' distinguishes it from '" + m.states[t].id + "'");
      }
      if (!distinguishes_from(t, s)) {
        add(r, "not-proper", "no agent alive in '" + m.states[t].id +
                                 "' distinguishes it from '" + m.states[s].id + "'");
      }
    }
  }
  return r;
}

Rows evaluate_rows(const LocalEpistemicModel& m, const LocalizedWorkset& lw) {
  if (!m.finalized) throw std::logic_error("model not finalized");
  if (!(m.sig == lw.sig)) throw std::logic_error("workset localized for a different signature");
  const int P = m.n_states();
  const int N = static_cast<int>(lw.nodes.size());
  Rows r;
  r.points = P;
  r.val.assign(static_cast<std::size_t>(N) * P, Truth::Undefined);
  r.def.assign(static_cast<std::size_t>(N) * P, 0);
  for (int i = 0; i < N; ++i) {
    const auto& nd = lw.nodes[i];
    Truth* v = r.val.data() + static_cast<std::size_t>(i) * P;
    std::uint8_t* d = r.def.data() + static_cast<std::size_t>(i) * P;
    switch (nd.kind) {
      case FKind::Var: {
        if (nd.owner_local < 0) break;  // owner dead everywhere
        for (int s = 0; s < P; ++s) {
          if (!m.alive_at(s, nd.owner_local)) continue;
          d[s] = 1;
          const bool holds =
              nd.var_local >= 0 && ((m.state_vars[s] >> nd.var_local) & 1u);
          v[s] = truth_of(holds);
        }
        break;
      }
      case FKind::Neg: {
        const Truth* cv = r.val.data() + static_cast<std::size_t>(nd.k0) * P;
        const std::uint8_t* cd = r.def.data() + static_cast<std::size_t>(nd.k0) * P;
        for (int s = 0; s < P; ++s) {
          v[s] = flip(cv[s]);
          d[s] = cd[s];
        }
        break;
      }
      case FKind::And: {
        const Truth* av = r.val.data() + static_cast<std::size_t>(nd.k0) * P;
        const Truth* bv = r.val.data() + static_cast<std::size_t>(nd.k1) * P;
        const std::uint8_t* ad = r.def.data() + static_cast<std::size_t>(nd.k0) * P;
        const std::uint8_t* bd = r.def.data() + static_cast<std::size_t>(nd.k1) * P;
        for (int s = 0; s < P; ++s) {
          v[s] = and3(av[s], bv[s]);
          d[s] = ad[s] & bd[s];
        }
        break;
      }
      case FKind::Hat: {
        if (nd.agent_local < 0) break;
        const Truth* cv = r.val.data() + static_cast<std::size_t>(nd.k0) * P;
        const std::uint8_t* cd = r.def.data() + static_cast<std::size_t>(nd.k0) * P;
        for (int s = 0; s < P; ++s) {
          const int ci = m.class_of[nd.agent_local][s];
          if (ci < 0) continue;
          bool any_true = false, any_val_def = false, any_def = false;
          for (int t : m.partitions[nd.agent_local][ci]) {
            any_true |= cv[t] == Truth::True;
            any_val_def |= cv[t] != Truth::Undefined;
            any_def |= cd[t] != 0;
          }
          if (any_true) {
            v[s] = Truth::True;
          } else if (any_val_def) {
            v[s] = Truth::False;
          }
          d[s] = any_def ? 1 : 0;
        }
        break;
      }
      default:
        throw std::logic_error("non-primitive node in localized workset");
    }
  }
  return r;
}

namespace {

int checked_state(const LocalEpistemicModel& m, int state) {
  if (!m.finalized) throw std::logic_error("model not finalized");
  if (state < 0 || state >= m.n_states()) throw std::domain_error("unknown state");
  return state;
}

int checked_state(const LocalEpistemicModel& m, std::string_view state_id) {
  if (!m.finalized) throw std::logic_error("model not finalized");
  const auto it = m.state_index.find(std::string(state_id));
  if (it == m.state_index.end()) throw std::domain_error("unknown state");
  return it->second;
}

Rows rows_for(const LocalEpistemicModel& m, Formula f, int& root) {
  const Formula p = desugar(f, m.sig);
  const Formula roots[1] = {p};
  const Workset w = Workset::build(roots);
  root = w.position(p);
  return evaluate_rows(m, localize(w, m.sig));
}

}  // namespace

Truth eval3(const LocalEpistemicModel& m, int state, Formula f) {
  const int s = checked_state(m, state);
  int root = 0;
  const Rows r = rows_for(m, f, root);
  return r.value(root, s);
}

Truth eval3(const LocalEpistemicModel& m, std::string_view state_id, Formula f) {
  return eval3(m, checked_state(m, state_id), f);
}

bool is_defined(const LocalEpistemicModel& m, int state, Formula f) {
  const int s = checked_state(m, state);
  int root = 0;
  const Rows r = rows_for(m, f, root);
  return r.defined_at(root, s);
}

bool is_defined(const LocalEpistemicModel& m, std::string_view state_id, Formula f) {
  return is_defined(m, checked_state(m, state_id), f);
}

std::vector<int> denotation(const LocalEpistemicModel& m, Formula f) {
  if (!m.finalized) throw std::logic_error("model not finalized");
  int root = 0;
  const Rows r = rows_for(m, f, root);
  std::vector<int> out;
  for (int s = 0; s < r.points; ++s) {
    if (r.value(root, s) == Truth::True) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Translations.
// ---------------------------------------------------------------------------

namespace {

std::string join_plus(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '+';
    out += parts[i];
  }
  return out;
}

}  // namespace

LocalEpistemicModel kappa(const SimplicialModel& c) {
  if (!c.finalized) throw std::logic_error("model not finalized");
  LocalEpistemicModel k;
  k.sig = c.sig;
  const int F = static_cast<int>(c.facets.size());
  k.states.reserve(F);
  for (int fi = 0; fi < F; ++fi) {
    KripkeState st;
    st.id = join_plus(c.ids_of(c.facets[fi]));
    const VarMask vals = c.true_at(c.facets[fi]);
    for (std::size_t vi = 0; vi < c.sig.variables.size(); ++vi) {
      if ((vals >> vi) & 1u) st.true_vars.push_back(c.sig.variables[vi]);
    }
    k.states.push_back(std::move(st));
  }
  // Two facets are a-related exactly when they contain the same a-vertex.
  k.partitions.assign(c.n_agents(), {});
  for (int a = 0; a < c.n_agents(); ++a) {
    std::unordered_map<int, int> class_by_vertex;
    for (int fi = 0; fi < F; ++fi) {
      const int vert = c.vertex_of_colour(c.facets[fi], a);
      if (vert < 0) continue;
      const auto [it, fresh] =
          class_by_vertex.emplace(vert, static_cast<int>(k.partitions[a].size()));
      if (fresh) k.partitions[a].emplace_back();
      k.partitions[a][it->second].push_back(fi);
    }
  }
  k.finalize();
  return k;
}

SigmaResult sigma_with_map(const LocalEpistemicModel& m) {
  if (!m.finalized) throw std::logic_error("model not finalized");
  const ValidationReport report = validate(m);
  if (!report.ok()) {
    throw std::invalid_argument("not a valid local epistemic model: " + report.summary());
  }
  const int S = m.n_states();
  const int A = m.n_agents();
  for (int s = 0; s < S; ++s) {
    if (m.alive[s] == 0) {
      throw std::invalid_argument("state '" + m.states[s].id +
                                  "' has no live agent and spans no facet");
    }
  }

  SigmaResult out;
  SimplicialModel& model = out.model;
  model.sig = m.sig;
  // One vertex per (class, agent) pair, agents in signature order.
  std::vector<std::vector<int>> vertex_no(A);
  for (int a = 0; a < A; ++a) {
    const VarMask owned = owned_mask(m.sig, a);
    vertex_no[a].assign(m.partitions[a].size(), -1);
    for (std::size_t ci = 0; ci < m.partitions[a].size(); ++ci) {
      std::vector<int> members = m.partitions[a][ci];
      std::sort(members.begin(), members.end());
      std::vector<std::string> ids;
      ids.reserve(members.size());
      for (int s : members) ids.push_back(m.states[s].id);
      Vertex v;
      v.id = join_plus(ids) + "_" + agent_name(m.sig.agents[a]);
      v.colour = m.sig.agents[a];
      const VarMask vals = m.state_vars[members.front()] & owned;  // local: any member
      for (std::size_t vi = 0; vi < m.sig.variables.size(); ++vi) {
        if ((vals >> vi) & 1u) v.true_vars.push_back(m.sig.variables[vi]);
      }
      vertex_no[a][ci] = model.n_vertices();
      model.vertices.push_back(std::move(v));
    }
  }
  out.state_facet.assign(S, 0);
  for (int s = 0; s < S; ++s) {
    VertexMask facet = 0;
    for (int a = 0; a < A; ++a) {
      const int ci = m.class_of[a][s];
      if (ci >= 0) facet |= VertexMask{1} << vertex_no[a][ci];
    }
    out.state_facet[s] = facet;
    model.facets.push_back(facet);
  }
  // Properness makes the facets pairwise non-nested, so this cannot throw.
  model.finalize();
  return out;
}

SimplicialModel sigma(const LocalEpistemicModel& m) { return sigma_with_map(m).model; }

// ---------------------------------------------------------------------------
// Isomorphism.
// ---------------------------------------------------------------------------

KripkeIsoCheck isomorphic(const LocalEpistemicModel& a, const LocalEpistemicModel& b) {
  KripkeIsoCheck res;
  if (!a.finalized || !b.finalized) throw std::logic_error("model not finalized");
  auto sorted_agents = [](const Signature& s) {
    std::vector<AgentId> v = s.agents;
    std::sort(v.begin(), v.end());
    return v;
  };
  auto sorted_vars = [](const Signature& s) {
    std::vector<VarId> v = s.variables;
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted_agents(a.sig) != sorted_agents(b.sig)) {
    res.note = "different agent universes";
    return res;
  }
  if (sorted_vars(a.sig) != sorted_vars(b.sig)) {
    res.note = "different variable universes";
    return res;
  }
  const int S = a.n_states();
  if (S != b.n_states()) {
    res.note = "different numbers of states";
    return res;
  }
  const int A = a.n_agents();
  // Translate a's local agent/variable indices into b's.
  std::vector<int> b_agent(A), b_var(a.sig.variables.size());
  for (int i = 0; i < A; ++i) b_agent[i] = b.sig.agent_index(a.sig.agents[i]);
  for (std::size_t i = 0; i < a.sig.variables.size(); ++i) {
    b_var[i] = b.sig.variable_index(a.sig.variables[i]);
  }

  // Per-state invariants in a shared vocabulary: alive agents, live-agent
  // valuation, and per-agent class size.
  const auto live_profile = [&](const LocalEpistemicModel& m, int s,
                                const std::vector<int>& agent_of,
                                const std::vector<int>& var_of) {
    std::vector<int> alive_list, vals, sizes;
    for (int i = 0; i < A; ++i) {
      const int la = agent_of[i];
      const int ci = m.class_of[la][s];
      if (ci < 0) {
        sizes.push_back(0);
        continue;
      }
      alive_list.push_back(i);
      sizes.push_back(static_cast<int>(m.partitions[la][ci].size()));
    }
    for (std::size_t i = 0; i < var_of.size(); ++i) {
      const int lv = var_of[i];
      const int owner = m.sig.agent_index(variable_owner(m.sig.variables[lv]));
      if (owner >= 0 && m.alive_at(s, owner) && ((m.state_vars[s] >> lv) & 1u)) {
        vals.push_back(static_cast<int>(i));
      }
    }
    return std::tuple(alive_list, vals, sizes);
  };
  std::vector<int> identity_a(A), identity_v(a.sig.variables.size());
  for (int i = 0; i < A; ++i) identity_a[i] = i;
  for (std::size_t i = 0; i < identity_v.size(); ++i) identity_v[i] = static_cast<int>(i);

  std::vector<std::vector<int>> candidates(S);
  for (int s = 0; s < S; ++s) {
    const auto pa = live_profile(a, s, identity_a, identity_v);
    for (int t = 0; t < S; ++t) {
      if (pa == live_profile(b, t, b_agent, b_var)) candidates[s].push_back(t);
    }
    if (candidates[s].empty()) {
      res.note = "state '" + a.states[s].id + "' has no structural counterpart";
      return res;
    }
  }

  const auto related = [](const LocalEpistemicModel& m, int la, int x, int y) {
    const int cx = m.class_of[la][x];
    return cx >= 0 && cx == m.class_of[la][y];
  };
  std::vector<int> map_to(S, -1);
  std::vector<char> used(S, 0);
  const auto extend = [&](const auto& self, int s) -> bool {
    if (s == S) return true;
    for (int t : candidates[s]) {
      if (used[t]) continue;
      bool ok = true;
      for (int prev = 0; prev < s && ok; ++prev) {
        for (int i = 0; i < A; ++i) {
          if (related(a, i, s, prev) != related(b, b_agent[i], t, map_to[prev])) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      map_to[s] = t;
      used[t] = 1;
      if (self(self, s + 1)) return true;
      used[t] = 0;
      map_to[s] = -1;
    }
    return false;
  };
  if (!extend(extend, 0)) {
    res.note = "no relation-preserving state bijection";
    return res;
  }
  res.isomorphic = true;
  for (int s = 0; s < S; ++s) res.witness.emplace(a.states[s].id, b.states[map_to[s]].id);
  return res;
}

LocalEpistemicModel build_kripke(
    const std::vector<std::string>& agents,
    const std::vector<std::pair<std::string, std::string>>& variables,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& state_rows,
    const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>&
        partition_rows) {
  LocalEpistemicModel m;
  for (const auto& a : agents) m.sig.agents.push_back(intern_agent(a));
  for (const auto& [base, owner] : variables)
    m.sig.variables.push_back(intern_variable(base, intern_agent(owner)));

  std::unordered_map<std::string, VarId> by_name;
  for (VarId v : m.sig.variables) by_name.emplace(variable_name(v), v);
  std::unordered_map<std::string, int> index;
  for (const auto& [id, trues] : state_rows) {
    KripkeState st;
    st.id = id;
    for (const auto& name : trues) {
      auto it = by_name.find(name);
      if (it == by_name.end())
        throw std::invalid_argument("state '" + id + "' valuates undeclared variable '" +
                                    name + "'");
      st.true_vars.push_back(it->second);
    }
    index.emplace(id, static_cast<int>(m.states.size()));
    m.states.push_back(std::move(st));
  }

  m.partitions.assign(m.sig.agents.size(), {});
  for (const auto& [agent, classes] : partition_rows) {
    const int ai = m.sig.agent_index(intern_agent(agent));
    if (ai < 0)
      throw std::invalid_argument("partition row for undeclared agent '" + agent + "'");
    for (const auto& members : classes) {
      std::vector<int> cls;
      for (const auto& id : members) {
        auto it = index.find(id);
        if (it == index.end())
          throw std::invalid_argument("partition references unknown state '" + id + "'");
        cls.push_back(it->second);
      }
      m.partitions[ai].push_back(std::move(cls));
    }
  }
  m.finalize();
  return m;
}

}  // namespace simpepist
