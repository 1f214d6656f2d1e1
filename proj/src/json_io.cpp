#include "simpepist/json_io.hpp"

#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace simpepist {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

void require_keys(const json& j, const char* what,
                  std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(std::string(what) + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) fail(std::string("unknown key '") + item.key() + "' in " + what);
  }
  for (const char* k : allowed) {
    if (!j.contains(k)) fail(std::string(what) + " is missing key '" + k + "'");
  }
}

std::vector<std::string> string_array(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) fail(std::string(what) + " must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

// Shared head of both formats: agents + variables declaration.
Signature parse_signature(const json& j) {
  Signature sig;
  for (const auto& name : string_array(j.at("agents"), "\"agents\""))
    sig.agents.push_back(intern_agent(name));
  const json& vars = j.at("variables");
  if (!vars.is_array()) fail("\"variables\" must be an array");
  for (const auto& v : vars) {
    require_keys(v, "a variable entry", {"name", "owner"});
    if (!v.at("name").is_string() || !v.at("owner").is_string())
      fail("variable \"name\" and \"owner\" must be strings");
    sig.variables.push_back(intern_variable(v.at("name").get<std::string>(),
                                            intern_agent(v.at("owner").get<std::string>())));
  }
  return sig;
}

json signature_json(const Signature& sig) {
  json agents = json::array();
  for (AgentId a : sig.agents) agents.push_back(agent_name(a));
  json vars = json::array();
  for (VarId v : sig.variables)
    vars.push_back({{"name", variable_base(v)}, {"owner", agent_name(variable_owner(v))}});
  return json{{"agents", std::move(agents)}, {"variables", std::move(vars)}};
}

std::unordered_map<std::string, VarId> qualified_index(const Signature& sig) {
  std::unordered_map<std::string, VarId> out;
  for (VarId v : sig.variables) out.emplace(variable_name(v), v);
  return out;
}

}  // namespace

SimplicialModel simplicial_from_json(const json& j) {
  require_keys(j, "a simplicial model", {"agents", "variables", "vertices", "facets"});
  SimplicialModel m;
  m.sig = parse_signature(j);
  const auto vars = qualified_index(m.sig);

  const json& vertices = j.at("vertices");
  if (!vertices.is_array()) fail("\"vertices\" must be an array");
  std::unordered_map<std::string, int> index;
  for (const auto& row : vertices) {
    require_keys(row, "a vertex entry", {"id", "agent", "true"});
    if (!row.at("id").is_string() || !row.at("agent").is_string())
      fail("vertex \"id\" and \"agent\" must be strings");
    Vertex v;
    v.id = row.at("id").get<std::string>();
    v.colour = intern_agent(row.at("agent").get<std::string>());
    for (const auto& ref : string_array(row.at("true"), "a vertex \"true\" array")) {
      auto it = vars.find(ref);
      if (it == vars.end())
        fail("vertex '" + v.id + "' valuates undeclared variable '" + ref + "'");
      if (variable_owner(it->second) != v.colour)
        fail("vertex '" + v.id + "' valuates variable '" + ref +
             "' of a different agent");
      v.true_vars.push_back(it->second);
    }
    if (!index.emplace(v.id, static_cast<int>(m.vertices.size())).second)
      fail("duplicate vertex id '" + v.id + "'");
    m.vertices.push_back(std::move(v));
  }

  const json& facets = j.at("facets");
  if (!facets.is_array()) fail("\"facets\" must be an array");
  for (const auto& row : facets) {
    VertexMask f = 0;
    for (const auto& id : string_array(row, "a facet entry")) {
      auto it = index.find(id);
      if (it == index.end()) fail("facet references unknown vertex '" + id + "'");
      f |= VertexMask(1) << it->second;
    }
    m.facets.push_back(f);
  }
  SimplicialModel norm = normalized(m);
  norm.finalize();
  return norm;
}

json to_json(const SimplicialModel& m) {
  json j = signature_json(m.sig);
  json vertices = json::array();
  for (const auto& v : m.vertices) {
    json trues = json::array();
    for (VarId t : v.true_vars) trues.push_back(variable_name(t));
    vertices.push_back(
        {{"id", v.id}, {"agent", agent_name(v.colour)}, {"true", std::move(trues)}});
  }
  json facets = json::array();
  for (VertexMask f : m.facets) {
    json row = json::array();
    for (int i = 0; i < m.n_vertices(); ++i)
      if ((f >> i) & 1u) row.push_back(m.vertices[i].id);
    facets.push_back(std::move(row));
  }
  j["vertices"] = std::move(vertices);
  j["facets"] = std::move(facets);
  return j;
}

LocalEpistemicModel kripke_from_json(const json& j) {
  require_keys(j, "a state model", {"agents", "variables", "states", "relations"});
  Signature sig = parse_signature(j);

  std::vector<std::string> agents;
  std::vector<std::pair<std::string, std::string>> variables;
  for (AgentId a : sig.agents) agents.push_back(agent_name(a));
  for (VarId v : sig.variables)
    variables.emplace_back(variable_base(v), agent_name(variable_owner(v)));

  const json& states = j.at("states");
  if (!states.is_array()) fail("\"states\" must be an array");
  std::vector<std::pair<std::string, std::vector<std::string>>> state_rows;
  for (const auto& row : states) {
    require_keys(row, "a state entry", {"id", "true"});
    if (!row.at("id").is_string()) fail("state \"id\" must be a string");
    state_rows.emplace_back(row.at("id").get<std::string>(),
                            string_array(row.at("true"), "a state \"true\" array"));
  }

  const json& relations = j.at("relations");
  if (!relations.is_object()) fail("\"relations\" must be an object");
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> partition_rows;
  for (const auto& item : relations.items()) {
    bool declared = false;
    for (const auto& a : agents) declared = declared || a == item.key();
    if (!declared) fail("relations for undeclared agent '" + item.key() + "'");
    if (!item.value().is_array())
      fail("relations of agent '" + item.key() + "' must be an array of classes");
    std::vector<std::vector<std::string>> classes;
    for (const auto& cls : item.value())
      classes.push_back(string_array(cls, "an equivalence class"));
    partition_rows.emplace_back(item.key(), std::move(classes));
  }
  return build_kripke(agents, variables, state_rows, partition_rows);
}

json to_json(const LocalEpistemicModel& m) {
  json j = signature_json(m.sig);
  json states = json::array();
  for (const auto& s : m.states) {
    json trues = json::array();
    for (VarId t : s.true_vars) trues.push_back(variable_name(t));
    states.push_back({{"id", s.id}, {"true", std::move(trues)}});
  }
  json relations = json::object();
  for (std::size_t ai = 0; ai < m.partitions.size(); ++ai) {
    if (m.partitions[ai].empty()) continue;  // dead everywhere: stays absent
    json classes = json::array();
    for (const auto& cls : m.partitions[ai]) {
      json members = json::array();
      for (int s : cls) members.push_back(m.states[s].id);
      classes.push_back(std::move(members));
    }
    relations[agent_name(m.sig.agents[ai])] = std::move(classes);
  }
  j["states"] = std::move(states);
  j["relations"] = std::move(relations);
  return j;
}

AnyModel model_from_json(const json& j) {
  if (!j.is_object()) fail("a model file must hold a JSON object");
  const bool simp = j.contains("vertices") || j.contains("facets");
  const bool krip = j.contains("states") || j.contains("relations");
  if (simp == krip)
    fail("cannot tell the model kind: expected either \"vertices\"/\"facets\" or "
         "\"states\"/\"relations\"");
  AnyModel out;
  if (simp) {
    out.kind = ModelKind::Simplicial;
    out.simplicial = simplicial_from_json(j);
  } else {
    out.kind = ModelKind::Kripke;
    out.kripke = kripke_from_json(j);
  }
  return out;
}

AnyModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json j = json::parse(in);
  return model_from_json(j);
}

json to_json(Truth t) { return json{{"value", to_string(t)}}; }

json to_json(const SuiteViolation& v) {
  json j;
  j["property"] = v.property;
  j["model_index"] = v.model_index;
  j["model"] = v.model.vertices.empty() ? json() : to_json(v.model);
  j["model_summary"] = v.model_summary;
  j["point"] = v.point;
  j["formula"] = v.formula;
  j["expected"] = v.expected;
  j["actual"] = v.actual;
  return j;
}

json to_json(const SuiteReport& r) {
  json spec;
  spec["agents"] = r.spec.agent_count;
  spec["vars_per_agent"] = r.spec.vars_per_agent;
  spec["max_facets"] = r.spec.max_facets;
  spec["depth"] = r.spec.max_formula_depth;
  spec["connectives"] = r.spec.connectives;
  spec["seed"] = r.spec.seed;
  spec["sample_every"] = r.spec.sample_every;
  spec["dedup_isomorphic"] = r.spec.dedup_isomorphic;

  json j;
  j["suite"] = r.suite;
  j["spec"] = std::move(spec);
  j["models"] = r.models;
  j["cases"] = r.cases;
  j["violations_total"] = r.violations_total;
  j["expects_counterexample"] = r.expects_counterexample;
  j["witness_found"] = r.witness_found;
  j["witness"] = r.witness_summary;
  j["seconds"] = r.seconds;
  j["passed"] = r.passed();
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back(to_json(v));
  j["violations"] = std::move(violations);
  return j;
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace simpepist
