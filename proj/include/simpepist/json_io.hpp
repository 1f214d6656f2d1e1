#pragma once

#include <json.hpp>

#include <string>

#include "simpepist/complex.hpp"
#include "simpepist/kripke.hpp"
#include "simpepist/suites.hpp"
#include "simpepist/truth.hpp"

namespace simpepist {

// On-disk interchange for the two model kinds, verdicts and suite reports.
//
// Simplicial models:
//   { "agents": ["a","b","c"],
//     "variables": [{"name":"p","owner":"a"}, ...],
//     "vertices": [{"id":"a0","agent":"a","true":["p_a"]}, ...],
//     "facets": [["a0","b0"], ...] }
//
// State models:
//   { "agents": [...], "variables": [...],
//     "states": [{"id":"s0","true":["p_a","p_b"]}, ...],
//     "relations": {"a": [["s0","s1"]], "b": [["s0"]]} }
//
// `variables[].name` is the agent-local base name; every value reference (a
// vertex or state "true" array) uses the qualified form base_agent.  An agent
// missing from "relations" is dead everywhere.  Parsers are strict: unknown
// keys, wrong types, duplicate ids, references to undeclared variables or
// vertices all raise std::invalid_argument with a pointed message.

nlohmann::json to_json(const SimplicialModel& m);
nlohmann::json to_json(const LocalEpistemicModel& m);

SimplicialModel simplicial_from_json(const nlohmann::json& j);
LocalEpistemicModel kripke_from_json(const nlohmann::json& j);

enum class ModelKind { Simplicial, Kripke };

struct AnyModel {
  ModelKind kind = ModelKind::Simplicial;
  SimplicialModel simplicial;   // filled when kind == Simplicial
  LocalEpistemicModel kripke;   // filled when kind == Kripke
};

// Dispatches on the document's keys: "vertices"/"facets" versus
// "states"/"relations".
AnyModel model_from_json(const nlohmann::json& j);

// Reads and parses a model file.  I/O failures raise std::runtime_error,
// malformed JSON nlohmann::json::parse_error, schema violations
// std::invalid_argument.
AnyModel load_model(const std::string& path);

// {"value":"true"|"false"|"undefined"}
nlohmann::json to_json(Truth t);

// Violations embed the offending model (null for family-level findings), the
// point as a vertex-id list rendering, and the formula text.
nlohmann::json to_json(const SuiteViolation& v);
nlohmann::json to_json(const SuiteReport& r);

// Pretty-prints with a trailing newline; std::runtime_error on I/O failure.
void save_json(const nlohmann::json& j, const std::string& path);

}  // namespace simpepist
