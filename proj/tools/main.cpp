// Command-line front end: validate and evaluate models, convert between the
// simplicial and state representations, run the property suites, search for
// schema counterexamples, and emit the bundled example models.
//
// Exit codes follow the three-valued convention throughout:
//   0 true / defined / passed / witness found
//   1 false / suite failed / no witness
//   2 undefined
//   3 model, point or conversion-input invalid; I/O failure
//   4 formula parse/bind error or bad usage

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "simpepist/builtin_models.hpp"
#include "simpepist/complex.hpp"
#include "simpepist/enumerate.hpp"
#include "simpepist/formula.hpp"
#include "simpepist/json_io.hpp"
#include "simpepist/kripke.hpp"
#include "simpepist/parse.hpp"
#include "simpepist/semantics.hpp"
#include "simpepist/suites.hpp"
#include "simpepist/truth.hpp"

namespace {

using namespace simpepist;
using nlohmann::json;

constexpr int kExitFalse = 1;
constexpr int kExitUndefined = 2;
constexpr int kExitModel = 3;
constexpr int kExitFormula = 4;

struct CommandError : std::runtime_error {
  int code;
  CommandError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

[[noreturn]] void die(int code, const std::string& what) { throw CommandError(code, what); }

// "a0+b1", "a0,b1" and "a0 b1" all address the same point.
std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == '+' || ch == ',' || ch == ' ') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

VertexMask resolve_point(const SimplicialModel& m, const std::string& at) {
  VertexMask mask = 0;
  for (const auto& id : split_ids(at)) {
    auto it = m.vertex_index.find(id);
    if (it == m.vertex_index.end()) die(kExitModel, "unknown vertex '" + id + "'");
    mask |= VertexMask(1) << it->second;
  }
  if (mask == 0) die(kExitModel, "--at names no vertices");
  if (!m.is_simplex(mask)) die(kExitModel, "'" + at + "' is not a simplex of the model");
  return mask;
}

AnyModel load_or_die(const std::string& path) {
  try {
    return load_model(path);
  } catch (const std::exception& e) {
    die(kExitModel, std::string("cannot load '") + path + "': " + e.what());
  }
}

Formula parse_bound(const std::string& text, const Signature& sig) {
  Formula f;
  try {
    f = parse_formula(text);
  } catch (const ParseError& e) {
    die(kExitFormula, e.what());
  }
  BindReport b = bind_check(f, sig);
  if (!b.ok()) {
    std::string msg = "formula does not bind to the model:";
    for (const auto& p : b.problems) msg += "\n  " + p;
    die(kExitFormula, msg);
  }
  return f;
}

// --------------------------------------------------------------------------
// validate
// --------------------------------------------------------------------------

int cmd_validate(const std::string& path, bool as_json) {
  AnyModel m = load_or_die(path);
  ValidationReport r = m.kind == ModelKind::Simplicial ? validate(m.simplicial)
                                                       : validate(m.kripke);
  if (as_json) {
    json j;
    j["valid"] = r.ok();
    j["kind"] = m.kind == ModelKind::Simplicial ? "simplicial" : "kripke";
    json v = json::array();
    for (const auto& viol : r.violations)
      v.push_back({{"code", viol.code}, {"detail", viol.detail}});
    j["violations"] = std::move(v);
    std::cout << j.dump(2) << '\n';
  } else if (r.ok()) {
    std::cout << "valid\n";
  } else {
    std::cout << r.summary() << '\n';
  }
  return r.ok() ? 0 : kExitModel;
}

// --------------------------------------------------------------------------
// eval / defined
// --------------------------------------------------------------------------

int cmd_eval(const std::string& path, const std::string& at, const std::string& formula,
             bool force_kripke, bool definedness, bool as_json) {
  AnyModel m = load_or_die(path);
  if (force_kripke && m.kind != ModelKind::Kripke)
    die(kExitModel, "--kripke given but '" + path + "' holds a simplicial model");

  Truth t{};
  bool d = false;
  if (m.kind == ModelKind::Simplicial) {
    ValidationReport r = validate(m.simplicial);
    if (!r.ok()) die(kExitModel, "invalid model: " + r.summary());
    Formula f = parse_bound(formula, m.simplicial.sig);
    VertexMask point = resolve_point(m.simplicial, at);
    t = eval3(m.simplicial, point, f);
    d = is_defined(m.simplicial, point, f);
  } else {
    Formula f = parse_bound(formula, m.kripke.sig);
    auto it = m.kripke.state_index.find(at);
    if (it == m.kripke.state_index.end()) die(kExitModel, "unknown state '" + at + "'");
    t = eval3(m.kripke, it->second, f);
    d = is_defined(m.kripke, it->second, f);
  }

  if (definedness) {
    if (as_json)
      std::cout << json{{"defined", d}}.dump() << '\n';
    else
      std::cout << (d ? "defined" : "undefined") << '\n';
    return d ? 0 : kExitUndefined;
  }
  if (as_json)
    std::cout << to_json(t).dump() << '\n';
  else
    std::cout << to_string(t) << '\n';
  switch (t) {
    case Truth::True: return 0;
    case Truth::False: return kExitFalse;
    default: return kExitUndefined;
  }
}

// --------------------------------------------------------------------------
// convert
// --------------------------------------------------------------------------

int cmd_convert(const std::string& in, const std::string& out, const std::string& to,
                std::string map_path, bool as_json) {
  AnyModel m = load_or_die(in);
  if (map_path.empty()) map_path = out + ".map.json";

  json mapping;
  try {
    if (to == "kripke") {
      if (m.kind != ModelKind::Simplicial)
        die(kExitModel, "--to kripke needs a simplicial input model");
      ValidationReport r = validate(m.simplicial);
      if (!r.ok()) die(kExitModel, "invalid model: " + r.summary());
      LocalEpistemicModel k = kappa(m.simplicial);
      save_json(to_json(k), out);
      json pairs = json::array();
      for (int i = 0; i < k.n_states(); ++i) {
        json facet = json::array();
        for (int v = 0; v < m.simplicial.n_vertices(); ++v)
          if ((m.simplicial.facets[i] >> v) & 1u)
            facet.push_back(m.simplicial.vertices[v].id);
        pairs.push_back({{"facet", std::move(facet)}, {"state", k.states[i].id}});
      }
      mapping = {{"direction", "facets-to-states"}, {"pairs", std::move(pairs)}};
    } else {
      if (m.kind != ModelKind::Kripke)
        die(kExitModel, "--to simplicial needs a state-model input");
      ValidationReport r = validate(m.kripke);
      if (!r.ok()) die(kExitModel, "not a local epistemic model: " + r.summary());
      SigmaResult sr = sigma_with_map(m.kripke);
      save_json(to_json(sr.model), out);
      json pairs = json::array();
      for (int s = 0; s < m.kripke.n_states(); ++s) {
        json facet = json::array();
        for (int v = 0; v < sr.model.n_vertices(); ++v)
          if ((sr.state_facet[s] >> v) & 1u) facet.push_back(sr.model.vertices[v].id);
        pairs.push_back({{"state", m.kripke.states[s].id}, {"facet", std::move(facet)}});
      }
      mapping = {{"direction", "states-to-facets"}, {"pairs", std::move(pairs)}};
    }
    save_json(mapping, map_path);
  } catch (const CommandError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    die(kExitModel, e.what());  // e.g. sigma on an all-dead state
  } catch (const std::exception& e) {
    die(kExitModel, e.what());
  }

  if (as_json)
    std::cout << json{{"output", out}, {"map", map_path}}.dump() << '\n';
  else
    std::cout << "wrote " << out << " and " << map_path << '\n';
  return 0;
}

// --------------------------------------------------------------------------
// check
// --------------------------------------------------------------------------

EnumerationSpec spec_of(int agents, int facets, int depth, int sample_every,
                        std::uint64_t seed) {
  EnumerationSpec spec;
  spec.agent_count = agents;
  spec.max_facets = facets;
  spec.max_formula_depth = depth;
  spec.sample_every = sample_every;
  spec.seed = seed;
  return spec;
}

int cmd_check(const std::string& suite, const EnumerationSpec& spec, bool as_json,
              const std::string& out_path) {
  SuiteReport rep;
  try {
    rep = run_suite(suite, spec);
  } catch (const std::invalid_argument& e) {
    die(kExitFormula, e.what());
  }
  json j = to_json(rep);
  if (!out_path.empty()) save_json(j, out_path);
  if (as_json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "suite " << rep.suite << ": " << rep.models << " models, " << rep.cases
              << " cases, " << rep.violations_total << " violations ("
              << rep.seconds << "s)\n";
    if (rep.expects_counterexample)
      std::cout << (rep.witness_found ? "witness: " + rep.witness_summary
                                      : std::string("no witness found"))
                << '\n';
    for (const auto& v : rep.violations)
      std::cout << "  " << v.property << " @ model " << v.model_index << " ["
                << v.model_summary << "] point " << v.point << " formula " << v.formula
                << ": expected " << v.expected << ", got " << v.actual << '\n';
    std::cout << (rep.passed() ? "PASS" : "FAIL") << '\n';
  }
  return rep.passed() ? 0 : kExitFalse;
}

// --------------------------------------------------------------------------
// search
// --------------------------------------------------------------------------

json witness_json(const SearchWitness& w) {
  json args = json::array();
  for (Formula f : w.arguments) args.push_back(print(f));
  return json{{"model_index", w.model_index},
              {"model", to_json(w.model)},
              {"model_summary", model_brief(w.model)},
              {"point", point_brief(w.model, w.point)},
              {"agent", agent_name(w.agent)},
              {"arguments", std::move(args)},
              {"instance", print(w.instance)}};
}

int cmd_search(const std::string& schema_name, const std::string& formula_text,
               const EnumerationSpec& spec, bool as_json) {
  std::optional<SearchWitness> w;
  std::string subject;
  try {
    if (!schema_name.empty()) {
      auto schema = axiom_schema_from_name(schema_name);
      if (!schema) die(kExitFormula, "unknown schema '" + schema_name + "'");
      subject = std::string(axiom_schema_name(*schema));
      w = search_counterexample(*schema, spec);
    } else {
      Formula f = parse_bound(formula_text, spec.signature());
      subject = print(f);
      w = search_refutation(f, spec);
    }
  } catch (const CommandError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    die(kExitFormula, e.what());
  }

  if (as_json) {
    json j;
    j["subject"] = subject;
    j["found"] = w.has_value();
    if (w) j["witness"] = witness_json(*w);
    std::cout << j.dump(2) << '\n';
  } else if (w) {
    std::cout << "counterexample at model " << w->model_index << " ["
              << model_brief(w->model) << "] point " << point_brief(w->model, w->point)
              << "\n  agent " << agent_name(w->agent) << ", instance "
              << print(w->instance) << '\n';
  } else {
    std::cout << "no counterexample in the family\n";
  }
  return w ? 0 : kExitFalse;
}

// --------------------------------------------------------------------------
// examples
// --------------------------------------------------------------------------

struct EvalEntry {
  const char* model;
  const char* kind;  // "simplicial" | "kripke"
  const char* point; // vertex-id list or state id
  const char* formula;
  const char* expected;
};

// The golden table: values the bundled models were built to exhibit.  The
// command re-evaluates every row before writing the manifest, so a bundle
// that contradicts its own table can never be emitted.
constexpr EvalEntry kGoldenEvals[] = {
    {"edge_triangle", "simplicial", "a0+b0", "p_b & ~p_a", "true"},
    {"edge_triangle", "simplicial", "a0+b0", "p_c", "undefined"},
    {"edge_triangle", "simplicial", "a0+b0", "~p_c", "undefined"},
    {"edge_triangle", "simplicial", "a0+b0", "<a> p_c", "true"},
    {"edge_triangle", "simplicial", "a0+b0", "[a] p_c", "true"},
    {"edge_triangle", "simplicial", "a0+b0", "[a] p_c -> p_c", "undefined"},
    {"edge_triangle", "simplicial", "a0+b0", "p_b | ~p_b", "true"},
    {"edge_triangle", "simplicial", "a0+b0", "p_c | ~p_c", "undefined"},
    {"edge_triangle", "simplicial", "a0+b1+c0", "[b] p_c", "true"},
    {"edge_triangle", "simplicial", "a0", "~p_a", "true"},
    {"edge_triangle", "simplicial", "a0+b0", "[a](p_c -> ~p_b)", "true"},
    {"edge_triangle", "simplicial", "a0+b0", "[a] ~p_b", "false"},
    {"bridged_triangles", "simplicial", "v", "[b][c] p_a", "true"},
    {"bridged_triangles", "simplicial", "v", "[c] p_a", "undefined"},
    {"bridged_triangles", "simplicial", "v", "[b] p_a", "undefined"},
    {"bridged_triangles", "simplicial", "v", "p_a", "undefined"},
    {"two_triangles_shared_d", "simplicial", "a0+c0+d0",
     "<d>((T_a & p_c) | <d>(T_b & ~p_c))", "false"},
    {"two_triangles_shared_d", "simplicial", "b0+c1+d0",
     "<d>((T_a & p_c) | <d>(T_b & ~p_c))", "false"},
    {"two_triangles_shared_d", "simplicial", "a0+c0+d0", "T_a & T_b & T_c",
     "undefined"},
    {"two_triangles_shared_d", "simplicial", "b0+c1+d0",
     "(T_a & T_b & T_c) -> <d>((T_a & p_c) | <d>(T_b & ~p_c))", "undefined"},
    {"triangle_edge_cycle", "simplicial", "v+x+z", "p_c", "true"},
    {"triangle_edge_cycle", "simplicial", "v+x+z", "[a] p_c", "true"},
    {"triangle_edge_cycle", "simplicial", "v+x+z", "[a][b] p_c", "true"},
    {"triangle_edge_cycle", "simplicial", "v", "[a] p_c", "true"},
    {"triangle_edge_cycle", "simplicial", "v+w", "[b] p_c", "undefined"},
    {"triangle_edge_cycle", "simplicial", "u+v", "[b] p_c", "undefined"},
    {"pure_two_triangles", "simplicial", "a0+b0+c0", "<a> ~p_b", "true"},
    {"pure_two_triangles", "simplicial", "a0+b0+c0", "[b] p_b", "true"},
    {"single_triangle", "simplicial", "a0+b0+c0", "[a] p_b <-> p_b", "true"},
    {"two_edges_kripke", "kripke", "s0", "[a] p_c", "true"},
    {"two_edges_kripke", "kripke", "s0", "p_c", "undefined"},
    {"four_state_cycle", "kripke", "s1", "<a> T_c", "true"},
};

Truth eval_entry(const EvalEntry& e) {
  if (std::string_view(e.kind) == "simplicial") {
    SimplicialModel m = builtin::simplicial_by_name(e.model);
    Formula f = parse_bound(e.formula, m.sig);
    return eval3(m, resolve_point(m, e.point), f);
  }
  LocalEpistemicModel m = builtin::kripke_by_name(e.model);
  Formula f = parse_bound(e.formula, m.sig);
  return eval3(m, std::string_view(e.point), f);
}

int cmd_examples(const std::string& dir, bool as_json) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) die(kExitModel, "cannot create '" + dir + "': " + ec.message());

  json models = json::array();
  try {
    for (const auto& info : builtin::catalog()) {
      const std::string file = info.name + ".json";
      if (info.kind == "simplicial")
        save_json(to_json(builtin::simplicial_by_name(info.name)), dir + "/" + file);
      else
        save_json(to_json(builtin::kripke_by_name(info.name)), dir + "/" + file);
      models.push_back({{"name", info.name},
                        {"kind", info.kind},
                        {"file", file},
                        {"description", info.description}});
    }
  } catch (const std::exception& e) {
    die(kExitModel, std::string("writing models failed: ") + e.what());
  }

  json evals = json::array();
  for (const auto& e : kGoldenEvals) {
    Truth got = eval_entry(e);
    if (to_string(got) != e.expected)
      die(kExitFalse, std::string("self-check failed: ") + e.model + " @ " + e.point +
                          " '" + e.formula + "' evaluates to " +
                          std::string(to_string(got)) + ", table says " + e.expected);
    evals.push_back({{"model", e.model},
                     {"kind", e.kind},
                     {"point", e.point},
                     {"formula", e.formula},
                     {"expected", e.expected}});
  }

  json roundtrips = json::array();
  for (const auto& info : builtin::catalog()) {
    json entry{{"model", info.name}};
    if (info.kind == "simplicial") {
      SimplicialModel m = builtin::simplicial_by_name(info.name);
      bool iso = isomorphic(sigma(kappa(m)), m).isomorphic;
      if (!iso) die(kExitFalse, "self-check failed: round trip of " + info.name);
      entry["isomorphic"] = true;
    } else {
      LocalEpistemicModel m = builtin::kripke_by_name(info.name);
      if (validate(m).ok()) {
        bool iso = isomorphic(kappa(sigma(m)), m).isomorphic;
        if (!iso) die(kExitFalse, "self-check failed: round trip of " + info.name);
        entry["isomorphic"] = true;
      } else {
        entry["isomorphic"] = nullptr;
        entry["note"] = "improper: the states-to-facets translation rejects it";
      }
    }
    roundtrips.push_back(std::move(entry));
  }

  auto count_models = [](int agents, int facets) {
    EnumerationSpec s;
    s.agent_count = agents;
    s.max_facets = facets;
    std::uint64_t n = 0;
    enumerate_simplicial(s, [&n](const SimplicialModel&, std::uint64_t) {
      ++n;
      return true;
    });
    return n;
  };
  EnumerationSpec f2;
  f2.agent_count = 2;
  EnumerationSpec f3;
  f3.agent_count = 3;
  json counts;
  counts["models_agents2_facets1"] = count_models(2, 1);
  counts["models_agents3_facets2"] = count_models(3, 2);
  counts["formulas_agents2_depth2"] = formula_pool(f2).size();
  counts["formulas_agents3_depth2"] = formula_pool(f3).size();

  json manifest;
  manifest["models"] = std::move(models);
  manifest["evals"] = std::move(evals);
  manifest["roundtrips"] = std::move(roundtrips);
  manifest["counts"] = std::move(counts);
  try {
    save_json(manifest, dir + "/manifest.json");
  } catch (const std::exception& e) {
    die(kExitModel, e.what());
  }

  if (as_json)
    std::cout << json{{"directory", dir},
                      {"models", builtin::catalog().size()},
                      {"manifest", "manifest.json"}}
                     .dump()
              << '\n';
  else
    std::cout << "wrote " << builtin::catalog().size() << " models and manifest.json to "
              << dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Three-valued epistemic semantics on impure chromatic simplicial "
      "complexes: evaluation, soundness suites, and Kripke-side conversion"};
  app.require_subcommand(1);

  std::string model_path, at, formula_text, out_path, to_kind, map_path, suite_name,
      schema_name, out_file, dir;
  bool as_json = false, force_kripke = false;
  int agents = 3, facets = 2, depth = 2, sample_every = 0;
  std::uint64_t seed = 0;

  auto add_bounds = [&](CLI::App* c) {
    c->add_option("--agents", agents, "family agent count (2..4)");
    c->add_option("--max-facets", facets, "max facet count (1..4)");
    c->add_option("--depth", depth, "max formula depth (1..3)");
    c->add_option("--sample-every", sample_every,
                  "keep ~1/n of the model stream (0 = exhaustive)");
    c->add_option("--seed", seed, "sampling seed");
  };

  CLI::App* validate_cmd = app.add_subcommand("validate", "check a model file");
  validate_cmd->add_option("model", model_path, "model JSON file")->required();
  validate_cmd->add_flag("--json", as_json, "machine-readable output");

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a formula at a point");
  eval_cmd->add_option("model", model_path, "model JSON file")->required();
  eval_cmd->add_option("formula", formula_text, "formula text")->required();
  eval_cmd->add_option("--at", at, "vertex-id list (simplicial) or state id (kripke)")
      ->required();
  eval_cmd->add_flag("--kripke", force_kripke, "require a state model");
  eval_cmd->add_flag("--json", as_json, "machine-readable output");

  CLI::App* defined_cmd =
      app.add_subcommand("defined", "report whether a formula is defined at a point");
  defined_cmd->add_option("model", model_path, "model JSON file")->required();
  defined_cmd->add_option("formula", formula_text, "formula text")->required();
  defined_cmd->add_option("--at", at, "vertex-id list or state id")->required();
  defined_cmd->add_flag("--kripke", force_kripke, "require a state model");
  defined_cmd->add_flag("--json", as_json, "machine-readable output");

  CLI::App* convert_cmd =
      app.add_subcommand("convert", "translate between model representations");
  convert_cmd->add_option("input", model_path, "input model JSON file")->required();
  convert_cmd->add_option("output", out_path, "output model JSON file")->required();
  convert_cmd->add_option("--to", to_kind, "target representation")
      ->required()
      ->check(CLI::IsMember({"kripke", "simplicial"}));
  convert_cmd->add_option("--map", map_path,
                          "mapping file path (default: OUTPUT.map.json)");
  convert_cmd->add_flag("--json", as_json, "machine-readable output");

  CLI::App* check_cmd = app.add_subcommand("check", "run a property suite");
  check_cmd->add_option("--suite", suite_name, "suite name")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  add_bounds(check_cmd);
  check_cmd->add_option("--out", out_file, "also write the JSON report here");
  check_cmd->add_flag("--json", as_json, "machine-readable output");

  CLI::App* search_cmd =
      app.add_subcommand("search", "hunt for a counterexample in a bounded family");
  CLI::Option* schema_opt =
      search_cmd->add_option("--schema", schema_name, "axiom schema name");
  search_cmd->add_option("--formula", formula_text, "formula to refute")
      ->excludes(schema_opt);
  add_bounds(search_cmd);
  search_cmd->add_flag("--json", as_json, "machine-readable output");

  CLI::App* examples_cmd =
      app.add_subcommand("examples", "write the bundled example models and manifest");
  examples_cmd->add_option("dir", dir, "output directory")->required();
  examples_cmd->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitFormula;
  }

  try {
    if (*validate_cmd) return cmd_validate(model_path, as_json);
    if (*eval_cmd)
      return cmd_eval(model_path, at, formula_text, force_kripke, false, as_json);
    if (*defined_cmd)
      return cmd_eval(model_path, at, formula_text, force_kripke, true, as_json);
    if (*convert_cmd) return cmd_convert(model_path, out_path, to_kind, map_path, as_json);
    if (*check_cmd)
      return cmd_check(suite_name, spec_of(agents, facets, depth, sample_every, seed),
                       as_json, out_file);
    if (*search_cmd) {
      if (schema_name.empty() && formula_text.empty())
        die(kExitFormula, "search needs --schema or --formula");
      return cmd_search(schema_name, formula_text,
                        spec_of(agents, facets, depth, sample_every, seed), as_json);
    }
    if (*examples_cmd) return cmd_examples(dir, as_json);
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitModel;
  }
  return kExitFormula;
}
