// End-to-end checks of the command-line tool: every subcommand is exercised
// through a real child process and judged on its exit code, stdout, and the
// files it writes.  The binary path arrives through the CLI_PATH compile
// definition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "simpepist/builtin_models.hpp"
#include "simpepist/complex.hpp"
#include "simpepist/json_io.hpp"
#include "simpepist/kripke.hpp"

using namespace simpepist;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int status = -1;
  std::string out;
};

// Runs the tool with the given arguments; stderr is discarded unless
// merge_stderr is set.
CmdResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  REQUIRE(WIFEXITED(raw));
  r.status = WEXITSTATUS(raw);
  return r;
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

// A scratch directory holding model files the test cases share.  Built once;
// any residue from an earlier run is cleared first.
struct Files {
  fs::path dir;
  std::string edge;          // valid simplicial model
  std::string state_model;   // valid (proper) state model
  std::string improper;      // state model that fails properness
  std::string all_dead;      // single state with no live agent
  std::string orphan;        // parses, but a vertex sits in no facet
  std::string missing_key;   // JSON object lacking a required key
  std::string bad_json;      // not JSON at all
  std::string missing = "/nonexistent/simpepist-no-such-file.json";
};

const Files& files() {
  static const Files f = [] {
    Files f;
    f.dir = fs::temp_directory_path() / "simpepist-cli-tests";
    fs::remove_all(f.dir);
    fs::create_directories(f.dir);
    auto at = [&](const char* name) { return (f.dir / name).string(); };

    f.edge = at("edge_triangle.json");
    save_json(to_json(builtin::edge_triangle()), f.edge);

    f.state_model = at("two_edges_kripke.json");
    save_json(to_json(builtin::two_edges_kripke()), f.state_model);

    f.improper = at("improper.json");
    save_json(to_json(builtin::improper_c_dead()), f.improper);

    f.all_dead = at("all_dead.json");
    save_json(to_json(build_kripke({"a"}, {{"p", "a"}}, {{"s0", {}}}, {})),
              f.all_dead);

    json orphan = to_json(builtin::edge_triangle());
    orphan["vertices"].push_back({{"id", "z9"}, {"agent", "c"}, {"true", json::array()}});
    f.orphan = at("orphan.json");
    save_json(orphan, f.orphan);

    json chopped = to_json(builtin::edge_triangle());
    chopped.erase("facets");
    f.missing_key = at("missing_key.json");
    save_json(chopped, f.missing_key);

    f.bad_json = at("bad.json");
    std::ofstream(f.bad_json) << "{ not json";

    return f;
  }();
  return f;
}

std::string scratch(const char* name) { return (files().dir / name).string(); }

}  // namespace

TEST_CASE("usage errors and help") {
  CHECK(run_cli("").status == 4);                       // a subcommand is required
  CHECK(run_cli("--help").status == 0);
  CHECK(run_cli("frobnicate").status == 4);             // unknown subcommand
  CHECK(run_cli("eval " + files().edge + " 'p_a'").status == 4);  // --at missing
  CHECK(run_cli("convert " + files().edge + " out.json").status == 4);  // --to missing
  CHECK(run_cli("check").status == 4);                  // --suite missing
  CHECK(run_cli("examples").status == 4);               // dir missing
}

TEST_CASE("validate judges model files") {
  CHECK(run_cli("validate " + files().edge).out == "valid\n");
  CHECK(run_cli("validate " + files().edge).status == 0);
  CHECK(run_cli("validate " + files().state_model).status == 0);

  // Structurally broken simplicial models are refused while loading; the
  // diagnosis lands on stderr.
  CmdResult orphan = run_cli("validate " + files().orphan, /*merge_stderr=*/true);
  CHECK(orphan.status == 3);
  CHECK(orphan.out.find("orphan-vertex") != std::string::npos);

  CmdResult ok = run_cli("validate " + files().edge + " --json");
  CHECK(ok.status == 0);
  json j = json::parse(ok.out);
  CHECK(j["valid"] == true);
  CHECK(j["kind"] == "simplicial");
  CHECK(j["violations"].empty());

  CmdResult improper = run_cli("validate " + files().improper + " --json");
  CHECK(improper.status == 3);
  json k = json::parse(improper.out);
  CHECK(k["kind"] == "kripke");
  bool proper = false;
  for (const auto& v : k["violations"]) proper |= v["code"] == "not-proper";
  CHECK(proper);

  // Load failures: absent file, malformed JSON, schema violation.
  CHECK(run_cli("validate " + files().missing).status == 3);
  CHECK(run_cli("validate " + files().bad_json).status == 3);
  CHECK(run_cli("validate " + files().missing_key).status == 3);
}

TEST_CASE("eval maps the three truth values onto exit codes") {
  const std::string m = files().edge;
  CmdResult t = run_cli("eval " + m + " 'p_b & ~p_a' --at a0+b0");
  CHECK(t.status == 0);
  CHECK(t.out == "true\n");

  CmdResult f = run_cli("eval " + m + " '[a] ~p_b' --at a0+b0");
  CHECK(f.status == 1);
  CHECK(f.out == "false\n");

  CmdResult u = run_cli("eval " + m + " 'p_c' --at a0+b0");
  CHECK(u.status == 2);
  CHECK(u.out == "undefined\n");

  // Separators are interchangeable in --at.
  CHECK(run_cli("eval " + m + " 'p_b & ~p_a' --at a0,b0").status == 0);

  CmdResult j = run_cli("eval " + m + " '[a] p_c' --at a0+b0 --json");
  CHECK(j.status == 0);
  CHECK(json::parse(j.out) == json{{"value", "true"}});

  // Point problems are model errors, not formula errors.
  CHECK(run_cli("eval " + m + " 'p_a' --at a0+zz").status == 3);
  CHECK(run_cli("eval " + m + " 'p_a' --at b0,c0").status == 3);  // not a simplex

  // Formula problems: syntax, then binding to the signature.
  CHECK(run_cli("eval " + m + " 'p_b &' --at a0").status == 4);
  CHECK(run_cli("eval " + m + " 'q_a' --at a0").status == 4);
  CHECK(run_cli("eval " + m + " '[z] p_a' --at a0").status == 4);

  // Invalid models are refused before evaluation.
  CHECK(run_cli("eval " + files().orphan + " 'p_a' --at a0").status == 3);
}

TEST_CASE("eval works on state models") {
  const std::string m = files().state_model;
  CHECK(run_cli("eval " + m + " '[a] p_c' --at s0").status == 0);
  CHECK(run_cli("eval " + m + " 'p_c' --at s0").status == 2);
  CHECK(run_cli("eval " + m + " 'p_b' --at s0").status == 0);
  CHECK(run_cli("eval " + m + " 'p_b' --at s9").status == 3);  // unknown state
  CHECK(run_cli("eval " + m + " '[a] p_c' --at s0 --kripke").status == 0);
  // --kripke insists on a state model.
  CHECK(run_cli("eval " + files().edge + " 'p_a' --at a0 --kripke").status == 3);
}

TEST_CASE("defined distinguishes definedness from truth") {
  const std::string m = files().edge;
  CmdResult d = run_cli("defined " + m + " '[a] ~p_b' --at a0+b0");
  CHECK(d.status == 0);  // false but defined
  CHECK(d.out == "defined\n");

  CmdResult u = run_cli("defined " + m + " 'p_c' --at a0+b0");
  CHECK(u.status == 2);
  CHECK(u.out == "undefined\n");

  CmdResult j = run_cli("defined " + m + " 'p_c' --at a0+b0 --json");
  CHECK(json::parse(j.out) == json{{"defined", false}});
}

TEST_CASE("convert runs the translation in both directions") {
  const std::string out_k = scratch("edge_as_states.json");
  const std::string map_k = out_k + ".map.json";  // default: OUTPUT.map.json
  CmdResult to_k = run_cli("convert " + files().edge + " " + out_k + " --to kripke");
  CHECK(to_k.status == 0);
  REQUIRE(fs::exists(out_k));
  REQUIRE(fs::exists(map_k));  // default map path is OUTPUT.map.json

  AnyModel converted = load_model(out_k);
  REQUIRE(converted.kind == ModelKind::Kripke);
  CHECK(validate(converted.kripke).ok());
  REQUIRE(converted.kripke.n_states() == 2);
  CHECK(converted.kripke.states[0].id == "a0+b0");
  CHECK(converted.kripke.states[1].id == "a0+b1+c0");

  json map = read_json_file(map_k);
  CHECK(map["direction"] == "facets-to-states");
  REQUIRE(map["pairs"].size() == 2);
  CHECK(map["pairs"][0]["facet"] == json::array({"a0", "b0"}));
  CHECK(map["pairs"][0]["state"] == "a0+b0");

  // And back again: the round trip lands on an isomorphic copy.
  const std::string out_s = scratch("edge_back.json");
  const std::string map_s = scratch("edge_back.map.json");
  CmdResult to_s = run_cli("convert " + out_k + " " + out_s +
                           " --to simplicial --map " + map_s);
  CHECK(to_s.status == 0);
  json back_map = read_json_file(map_s);
  CHECK(back_map["direction"] == "states-to-facets");

  AnyModel back = load_model(out_s);
  REQUIRE(back.kind == ModelKind::Simplicial);
  IsoCheck iso = isomorphic(back.simplicial, builtin::edge_triangle());
  CHECK(iso.isomorphic);

  CmdResult j = run_cli("convert " + files().edge + " " + out_k +
                        " --to kripke --json");
  CHECK(j.status == 0);
  CHECK(json::parse(j.out)["output"] == out_k);
}

TEST_CASE("convert rejects inputs outside the translation's domain") {
  const std::string out = scratch("reject.json");
  // Direction must match the input kind.
  CHECK(run_cli("convert " + files().edge + " " + out + " --to simplicial").status == 3);
  CHECK(run_cli("convert " + files().state_model + " " + out + " --to kripke").status == 3);
  // Improper state models have no simplicial counterpart.
  CHECK(run_cli("convert " + files().improper + " " + out + " --to simplicial").status == 3);
  // A state where every agent is dead defeats the translation too.
  CHECK(run_cli("convert " + files().all_dead + " " + out + " --to simplicial").status == 3);
  // Unknown target representation is a usage error.
  CHECK(run_cli("convert " + files().edge + " " + out + " --to prolog").status == 4);
}

TEST_CASE("check runs property suites with an exit code verdict") {
  CmdResult pass = run_cli("check --suite phitop --agents 2 --max-facets 1 --depth 1");
  CHECK(pass.status == 0);
  CHECK(pass.out.find("suite phitop:") != std::string::npos);
  CHECK(pass.out.find("PASS") != std::string::npos);

  const std::string rep_path = scratch("lemma3_report.json");
  CmdResult rep = run_cli(
      "check --suite lemma-3 --agents 2 --max-facets 2 --depth 2 --json --out " +
      rep_path);
  CHECK(rep.status == 0);
  json j = json::parse(rep.out);
  CHECK(j["suite"] == "lemma-3");
  CHECK(j["passed"] == true);
  CHECK(j["models"] == 68);
  CHECK(j["violations_total"] == 0);
  CHECK(j["spec"]["agents"] == 2);
  CHECK(j["spec"]["max_facets"] == 2);
  // --out writes the same report that --json prints.
  CHECK(read_json_file(rep_path) == j);

  // A counterexample suite that finds its witness passes...
  CmdResult k3 = run_cli("check --suite invalid-k --agents 3");
  CHECK(k3.status == 0);
  CHECK(k3.out.find("witness:") != std::string::npos);
  CHECK(k3.out.find("agent a") != std::string::npos);

  // ...and fails honestly when the family is too small to contain one.
  CmdResult k2 = run_cli("check --suite invalid-k --agents 2");
  CHECK(k2.status == 1);
  CHECK(k2.out.find("no witness found") != std::string::npos);
  CHECK(k2.out.find("FAIL") != std::string::npos);

  CHECK(run_cli("check --suite no-such-suite").status == 4);
  CHECK(run_cli("check --suite phitop --agents 9").status == 4);  // out of bounds
  CHECK(run_cli("check --suite invalid-mp --agents 3").status == 4);  // needs 4 agents
}

TEST_CASE("search hunts for counterexamples") {
  CmdResult k = run_cli("search --schema k --agents 3 --json");
  CHECK(k.status == 0);
  json j = json::parse(k.out);
  CHECK(j["subject"] == "k");
  CHECK(j["found"] == true);
  CHECK(j["witness"]["agent"] == "a");
  CHECK(j["witness"]["point"] == "a0");
  CHECK(j["witness"]["model_summary"] == "{a0,b0} {a0,b1,c0} true:p_b@b0");
  CHECK(j["witness"]["arguments"] == json::array({"~p_c", "~p_b"}));

  CmdResult plain = run_cli("search --schema k --agents 3");
  CHECK(plain.status == 0);
  CHECK(plain.out.find("counterexample at model") != std::string::npos);

  // Sound schemas yield nothing.
  CmdResult t = run_cli("search --schema t --agents 2 --max-facets 1 --depth 1");
  CHECK(t.status == 1);
  CHECK(t.out == "no counterexample in the family\n");

  // Plain formulas: a contradiction is refuted at once, a tautology never.
  CHECK(run_cli("search --formula 'p_a & ~p_a' --agents 2 --max-facets 1").status == 0);
  CHECK(run_cli("search --formula 'p_a | ~p_a' --agents 2 --max-facets 1 --depth 1")
            .status == 1);

  CHECK(run_cli("search").status == 4);  // needs --schema or --formula
  CHECK(run_cli("search --schema k --formula 'p_a'").status == 4);  // not both
  CHECK(run_cli("search --schema zz").status == 4);
  CHECK(run_cli("search --formula 'p_a &'").status == 4);
  CHECK(run_cli("search --formula 'q_a'").status == 4);  // unbound variable
}

TEST_CASE("examples writes the bundled models and a self-checked manifest") {
  const std::string dir = scratch("bundle");
  CmdResult r = run_cli("examples " + dir + " --json");
  CHECK(r.status == 0);
  json summary = json::parse(r.out);
  CHECK(summary["directory"] == dir);
  CHECK(summary["models"] == builtin::catalog().size());
  CHECK(summary["models"] == 14);

  json manifest = read_json_file(fs::path(dir) / "manifest.json");
  REQUIRE(manifest.contains("models"));
  REQUIRE(manifest.contains("evals"));
  REQUIRE(manifest.contains("roundtrips"));
  REQUIRE(manifest.contains("counts"));

  CHECK(manifest["models"].size() == 14);
  for (const auto& entry : manifest["models"]) {
    const fs::path file = fs::path(dir) / entry["file"].get<std::string>();
    REQUIRE(fs::exists(file));
    AnyModel m = load_model(file.string());
    CHECK((m.kind == ModelKind::Simplicial ? "simplicial" : "kripke") ==
          entry["kind"].get<std::string>());
  }

  // Every manifest row was re-evaluated before the file was written, so the
  // table's presence certifies the values.
  CHECK(manifest["evals"].size() == 32);
  for (const auto& e : manifest["evals"])
    CHECK((e["expected"] == "true" || e["expected"] == "false" ||
           e["expected"] == "undefined"));

  for (const auto& rt : manifest["roundtrips"]) {
    const std::string name = rt["model"].get<std::string>();
    if (name.rfind("improper", 0) == 0)
      CHECK(rt["isomorphic"].is_null());
    else
      CHECK(rt["isomorphic"] == true);
  }

  // 738 = 26 single-facet models (colour sets a|b|c|ab|ac|bc|abc give
  // 2+2+2+4+4+4+8 valuations) plus 712 two-facet models, counted over
  // colour-set pairs by shared-vertex choices minus nested configurations.
  CHECK(manifest["counts"]["models_agents2_facets1"] == 8);
  CHECK(manifest["counts"]["models_agents3_facets2"] == 738);
  CHECK(manifest["counts"]["formulas_agents2_depth2"] == 1850);
  CHECK(manifest["counts"]["formulas_agents3_depth2"] == 8163);
}
