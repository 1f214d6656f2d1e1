#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simpepist/complex.hpp"
#include "simpepist/enumerate.hpp"
#include "simpepist/formula.hpp"
#include "simpepist/semantics.hpp"

namespace simpepist {

// One failed check inside a suite run.  `model` is the family member the
// check ran on (empty when the violation is family-level, e.g. a rule whose
// premises hold everywhere yet whose conclusion is refuted; `model_summary`
// then locates the refuting member textually).
struct SuiteViolation {
  std::string property;
  std::uint64_t model_index = 0;
  SimplicialModel model;
  std::string model_summary;
  std::string point;
  std::string formula;
  std::string expected;
  std::string actual;
};

inline constexpr int kMaxReportedViolations = 25;

struct SuiteReport {
  std::string suite;
  EnumerationSpec spec;
  std::uint64_t models = 0;
  std::uint64_t cases = 0;
  std::uint64_t violations_total = 0;
  std::vector<SuiteViolation> violations;  // capped at kMaxReportedViolations

  // Suites that hunt for a refutation (invalid-k, invalid-mp) pass when the
  // hunt succeeds rather than when nothing is flagged.
  bool expects_counterexample = false;
  bool witness_found = false;
  std::string witness_summary;

  double seconds = 0.0;

  bool passed() const {
    return expects_counterexample ? (witness_found && violations_total == 0)
                                  : violations_total == 0;
  }
};

// Registered suite names, in documentation order:
//   lemma-3        defining clauses of the three-valued semantics
//   monotony       upward/downward truth and definability along faces
//   s5top          axioms L, Taut, K-top, T, 4, 5 and rules MP-top, N
//   phitop         the top-companion transform: validity and equidefinability
//   pure           classical degeneration on pure full-dimension members
//   correspondence simplicial <-> Kripke translations preserve everything
//   substitution   congruence under substitution of equivalent subformulas
//   oracle         table evaluator vs naive all-simplices reference
//   invalid-k      the unguarded K schema has a refutation (expected find)
//   invalid-mp     unguarded modus ponens fails family-wide (expected find)
const std::vector<std::string>& suite_names();

// Runs one suite over the family described by `spec`.  Throws
// std::invalid_argument for an unknown name or an unusable spec (for example
// invalid-mp needs agent_count == 4).  Model sweeps run on
// suite_thread_cap() worker threads; results are merged in stream order, so
// reports are deterministic for a given spec.
SuiteReport run_suite(std::string_view name, const EnumerationSpec& spec);

// A refuting instance found by the searches below: `instance` evaluates to
// False at `point` of `model`, the `model_index`-th member of the stream.
struct SearchWitness {
  SimplicialModel model;
  std::uint64_t model_index = 0;
  VertexMask point = 0;
  AgentId agent{};
  std::optional<VarId> variable;
  std::vector<Formula> arguments;
  Formula instance;
};

// Streams the family in generation order and returns the first (model,
// instantiation, point) triple refuting the schema, instantiations ordered
// agent-major then argument pools in stream order, points in ascending
// simplex order.  Empty optional when the whole family validates the schema.
std::optional<SearchWitness> search_counterexample(AxiomSchema schema,
                                                   const EnumerationSpec& family);

// Same scan for a single closed formula.
std::optional<SearchWitness> search_refutation(Formula formula,
                                               const EnumerationSpec& family);

// Number of worker threads used by suite sweeps: SIMPEPIST_THREADS when set
// to a positive integer, otherwise the hardware count capped at 8; always at
// least 1.
int suite_thread_cap();

// Compact one-line rendering of a model, used in reports and witnesses:
// facets by vertex id with the true variables appended.
std::string model_brief(const SimplicialModel& m);

// "a0+b1" style rendering of a point of `m`.
std::string point_brief(const SimplicialModel& m, VertexMask point);

}  // namespace simpepist
