#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "simpepist/complex.hpp"
#include "simpepist/formula.hpp"

namespace simpepist {

enum Connective : unsigned {
  kNeg = 1u << 0,
  kAnd = 1u << 1,
  kOr = 1u << 2,
  kImplies = 1u << 3,
  kHat = 1u << 4,
  kKnow = 1u << 5,
};
inline constexpr unsigned kAllConnectives = kNeg | kAnd | kOr | kImplies | kHat | kKnow;

// Bounds for exhaustive families of models and formulas.  All models of a
// family share one signature: agents a, b, c, d (the first agent_count of
// them), each owning a single variable p; an agent may still be dead in an
// individual model.
struct EnumerationSpec {
  int agent_count = 3;        // 2..4
  int vars_per_agent = 1;     // pinned at 1
  int max_facets = 2;         // 1..4
  int max_formula_depth = 2;  // 1..3
  unsigned connectives = kAllConnectives;
  std::uint64_t seed = 0;     // only used when sample_every > 0
  int sample_every = 0;       // 0 = exhaustive; n > 0 keeps ~1/n of the stream
  bool dedup_isomorphic = false;

  void check() const;  // throws std::invalid_argument when out of bounds
  Signature signature() const;
};

// Deterministic stream of every valid model within the bounds.  Generation
// order: facet count ascending, then non-decreasing combinations of facet
// colour sets, then per-colour vertex sharing partitions, then per-vertex
// valuations as a binary counter.  Facet sets that fail maximality are
// skipped, so every emitted model is normalized, finalized and valid.  The
// callback's index counts emitted models; returning false stops the stream.
// With sample_every > 0 a seeded counter-based filter thins the exhaustive
// stream deterministically.
void enumerate_simplicial(
    const EnumerationSpec& spec,
    const std::function<bool(const SimplicialModel&, std::uint64_t index)>& fn);

std::vector<SimplicialModel> simplicial_family(const EnumerationSpec& spec);

// Structurally distinct formulas of height <= max_formula_depth over the
// family signature, deterministic order: height ascending; within a height
// the connective order is ~, &, |, ->, <a>, [a] with operands in stream
// order.  Atoms are the agents' variables.
std::vector<Formula> formula_pool(const EnumerationSpec& spec);

// The same pool truncated to height <= depth; used for the argument pools of
// multi-argument schema instantiation.
std::vector<Formula> formula_pool_of_depth(const EnumerationSpec& spec, int depth);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace simpepist
