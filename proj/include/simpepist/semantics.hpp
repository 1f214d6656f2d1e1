#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "simpepist/complex.hpp"
#include "simpepist/enumerate.hpp"
#include "simpepist/formula.hpp"
#include "simpepist/truth.hpp"

namespace simpepist {

// ---------------------------------------------------------------------------
// Bulk evaluation.  A Workset is the subformula closure of a set of primitive
// roots, copied out of the interning arena so that row computation touches no
// shared state; children precede parents.  Localizing binds the symbols to a
// signature once, so a family sweep pays symbol lookups a single time.
// ---------------------------------------------------------------------------

class Workset {
 public:
  struct WNode {
    FKind kind;
    AgentId agent;
    VarId var;
    int k0 = -1, k1 = -1;  // child positions
  };

  static Workset build(std::span<const Formula> primitive_roots);

  int size() const { return static_cast<int>(nodes_.size()); }
  int position(Formula f) const;
  const std::vector<WNode>& nodes() const { return nodes_; }

 private:
  std::vector<WNode> nodes_;
  std::unordered_map<std::uint32_t, int> pos_;
};

struct LocalizedWorkset {
  Signature sig;
  struct LNode {
    FKind kind;
    int agent_local = -1;  // Hat
    int owner_local = -1;  // Var: owner agent
    int var_local = -1;    // Var: variable slot, -1 = declared nowhere (never true)
    int k0 = -1, k1 = -1;
  };
  std::vector<LNode> nodes;
};

LocalizedWorkset localize(const Workset& w, const Signature& sig);

// Row-major truth and definability tables; points are the simplices of the
// evaluated model (or the states of a Kripke model) in position order.  The
// definability rows are computed by their own recursion, not read off the
// truth rows, so the two stay independently checkable.
struct Rows {
  int points = 0;
  std::vector<Truth> val;
  std::vector<std::uint8_t> def;

  Truth value(int pos, int point) const {
    return val[static_cast<std::size_t>(pos) * points + point];
  }
  bool defined_at(int pos, int point) const {
    return def[static_cast<std::size_t>(pos) * points + point] != 0;
  }
};

Rows evaluate_rows(const SimplicialModel& m, const LocalizedWorkset& lw);

// ---------------------------------------------------------------------------
// Point evaluation.
// ---------------------------------------------------------------------------

// Three-valued evaluation at a simplex.  The knowledge clauses quantify over
// the facets containing the point's witness vertex; by the monotony of truth
// and definability along inclusions this agrees with quantifying over all
// simplices.  Throws std::domain_error when the point is not a simplex.
Truth eval3(const SimplicialModel& m, VertexMask point, Formula f);
bool is_defined(const SimplicialModel& m, VertexMask point, Formula f);

// Reference evaluator: the knowledge clauses scan every simplex of the model,
// exactly as in the defining clauses, with satisfaction and definability as
// two separate recursions.  Kept as an oracle against eval3.
Truth eval3_naive(const SimplicialModel& m, VertexMask point, Formula f);
bool is_defined_naive(const SimplicialModel& m, VertexMask point, Formula f);

// True iff eval3 is True at every facet containing the point.  Requires the
// formula to be defined at the point (std::domain_error otherwise); under
// that proviso it agrees with eval3, which makes it a cheap cross-route.
bool eval_via_facets(const SimplicialModel& m, VertexMask point, Formula f);

// Two-valued evaluation on facets of a pure model whose dimension is
// |agents|-1; there the three-valued semantics never goes undefined and this
// classical recursion agrees with it.  Throws std::domain_error when the
// model is not pure of full dimension or the point is not a facet.
bool eval_pure(const SimplicialModel& m, VertexMask facet, Formula f);

// ---------------------------------------------------------------------------
// Family-relative judgements.  Validity and equivalence are always relative
// to a bounded enumeration family and are reported as such.
// ---------------------------------------------------------------------------

struct PointedCounterexample {
  SimplicialModel model;
  std::uint64_t model_index = 0;
  VertexMask point = 0;
  Formula formula;
  Truth value_lhs = Truth::Undefined;
  Truth value_rhs = Truth::Undefined;  // equivalence only
};

struct EquivalenceVerdict {
  bool equivalent = true;
  std::optional<PointedCounterexample> witness;
};

struct ValidityVerdict {
  bool valid = true;
  std::optional<PointedCounterexample> witness;  // a point where the formula is False
};

// Three-way pointwise agreement over every model of the family.
EquivalenceVerdict equivalent(Formula f, Formula g, const EnumerationSpec& family);

// No point of any family model makes the formula False (undefined points do
// not refute).
ValidityVerdict valid_over(Formula f, const EnumerationSpec& family);

enum class AxiomSchema { Taut, L, KTop, T, Four, Five, K };
enum class RuleName { MPTop, N, MP };
enum class RuleStatus { Holds, Vacuous, Refuted };

struct SchemaArgs {
  AgentId agent{};
  std::optional<VarId> variable;  // L: the agent's own variable
  std::vector<Formula> formulas;  // schema arguments / tautology substitutions
  int taut_template = 0;          // 0: excluded middle, 1: identity,
                                  // 2: non-contradiction, 3: Peirce,
                                  // 4: implication distribution
};

inline constexpr int kTautTemplateCount = 5;
int taut_template_arity(int tmpl);

// Builds the concrete instance; throws std::invalid_argument when the
// arguments do not fit the schema (wrong arity, L with a foreign variable,
// unknown template).
Formula axiom_instance(AxiomSchema schema, const SchemaArgs& args, const Signature& sig);

ValidityVerdict check_axiom_instance(AxiomSchema schema, const SchemaArgs& args,
                                     const EnumerationSpec& family);

struct RuleVerdict {
  RuleStatus status = RuleStatus::Vacuous;
  std::optional<PointedCounterexample> witness;  // conclusion refutation
};

// Family-relative rule soundness: when every premise instance is valid over
// the family, the conclusion instance must be too.  MPTop takes formulas
// {f, g} with premises f->g and f and conclusion fT->g; MP likewise with
// conclusion g; N takes {f} and an agent with conclusion [a]f.
RuleVerdict check_rule(RuleName rule, const SchemaArgs& args, const EnumerationSpec& family);

std::optional<AxiomSchema> axiom_schema_from_name(std::string_view name);
std::optional<RuleName> rule_from_name(std::string_view name);
std::string_view axiom_schema_name(AxiomSchema schema);
std::string_view rule_name(RuleName rule);

}  // namespace simpepist
