#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "simpepist/symbols.hpp"

namespace simpepist {

// Epistemic language over agent-owned variables.  Primitive connectives are
// Var, Neg, And and Hat (the existential knowledge modality); Or, Implies,
// Iff, Know and AgentTop are kept in the tree as written and expanded only
// when a formula is evaluated.  AgentTop("a") abbreviates p ∨ ¬p for the
// first declared variable p of agent a, so its expansion depends on the
// signature it is evaluated against.
enum class FKind : std::uint8_t {
  Var,
  Neg,
  And,
  Or,
  Implies,
  Iff,
  Hat,       // <a>φ : a considers φ possible
  Know,      // [a]φ : a knows φ, sugar for ~<a>~φ
  AgentTop,  // T_a  : aliveness of a, sugar for p_a | ~p_a
};

// Lightweight handle into a process-wide interning arena.  Structurally equal
// formulas share the same id, so handle equality is structural equality and
// children always have smaller ids than their parents.
class Formula {
 public:
  Formula() : id_(0) {}
  explicit Formula(std::uint32_t id) : id_(id) {}
  std::uint32_t id() const { return id_; }
  auto operator<=>(const Formula&) const = default;

 private:
  std::uint32_t id_;
};

struct FormulaNode {
  FKind kind;
  AgentId agent;  // Hat / Know / AgentTop
  VarId var;      // Var
  Formula kid[2];
};

Formula var(VarId v);
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula hat(AgentId a, Formula f);
Formula know(AgentId a, Formula f);
Formula agent_top(AgentId a);

FormulaNode node(Formula f);
std::size_t formula_arena_size();

// Agents occurring in the formula: owners of variables plus modal agents
// plus AgentTop agents.  Sorted by interning index.
std::vector<AgentId> agents_of(Formula f);

// Variables occurring in the formula, sorted by interning index.
std::vector<VarId> variables_of(Formula f);

bool is_primitive(Formula f);  // only Var / Neg / And / Hat nodes
int height(Formula f);         // atoms have height 0

// Expansion into the primitive fragment.  Throws std::invalid_argument when
// an AgentTop agent has no declared variable in the signature.
Formula desugar(Formula f, const Signature& sig);
std::vector<Formula> desugar_all(std::span<const Formula> fs, const Signature& sig);

// Definedness guard: replaces every variable p by p ∨ ¬p, drops negations,
// and leaves modalities existential.  The result is valid and definable
// exactly where the input is definable.  Output is primitive except for the
// introduced disjunctions.
Formula top_transform(Formula f, const Signature& sig);

// Uniform substitution of `replacement` for every occurrence of variable p.
Formula substitute(Formula f, VarId p, Formula replacement);

// Concrete syntax; parse(print(f)) == f.
std::string print(Formula f);

struct BindReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Checks that every symbol of the formula is declared by the signature and
// that every AgentTop agent owns at least one variable.
BindReport bind_check(Formula f, const Signature& sig);

}  // namespace simpepist
