#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simpepist {

// Agents and propositional variables are interned process-wide so that
// formulas, models and generated families can share identities cheaply.
// A variable is identified by its agent-local base name plus its owner;
// the surface form used in formulas and JSON value lists is "base_owner"
// (e.g. base "p" owned by agent "a" is written "p_a").

class AgentId {
 public:
  AgentId() : idx_(0) {}
  explicit AgentId(std::uint16_t i) : idx_(i) {}
  std::uint16_t index() const { return idx_; }
  auto operator<=>(const AgentId&) const = default;

 private:
  std::uint16_t idx_;
};

class VarId {
 public:
  VarId() : idx_(0) {}
  explicit VarId(std::uint32_t i) : idx_(i) {}
  std::uint32_t index() const { return idx_; }
  auto operator<=>(const VarId&) const = default;

 private:
  std::uint32_t idx_;
};

AgentId intern_agent(std::string_view name);
const std::string& agent_name(AgentId a);

VarId intern_variable(std::string_view base, AgentId owner);
const std::string& variable_base(VarId v);
AgentId variable_owner(VarId v);
std::string variable_name(VarId v);  // qualified "base_owner"

std::size_t agent_table_size();
std::size_t variable_table_size();

// Declared vocabulary of a model: agents and variables in declaration order.
struct Signature {
  std::vector<AgentId> agents;
  std::vector<VarId> variables;

  int agent_index(AgentId a) const;  // -1 when absent
  int variable_index(VarId v) const;
  bool has_agent(AgentId a) const { return agent_index(a) >= 0; }
  bool has_variable(VarId v) const { return variable_index(v) >= 0; }
  // First-declared variable of the agent; the canonical witness used when
  // an agent-aliveness atom is expanded into a disjunction.
  std::optional<VarId> first_variable(AgentId a) const;

  bool operator==(const Signature&) const = default;
};

}  // namespace simpepist
