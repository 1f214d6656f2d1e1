#include "simpepist/symbols.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace simpepist {
namespace {

struct SymbolTables {
  std::mutex mu;
  std::vector<std::string> agent_names;
  std::unordered_map<std::string, std::uint16_t> agent_by_name;
  struct VarEntry {
    std::string base;
    AgentId owner;
  };
  std::vector<VarEntry> vars;
  std::unordered_map<std::string, std::uint32_t> var_by_key;
};

SymbolTables& tables() {
  static SymbolTables t;
  return t;
}

}  // namespace

AgentId intern_agent(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("agent name must be non-empty");
  auto& t = tables();
  std::lock_guard lock(t.mu);
  auto it = t.agent_by_name.find(std::string(name));
  if (it != t.agent_by_name.end()) return AgentId(it->second);
  auto idx = static_cast<std::uint16_t>(t.agent_names.size());
  t.agent_names.emplace_back(name);
  t.agent_by_name.emplace(std::string(name), idx);
  return AgentId(idx);
}

const std::string& agent_name(AgentId a) {
  auto& t = tables();
  std::lock_guard lock(t.mu);
  return t.agent_names.at(a.index());
}

VarId intern_variable(std::string_view base, AgentId owner) {
  if (base.empty()) throw std::invalid_argument("variable name must be non-empty");
  auto& t = tables();
  std::lock_guard lock(t.mu);
  std::string key = std::string(base) + "\x1f" + t.agent_names.at(owner.index());
  auto it = t.var_by_key.find(key);
  if (it != t.var_by_key.end()) return VarId(it->second);
  auto idx = static_cast<std::uint32_t>(t.vars.size());
  t.vars.push_back({std::string(base), owner});
  t.var_by_key.emplace(std::move(key), idx);
  return VarId(idx);
}

const std::string& variable_base(VarId v) {
  auto& t = tables();
  std::lock_guard lock(t.mu);
  return t.vars.at(v.index()).base;
}

AgentId variable_owner(VarId v) {
  auto& t = tables();
  std::lock_guard lock(t.mu);
  return t.vars.at(v.index()).owner;
}

std::string variable_name(VarId v) {
  auto& t = tables();
  std::lock_guard lock(t.mu);
  const auto& e = t.vars.at(v.index());
  return e.base + "_" + t.agent_names.at(e.owner.index());
}

std::size_t agent_table_size() {
  auto& t = tables();
  std::lock_guard lock(t.mu);
  return t.agent_names.size();
}

std::size_t variable_table_size() {
  auto& t = tables();
  std::lock_guard lock(t.mu);
  return t.vars.size();
}

int Signature::agent_index(AgentId a) const {
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (agents[i] == a) return static_cast<int>(i);
  return -1;
}

int Signature::variable_index(VarId v) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == v) return static_cast<int>(i);
  return -1;
}

std::optional<VarId> Signature::first_variable(AgentId a) const {
  for (VarId v : variables)
    if (variable_owner(v) == a) return v;
  return std::nullopt;
}

}  // namespace simpepist
