#include "simpepist/formula.hpp"

#include <deque>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "simpepist/symbols.hpp"

namespace simpepist {
namespace {

struct NodeKey {
  FKind kind;
  std::uint16_t agent;
  std::uint32_t var;
  std::uint32_t kid0, kid1;
  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    std::uint64_t h = static_cast<std::uint64_t>(k.kind);
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(k.agent);
    mix(k.var);
    mix(k.kid0);
    mix(k.kid1);
    return static_cast<std::size_t>(h);
  }
};

struct Arena {
  std::mutex mu;
  std::deque<FormulaNode> nodes;
  std::unordered_map<NodeKey, std::uint32_t, NodeKeyHash> interned;

  Formula intern(FKind kind, AgentId agent, VarId v, Formula k0, Formula k1) {
    NodeKey key{kind, agent.index(), v.index(), k0.id(), k1.id()};
    std::lock_guard lock(mu);
    auto it = interned.find(key);
    if (it != interned.end()) return Formula(it->second);
    auto id = static_cast<std::uint32_t>(nodes.size());
    nodes.push_back(FormulaNode{kind, agent, v, {k0, k1}});
    interned.emplace(key, id);
    return Formula(id);
  }

  FormulaNode get(Formula f) {
    std::lock_guard lock(mu);
    return nodes.at(f.id());
  }
};

Arena& arena() {
  static Arena* a = new Arena;  // sentinel node keeps id 0 out of circulation
  static bool seeded = [] {
    a->nodes.push_back(FormulaNode{FKind::Var, AgentId(0), VarId(0), {}});
    return true;
  }();
  (void)seeded;
  return *a;
}

}  // namespace

Formula var(VarId v) { return arena().intern(FKind::Var, AgentId(0), v, Formula(), Formula()); }
Formula neg(Formula f) { return arena().intern(FKind::Neg, AgentId(0), VarId(0), f, Formula()); }
Formula conj(Formula a, Formula b) { return arena().intern(FKind::And, AgentId(0), VarId(0), a, b); }
Formula disj(Formula a, Formula b) { return arena().intern(FKind::Or, AgentId(0), VarId(0), a, b); }
Formula implies(Formula a, Formula b) {
  return arena().intern(FKind::Implies, AgentId(0), VarId(0), a, b);
}
Formula iff(Formula a, Formula b) { return arena().intern(FKind::Iff, AgentId(0), VarId(0), a, b); }
Formula hat(AgentId a, Formula f) { return arena().intern(FKind::Hat, a, VarId(0), f, Formula()); }
Formula know(AgentId a, Formula f) { return arena().intern(FKind::Know, a, VarId(0), f, Formula()); }
Formula agent_top(AgentId a) {
  return arena().intern(FKind::AgentTop, a, VarId(0), Formula(), Formula());
}

FormulaNode node(Formula f) { return arena().get(f); }

std::size_t formula_arena_size() {
  auto& a = arena();
  std::lock_guard lock(a.mu);
  return a.nodes.size();
}

namespace {

int child_count(FKind k) {
  switch (k) {
    case FKind::Var:
    case FKind::AgentTop:
      return 0;
    case FKind::Neg:
    case FKind::Hat:
    case FKind::Know:
      return 1;
    default:
      return 2;
  }
}

template <typename Visit>
void walk(Formula f, Visit&& visit) {
  std::vector<Formula> stack{f};
  std::set<std::uint32_t> seen;
  while (!stack.empty()) {
    Formula cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur.id()).second) continue;
    FormulaNode n = node(cur);
    visit(n);
    for (int i = 0; i < child_count(n.kind); ++i) stack.push_back(n.kid[i]);
  }
}

}  // namespace

std::vector<AgentId> agents_of(Formula f) {
  std::set<AgentId> out;
  walk(f, [&](const FormulaNode& n) {
    switch (n.kind) {
      case FKind::Var:
        out.insert(variable_owner(n.var));
        break;
      case FKind::Hat:
      case FKind::Know:
      case FKind::AgentTop:
        out.insert(n.agent);
        break;
      default:
        break;
    }
  });
  return {out.begin(), out.end()};
}

std::vector<VarId> variables_of(Formula f) {
  std::set<VarId> out;
  walk(f, [&](const FormulaNode& n) {
    if (n.kind == FKind::Var) out.insert(n.var);
  });
  return {out.begin(), out.end()};
}

bool is_primitive(Formula f) {
  bool ok = true;
  walk(f, [&](const FormulaNode& n) {
    switch (n.kind) {
      case FKind::Var:
      case FKind::Neg:
      case FKind::And:
      case FKind::Hat:
        break;
      default:
        ok = false;
    }
  });
  return ok;
}

int height(Formula f) {
  std::unordered_map<std::uint32_t, int> memo;
  auto rec = [&](auto&& self, Formula g) -> int {
    auto it = memo.find(g.id());
    if (it != memo.end()) return it->second;
    FormulaNode n = node(g);
    int h = 0;
    for (int i = 0; i < child_count(n.kind); ++i)
      h = std::max(h, 1 + self(self, n.kid[i]));
    memo.emplace(g.id(), h);
    return h;
  };
  return rec(rec, f);
}

namespace {

Formula desugar_rec(Formula f, const Signature& sig,
                    std::unordered_map<std::uint32_t, Formula>& memo) {
  auto it = memo.find(f.id());
  if (it != memo.end()) return it->second;
  FormulaNode n = node(f);
  Formula out;
  switch (n.kind) {
    case FKind::Var:
      out = f;
      break;
    case FKind::Neg:
      out = neg(desugar_rec(n.kid[0], sig, memo));
      break;
    case FKind::And:
      out = conj(desugar_rec(n.kid[0], sig, memo), desugar_rec(n.kid[1], sig, memo));
      break;
    case FKind::Or: {
      Formula a = desugar_rec(n.kid[0], sig, memo);
      Formula b = desugar_rec(n.kid[1], sig, memo);
      out = neg(conj(neg(a), neg(b)));
      break;
    }
    case FKind::Implies: {
      Formula a = desugar_rec(n.kid[0], sig, memo);
      Formula b = desugar_rec(n.kid[1], sig, memo);
      out = neg(conj(a, neg(b)));
      break;
    }
    case FKind::Iff: {
      Formula a = desugar_rec(n.kid[0], sig, memo);
      Formula b = desugar_rec(n.kid[1], sig, memo);
      out = conj(neg(conj(a, neg(b))), neg(conj(b, neg(a))));
      break;
    }
    case FKind::Hat:
      out = hat(n.agent, desugar_rec(n.kid[0], sig, memo));
      break;
    case FKind::Know:
      out = neg(hat(n.agent, neg(desugar_rec(n.kid[0], sig, memo))));
      break;
    case FKind::AgentTop: {
      auto p = sig.first_variable(n.agent);
      if (!p)
        throw std::invalid_argument("agent '" + agent_name(n.agent) +
                                    "' has no declared variable; T_" +
                                    agent_name(n.agent) + " cannot be expanded");
      Formula v = var(*p);
      out = neg(conj(neg(v), neg(neg(v))));
      break;
    }
  }
  memo.emplace(f.id(), out);
  return out;
}

}  // namespace

Formula desugar(Formula f, const Signature& sig) {
  std::unordered_map<std::uint32_t, Formula> memo;
  return desugar_rec(f, sig, memo);
}

std::vector<Formula> desugar_all(std::span<const Formula> fs, const Signature& sig) {
  std::unordered_map<std::uint32_t, Formula> memo;
  std::vector<Formula> out;
  out.reserve(fs.size());
  for (Formula f : fs) out.push_back(desugar_rec(f, sig, memo));
  return out;
}

namespace {

Formula top_rec(Formula f, std::unordered_map<std::uint32_t, Formula>& memo) {
  auto it = memo.find(f.id());
  if (it != memo.end()) return it->second;
  FormulaNode n = node(f);
  Formula out;
  switch (n.kind) {
    case FKind::Var: {
      Formula v = var(n.var);
      out = disj(v, neg(v));
      break;
    }
    case FKind::Neg:
      out = top_rec(n.kid[0], memo);
      break;
    case FKind::And:
      out = conj(top_rec(n.kid[0], memo), top_rec(n.kid[1], memo));
      break;
    case FKind::Hat:
      out = hat(n.agent, top_rec(n.kid[0], memo));
      break;
    default:
      throw std::logic_error("top_transform expects a primitive formula");
  }
  memo.emplace(f.id(), out);
  return out;
}

}  // namespace

Formula top_transform(Formula f, const Signature& sig) {
  std::unordered_map<std::uint32_t, Formula> memo;
  return top_rec(desugar(f, sig), memo);
}

Formula substitute(Formula f, VarId p, Formula replacement) {
  std::unordered_map<std::uint32_t, Formula> memo;
  auto rec = [&](auto&& self, Formula g) -> Formula {
    auto it = memo.find(g.id());
    if (it != memo.end()) return it->second;
    FormulaNode n = node(g);
    Formula out;
    switch (n.kind) {
      case FKind::Var:
        out = (n.var == p) ? replacement : g;
        break;
      case FKind::AgentTop:
        out = g;
        break;
      case FKind::Neg:
        out = neg(self(self, n.kid[0]));
        break;
      case FKind::Hat:
        out = hat(n.agent, self(self, n.kid[0]));
        break;
      case FKind::Know:
        out = know(n.agent, self(self, n.kid[0]));
        break;
      case FKind::And:
        out = conj(self(self, n.kid[0]), self(self, n.kid[1]));
        break;
      case FKind::Or:
        out = disj(self(self, n.kid[0]), self(self, n.kid[1]));
        break;
      case FKind::Implies:
        out = implies(self(self, n.kid[0]), self(self, n.kid[1]));
        break;
      case FKind::Iff:
        out = iff(self(self, n.kid[0]), self(self, n.kid[1]));
        break;
    }
    memo.emplace(g.id(), out);
    return out;
  };
  return rec(rec, f);
}

namespace {

// Grammar precedence: <-> is loosest, then ->, |, &, then prefix operators.
int precedence(FKind k) {
  switch (k) {
    case FKind::Iff: return 1;
    case FKind::Implies: return 2;
    case FKind::Or: return 3;
    case FKind::And: return 4;
    case FKind::Neg:
    case FKind::Hat:
    case FKind::Know: return 5;
    default: return 6;
  }
}

std::string render(Formula f, int min_prec) {
  FormulaNode n = node(f);
  std::string s;
  switch (n.kind) {
    case FKind::Var:
      s = variable_name(n.var);
      break;
    case FKind::AgentTop:
      s = "T_" + agent_name(n.agent);
      break;
    case FKind::Neg:
      s = "~" + render(n.kid[0], 5);
      break;
    case FKind::Hat:
    case FKind::Know: {
      std::string box = n.kind == FKind::Hat ? "<" + agent_name(n.agent) + ">"
                                             : "[" + agent_name(n.agent) + "]";
      std::string body = render(n.kid[0], 5);
      s = box + (body.front() == '(' ? "" : " ") + body;
      break;
    }
    case FKind::And:
      s = render(n.kid[0], 4) + " & " + render(n.kid[1], 5);
      break;
    case FKind::Or:
      s = render(n.kid[0], 3) + " | " + render(n.kid[1], 4);
      break;
    case FKind::Implies:
      s = render(n.kid[0], 3) + " -> " + render(n.kid[1], 2);
      break;
    case FKind::Iff:
      s = render(n.kid[0], 1) + " <-> " + render(n.kid[1], 2);
      break;
  }
  if (precedence(n.kind) < min_prec) return "(" + s + ")";
  return s;
}

}  // namespace

std::string print(Formula f) { return render(f, 0); }

BindReport bind_check(Formula f, const Signature& sig) {
  BindReport report;
  std::set<std::string> seen;
  auto add = [&](std::string msg) {
    if (seen.insert(msg).second) report.problems.push_back(std::move(msg));
  };
  walk(f, [&](const FormulaNode& n) {
    switch (n.kind) {
      case FKind::Var:
        if (!sig.has_variable(n.var))
          add("undeclared variable '" + variable_name(n.var) + "'");
        break;
      case FKind::Hat:
      case FKind::Know:
        if (!sig.has_agent(n.agent))
          add("undeclared agent '" + agent_name(n.agent) + "'");
        break;
      case FKind::AgentTop:
        if (!sig.has_agent(n.agent))
          add("undeclared agent '" + agent_name(n.agent) + "'");
        else if (!sig.first_variable(n.agent))
          add("agent '" + agent_name(n.agent) + "' has no variable for T_" +
              agent_name(n.agent));
        break;
      default:
        break;
    }
  });
  return report;
}

}  // namespace simpepist
