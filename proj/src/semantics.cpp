#include "simpepist/semantics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace simpepist {

// ---------------------------------------------------------------------------
// Workset construction.
// ---------------------------------------------------------------------------

Workset Workset::build(std::span<const Formula> primitive_roots) {
  Workset w;
  std::vector<std::uint32_t> order;
  std::unordered_set<std::uint32_t> seen;
  std::vector<Formula> stack(primitive_roots.begin(), primitive_roots.end());
  while (!stack.empty()) {
    Formula f = stack.back();
    stack.pop_back();
    if (f.id() == 0) throw std::logic_error("null formula handle in workset");
    if (!seen.insert(f.id()).second) continue;
    FormulaNode n = node(f);
    switch (n.kind) {
      case FKind::Var:
        break;
      case FKind::Neg:
      case FKind::Hat:
        stack.push_back(n.kid[0]);
        break;
      case FKind::And:
        stack.push_back(n.kid[0]);
        stack.push_back(n.kid[1]);
        break;
      default:
        throw std::logic_error("workset roots must be primitive formulas");
    }
    order.push_back(f.id());
  }
  // Interned children have smaller ids than their parents, so ascending id
  // order is a topological order.
  std::sort(order.begin(), order.end());
  w.nodes_.reserve(order.size());
  for (std::uint32_t id : order) {
    w.pos_.emplace(id, static_cast<int>(w.nodes_.size()));
    FormulaNode n = node(Formula(id));
    WNode wn{n.kind, n.agent, n.var, -1, -1};
    if (n.kind == FKind::Neg || n.kind == FKind::Hat) {
      wn.k0 = w.pos_.at(n.kid[0].id());
    } else if (n.kind == FKind::And) {
      wn.k0 = w.pos_.at(n.kid[0].id());
      wn.k1 = w.pos_.at(n.kid[1].id());
    }
    w.nodes_.push_back(wn);
  }
  return w;
}

int Workset::position(Formula f) const {
  auto it = pos_.find(f.id());
  if (it == pos_.end()) throw std::out_of_range("formula not in workset");
  return it->second;
}

LocalizedWorkset localize(const Workset& w, const Signature& sig) {
  LocalizedWorkset lw;
  lw.sig = sig;
  lw.nodes.reserve(w.nodes().size());
  for (const auto& n : w.nodes()) {
    LocalizedWorkset::LNode ln;
    ln.kind = n.kind;
    ln.k0 = n.k0;
    ln.k1 = n.k1;
    if (n.kind == FKind::Var) {
      ln.owner_local = sig.agent_index(variable_owner(n.var));
      ln.var_local = sig.variable_index(n.var);
    } else if (n.kind == FKind::Hat) {
      ln.agent_local = sig.agent_index(n.agent);
    }
    lw.nodes.push_back(ln);
  }
  return lw;
}

// ---------------------------------------------------------------------------
// Bulk rows.  Truth rows and definability rows run as two recursions: the
// definability rows never read the truth rows, which keeps the definability
// clauses independently testable against the folded three-valued outcome.
// ---------------------------------------------------------------------------

Rows evaluate_rows(const SimplicialModel& m, const LocalizedWorkset& lw) {
  if (!m.finalized) throw std::logic_error("model not finalized");
  if (!(m.sig == lw.sig)) throw std::logic_error("workset localized for a different signature");
  const int P = m.n_simplices();
  const int N = static_cast<int>(lw.nodes.size());
  Rows r;
  r.points = P;
  r.val.assign(static_cast<std::size_t>(N) * P, Truth::Undefined);
  r.def.assign(static_cast<std::size_t>(N) * P, 0);
  for (int i = 0; i < N; ++i) {
    const auto& nd = lw.nodes[i];
    Truth* v = r.val.data() + static_cast<std::size_t>(i) * P;
    std::uint8_t* d = r.def.data() + static_cast<std::size_t>(i) * P;
    switch (nd.kind) {
      case FKind::Var: {
        for (int s = 0; s < P; ++s) {
          const int vert =
              nd.owner_local >= 0 ? m.vertex_of_colour_at(s, nd.owner_local) : -1;
          if (vert < 0) continue;  // owner dead here: no truth value
          d[s] = 1;
          const bool holds =
              nd.var_local >= 0 && ((m.vertex_vars[vert] >> nd.var_local) & 1u);
          v[s] = truth_of(holds);
        }
        break;
      }
      case FKind::Neg: {
        const Truth* cv = r.val.data() + static_cast<std::size_t>(nd.k0) * P;
        const std::uint8_t* cd = r.def.data() + static_cast<std::size_t>(nd.k0) * P;
        for (int s = 0; s < P; ++s) {
          v[s] = flip(cv[s]);
          d[s] = cd[s];
        }
        break;
      }
      case FKind::And: {
        const Truth* av = r.val.data() + static_cast<std::size_t>(nd.k0) * P;
        const Truth* bv = r.val.data() + static_cast<std::size_t>(nd.k1) * P;
        const std::uint8_t* ad = r.def.data() + static_cast<std::size_t>(nd.k0) * P;
        const std::uint8_t* bd = r.def.data() + static_cast<std::size_t>(nd.k1) * P;
        for (int s = 0; s < P; ++s) {
          v[s] = and3(av[s], bv[s]);
          d[s] = ad[s] & bd[s];
        }
        break;
      }
      case FKind::Hat: {
        if (nd.agent_local < 0) break;  // agent unknown to the model: undefined
        const Truth* cv = r.val.data() + static_cast<std::size_t>(nd.k0) * P;
        const std::uint8_t* cd = r.def.data() + static_cast<std::size_t>(nd.k0) * P;
        // Truth and definability are monotone along simplex inclusion, so
        // quantifying over the facets around the agent's vertex matches the
        // defining quantification over all simplices around it.
        for (int s = 0; s < P; ++s) {
          const int vert = m.vertex_of_colour_at(s, nd.agent_local);
          if (vert < 0) continue;
          bool any_true = false, any_val_def = false, any_def = false;
          for (int fi : m.facets_with_vertex[vert]) {
            const int fp = m.facet_pos[fi];
            any_true |= cv[fp] == Truth::True;
            any_val_def |= cv[fp] != Truth::Undefined;
            any_def |= cd[fp] != 0;
          }
          if (any_true) {
            v[s] = Truth::True;
          } else if (any_val_def) {
            v[s] = Truth::False;
          }
          d[s] = any_def ? 1 : 0;
        }
        break;
      }
      default:
        throw std::logic_error("non-primitive node in localized workset");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Point evaluation.
// ---------------------------------------------------------------------------

namespace {

int checked_position(const SimplicialModel& m, VertexMask point) {
  if (!m.finalized) throw std::logic_error("model not finalized");
  const int s = m.simplex_position_of(point);
  if (s < 0) throw std::domain_error("unknown simplex");
  return s;
}

}  // namespace

Truth eval3(const SimplicialModel& m, VertexMask point, Formula f) {
  const int s = checked_position(m, point);
  const Formula p = desugar(f, m.sig);
  const Formula roots[1] = {p};
  const Workset w = Workset::build(roots);
  const Rows r = evaluate_rows(m, localize(w, m.sig));
  return r.value(w.position(p), s);
}

bool is_defined(const SimplicialModel& m, VertexMask point, Formula f) {
  const int s = checked_position(m, point);
  const Formula p = desugar(f, m.sig);
  const Formula roots[1] = {p};
  const Workset w = Workset::build(roots);
  const Rows r = evaluate_rows(m, localize(w, m.sig));
  return r.defined_at(w.position(p), s);
}

// ---------------------------------------------------------------------------
// Reference evaluator.  Satisfaction and definability are computed as two
// boolean tables by the literal defining clauses; the knowledge clauses scan
// every simplex of the model instead of just the facets.
// ---------------------------------------------------------------------------

namespace {

struct NaiveTables {
  int points = 0;
  std::vector<std::uint8_t> sat;
  std::vector<std::uint8_t> def;
};

NaiveTables naive_tables(const SimplicialModel& m, const Workset& w,
                         const LocalizedWorkset& lw) {
  const int P = m.n_simplices();
  const int N = static_cast<int>(lw.nodes.size());
  NaiveTables t;
  t.points = P;
  t.sat.assign(static_cast<std::size_t>(N) * P, 0);
  t.def.assign(static_cast<std::size_t>(N) * P, 0);
  (void)w;
  for (int i = 0; i < N; ++i) {
    const auto& nd = lw.nodes[i];
    std::uint8_t* sat = t.sat.data() + static_cast<std::size_t>(i) * P;
    std::uint8_t* def = t.def.data() + static_cast<std::size_t>(i) * P;
    switch (nd.kind) {
      case FKind::Var: {
        for (int s = 0; s < P; ++s) {
          const int vert =
              nd.owner_local >= 0 ? m.vertex_of_colour_at(s, nd.owner_local) : -1;
          if (vert < 0) continue;
          def[s] = 1;
          sat[s] = nd.var_local >= 0 && ((m.vertex_vars[vert] >> nd.var_local) & 1u);
        }
        break;
      }
      case FKind::Neg: {
        const std::uint8_t* cs = t.sat.data() + static_cast<std::size_t>(nd.k0) * P;
        const std::uint8_t* cd = t.def.data() + static_cast<std::size_t>(nd.k0) * P;
        for (int s = 0; s < P; ++s) {
          def[s] = cd[s];
          sat[s] = cd[s] && !cs[s];
        }
        break;
      }
      case FKind::And: {
        const std::uint8_t* as = t.sat.data() + static_cast<std::size_t>(nd.k0) * P;
        const std::uint8_t* bs = t.sat.data() + static_cast<std::size_t>(nd.k1) * P;
        const std::uint8_t* ad = t.def.data() + static_cast<std::size_t>(nd.k0) * P;
        const std::uint8_t* bd = t.def.data() + static_cast<std::size_t>(nd.k1) * P;
        for (int s = 0; s < P; ++s) {
          def[s] = ad[s] & bd[s];
          sat[s] = def[s] && as[s] && bs[s];
        }
        break;
      }
      case FKind::Hat: {
        if (nd.agent_local < 0) break;
        const std::uint8_t* cs = t.sat.data() + static_cast<std::size_t>(nd.k0) * P;
        const std::uint8_t* cd = t.def.data() + static_cast<std::size_t>(nd.k0) * P;
        for (int s = 0; s < P; ++s) {
          const int vert = m.vertex_of_colour_at(s, nd.agent_local);
          if (vert < 0) continue;
          bool any_def = false, any_sat = false;
          for (int y = 0; y < P; ++y) {
            if (((m.simplex_list[y] >> vert) & 1u) == 0) continue;
            any_def |= cd[y] != 0;
            any_sat |= cs[y] != 0;
          }
          def[s] = any_def;
          sat[s] = any_def && any_sat;
        }
        break;
      }
      default:
        throw std::logic_error("non-primitive node in localized workset");
    }
  }
  return t;
}

}  // namespace

Truth eval3_naive(const SimplicialModel& m, VertexMask point, Formula f) {
  const int s = checked_position(m, point);
  const Formula p = desugar(f, m.sig);
  const Formula roots[1] = {p};
  const Workset w = Workset::build(roots);
  const NaiveTables t = naive_tables(m, w, localize(w, m.sig));
  const int pos = w.position(p);
  const std::size_t at = static_cast<std::size_t>(pos) * t.points + s;
  if (!t.def[at]) return Truth::Undefined;
  return truth_of(t.sat[at] != 0);
}

bool is_defined_naive(const SimplicialModel& m, VertexMask point, Formula f) {
  const int s = checked_position(m, point);
  const Formula p = desugar(f, m.sig);
  const Formula roots[1] = {p};
  const Workset w = Workset::build(roots);
  const NaiveTables t = naive_tables(m, w, localize(w, m.sig));
  return t.def[static_cast<std::size_t>(w.position(p)) * t.points + s] != 0;
}

bool eval_via_facets(const SimplicialModel& m, VertexMask point, Formula f) {
  checked_position(m, point);
  if (!is_defined(m, point, f)) throw std::domain_error("formula undefined at point");
  for (VertexMask facet : star_facets(m, point)) {
    if (eval3(m, facet, f) != Truth::True) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Classical evaluation on facets of a full-dimensional pure model.
// ---------------------------------------------------------------------------

bool eval_pure(const SimplicialModel& m, VertexMask facet, Formula f) {
  if (!m.finalized) throw std::logic_error("model not finalized");
  if (!m.pure() || m.dimension() != m.n_agents() - 1) {
    throw std::domain_error("model is not pure of full dimension");
  }
  const auto fit = std::find(m.facets.begin(), m.facets.end(), facet);
  if (fit == m.facets.end()) throw std::domain_error("point is not a facet");
  const int target = static_cast<int>(fit - m.facets.begin());

  const Formula p = desugar(f, m.sig);
  const Formula roots[1] = {p};
  const Workset w = Workset::build(roots);
  const LocalizedWorkset lw = localize(w, m.sig);
  const int F = static_cast<int>(m.facets.size());
  const int N = static_cast<int>(lw.nodes.size());
  std::vector<std::uint8_t> sat(static_cast<std::size_t>(N) * F, 0);
  for (int i = 0; i < N; ++i) {
    const auto& nd = lw.nodes[i];
    std::uint8_t* row = sat.data() + static_cast<std::size_t>(i) * F;
    switch (nd.kind) {
      case FKind::Var:
        for (int fi = 0; fi < F; ++fi) {
          const int vert = nd.owner_local >= 0
                               ? m.vertex_of_colour_at(m.facet_pos[fi], nd.owner_local)
                               : -1;
          row[fi] = vert >= 0 && nd.var_local >= 0 &&
                    ((m.vertex_vars[vert] >> nd.var_local) & 1u);
        }
        break;
      case FKind::Neg: {
        const std::uint8_t* cs = sat.data() + static_cast<std::size_t>(nd.k0) * F;
        for (int fi = 0; fi < F; ++fi) row[fi] = !cs[fi];
        break;
      }
      case FKind::And: {
        const std::uint8_t* as = sat.data() + static_cast<std::size_t>(nd.k0) * F;
        const std::uint8_t* bs = sat.data() + static_cast<std::size_t>(nd.k1) * F;
        for (int fi = 0; fi < F; ++fi) row[fi] = as[fi] & bs[fi];
        break;
      }
      case FKind::Hat: {
        const std::uint8_t* cs = sat.data() + static_cast<std::size_t>(nd.k0) * F;
        for (int fi = 0; fi < F; ++fi) {
          row[fi] = 0;
          if (nd.agent_local < 0) continue;
          const int vert = m.vertex_of_colour_at(m.facet_pos[fi], nd.agent_local);
          if (vert < 0) continue;
          for (int fj : m.facets_with_vertex[vert]) {
            if (cs[fj]) {
              row[fi] = 1;
              break;
            }
          }
        }
        break;
      }
      default:
        throw std::logic_error("non-primitive node in localized workset");
    }
  }
  return sat[static_cast<std::size_t>(w.position(p)) * F + target] != 0;
}

// ---------------------------------------------------------------------------
// Family-relative judgements.
// ---------------------------------------------------------------------------

EquivalenceVerdict equivalent(Formula f, Formula g, const EnumerationSpec& family) {
  family.check();
  const Signature sig = family.signature();
  const Formula df = desugar(f, sig);
  const Formula dg = desugar(g, sig);
  const Formula roots[2] = {df, dg};
  const Workset w = Workset::build(roots);
  const LocalizedWorkset lw = localize(w, sig);
  const int pf = w.position(df);
  const int pg = w.position(dg);
  EquivalenceVerdict verdict;
  if (pf == pg) return verdict;  // identical expansions
  enumerate_simplicial(family, [&](const SimplicialModel& m, std::uint64_t idx) {
    const Rows r = evaluate_rows(m, lw);
    for (int s = 0; s < r.points; ++s) {
      const Truth a = r.value(pf, s);
      const Truth b = r.value(pg, s);
      if (a != b) {
        verdict.equivalent = false;
        verdict.witness = PointedCounterexample{m, idx, m.simplex_list[s], f, a, b};
        return false;
      }
    }
    return true;
  });
  return verdict;
}

ValidityVerdict valid_over(Formula f, const EnumerationSpec& family) {
  family.check();
  const Signature sig = family.signature();
  const Formula df = desugar(f, sig);
  const Formula roots[1] = {df};
  const Workset w = Workset::build(roots);
  const LocalizedWorkset lw = localize(w, sig);
  const int pf = w.position(df);
  ValidityVerdict verdict;
  enumerate_simplicial(family, [&](const SimplicialModel& m, std::uint64_t idx) {
    const Rows r = evaluate_rows(m, lw);
    for (int s = 0; s < r.points; ++s) {
      if (r.value(pf, s) == Truth::False) {
        verdict.valid = false;
        verdict.witness = PointedCounterexample{m,          idx,         m.simplex_list[s],
                                                f,          Truth::False, Truth::False};
        return false;
      }
    }
    return true;
  });
  return verdict;
}

int taut_template_arity(int tmpl) {
  switch (tmpl) {
    case 0:
    case 1:
    case 2:
      return 1;
    case 3:
      return 2;
    case 4:
      return 3;
    default:
      throw std::invalid_argument("unknown tautology template");
  }
}

Formula axiom_instance(AxiomSchema schema, const SchemaArgs& args, const Signature& sig) {
  const auto need = [&](std::size_t n) {
    if (args.formulas.size() != n) {
      throw std::invalid_argument("schema expects " + std::to_string(n) +
                                  " formula argument(s), got " +
                                  std::to_string(args.formulas.size()));
    }
  };
  switch (schema) {
    case AxiomSchema::Taut: {
      need(static_cast<std::size_t>(taut_template_arity(args.taut_template)));
      const auto& F = args.formulas;
      switch (args.taut_template) {
        case 0:  // excluded middle
          return disj(F[0], neg(F[0]));
        case 1:  // identity
          return implies(F[0], F[0]);
        case 2:  // non-contradiction
          return neg(conj(F[0], neg(F[0])));
        case 3:  // Peirce
          return implies(implies(implies(F[0], F[1]), F[0]), F[0]);
        default:  // implication distribution
          return implies(implies(F[0], implies(F[1], F[2])),
                         implies(implies(F[0], F[1]), implies(F[0], F[2])));
      }
    }
    case AxiomSchema::L: {
      need(0);
      if (!args.variable) throw std::invalid_argument("L requires a variable");
      if (variable_owner(*args.variable) != args.agent) {
        throw std::invalid_argument("L requires a variable owned by its agent");
      }
      const Formula p = var(*args.variable);
      return disj(know(args.agent, p), know(args.agent, neg(p)));
    }
    case AxiomSchema::KTop: {
      need(2);
      const Formula f = args.formulas[0];
      const Formula g = args.formulas[1];
      const Formula guard = top_transform(f, sig);
      return implies(know(args.agent, implies(f, g)),
                     implies(know(args.agent, f), know(args.agent, implies(guard, g))));
    }
    case AxiomSchema::T:
      need(1);
      return implies(know(args.agent, args.formulas[0]), args.formulas[0]);
    case AxiomSchema::Four:
      need(1);
      return implies(know(args.agent, args.formulas[0]),
                     know(args.agent, know(args.agent, args.formulas[0])));
    case AxiomSchema::Five:
      need(1);
      return implies(hat(args.agent, args.formulas[0]),
                     know(args.agent, hat(args.agent, args.formulas[0])));
    case AxiomSchema::K:
      need(2);
      return implies(know(args.agent, implies(args.formulas[0], args.formulas[1])),
                     implies(know(args.agent, args.formulas[0]),
                             know(args.agent, args.formulas[1])));
  }
  throw std::invalid_argument("unknown axiom schema");
}

ValidityVerdict check_axiom_instance(AxiomSchema schema, const SchemaArgs& args,
                                     const EnumerationSpec& family) {
  return valid_over(axiom_instance(schema, args, family.signature()), family);
}

RuleVerdict check_rule(RuleName rule, const SchemaArgs& args, const EnumerationSpec& family) {
  family.check();
  const Signature sig = family.signature();
  const auto need = [&](std::size_t n) {
    if (args.formulas.size() != n) {
      throw std::invalid_argument("rule expects " + std::to_string(n) +
                                  " formula argument(s), got " +
                                  std::to_string(args.formulas.size()));
    }
  };
  std::vector<Formula> premises;
  Formula conclusion;
  switch (rule) {
    case RuleName::MPTop: {
      need(2);
      premises = {implies(args.formulas[0], args.formulas[1]), args.formulas[0]};
      conclusion = implies(top_transform(args.formulas[0], sig), args.formulas[1]);
      break;
    }
    case RuleName::MP: {
      need(2);
      premises = {implies(args.formulas[0], args.formulas[1]), args.formulas[0]};
      conclusion = args.formulas[1];
      break;
    }
    case RuleName::N: {
      need(1);
      premises = {args.formulas[0]};
      conclusion = know(args.agent, args.formulas[0]);
      break;
    }
  }
  for (Formula p : premises) {
    if (!valid_over(p, family).valid) return RuleVerdict{RuleStatus::Vacuous, std::nullopt};
  }
  ValidityVerdict v = valid_over(conclusion, family);
  if (v.valid) return RuleVerdict{RuleStatus::Holds, std::nullopt};
  return RuleVerdict{RuleStatus::Refuted, std::move(v.witness)};
}

std::optional<AxiomSchema> axiom_schema_from_name(std::string_view name) {
  if (name == "taut") return AxiomSchema::Taut;
  if (name == "l") return AxiomSchema::L;
  if (name == "ktop") return AxiomSchema::KTop;
  if (name == "t") return AxiomSchema::T;
  if (name == "4" || name == "four") return AxiomSchema::Four;
  if (name == "5" || name == "five") return AxiomSchema::Five;
  if (name == "k") return AxiomSchema::K;
  return std::nullopt;
}

std::optional<RuleName> rule_from_name(std::string_view name) {
  if (name == "mptop") return RuleName::MPTop;
  if (name == "n") return RuleName::N;
  if (name == "mp") return RuleName::MP;
  return std::nullopt;
}

std::string_view axiom_schema_name(AxiomSchema schema) {
  switch (schema) {
    case AxiomSchema::Taut: return "taut";
    case AxiomSchema::L: return "l";
    case AxiomSchema::KTop: return "ktop";
    case AxiomSchema::T: return "t";
    case AxiomSchema::Four: return "4";
    case AxiomSchema::Five: return "5";
    case AxiomSchema::K: return "k";
  }
  return "?";
}

std::string_view rule_name(RuleName rule) {
  switch (rule) {
    case RuleName::MPTop: return "mptop";
    case RuleName::N: return "n";
    case RuleName::MP: return "mp";
  }
  return "?";
}

}  // namespace simpepist
