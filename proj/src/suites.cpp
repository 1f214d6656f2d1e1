#include "simpepist/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "simpepist/kripke.hpp"

namespace simpepist {

namespace {

// ---------------------------------------------------------------------------
// Shared sweep machinery.
// ---------------------------------------------------------------------------

struct LocalReport {
  std::uint64_t cases = 0;
  std::uint64_t extra_violations = 0;  // dropped beyond the per-model cap
  std::vector<SuiteViolation> violations;
  std::vector<int> refuted_watches;  // rule bookkeeping (s5top)
};

constexpr std::size_t kPerModelViolationCap = 2 * kMaxReportedViolations;

void flag(LocalReport& lr, const SimplicialModel& m, std::uint64_t idx,
          std::string property, std::string point, std::string formula,
          std::string expected, std::string actual) {
  if (lr.violations.size() >= kPerModelViolationCap) {
    ++lr.extra_violations;
    return;
  }
  SuiteViolation v;
  v.property = std::move(property);
  v.model_index = idx;
  v.model = m;
  v.model_summary = model_brief(m);
  v.point = std::move(point);
  v.formula = std::move(formula);
  v.expected = std::move(expected);
  v.actual = std::move(actual);
  lr.violations.push_back(std::move(v));
}

void merge_local(SuiteReport& rep, LocalReport& lr) {
  rep.cases += lr.cases;
  rep.violations_total += lr.extra_violations;
  for (auto& v : lr.violations) {
    ++rep.violations_total;
    if (static_cast<int>(rep.violations.size()) < kMaxReportedViolations)
      rep.violations.push_back(std::move(v));
  }
}

using PerModel = std::function<void(const SimplicialModel&, std::uint64_t, LocalReport&)>;

// Streams the family, runs `per_model` on a pool of suite_thread_cap()
// workers in batches, and merges the per-model results in stream order, so
// the report is deterministic regardless of scheduling.  `watch_flags`, when
// given, collects LocalReport::refuted_watches (a commutative OR, used by
// the rule checks).
void sweep_family(const EnumerationSpec& spec, SuiteReport& rep, const PerModel& per_model,
                  std::vector<char>* watch_flags = nullptr) {
  const int workers = suite_thread_cap();
  constexpr std::size_t kBatch = 128;
  std::vector<std::pair<SimplicialModel, std::uint64_t>> batch;
  batch.reserve(kBatch);

  auto run_item = [&](std::size_t i, std::vector<LocalReport>& locals) {
    try {
      per_model(batch[i].first, batch[i].second, locals[i]);
    } catch (const std::exception& e) {
      flag(locals[i], batch[i].first, batch[i].second, "internal-error", "", "",
           "no exception", e.what());
    }
  };

  auto flush = [&]() {
    if (batch.empty()) return;
    std::vector<LocalReport> locals(batch.size());
    const int use = static_cast<int>(std::min<std::size_t>(workers, batch.size()));
    if (use <= 1) {
      for (std::size_t i = 0; i < batch.size(); ++i) run_item(i, locals);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      pool.reserve(use);
      for (int t = 0; t < use; ++t)
        pool.emplace_back([&]() {
          for (std::size_t i; (i = next.fetch_add(1)) < batch.size();) run_item(i, locals);
        });
      for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      merge_local(rep, locals[i]);
      if (watch_flags)
        for (int wi : locals[i].refuted_watches) (*watch_flags)[wi] = 1;
    }
    rep.models += batch.size();
    batch.clear();
  };

  enumerate_simplicial(spec, [&](const SimplicialModel& m, std::uint64_t idx) {
    batch.emplace_back(m, idx);
    if (batch.size() >= kBatch) flush();
    return true;
  });
  flush();
}

std::string truth_name(Truth t) { return std::string(to_string(t)); }

// Facet positions (into simplex_list) whose facet contains the simplex at
// `point_pos`; the epistemic alternatives once intersected with an agent.
std::vector<std::vector<int>> star_facet_positions(const SimplicialModel& m) {
  std::vector<std::vector<int>> out(m.n_simplices());
  for (int p = 0; p < m.n_simplices(); ++p) {
    VertexMask x = m.simplex_list[p];
    for (std::size_t fi = 0; fi < m.facets.size(); ++fi)
      if ((x & ~m.facets[fi]) == 0) out[p].push_back(m.facet_pos[fi]);
  }
  return out;
}

// Facet positions reachable for `agent_local` from the point: facets
// containing the point's vertex of that colour (empty when the agent is dead
// at the point).
std::vector<int> agent_alternatives(const SimplicialModel& m, int point_pos, int agent_local) {
  std::vector<int> out;
  int vert = m.vertex_of_colour_at(point_pos, agent_local);
  if (vert < 0) return out;
  for (int fi : m.facets_with_vertex[vert]) out.push_back(m.facet_pos[fi]);
  return out;
}

// ---------------------------------------------------------------------------
// lemma-3: the defining clauses of the three-valued semantics, checked
// against the row tables from first principles.
// ---------------------------------------------------------------------------

void suite_lemma3(const EnumerationSpec& spec, SuiteReport& rep) {
  const Signature sig = spec.signature();
  const std::vector<Formula> pool = formula_pool(spec);
  const std::vector<Formula> dpool = desugar_all(pool, sig);
  const int n_pool = static_cast<int>(pool.size());
  const int n_agents = static_cast<int>(sig.agents.size());

  std::vector<Formula> roots = dpool;

  // Negation duality and definability agreement of the two modalities, plus
  // double negation, for every pool formula and agent.
  struct Dual {
    int i;
    int agent_local;
    Formula h, k, nk;
  };
  std::vector<Dual> duals;
  duals.reserve(static_cast<std::size_t>(n_pool) * n_agents);
  for (int i = 0; i < n_pool; ++i)
    for (int al = 0; al < n_agents; ++al) {
      AgentId a = sig.agents[al];
      Dual d{i, al, hat(a, dpool[i]), desugar(know(a, pool[i]), sig),
             neg(desugar(know(a, neg(pool[i])), sig))};
      roots.push_back(d.h);
      roots.push_back(d.k);
      roots.push_back(d.nk);
      duals.push_back(d);
    }
  std::vector<Formula> dnegs(n_pool);
  for (int i = 0; i < n_pool; ++i) {
    dnegs[i] = neg(neg(dpool[i]));
    roots.push_back(dnegs[i]);
  }

  // Derived-connective clauses for the sugared pool members, plus a batch of
  // explicit biconditionals (the pool itself has no Iff).
  struct SugarCase {
    FKind kind;
    Formula whole, left, right;  // desugared
    std::string text;
  };
  std::vector<SugarCase> sugars;
  for (int i = 0; i < n_pool; ++i) {
    FormulaNode n = node(pool[i]);
    if (n.kind != FKind::Or && n.kind != FKind::Implies) continue;
    SugarCase sc{n.kind, dpool[i], desugar(n.kid[0], sig), desugar(n.kid[1], sig),
                 print(pool[i])};
    sugars.push_back(sc);
  }
  const int iff_extras = std::min(n_pool - 1, 12);
  for (int i = 0; i < iff_extras; ++i) {
    Formula f = iff(pool[i], pool[i + 1]);
    SugarCase sc{FKind::Iff, desugar(f, sig), dpool[i], dpool[i + 1], print(f)};
    roots.push_back(sc.whole);
    sugars.push_back(sc);
  }

  std::vector<Formula> tops(n_agents);
  for (int al = 0; al < n_agents; ++al) {
    tops[al] = desugar(agent_top(sig.agents[al]), sig);
    roots.push_back(tops[al]);
  }

  const int know_sample = std::min(n_pool, 60);

  Workset w = Workset::build(roots);
  LocalizedWorkset lw = localize(w, sig);
  std::vector<int> pos(dpool.size());
  for (int i = 0; i < n_pool; ++i) pos[i] = w.position(dpool[i]);
  struct DualPos {
    int i, al, h, k, nk;
  };
  std::vector<DualPos> dpos;
  dpos.reserve(duals.size());
  for (const Dual& d : duals)
    dpos.push_back({d.i, d.agent_local, w.position(d.h), w.position(d.k), w.position(d.nk)});
  std::vector<int> dnpos(n_pool);
  for (int i = 0; i < n_pool; ++i) dnpos[i] = w.position(dnegs[i]);
  struct SugarPos {
    FKind kind;
    int whole, left, right;
    const SugarCase* sc;
  };
  std::vector<SugarPos> spos;
  for (const SugarCase& sc : sugars)
    spos.push_back({sc.kind, w.position(sc.whole), w.position(sc.left), w.position(sc.right), &sc});
  std::vector<int> tpos(n_agents);
  for (int al = 0; al < n_agents; ++al) tpos[al] = w.position(tops[al]);

  auto per_model = [&](const SimplicialModel& m, std::uint64_t idx, LocalReport& lr) {
    Rows rows = evaluate_rows(m, lw);
    const int P = m.n_simplices();

    // (a) a formula has a truth value exactly where it is definable
    for (int i = 0; i < n_pool; ++i)
      for (int p = 0; p < P; ++p) {
        ++lr.cases;
        bool d = rows.defined_at(pos[i], p);
        bool has_value = rows.value(pos[i], p) != Truth::Undefined;
        if (d != has_value)
          flag(lr, m, idx, "definability-consistency", point_brief(m, m.simplex_list[p]),
               print(pool[i]), d ? "a truth value" : "undefined",
               truth_name(rows.value(pos[i], p)));
      }

    // (b) <a>f == ~[a]~f, pointwise in both value and definability, and the
    //     two modalities are definable together
    for (const DualPos& d : dpos)
      for (int p = 0; p < P; ++p) {
        lr.cases += 2;
        if (rows.value(d.h, p) != rows.value(d.nk, p) ||
            rows.defined_at(d.h, p) != rows.defined_at(d.nk, p))
          flag(lr, m, idx, "hat-know-duality", point_brief(m, m.simplex_list[p]),
               "<" + agent_name(sig.agents[d.al]) + ">" + print(pool[d.i]),
               truth_name(rows.value(d.nk, p)), truth_name(rows.value(d.h, p)));
        if (rows.defined_at(d.h, p) != rows.defined_at(d.k, p))
          flag(lr, m, idx, "hat-know-equidefinable", point_brief(m, m.simplex_list[p]),
               print(pool[d.i]), "equal definability", "differs");
      }

    // (c) double negation is transparent
    for (int i = 0; i < n_pool; ++i)
      for (int p = 0; p < P; ++p) {
        ++lr.cases;
        if (rows.value(dnpos[i], p) != rows.value(pos[i], p) ||
            rows.defined_at(dnpos[i], p) != rows.defined_at(pos[i], p))
          flag(lr, m, idx, "double-negation", point_brief(m, m.simplex_list[p]),
               print(pool[i]), truth_name(rows.value(pos[i], p)),
               truth_name(rows.value(dnpos[i], p)));
      }

    // (d) derived connectives follow their defining clauses
    for (const SugarPos& s : spos)
      for (int p = 0; p < P; ++p) {
        ++lr.cases;
        Truth l = rows.value(s.left, p), r = rows.value(s.right, p);
        Truth expect = Truth::Undefined;
        if (defined(l) && defined(r)) {
          switch (s.kind) {
            case FKind::Or:
              expect = truth_of(l == Truth::True || r == Truth::True);
              break;
            case FKind::Implies:
              expect = truth_of(l == Truth::False || r == Truth::True);
              break;
            default:
              expect = truth_of(l == r);
              break;
          }
        }
        if (rows.value(s.whole, p) != expect)
          flag(lr, m, idx, "derived-connective", point_brief(m, m.simplex_list[p]),
               s.sc->text, truth_name(expect), truth_name(rows.value(s.whole, p)));
      }

    // (e) aliveness atoms: T_a is true exactly where a is alive, undefined
    //     elsewhere
    for (int al = 0; al < n_agents; ++al)
      for (int p = 0; p < P; ++p) {
        ++lr.cases;
        bool alive = m.vertex_of_colour_at(p, al) >= 0;
        Truth expect = alive ? Truth::True : Truth::Undefined;
        if (rows.value(tpos[al], p) != expect)
          flag(lr, m, idx, "aliveness-atom", point_brief(m, m.simplex_list[p]),
               "T_" + agent_name(sig.agents[al]), truth_name(expect),
               truth_name(rows.value(tpos[al], p)));
      }

    // (f) the knowledge clauses, re-derived with explicit facet quantifiers
    for (const DualPos& d : dpos) {
      if (d.i >= know_sample) continue;
      for (int p = 0; p < P; ++p) {
        lr.cases += 2;
        std::vector<int> alts = agent_alternatives(m, p, d.al);
        bool any_def = false, any_true = false, all_true_where_def = true;
        for (int fp : alts) {
          if (!rows.defined_at(pos[d.i], fp)) continue;
          any_def = true;
          if (rows.value(pos[d.i], fp) == Truth::True)
            any_true = true;
          else
            all_true_where_def = false;
        }
        bool def_expect = !alts.empty() && any_def;
        Truth hat_expect = def_expect ? truth_of(any_true) : Truth::Undefined;
        Truth know_expect = def_expect ? truth_of(all_true_where_def) : Truth::Undefined;
        if (rows.value(d.h, p) != hat_expect)
          flag(lr, m, idx, "possibility-clause", point_brief(m, m.simplex_list[p]),
               "<" + agent_name(sig.agents[d.al]) + ">" + print(pool[d.i]),
               truth_name(hat_expect), truth_name(rows.value(d.h, p)));
        if (rows.value(d.k, p) != know_expect)
          flag(lr, m, idx, "knowledge-clause", point_brief(m, m.simplex_list[p]),
               "[" + agent_name(sig.agents[d.al]) + "]" + print(pool[d.i]),
               truth_name(know_expect), truth_name(rows.value(d.k, p)));
      }
    }
  };

  sweep_family(spec, rep, per_model);
}

// ---------------------------------------------------------------------------
// monotony: truth and definability along face inclusions.
// ---------------------------------------------------------------------------

void suite_monotony(const EnumerationSpec& spec, SuiteReport& rep) {
  const Signature sig = spec.signature();
  const std::vector<Formula> pool = formula_pool(spec);
  const std::vector<Formula> dpool = desugar_all(pool, sig);
  const int n_pool = static_cast<int>(pool.size());

  Workset w = Workset::build(dpool);
  LocalizedWorkset lw = localize(w, sig);
  std::vector<int> pos(dpool.size());
  for (int i = 0; i < n_pool; ++i) pos[i] = w.position(dpool[i]);

  auto per_model = [&](const SimplicialModel& m, std::uint64_t idx, LocalReport& lr) {
    Rows rows = evaluate_rows(m, lw);
    const int P = m.n_simplices();

    std::vector<std::pair<int, int>> incl;  // (face, cofac) proper inclusions
    for (int s = 0; s < P; ++s)
      for (int t = 0; t < P; ++t)
        if (s != t && (m.simplex_list[s] & ~m.simplex_list[t]) == 0) incl.emplace_back(s, t);
    std::vector<std::vector<int>> stars = star_facet_positions(m);

    for (int i = 0; i < n_pool; ++i) {
      for (auto [s, t] : incl) {
        lr.cases += 3;
        bool ds = rows.defined_at(pos[i], s), dt = rows.defined_at(pos[i], t);
        Truth vs = rows.value(pos[i], s), vt = rows.value(pos[i], t);
        // definability goes up
        if (ds && !dt)
          flag(lr, m, idx, "definability-upward",
               point_brief(m, m.simplex_list[s]) + " <= " + point_brief(m, m.simplex_list[t]),
               print(pool[i]), "defined at the coface", "undefined");
        // a defined value is preserved up
        if (vs != Truth::Undefined && vt != vs)
          flag(lr, m, idx, "truth-upward",
               point_brief(m, m.simplex_list[s]) + " <= " + point_brief(m, m.simplex_list[t]),
               print(pool[i]), truth_name(vs), truth_name(vt));
        // and back down, wherever the face is definable at all
        if (ds && vt != Truth::Undefined && vs != vt)
          flag(lr, m, idx, "truth-downward",
               point_brief(m, m.simplex_list[s]) + " <= " + point_brief(m, m.simplex_list[t]),
               print(pool[i]), truth_name(vt), truth_name(vs));
      }

      // truth at a definable point is truth at every facet above it
      for (int p = 0; p < P; ++p) {
        if (!rows.defined_at(pos[i], p)) continue;
        ++lr.cases;
        bool all_true = true;
        for (int fp : stars[p])
          if (rows.value(pos[i], fp) != Truth::True) all_true = false;
        bool here = rows.value(pos[i], p) == Truth::True;
        if (here != all_true)
          flag(lr, m, idx, "facet-oracle", point_brief(m, m.simplex_list[p]), print(pool[i]),
               all_true ? "true" : "not true everywhere above", truth_name(rows.value(pos[i], p)));
      }
    }
  };

  sweep_family(spec, rep, per_model);
}

// ---------------------------------------------------------------------------
// s5top: the axioms and rules of the guarded system over one family sweep.
// ---------------------------------------------------------------------------

void suite_s5top(const EnumerationSpec& spec, SuiteReport& rep) {
  const Signature sig = spec.signature();
  const std::vector<Formula> pool = formula_pool(spec);
  const std::vector<Formula> pairs =
      formula_pool_of_depth(spec, std::max(1, spec.max_formula_depth - 1));
  const std::vector<Formula> trips =
      formula_pool_of_depth(spec, std::max(0, spec.max_formula_depth - 2));

  struct Inst {
    const char* axiom;
    Formula sugared;
    Formula root;
    int pos = -1;
  };
  std::vector<Inst> insts;
  auto add_axiom = [&](const char* ax, AxiomSchema schema, SchemaArgs args) {
    Formula inst = axiom_instance(schema, args, sig);
    insts.push_back({ax, inst, desugar(inst, sig)});
  };

  for (int tmpl = 0; tmpl <= 2; ++tmpl)
    for (Formula f : pool) {
      SchemaArgs a;
      a.taut_template = tmpl;
      a.formulas = {f};
      add_axiom("taut", AxiomSchema::Taut, a);
    }
  for (Formula f : pairs)
    for (Formula g : pairs) {
      SchemaArgs a;
      a.taut_template = 3;
      a.formulas = {f, g};
      add_axiom("taut", AxiomSchema::Taut, a);
    }
  for (Formula f : trips)
    for (Formula g : trips)
      for (Formula h : trips) {
        SchemaArgs a;
        a.taut_template = 4;
        a.formulas = {f, g, h};
        add_axiom("taut", AxiomSchema::Taut, a);
      }
  for (AgentId ag : sig.agents) {
    SchemaArgs a;
    a.agent = ag;
    a.variable = sig.first_variable(ag);
    add_axiom("l", AxiomSchema::L, a);
  }
  for (AgentId ag : sig.agents)
    for (Formula f : pairs)
      for (Formula g : pairs) {
        SchemaArgs a;
        a.agent = ag;
        a.formulas = {f, g};
        add_axiom("ktop", AxiomSchema::KTop, a);
      }
  for (AgentId ag : sig.agents)
    for (Formula f : pool) {
      SchemaArgs a;
      a.agent = ag;
      a.formulas = {f};
      add_axiom("t", AxiomSchema::T, a);
      add_axiom("4", AxiomSchema::Four, a);
      add_axiom("5", AxiomSchema::Five, a);
    }

  // Rules, checked family-relatively: premises that are valid over the whole
  // family must yield a conclusion that is too.
  struct RuleCase {
    const char* rule;
    std::string text;
    std::vector<Formula> premises;  // desugared
    Formula conclusion;             // desugared
    Formula conclusion_sugared;
    std::vector<int> premise_watch;
    int conclusion_watch = -1;
  };
  std::vector<RuleCase> rules;
  for (Formula f : pairs)
    for (Formula g : pairs) {
      RuleCase rc;
      rc.rule = "mptop";
      rc.text = "from " + print(implies(f, g)) + " and " + print(f);
      rc.premises = {desugar(implies(f, g), sig), desugar(f, sig)};
      rc.conclusion_sugared = implies(top_transform(f, sig), g);
      rc.conclusion = desugar(rc.conclusion_sugared, sig);
      rules.push_back(std::move(rc));
    }
  for (AgentId ag : sig.agents)
    for (Formula f : pool) {
      RuleCase rc;
      rc.rule = "n";
      rc.text = "from " + print(f) + " to [" + agent_name(ag) + "]";
      rc.premises = {desugar(f, sig)};
      rc.conclusion_sugared = know(ag, f);
      rc.conclusion = desugar(rc.conclusion_sugared, sig);
      rules.push_back(std::move(rc));
    }

  std::vector<Formula> roots;
  roots.reserve(insts.size() + rules.size() * 3);
  for (const Inst& it : insts) roots.push_back(it.root);
  for (const RuleCase& rc : rules) {
    for (Formula p : rc.premises) roots.push_back(p);
    roots.push_back(rc.conclusion);
  }

  Workset w = Workset::build(roots);
  LocalizedWorkset lw = localize(w, sig);
  for (Inst& it : insts) it.pos = w.position(it.root);

  // Deduplicated watch list: every premise / conclusion position whose
  // family-wide refutation status the rule verdicts need.
  std::unordered_map<int, int> watch_of;
  std::vector<int> watch_positions;
  auto watch = [&](Formula f) {
    int p = w.position(f);
    auto [it, fresh] = watch_of.emplace(p, static_cast<int>(watch_positions.size()));
    if (fresh) watch_positions.push_back(p);
    return it->second;
  };
  for (RuleCase& rc : rules) {
    for (Formula p : rc.premises) rc.premise_watch.push_back(watch(p));
    rc.conclusion_watch = watch(rc.conclusion);
  }
  std::vector<char> any_false(watch_positions.size(), 0);

  auto per_model = [&](const SimplicialModel& m, std::uint64_t idx, LocalReport& lr) {
    Rows rows = evaluate_rows(m, lw);
    const int P = m.n_simplices();
    for (const Inst& it : insts) {
      lr.cases += P;
      for (int p = 0; p < P; ++p)
        if (rows.value(it.pos, p) == Truth::False) {
          flag(lr, m, idx, std::string("axiom-") + it.axiom,
               point_brief(m, m.simplex_list[p]), print(it.sugared), "never false", "false");
          break;
        }
    }
    for (std::size_t wi = 0; wi < watch_positions.size(); ++wi)
      for (int p = 0; p < P; ++p)
        if (rows.value(watch_positions[wi], p) == Truth::False) {
          lr.refuted_watches.push_back(static_cast<int>(wi));
          break;
        }
  };

  sweep_family(spec, rep, per_model, &any_false);

  for (const RuleCase& rc : rules) {
    ++rep.cases;
    bool premises_valid = true;
    for (int pw : rc.premise_watch)
      if (any_false[pw]) premises_valid = false;
    if (!premises_valid || !any_false[rc.conclusion_watch]) continue;
    // Unsound rule application: locate the first refuting point for the
    // report (only reached on failure, so the extra pass costs nothing in
    // the expected case).
    auto where = search_refutation(rc.conclusion_sugared, spec);
    SuiteViolation v;
    v.property = std::string("rule-") + rc.rule;
    v.formula = rc.text + " => " + print(rc.conclusion_sugared);
    v.expected = "conclusion valid over the family (premises are)";
    v.actual = "conclusion refuted";
    if (where) {
      v.model = where->model;
      v.model_index = where->model_index;
      v.model_summary = model_brief(where->model);
      v.point = point_brief(where->model, where->point);
    }
    ++rep.violations_total;
    if (static_cast<int>(rep.violations.size()) < kMaxReportedViolations)
      rep.violations.push_back(std::move(v));
  }
}

// ---------------------------------------------------------------------------
// phitop: the definedness-guard transform is valid and equidefinable.
// ---------------------------------------------------------------------------

void suite_phitop(const EnumerationSpec& spec, SuiteReport& rep) {
  const Signature sig = spec.signature();
  const std::vector<Formula> pool = formula_pool(spec);
  const std::vector<Formula> dpool = desugar_all(pool, sig);
  const int n_pool = static_cast<int>(pool.size());

  std::vector<Formula> guards(n_pool), roots = dpool;
  for (int i = 0; i < n_pool; ++i) {
    guards[i] = desugar(top_transform(pool[i], sig), sig);
    roots.push_back(guards[i]);
  }
  Workset w = Workset::build(roots);
  LocalizedWorkset lw = localize(w, sig);
  std::vector<int> pos(n_pool), gpos(n_pool);
  for (int i = 0; i < n_pool; ++i) {
    pos[i] = w.position(dpool[i]);
    gpos[i] = w.position(guards[i]);
  }

  auto per_model = [&](const SimplicialModel& m, std::uint64_t idx, LocalReport& lr) {
    Rows rows = evaluate_rows(m, lw);
    const int P = m.n_simplices();
    for (int i = 0; i < n_pool; ++i)
      for (int p = 0; p < P; ++p) {
        lr.cases += 2;
        Truth g = rows.value(gpos[i], p);
        if (g == Truth::False)
          flag(lr, m, idx, "guard-validity", point_brief(m, m.simplex_list[p]),
               print(pool[i]) + " guarded", "true or undefined", "false");
        if (defined(g) != rows.defined_at(pos[i], p))
          flag(lr, m, idx, "guard-equidefinable", point_brief(m, m.simplex_list[p]),
               print(pool[i]) + " guarded",
               rows.defined_at(pos[i], p) ? "defined" : "undefined", truth_name(g));
      }
  };

  sweep_family(spec, rep, per_model);
}

// ---------------------------------------------------------------------------
// pure: on pure members of full dimension the semantics is classical.
// ---------------------------------------------------------------------------

void suite_pure(const EnumerationSpec& spec, SuiteReport& rep) {
  const Signature sig = spec.signature();
  const std::vector<Formula> pool = formula_pool(spec);
  const std::vector<Formula> dpool = desugar_all(pool, sig);
  const int n_pool = static_cast<int>(pool.size());

  Workset w = Workset::build(dpool);
  LocalizedWorkset lw = localize(w, sig);
  std::vector<int> pos(n_pool);
  for (int i = 0; i < n_pool; ++i) pos[i] = w.position(dpool[i]);

  // The classical cross-route rebuilds a per-formula workset each call, so
  // cap it with a deterministic stride; the rows of the full pool are still
  // checked for three-valuedness at every facet.
  const int api_stride = std::max(1, n_pool / 192);

  auto per_model = [&](const SimplicialModel& m, std::uint64_t idx, LocalReport& lr) {
    if (!m.pure() || m.dimension() != m.n_agents() - 1) return;
    Rows rows = evaluate_rows(m, lw);
    for (int i = 0; i < n_pool; ++i)
      for (std::size_t fi = 0; fi < m.facets.size(); ++fi) {
        ++lr.cases;
        int fp = m.facet_pos[fi];
        if (rows.value(pos[i], fp) == Truth::Undefined)
          flag(lr, m, idx, "pure-never-undefined", point_brief(m, m.facets[fi]),
               print(pool[i]), "a classical value", "undefined");
      }
    for (int i = 0; i < n_pool; i += api_stride)
      for (std::size_t fi = 0; fi < m.facets.size(); ++fi) {
        ++lr.cases;
        int fp = m.facet_pos[fi];
        bool classical = eval_pure(m, m.facets[fi], pool[i]);
        if (truth_of(classical) != rows.value(pos[i], fp))
          flag(lr, m, idx, "pure-classical-agreement", point_brief(m, m.facets[fi]),
               print(pool[i]), classical ? "true" : "false",
               truth_name(rows.value(pos[i], fp)));
      }
  };

  sweep_family(spec, rep, per_model);
}

// ---------------------------------------------------------------------------
// correspondence: the two translations preserve semantics and compose to
// isomorphisms.
// ---------------------------------------------------------------------------

void suite_correspondence(const EnumerationSpec& spec, SuiteReport& rep) {
  const Signature sig = spec.signature();
  const std::vector<Formula> pool = formula_pool(spec);
  const std::vector<Formula> dpool = desugar_all(pool, sig);
  const int n_pool = static_cast<int>(pool.size());

  Workset w = Workset::build(dpool);
  LocalizedWorkset lw = localize(w, sig);
  std::vector<int> pos(n_pool);
  for (int i = 0; i < n_pool; ++i) pos[i] = w.position(dpool[i]);

  auto per_model = [&](const SimplicialModel& m, std::uint64_t idx, LocalReport& lr) {
    LocalEpistemicModel k = kappa(m);

    ++lr.cases;
    ValidationReport vr = validate(k);
    if (!vr.ok())
      flag(lr, m, idx, "kappa-validity", "", "", "proper local epistemic model", vr.summary());

    // Facet evaluation agrees with state evaluation at the image state.
    Rows srows = evaluate_rows(m, lw);
    Rows krows = evaluate_rows(k, lw);
    for (int i = 0; i < n_pool; ++i)
      for (std::size_t fi = 0; fi < m.facets.size(); ++fi) {
        ++lr.cases;
        int fp = m.facet_pos[fi];
        int state = static_cast<int>(fi);  // state i is facet i
        if (srows.value(pos[i], fp) != krows.value(pos[i], state) ||
            srows.defined_at(pos[i], fp) != krows.defined_at(pos[i], state))
          flag(lr, m, idx, "kappa-preservation", point_brief(m, m.facets[fi]), print(pool[i]),
               truth_name(srows.value(pos[i], fp)), truth_name(krows.value(pos[i], state)));
      }

    // Round trips.
    SigmaResult back = sigma_with_map(k);
    ++lr.cases;
    IsoCheck iso1 = isomorphic(back.model, m);
    if (!iso1.isomorphic)
      flag(lr, m, idx, "sigma-kappa-roundtrip", "", "", "isomorphic to the source", iso1.note);

    Rows brows = evaluate_rows(back.model, lw);
    for (int i = 0; i < n_pool; ++i)
      for (int s = 0; s < k.n_states(); ++s) {
        ++lr.cases;
        int bp = back.model.simplex_position_of(back.state_facet[s]);
        if (brows.value(pos[i], bp) != krows.value(pos[i], s) ||
            brows.defined_at(pos[i], bp) != krows.defined_at(pos[i], s))
          flag(lr, m, idx, "sigma-preservation", k.states[s].id, print(pool[i]),
               truth_name(krows.value(pos[i], s)), truth_name(brows.value(pos[i], bp)));
      }

    ++lr.cases;
    KripkeIsoCheck iso2 = isomorphic(kappa(back.model), k);
    if (!iso2.isomorphic)
      flag(lr, m, idx, "kappa-sigma-roundtrip", "", "", "isomorphic to the source", iso2.note);
  };

  sweep_family(spec, rep, per_model);
}

// ---------------------------------------------------------------------------
// substitution: replacing a variable by pointwise-equal formulas is a
// congruence of both value and definability.
// ---------------------------------------------------------------------------

void suite_substitution(const EnumerationSpec& spec, SuiteReport& rep) {
  const Signature sig = spec.signature();
  const std::vector<Formula> pool = formula_pool(spec);
  const int n_pool = static_cast<int>(pool.size());
  constexpr int kTriples = 48;

  std::uint64_t st = spec.seed ^ 0x51a2bd8ce9c0f2dfull;
  auto rnd = [&st]() {
    st = st * 6364136223846793005ull + 1442695040888963407ull;
    return splitmix64(st);
  };

  struct Triple {
    std::string text;
    Formula base, dbl, dup;  // desugared substitutions
  };
  std::vector<Triple> triples;
  std::vector<Formula> roots;
  for (int t = 0; t < kTriples; ++t) {
    Formula xi = pool[rnd() % n_pool];
    VarId p = sig.variables[rnd() % sig.variables.size()];
    Formula phi = pool[rnd() % n_pool];
    Triple tr;
    tr.text = print(xi) + " with " + variable_name(p) + " := " + print(phi);
    tr.base = desugar(substitute(xi, p, phi), sig);
    tr.dbl = desugar(substitute(xi, p, neg(neg(phi))), sig);
    tr.dup = desugar(substitute(xi, p, conj(phi, phi)), sig);
    roots.push_back(tr.base);
    roots.push_back(tr.dbl);
    roots.push_back(tr.dup);
    triples.push_back(std::move(tr));
  }
  Workset w = Workset::build(roots);
  LocalizedWorkset lw = localize(w, sig);
  struct TriplePos {
    const Triple* tr;
    int base, dbl, dup;
  };
  std::vector<TriplePos> tpos;
  for (const Triple& tr : triples)
    tpos.push_back({&tr, w.position(tr.base), w.position(tr.dbl), w.position(tr.dup)});

  auto per_model = [&](const SimplicialModel& m, std::uint64_t idx, LocalReport& lr) {
    Rows rows = evaluate_rows(m, lw);
    const int P = m.n_simplices();
    for (const TriplePos& t : tpos)
      for (int p = 0; p < P; ++p) {
        lr.cases += 2;
        bool same_dbl = rows.value(t.base, p) == rows.value(t.dbl, p) &&
                        rows.defined_at(t.base, p) == rows.defined_at(t.dbl, p);
        bool same_dup = rows.value(t.base, p) == rows.value(t.dup, p) &&
                        rows.defined_at(t.base, p) == rows.defined_at(t.dup, p);
        if (!same_dbl)
          flag(lr, m, idx, "substitution-double-negation", point_brief(m, m.simplex_list[p]),
               t.tr->text, truth_name(rows.value(t.base, p)), truth_name(rows.value(t.dbl, p)));
        if (!same_dup)
          flag(lr, m, idx, "substitution-idempotent-and", point_brief(m, m.simplex_list[p]),
               t.tr->text, truth_name(rows.value(t.base, p)), truth_name(rows.value(t.dup, p)));
      }
  };

  sweep_family(spec, rep, per_model);
}

// ---------------------------------------------------------------------------
// oracle: the production evaluator against the naive all-simplices reference.
// ---------------------------------------------------------------------------

void suite_oracle(const EnumerationSpec& spec, SuiteReport& rep) {
  const Signature sig = spec.signature();
  const std::vector<Formula> pool = formula_pool(spec);
  const std::vector<Formula> dpool = desugar_all(pool, sig);
  const int n_pool = static_cast<int>(pool.size());

  Workset w = Workset::build(dpool);
  LocalizedWorkset lw = localize(w, sig);
  std::vector<int> pos(n_pool);
  for (int i = 0; i < n_pool; ++i) pos[i] = w.position(dpool[i]);

  // The naive reference costs |pool| * |simplices|^2 per model; that is the
  // point of the suite at two agents (criterion-sized), but at three or four
  // agents a deterministic stride keeps the run finite.
  const int stride = spec.agent_count <= 2 ? 1 : std::max(1, n_pool / 240);

  auto per_model = [&](const SimplicialModel& m, std::uint64_t idx, LocalReport& lr) {
    Rows rows = evaluate_rows(m, lw);
    const int P = m.n_simplices();
    for (int i = 0; i < n_pool; i += stride) {
      for (int p = 0; p < P; ++p) {
        lr.cases += 2;
        Truth fast = rows.value(pos[i], p);
        Truth slow = eval3_naive(m, m.simplex_list[p], pool[i]);
        if (fast != slow)
          flag(lr, m, idx, "oracle-value", point_brief(m, m.simplex_list[p]), print(pool[i]),
               truth_name(slow), truth_name(fast));
        bool fast_def = rows.defined_at(pos[i], p);
        bool slow_def = is_defined_naive(m, m.simplex_list[p], pool[i]);
        if (fast_def != slow_def)
          flag(lr, m, idx, "oracle-definability", point_brief(m, m.simplex_list[p]),
               print(pool[i]), slow_def ? "defined" : "undefined",
               fast_def ? "defined" : "undefined");
        if (fast_def && slow_def) {
          ++lr.cases;
          bool facet_route = eval_via_facets(m, m.simplex_list[p], pool[i]);
          if (truth_of(facet_route) != fast)
            flag(lr, m, idx, "oracle-facet-route", point_brief(m, m.simplex_list[p]),
                 print(pool[i]), truth_name(fast), facet_route ? "true" : "false");
        }
      }
    }
    // Exercise the public point API on a few formulas as well.
    for (int i = 0; i < std::min(n_pool, 5); ++i)
      for (int p = 0; p < P; ++p) {
        ++lr.cases;
        if (eval3(m, m.simplex_list[p], pool[i]) != rows.value(pos[i], p))
          flag(lr, m, idx, "oracle-point-api", point_brief(m, m.simplex_list[p]),
               print(pool[i]), truth_name(rows.value(pos[i], p)), "differs");
      }
  };

  sweep_family(spec, rep, per_model);
}

// ---------------------------------------------------------------------------
// invalid-k / invalid-mp: expected refutations.
// ---------------------------------------------------------------------------

void suite_invalid_k(const EnumerationSpec& spec, SuiteReport& rep) {
  rep.expects_counterexample = true;
  auto witness = search_counterexample(AxiomSchema::K, spec);
  if (!witness) {
    rep.witness_found = false;
    return;
  }
  rep.witness_found = true;
  rep.models = witness->model_index + 1;

  // Verify the witness the long way: premises true, conclusion false.
  const SimplicialModel& m = witness->model;
  Formula f = witness->arguments.at(0), g = witness->arguments.at(1);
  AgentId a = witness->agent;
  Truth p1 = eval3(m, witness->point, know(a, implies(f, g)));
  Truth p2 = eval3(m, witness->point, know(a, f));
  Truth c = eval3(m, witness->point, know(a, g));
  Truth whole = eval3(m, witness->point, witness->instance);
  rep.cases += 4;
  auto expect = [&](Truth got, Truth want, const char* what, Formula shown) {
    if (got == want) return;
    SuiteViolation v;
    v.property = std::string("witness-") + what;
    v.model = m;
    v.model_index = witness->model_index;
    v.model_summary = model_brief(m);
    v.point = point_brief(m, witness->point);
    v.formula = print(shown);
    v.expected = truth_name(want);
    v.actual = truth_name(got);
    ++rep.violations_total;
    if (static_cast<int>(rep.violations.size()) < kMaxReportedViolations)
      rep.violations.push_back(std::move(v));
  };
  expect(p1, Truth::True, "premise", know(a, implies(f, g)));
  expect(p2, Truth::True, "premise", know(a, f));
  expect(c, Truth::False, "conclusion", know(a, g));
  expect(whole, Truth::False, "instance", witness->instance);

  rep.witness_summary = "model #" + std::to_string(witness->model_index) + " " + model_brief(m) +
                        "; point " + point_brief(m, witness->point) + "; agent " +
                        agent_name(a) + "; instance " + print(witness->instance);
}

void suite_invalid_mp(const EnumerationSpec& spec, SuiteReport& rep) {
  if (spec.agent_count != 4)
    throw std::invalid_argument(
        "suite invalid-mp needs agent_count=4: its formulas name agents a, b, c and d");
  rep.expects_counterexample = true;
  const Signature sig = spec.signature();
  AgentId a = sig.agents[0], b = sig.agents[1], c = sig.agents[2], d = sig.agents[3];
  Formula pc = var(sig.variables[2]);

  Formula one = conj(conj(agent_top(a), agent_top(b)), agent_top(c));
  Formula three = hat(d, disj(conj(agent_top(a), pc), hat(d, conj(agent_top(b), neg(pc)))));
  Formula two = implies(one, three);

  auto assert_valid = [&](Formula f, const char* which) {
    ++rep.cases;
    ValidityVerdict v = valid_over(f, spec);
    if (v.valid) return;
    SuiteViolation sv;
    sv.property = std::string("premise-valid-") + which;
    sv.formula = print(f);
    sv.expected = "never false over the family";
    sv.actual = "false somewhere";
    if (v.witness) {
      sv.model = v.witness->model;
      sv.model_index = v.witness->model_index;
      sv.model_summary = model_brief(v.witness->model);
      sv.point = point_brief(v.witness->model, v.witness->point);
    }
    ++rep.violations_total;
    if (static_cast<int>(rep.violations.size()) < kMaxReportedViolations)
      rep.violations.push_back(std::move(sv));
  };
  assert_valid(one, "antecedent");
  assert_valid(two, "implication");

  ++rep.cases;
  auto witness = search_refutation(three, spec);
  rep.witness_found = witness.has_value();
  if (witness) {
    rep.models = witness->model_index + 1;
    rep.witness_summary = "model #" + std::to_string(witness->model_index) + " " +
                          model_brief(witness->model) + "; point " +
                          point_brief(witness->model, witness->point) + "; formula " +
                          print(three);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface.
// ---------------------------------------------------------------------------

int suite_thread_cap() {
  if (const char* env = std::getenv("SIMPEPIST_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min<long>(v, 256));
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<int>(std::min(hw, 8u));
}

std::string model_brief(const SimplicialModel& m) {
  std::string out;
  for (std::size_t fi = 0; fi < m.facets.size(); ++fi) {
    if (fi) out += " ";
    out += "{";
    auto ids = m.ids_of(m.facets[fi]);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out += ",";
      out += ids[i];
    }
    out += "}";
  }
  std::string tv;
  for (const Vertex& v : m.vertices)
    for (VarId p : v.true_vars) {
      if (!tv.empty()) tv += ",";
      tv += variable_name(p) + "@" + v.id;
    }
  if (!tv.empty()) out += " true:" + tv;
  return out;
}

std::string point_brief(const SimplicialModel& m, VertexMask point) {
  auto ids = m.ids_of(point);
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += "+";
    out += ids[i];
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "lemma-3", "monotony",       "s5top",        "phitop", "pure",
      "correspondence", "substitution", "oracle", "invalid-k", "invalid-mp"};
  return names;
}

SuiteReport run_suite(std::string_view name, const EnumerationSpec& spec) {
  spec.check();
  SuiteReport rep;
  rep.suite = std::string(name);
  rep.spec = spec;
  auto t0 = std::chrono::steady_clock::now();
  if (name == "lemma-3")
    suite_lemma3(spec, rep);
  else if (name == "monotony")
    suite_monotony(spec, rep);
  else if (name == "s5top")
    suite_s5top(spec, rep);
  else if (name == "phitop")
    suite_phitop(spec, rep);
  else if (name == "pure")
    suite_pure(spec, rep);
  else if (name == "correspondence")
    suite_correspondence(spec, rep);
  else if (name == "substitution")
    suite_substitution(spec, rep);
  else if (name == "oracle")
    suite_oracle(spec, rep);
  else if (name == "invalid-k")
    suite_invalid_k(spec, rep);
  else if (name == "invalid-mp")
    suite_invalid_mp(spec, rep);
  else
    throw std::invalid_argument("unknown suite: " + std::string(name));
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

namespace {

struct InstancePlan {
  std::vector<SchemaArgs> argses;
  std::vector<Formula> instances;
  std::vector<Formula> roots;
};

InstancePlan schema_instances(AxiomSchema schema, const EnumerationSpec& family,
                              const Signature& sig) {
  InstancePlan plan;
  auto push = [&](SchemaArgs a) {
    Formula inst = axiom_instance(schema, a, sig);
    plan.instances.push_back(inst);
    plan.roots.push_back(desugar(inst, sig));
    plan.argses.push_back(std::move(a));
  };
  switch (schema) {
    case AxiomSchema::L:
      for (AgentId ag : sig.agents) {
        SchemaArgs a;
        a.agent = ag;
        a.variable = sig.first_variable(ag);
        push(a);
      }
      break;
    case AxiomSchema::Taut: {
      auto pool = formula_pool(family);
      auto pairs = formula_pool_of_depth(family, std::max(1, family.max_formula_depth - 1));
      auto trips = formula_pool_of_depth(family, std::max(0, family.max_formula_depth - 2));
      for (int tmpl = 0; tmpl <= 2; ++tmpl)
        for (Formula f : pool) {
          SchemaArgs a;
          a.taut_template = tmpl;
          a.formulas = {f};
          push(a);
        }
      for (Formula f : pairs)
        for (Formula g : pairs) {
          SchemaArgs a;
          a.taut_template = 3;
          a.formulas = {f, g};
          push(a);
        }
      for (Formula f : trips)
        for (Formula g : trips)
          for (Formula h : trips) {
            SchemaArgs a;
            a.taut_template = 4;
            a.formulas = {f, g, h};
            push(a);
          }
      break;
    }
    case AxiomSchema::T:
    case AxiomSchema::Four:
    case AxiomSchema::Five: {
      auto pool = formula_pool(family);
      for (AgentId ag : sig.agents)
        for (Formula f : pool) {
          SchemaArgs a;
          a.agent = ag;
          a.formulas = {f};
          push(a);
        }
      break;
    }
    case AxiomSchema::K:
    case AxiomSchema::KTop: {
      auto pairs = formula_pool_of_depth(family, std::max(1, family.max_formula_depth - 1));
      for (AgentId ag : sig.agents)
        for (Formula f : pairs)
          for (Formula g : pairs) {
            SchemaArgs a;
            a.agent = ag;
            a.formulas = {f, g};
            push(a);
          }
      break;
    }
  }
  return plan;
}

}  // namespace

std::optional<SearchWitness> search_counterexample(AxiomSchema schema,
                                                   const EnumerationSpec& family) {
  family.check();
  const Signature sig = family.signature();
  InstancePlan plan = schema_instances(schema, family, sig);

  Workset w = Workset::build(plan.roots);
  LocalizedWorkset lw = localize(w, sig);
  std::vector<int> pos(plan.roots.size());
  for (std::size_t i = 0; i < plan.roots.size(); ++i) pos[i] = w.position(plan.roots[i]);

  std::optional<SearchWitness> found;
  enumerate_simplicial(family, [&](const SimplicialModel& m, std::uint64_t idx) {
    Rows rows = evaluate_rows(m, lw);
    const int P = m.n_simplices();
    for (std::size_t i = 0; i < plan.instances.size(); ++i)
      for (int p = 0; p < P; ++p)
        if (rows.value(pos[i], p) == Truth::False) {
          SearchWitness sw;
          sw.model = m;
          sw.model_index = idx;
          sw.point = m.simplex_list[p];
          sw.agent = plan.argses[i].agent;
          sw.variable = plan.argses[i].variable;
          sw.arguments = plan.argses[i].formulas;
          sw.instance = plan.instances[i];
          found = std::move(sw);
          return false;
        }
    return true;
  });
  return found;
}

std::optional<SearchWitness> search_refutation(Formula formula, const EnumerationSpec& family) {
  family.check();
  const Signature sig = family.signature();
  Formula root = desugar(formula, sig);
  std::vector<Formula> roots{root};
  Workset w = Workset::build(roots);
  LocalizedWorkset lw = localize(w, sig);
  const int pos = w.position(root);

  std::optional<SearchWitness> found;
  enumerate_simplicial(family, [&](const SimplicialModel& m, std::uint64_t idx) {
    Rows rows = evaluate_rows(m, lw);
    const int P = m.n_simplices();
    for (int p = 0; p < P; ++p)
      if (rows.value(pos, p) == Truth::False) {
        SearchWitness sw;
        sw.model = m;
        sw.model_index = idx;
        sw.point = m.simplex_list[p];
        sw.instance = formula;
        found = std::move(sw);
        return false;
      }
    return true;
  });
  return found;
}

}  // namespace simpepist
