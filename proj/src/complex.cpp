#include "simpepist/complex.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace simpepist {
namespace {

int lowest_vertex(VertexMask x) { return std::countr_zero(x); }

// Vertex ids of a mask on a possibly raw model; tolerates nothing out of range.
std::string mask_ids(const SimplicialModel& m, VertexMask x) {
  std::string out = "{";
  bool first = true;
  for (VertexMask r = x; r;) {
    int v = lowest_vertex(r);
    r &= r - 1;
    if (!first) out += ",";
    first = false;
    out += v < m.n_vertices() ? m.vertices[v].id : "#" + std::to_string(v);
  }
  return out + "}";
}

void maximalize(std::vector<VertexMask>& masks) {
  std::vector<VertexMask> keep;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < masks.size() && !subsumed; ++j) {
      if (i == j) continue;
      if ((masks[i] & ~masks[j]) == 0 && (masks[i] != masks[j] || j < i)) subsumed = true;
    }
    if (!subsumed) keep.push_back(masks[i]);
  }
  masks = std::move(keep);
}

}  // namespace

std::string ValidationReport::summary() const {
  if (violations.empty()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.code + ": " + v.detail;
  }
  return out;
}

AgentMask SimplicialModel::colours(VertexMask x) const {
  AgentMask out = 0;
  for (VertexMask r = x; r;) {
    int v = lowest_vertex(r);
    r &= r - 1;
    out |= AgentMask(1) << colour_local[v];
  }
  return out;
}

VarMask SimplicialModel::true_at(VertexMask x) const {
  VarMask out = 0;
  for (VertexMask r = x; r;) {
    int v = lowest_vertex(r);
    r &= r - 1;
    out |= vertex_vars[v];
  }
  return out;
}

int SimplicialModel::vertex_of_colour(VertexMask x, int agent_local) const {
  for (VertexMask r = x; r;) {
    int v = lowest_vertex(r);
    r &= r - 1;
    if (colour_local[v] == agent_local) return v;
  }
  return -1;
}

bool SimplicialModel::is_simplex(VertexMask x) const {
  return x != 0 && simplex_pos.contains(x);
}

int SimplicialModel::simplex_position_of(VertexMask x) const {
  auto it = simplex_pos.find(x);
  return it == simplex_pos.end() ? -1 : it->second;
}

int SimplicialModel::dimension() const {
  int d = -1;
  for (VertexMask f : facets) d = std::max(d, std::popcount(f) - 1);
  return d;
}

bool SimplicialModel::pure() const {
  if (facets.empty()) return true;
  int c = std::popcount(facets.front());
  for (VertexMask f : facets)
    if (std::popcount(f) != c) return false;
  return true;
}

VertexMask SimplicialModel::mask_of_ids(std::span<const std::string> ids) const {
  VertexMask out = 0;
  for (const auto& id : ids) {
    auto it = vertex_index.find(id);
    if (it == vertex_index.end())
      throw std::domain_error("unknown vertex id '" + id + "'");
    out |= VertexMask(1) << it->second;
  }
  return out;
}

std::vector<std::string> SimplicialModel::ids_of(VertexMask x) const {
  std::vector<std::string> out;
  for (VertexMask r = x; r;) {
    int v = lowest_vertex(r);
    r &= r - 1;
    out.push_back(vertices[v].id);
  }
  return out;
}

ValidationReport validate(const SimplicialModel& m) {
  ValidationReport rep;
  auto flag = [&rep](std::string code, std::string detail) {
    rep.violations.push_back({std::move(code), std::move(detail)});
  };

  {
    std::set<AgentId> seen;
    for (AgentId a : m.sig.agents)
      if (!seen.insert(a).second) flag("duplicate-agent", agent_name(a));
    std::set<VarId> vseen;
    for (VarId v : m.sig.variables) {
      if (!vseen.insert(v).second) flag("duplicate-variable", variable_name(v));
      if (seen.find(variable_owner(v)) == seen.end())
        flag("variable-owner-unknown", variable_name(v));
    }
  }

  if (m.vertices.size() > 64)
    flag("too-many-vertices", std::to_string(m.vertices.size()) + " > 64");

  {
    std::set<std::string> ids;
    for (const auto& v : m.vertices) {
      if (!ids.insert(v.id).second) flag("duplicate-vertex-id", v.id);
      if (m.sig.agent_index(v.colour) < 0)
        flag("vertex-colour-unknown", v.id + " coloured " + agent_name(v.colour));
      for (VarId p : v.true_vars) {
        if (m.sig.variable_index(p) < 0)
          flag("vertex-value-undeclared", v.id + " values " + variable_name(p));
        else if (variable_owner(p) != v.colour)
          flag("vertex-value-not-owned",
               v.id + " coloured " + agent_name(v.colour) + " values " + variable_name(p));
      }
    }
  }

  if (m.facets.empty()) flag("no-facets", "a model needs at least one facet");

  VertexMask valid_bits =
      m.vertices.size() >= 64 ? ~VertexMask(0) : (VertexMask(1) << m.vertices.size()) - 1;
  for (VertexMask f : m.facets) {
    if (f == 0) {
      flag("empty-facet", "{}");
      continue;
    }
    if (f & ~valid_bits) {
      flag("facet-unknown-vertex", mask_ids(m, f));
      continue;
    }
    std::set<AgentId> cols;
    bool chromatic = true;
    for (VertexMask r = f; r;) {
      int v = lowest_vertex(r);
      r &= r - 1;
      if (!cols.insert(m.vertices[v].colour).second) chromatic = false;
    }
    if (!chromatic) flag("facet-not-chromatic", mask_ids(m, f));
  }

  for (std::size_t i = 0; i < m.facets.size(); ++i) {
    if (m.facets[i] == 0 || (m.facets[i] & ~valid_bits)) continue;
    for (std::size_t j = 0; j < m.facets.size(); ++j) {
      if (i == j) continue;
      if ((m.facets[i] & ~m.facets[j]) == 0 && (m.facets[i] != m.facets[j] || j < i)) {
        flag("facet-subsumed", mask_ids(m, m.facets[i]));
        break;
      }
    }
  }

  {
    VertexMask covered = 0;
    for (VertexMask f : m.facets)
      if (!(f & ~valid_bits)) covered |= f;
    for (int v = 0; v < m.n_vertices() && v < 64; ++v)
      if (!(covered & (VertexMask(1) << v))) flag("orphan-vertex", m.vertices[v].id);
  }

  return rep;
}

SimplicialModel normalized(const SimplicialModel& m) {
  SimplicialModel out;
  out.sig = m.sig;
  out.vertices = m.vertices;
  out.facets = m.facets;
  maximalize(out.facets);
  return out;
}

void SimplicialModel::finalize() {
  if (finalized) return;
  ValidationReport rep = validate(*this);
  if (!rep.ok()) throw std::invalid_argument("invalid model: " + rep.summary());

  const int n = n_vertices();
  colour_local.resize(n);
  vertex_vars.assign(n, 0);
  vertex_index.clear();
  for (int v = 0; v < n; ++v) {
    colour_local[v] = sig.agent_index(vertices[v].colour);
    for (VarId p : vertices[v].true_vars)
      vertex_vars[v] |= VarMask(1) << sig.variable_index(p);
    vertex_index.emplace(vertices[v].id, v);
  }

  std::sort(facets.begin(), facets.end());
  facet_colours.clear();
  for (VertexMask f : facets) facet_colours.push_back(colours(f));

  std::unordered_set<VertexMask> seen;
  for (VertexMask f : facets)
    for (VertexMask s = f; s; s = (s - 1) & f) seen.insert(s);
  simplex_list.assign(seen.begin(), seen.end());
  std::sort(simplex_list.begin(), simplex_list.end());
  simplex_pos.clear();
  for (int i = 0; i < static_cast<int>(simplex_list.size()); ++i)
    simplex_pos.emplace(simplex_list[i], i);

  facets_with_vertex.assign(n, {});
  for (int fi = 0; fi < static_cast<int>(facets.size()); ++fi) {
    for (VertexMask r = facets[fi]; r;) {
      int v = lowest_vertex(r);
      r &= r - 1;
      facets_with_vertex[v].push_back(fi);
    }
  }

  facet_pos.clear();
  for (VertexMask f : facets) facet_pos.push_back(simplex_pos.at(f));

  const int na = n_agents();
  vertex_of_colour_tab.assign(static_cast<std::size_t>(n_simplices()) * na, -1);
  for (int s = 0; s < n_simplices(); ++s) {
    for (VertexMask r = simplex_list[s]; r;) {
      int v = lowest_vertex(r);
      r &= r - 1;
      vertex_of_colour_tab[static_cast<std::size_t>(s) * na + colour_local[v]] =
          static_cast<std::int8_t>(v);
    }
  }

  finalized = true;
}

std::vector<VertexMask> faces(VertexMask x) {
  std::vector<VertexMask> out;
  for (VertexMask s = x; s; s = (s - 1) & x) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexMask> star(const SimplicialModel& m, VertexMask x) {
  if (!m.is_simplex(x)) throw std::domain_error("unknown simplex");
  std::vector<VertexMask> out;
  for (VertexMask s : m.simplex_list)
    if ((x & ~s) == 0) out.push_back(s);
  return out;
}

std::vector<VertexMask> star_facets(const SimplicialModel& m, VertexMask x) {
  if (!m.is_simplex(x)) throw std::domain_error("unknown simplex");
  std::vector<VertexMask> out;
  for (VertexMask f : m.facets)
    if ((x & ~f) == 0) out.push_back(f);
  return out;
}

namespace {

SimplicialModel rebuild_with(const SimplicialModel& m, const Signature& sig,
                             const std::vector<VertexMask>& kept_facets) {
  VertexMask used = 0;
  for (VertexMask f : kept_facets) used |= f;

  std::vector<int> remap(m.n_vertices(), -1);
  SimplicialModel out;
  out.sig = sig;
  for (int v = 0; v < m.n_vertices(); ++v) {
    if (used & (VertexMask(1) << v)) {
      remap[v] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(m.vertices[v]);
    }
  }
  for (VertexMask f : kept_facets) {
    VertexMask nf = 0;
    for (VertexMask r = f; r;) {
      int v = lowest_vertex(r);
      r &= r - 1;
      nf |= VertexMask(1) << remap[v];
    }
    out.facets.push_back(nf);
  }
  out.finalize();
  return out;
}

}  // namespace

SimplicialModel skeleton_by_agents(const SimplicialModel& m,
                                   std::span<const AgentId> agents) {
  std::set<AgentId> wanted(agents.begin(), agents.end());
  Signature sub;
  for (AgentId a : m.sig.agents)
    if (wanted.contains(a)) sub.agents.push_back(a);
  for (VarId v : m.sig.variables)
    if (wanted.contains(variable_owner(v))) sub.variables.push_back(v);

  VertexMask allowed = 0;
  for (int v = 0; v < m.n_vertices(); ++v)
    if (wanted.contains(m.vertices[v].colour)) allowed |= VertexMask(1) << v;

  std::vector<VertexMask> kept;
  for (VertexMask f : m.facets)
    if (VertexMask g = f & allowed; g != 0) kept.push_back(g);
  if (kept.empty())
    throw std::domain_error("empty skeleton: no facet has a vertex coloured by the given agents");
  maximalize(kept);
  return rebuild_with(m, sub, kept);
}

SimplicialModel skeleton_by_dimension(const SimplicialModel& m, int k) {
  if (k < 0 || k > m.dimension())
    throw std::out_of_range("skeleton dimension out of range");
  std::set<VertexMask> kept;
  for (VertexMask f : m.facets) {
    if (std::popcount(f) <= k + 1) {
      kept.insert(f);
    } else {
      for (VertexMask s = f; s; s = (s - 1) & f)
        if (std::popcount(s) == k + 1) kept.insert(s);
    }
  }
  std::vector<VertexMask> list(kept.begin(), kept.end());
  maximalize(list);
  return rebuild_with(m, m.sig, list);
}

SimplicialMapCheck check_simplicial_map(
    const SimplicialModel& from, const SimplicialModel& to,
    const std::unordered_map<std::string, std::string>& vertex_map) {
  if (!from.finalized || !to.finalized)
    throw std::logic_error("check_simplicial_map requires finalized models");
  SimplicialMapCheck out;

  std::vector<int> img(from.n_vertices(), -1);
  out.total = true;
  for (int v = 0; v < from.n_vertices(); ++v) {
    auto it = vertex_map.find(from.vertices[v].id);
    if (it == vertex_map.end()) {
      out.total = false;
      out.violations.push_back("unmapped vertex '" + from.vertices[v].id + "'");
      continue;
    }
    auto jt = to.vertex_index.find(it->second);
    if (jt == to.vertex_index.end()) {
      out.total = false;
      out.violations.push_back("image '" + it->second + "' is not a vertex of the target");
      continue;
    }
    img[v] = jt->second;
  }
  if (!out.total) return out;

  out.simplicial = out.rigid = out.chromatic = out.value_preserving = true;
  for (VertexMask f : from.facets) {
    VertexMask imgf = 0;
    for (VertexMask r = f; r;) {
      int v = lowest_vertex(r);
      r &= r - 1;
      imgf |= VertexMask(1) << img[v];
    }
    if (!to.is_simplex(imgf)) {
      out.simplicial = false;
      out.violations.push_back("facet " + mask_ids(from, f) + " maps to non-simplex " +
                               mask_ids(to, imgf));
    }
    if (std::popcount(imgf) != std::popcount(f)) {
      out.rigid = false;
      out.violations.push_back("facet " + mask_ids(from, f) + " collapses onto " +
                               mask_ids(to, imgf));
    }
  }
  for (int v = 0; v < from.n_vertices(); ++v) {
    const Vertex& src = from.vertices[v];
    const Vertex& dst = to.vertices[img[v]];
    if (src.colour != dst.colour) {
      out.chromatic = false;
      out.violations.push_back("vertex '" + src.id + "' changes colour (" +
                               agent_name(src.colour) + " -> " + agent_name(dst.colour) + ")");
    }
    std::set<VarId> sv(src.true_vars.begin(), src.true_vars.end());
    std::set<VarId> dv(dst.true_vars.begin(), dst.true_vars.end());
    if (sv != dv) {
      out.value_preserving = false;
      out.violations.push_back("vertex '" + src.id + "' changes valuation");
    }
  }
  return out;
}

IsoCheck isomorphic(const SimplicialModel& a, const SimplicialModel& b) {
  if (!a.finalized || !b.finalized)
    throw std::logic_error("isomorphic requires finalized models");
  IsoCheck out;

  if (std::set<AgentId>(a.sig.agents.begin(), a.sig.agents.end()) !=
      std::set<AgentId>(b.sig.agents.begin(), b.sig.agents.end())) {
    out.note = "different agent sets";
    return out;
  }
  if (std::set<VarId>(a.sig.variables.begin(), a.sig.variables.end()) !=
      std::set<VarId>(b.sig.variables.begin(), b.sig.variables.end())) {
    out.note = "different variable sets";
    return out;
  }
  if (a.n_vertices() != b.n_vertices()) {
    out.note = "different vertex counts";
    return out;
  }
  if (a.facets.size() != b.facets.size()) {
    out.note = "different facet counts";
    return out;
  }
  {
    auto sizes = [](const SimplicialModel& m) {
      std::vector<int> s;
      for (VertexMask f : m.facets) s.push_back(std::popcount(f));
      std::sort(s.begin(), s.end());
      return s;
    };
    if (sizes(a) != sizes(b)) {
      out.note = "different facet size profiles";
      return out;
    }
  }

  // Invariant of a vertex: colour, valuation, and sizes of incident facets.
  auto profile = [](const SimplicialModel& m, int v) {
    std::vector<int> fs;
    for (int fi : m.facets_with_vertex[v]) fs.push_back(std::popcount(m.facets[fi]));
    std::sort(fs.begin(), fs.end());
    return std::tuple(m.vertices[v].colour, m.vertex_vars[v], fs);
  };

  const int n = a.n_vertices();
  std::vector<std::vector<int>> cand(n);
  for (int v = 0; v < n; ++v) {
    auto pv = profile(a, v);
    for (int w = 0; w < n; ++w)
      if (profile(b, w) == pv) cand[v].push_back(w);
    if (cand[v].empty()) {
      out.note = "vertex '" + a.vertices[v].id + "' has no structural counterpart";
      return out;
    }
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return cand[x].size() < cand[y].size(); });

  // Two vertices sharing a facet must keep sharing one under the bijection.
  auto cofacet = [](const SimplicialModel& m) {
    std::vector<VertexMask> cf(m.n_vertices(), 0);
    for (VertexMask f : m.facets)
      for (VertexMask r = f; r;) {
        int v = lowest_vertex(r);
        r &= r - 1;
        cf[v] |= f;
      }
    return cf;
  };
  std::vector<VertexMask> cof_a = cofacet(a), cof_b = cofacet(b);

  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::set<VertexMask> b_facets(b.facets.begin(), b.facets.end());

  auto rec = [&](auto&& self, int k) -> bool {
    if (k == n) {
      std::set<VertexMask> mapped;
      for (VertexMask f : a.facets) {
        VertexMask mf = 0;
        for (VertexMask r = f; r;) {
          int v = lowest_vertex(r);
          r &= r - 1;
          mf |= VertexMask(1) << map[v];
        }
        mapped.insert(mf);
      }
      return mapped == b_facets;
    }
    int v = order[k];
    for (int w : cand[v]) {
      if (used[w]) continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) {
        int u = order[j];
        bool ca = cof_a[v] & (VertexMask(1) << u);
        bool cb = cof_b[w] & (VertexMask(1) << map[u]);
        if (ca != cb) ok = false;
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (self(self, k + 1)) return true;
      map[v] = -1;
      used[w] = false;
    }
    return false;
  };

  if (rec(rec, 0)) {
    out.isomorphic = true;
    for (int v = 0; v < n; ++v)
      out.witness.emplace(a.vertices[v].id, b.vertices[map[v]].id);
  } else {
    out.note = "no colour- and value-preserving bijection matches the facet structure";
  }
  return out;
}

SimplicialModel build_model(
    const std::vector<std::string>& agents,
    const std::vector<std::pair<std::string, std::string>>& variables,
    const std::vector<std::tuple<std::string, std::string, std::vector<std::string>>>&
        vertex_rows,
    const std::vector<std::vector<std::string>>& facet_rows) {
  SimplicialModel m;
  for (const auto& a : agents) m.sig.agents.push_back(intern_agent(a));
  for (const auto& [base, owner] : variables)
    m.sig.variables.push_back(intern_variable(base, intern_agent(owner)));

  std::unordered_map<std::string, int> index;
  for (const auto& [id, agent, trues] : vertex_rows) {
    Vertex v;
    v.id = id;
    v.colour = intern_agent(agent);
    for (const auto& base : trues) v.true_vars.push_back(intern_variable(base, v.colour));
    index.emplace(id, static_cast<int>(m.vertices.size()));
    m.vertices.push_back(std::move(v));
  }
  for (const auto& row : facet_rows) {
    VertexMask f = 0;
    for (const auto& id : row) {
      auto it = index.find(id);
      if (it == index.end())
        throw std::invalid_argument("facet references unknown vertex '" + id + "'");
      f |= VertexMask(1) << it->second;
    }
    m.facets.push_back(f);
  }
  SimplicialModel norm = normalized(m);
  norm.finalize();
  return norm;
}

}  // namespace simpepist
