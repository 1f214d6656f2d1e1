#include "simpepist/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace simpepist {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

void EnumerationSpec::check() const {
  if (agent_count < 2 || agent_count > 4)
    throw std::invalid_argument("agent_count must be in 2..4");
  if (vars_per_agent != 1)
    throw std::invalid_argument("vars_per_agent is pinned at 1");
  if (max_facets < 1 || max_facets > 4)
    throw std::invalid_argument("max_facets must be in 1..4");
  if (max_formula_depth < 1 || max_formula_depth > 3)
    throw std::invalid_argument("max_formula_depth must be in 1..3");
  if (connectives & ~kAllConnectives)
    throw std::invalid_argument("unknown connective in pool");
  if (sample_every < 0) throw std::invalid_argument("sample_every must be >= 0");
}

namespace {

const char* kAgentNames[4] = {"a", "b", "c", "d"};

}  // namespace

Signature EnumerationSpec::signature() const {
  check();
  Signature sig;
  for (int i = 0; i < agent_count; ++i) {
    AgentId a = intern_agent(kAgentNames[i]);
    sig.agents.push_back(a);
    sig.variables.push_back(intern_variable("p", a));
  }
  return sig;
}

namespace {

// All set partitions of {0..k-1} as restricted growth strings, ascending.
std::vector<std::vector<int>> partitions_of(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(k, 0);
  auto rec = [&](auto&& self, int i, int mx) -> void {
    if (i == k) {
      out.push_back(rgs);
      return;
    }
    for (int b = 0; b <= mx + 1; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(mx, b));
    }
  };
  if (k == 0)
    out.push_back({});
  else
    rec(rec, 0, -1);
  return out;
}

struct Generator {
  const EnumerationSpec& spec;
  const std::function<bool(const SimplicialModel&, std::uint64_t)>& fn;
  Signature sig;
  std::uint64_t generated = 0;  // all candidate models before sampling/dedup
  std::uint64_t emitted = 0;
  bool stop = false;

  // Isomorphism dedup buckets keyed by a cheap invariant.
  std::map<std::string, std::vector<SimplicialModel>> kept;

  void emit(SimplicialModel&& m) {
    std::uint64_t n = generated++;
    if (spec.sample_every > 0 &&
        splitmix64(spec.seed ^ n) % static_cast<std::uint64_t>(spec.sample_every) != 0)
      return;
    if (spec.dedup_isomorphic) {
      std::string key;
      std::vector<std::string> parts;
      for (std::size_t i = 0; i < m.facets.size(); ++i)
        parts.push_back(std::to_string(m.facet_colours[i]) + ":" +
                        std::to_string(m.true_at(m.facets[i])));
      std::sort(parts.begin(), parts.end());
      for (auto& p : parts) key += p + "|";
      auto& bucket = kept[key];
      for (const auto& other : bucket)
        if (isomorphic(m, other).isomorphic) return;
      bucket.push_back(m);
    }
    if (!fn(m, emitted++)) stop = true;
  }

  // Facet colour sets chosen; enumerate how facets share vertices per colour.
  void sharing_patterns(const std::vector<unsigned>& colour_sets) {
    const int n = static_cast<int>(colour_sets.size());
    const int na = spec.agent_count;

    std::vector<std::vector<int>> occurs(na);  // colour -> facet indices using it
    for (int f = 0; f < n; ++f)
      for (int c = 0; c < na; ++c)
        if (colour_sets[f] & (1u << c)) occurs[c].push_back(f);

    std::vector<std::vector<std::vector<int>>> per_colour;  // partitions per colour
    for (int c = 0; c < na; ++c)
      per_colour.push_back(partitions_of(static_cast<int>(occurs[c].size())));

    std::vector<int> choice(na, 0);
    auto odometer = [&](auto&& self, int c) -> void {
      if (stop) return;
      if (c == na) {
        realize(colour_sets, occurs, per_colour, choice);
        return;
      }
      for (int i = 0; i < static_cast<int>(per_colour[c].size()) && !stop; ++i) {
        choice[c] = i;
        self(self, c + 1);
      }
    };
    odometer(odometer, 0);
  }

  void realize(const std::vector<unsigned>& colour_sets,
               const std::vector<std::vector<int>>& occurs,
               const std::vector<std::vector<std::vector<int>>>& per_colour,
               const std::vector<int>& choice) {
    const int n = static_cast<int>(colour_sets.size());
    const int na = spec.agent_count;

    // Vertex per (colour, block); vertices ordered by colour then block.
    std::vector<std::vector<int>> block_of(na);  // per colour: facet -> block
    std::vector<int> blocks_per_colour(na, 0);
    for (int c = 0; c < na; ++c) {
      const auto& rgs = per_colour[c][choice[c]];
      block_of[c].assign(n, -1);
      int mx = -1;
      for (std::size_t i = 0; i < occurs[c].size(); ++i) {
        block_of[c][occurs[c][i]] = rgs[i];
        mx = std::max(mx, rgs[i]);
      }
      blocks_per_colour[c] = mx + 1;
    }

    std::vector<std::pair<int, int>> vertex_defs;  // (colour, block)
    std::vector<std::vector<int>> vertex_at(na);   // colour -> block -> vertex index
    for (int c = 0; c < na; ++c) {
      vertex_at[c].assign(blocks_per_colour[c], -1);
      for (int b = 0; b < blocks_per_colour[c]; ++b) {
        vertex_at[c][b] = static_cast<int>(vertex_defs.size());
        vertex_defs.emplace_back(c, b);
      }
    }

    std::vector<VertexMask> facet_masks(n, 0);
    for (int f = 0; f < n; ++f)
      for (int c = 0; c < na; ++c)
        if (block_of[c][f] >= 0)
          facet_masks[f] |= VertexMask(1) << vertex_at[c][block_of[c][f]];

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && (facet_masks[i] & ~facet_masks[j]) == 0) return;  // not maximal

    const int nv = static_cast<int>(vertex_defs.size());
    for (std::uint64_t val = 0; val < (1ull << nv) && !stop; ++val) {
      SimplicialModel m;
      m.sig = sig;
      for (int v = 0; v < nv; ++v) {
        auto [c, b] = vertex_defs[v];
        Vertex vert;
        vert.id = std::string(kAgentNames[c]) + std::to_string(b);
        vert.colour = sig.agents[c];
        if (val & (1ull << v)) vert.true_vars.push_back(sig.variables[c]);
        m.vertices.push_back(std::move(vert));
      }
      m.facets = facet_masks;
      m.finalize();
      emit(std::move(m));
    }
  }

  void run() {
    const unsigned max_set = (1u << spec.agent_count) - 1;
    std::vector<unsigned> combo;
    auto choose = [&](auto&& self, int remaining, unsigned from) -> void {
      if (stop) return;
      if (remaining == 0) {
        sharing_patterns(combo);
        return;
      }
      for (unsigned s = from; s <= max_set && !stop; ++s) {
        combo.push_back(s);
        self(self, remaining - 1, s);
        combo.pop_back();
      }
    };
    for (int fc = 1; fc <= spec.max_facets && !stop; ++fc) choose(choose, fc, 1);
  }
};

}  // namespace

void enumerate_simplicial(
    const EnumerationSpec& spec,
    const std::function<bool(const SimplicialModel&, std::uint64_t)>& fn) {
  spec.check();
  Generator g{spec, fn, spec.signature()};
  g.run();
}

std::vector<SimplicialModel> simplicial_family(const EnumerationSpec& spec) {
  std::vector<SimplicialModel> out;
  enumerate_simplicial(spec, [&](const SimplicialModel& m, std::uint64_t) {
    out.push_back(m);
    return true;
  });
  return out;
}

namespace {

std::vector<Formula> pool_impl(const EnumerationSpec& spec, int depth) {
  Signature sig = spec.signature();
  std::vector<std::vector<Formula>> levels(depth + 1);
  std::map<std::uint32_t, int> level_of;
  auto add = [&](int d, Formula f) {
    if (level_of.emplace(f.id(), d).second) levels[d].push_back(f);
  };

  for (int i = 0; i < spec.agent_count; ++i) add(0, var(sig.variables[i]));

  for (int d = 1; d <= depth; ++d) {
    std::vector<Formula> lower;  // heights 0..d-1 in stream order
    for (int h = 0; h < d; ++h)
      lower.insert(lower.end(), levels[h].begin(), levels[h].end());
    const auto& exact = levels[d - 1];

    if (spec.connectives & kNeg)
      for (Formula f : exact) add(d, neg(f));
    auto binary = [&](auto make) {
      for (Formula f : lower)
        for (Formula g : lower) {
          if (level_of.at(f.id()) != d - 1 && level_of.at(g.id()) != d - 1) continue;
          add(d, make(f, g));
        }
    };
    if (spec.connectives & kAnd) binary([](Formula f, Formula g) { return conj(f, g); });
    if (spec.connectives & kOr) binary([](Formula f, Formula g) { return disj(f, g); });
    if (spec.connectives & kImplies)
      binary([](Formula f, Formula g) { return implies(f, g); });
    if (spec.connectives & kHat)
      for (int i = 0; i < spec.agent_count; ++i)
        for (Formula f : exact) add(d, hat(sig.agents[i], f));
    if (spec.connectives & kKnow)
      for (int i = 0; i < spec.agent_count; ++i)
        for (Formula f : exact) add(d, know(sig.agents[i], f));
  }

  std::vector<Formula> out;
  for (const auto& level : levels) out.insert(out.end(), level.begin(), level.end());
  return out;
}

}  // namespace

std::vector<Formula> formula_pool(const EnumerationSpec& spec) {
  spec.check();
  return pool_impl(spec, spec.max_formula_depth);
}

std::vector<Formula> formula_pool_of_depth(const EnumerationSpec& spec, int depth) {
  spec.check();
  return pool_impl(spec, std::max(0, depth));
}

}  // namespace simpepist
