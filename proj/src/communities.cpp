#include "ttn/communities.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>

namespace ttn::communities {

Scope parse_scope(std::string_view name) {
  if (name == "per_layer") return Scope::per_layer;
  if (name == "per_time_bin") return Scope::per_time_bin;
  throw Error(Errc::BadConfig, fmt::format("unknown community scope '{}'", name));
}

namespace {

struct LayerCliques {
  LayerLabel label;
  std::vector<std::vector<ActorId>> cliques;  // maximal cliques with >= k actors
};

LayerCliques layer_cliques(const LayerLabel& label, const discrete::EdgeWeights& edges, std::size_t k) {
  std::vector<ActorId> actors;
  for (const auto& [e, w] : edges) {
    actors.push_back(e.first);
    actors.push_back(e.second);
  }
  std::sort(actors.begin(), actors.end());
  actors.erase(std::unique(actors.begin(), actors.end()), actors.end());
  auto index = [&](const ActorId& a) {
    return static_cast<int>(std::lower_bound(actors.begin(), actors.end(), a) - actors.begin());
  };
  cliques::Graph g(actors.size());
  for (const auto& [e, w] : edges) {
    const int a = index(e.first), b = index(e.second);
    if (a == b) continue;
    g[a].push_back(b);
    g[b].push_back(a);
  }
  for (auto& adj : g) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  LayerCliques out{label, {}};
  for (const auto& c : cliques::maximal_cliques(g, k)) {
    std::vector<ActorId> members;
    for (int v : c) members.push_back(actors[v]);
    out.cliques.push_back(std::move(members));
  }
  return out;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Maximal cliques of size >= k percolate iff they share >= k-1 actors; the
// union of a component equals the union of its k-clique component.
std::vector<Community> percolate(const std::vector<const LayerCliques*>& group, std::size_t k,
                                 std::optional<std::int64_t> bin) {
  struct Unit {
    const std::vector<ActorId>* actors;
    const LayerLabel* label;
  };
  std::vector<Unit> units;
  for (const auto* lc : group)
    for (const auto& c : lc->cliques) units.push_back({&c, &lc->label});

  std::map<ActorId, std::vector<std::size_t>> containing;
  for (std::size_t u = 0; u < units.size(); ++u)
    for (const auto& a : *units[u].actors) containing[a].push_back(u);

  DisjointSets sets(units.size());
  std::vector<std::size_t> shared(units.size(), 0);
  std::vector<std::size_t> touched;
  for (std::size_t u = 0; u < units.size(); ++u) {
    touched.clear();
    for (const auto& a : *units[u].actors)
      for (std::size_t v : containing[a])
        if (v > u && shared[v]++ == 0) touched.push_back(v);
    for (std::size_t v : touched) {
      if (shared[v] >= k - 1) sets.unite(u, v);
      shared[v] = 0;
    }
  }

  std::map<std::size_t, Community> by_root;
  for (std::size_t u = 0; u < units.size(); ++u) {
    Community& c = by_root[sets.find(u)];
    c.actors.insert(units[u].actors->begin(), units[u].actors->end());
    c.layers.insert(*units[u].label);
    c.time_bin = bin;
  }
  std::vector<Community> out;
  for (auto& [root, c] : by_root) out.push_back(std::move(c));
  return out;
}

bool community_less(const Community& a, const Community& b) {
  return std::tie(a.time_bin, a.actors, a.layers) < std::tie(b.time_bin, b.actors, b.layers);
}

std::vector<std::pair<const LayerLabel*, const discrete::EdgeWeights*>> scanned_layers(
    const MultilayerActorNetwork& ml, const CpmOptions& opts) {
  if (opts.k < 3) throw Error(Errc::BadK, fmt::format("clique size k={} must be >= 3", opts.k));
  std::vector<std::pair<const LayerLabel*, const discrete::EdgeWeights*>> out;
  for (const auto& [label, edges] : ml.layers)
    if (opts.include_none || label.text_class != discrete::kNoClass) out.emplace_back(&label, &edges);
  return out;
}

std::vector<Community> assemble(const std::vector<LayerCliques>& per_layer, const CpmOptions& opts) {
  std::vector<Community> out;
  if (opts.scope == Scope::per_layer) {
    for (const auto& lc : per_layer) {
      auto cs = percolate({&lc}, opts.k, lc.label.time_bin);
      out.insert(out.end(), cs.begin(), cs.end());
    }
  } else {
    std::map<std::optional<std::int64_t>, std::vector<const LayerCliques*>> groups;
    for (const auto& lc : per_layer) groups[lc.label.time_bin].push_back(&lc);
    for (const auto& [bin, group] : groups) {
      auto cs = percolate(group, opts.k, bin);
      out.insert(out.end(), cs.begin(), cs.end());
    }
  }
  std::sort(out.begin(), out.end(), community_less);
  return out;
}

}  // namespace

std::vector<Community> kclique_communities(const MultilayerActorNetwork& ml, const CpmOptions& opts) {
  const auto layers = scanned_layers(ml, opts);
  std::vector<LayerCliques> per_layer(layers.size());
  const auto n = static_cast<std::ptrdiff_t>(layers.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    per_layer[i] = layer_cliques(*layers[i].first, *layers[i].second, opts.k);
  return assemble(per_layer, opts);
}

namespace serial {

std::vector<Community> kclique_communities(const MultilayerActorNetwork& ml, const CpmOptions& opts) {
  std::vector<LayerCliques> per_layer;
  for (const auto& [label, edges] : scanned_layers(ml, opts))
    per_layer.push_back(layer_cliques(*label, *edges, opts.k));
  return assemble(per_layer, opts);
}

}  // namespace serial

std::vector<Community> filter_communities(const std::vector<Community>& cs, std::size_t min_actors) {
  std::vector<Community> out;
  std::copy_if(cs.begin(), cs.end(), std::back_inserter(out),
               [&](const Community& c) { return c.actors.size() >= min_actors; });
  return out;
}

EvolutionGraph community_evolution(const std::vector<Community>& cs) {
  EvolutionGraph g{cs, {}};
  for (std::size_t a = 0; a < cs.size(); ++a) {
    if (!cs[a].time_bin) continue;
    for (std::size_t b = 0; b < cs.size(); ++b) {
      if (!cs[b].time_bin || *cs[b].time_bin != *cs[a].time_bin + 1) continue;
      std::size_t shared = 0;
      for (const auto& actor : cs[b].actors) shared += cs[a].actors.count(actor);
      const std::size_t needed = (cs[b].actors.size() + 2) / 3;
      if (shared > 0 && shared >= needed) g.edges.push_back({a, b, shared});
    }
  }
  return g;
}

namespace {

nlohmann::ordered_json bin_json(const std::optional<std::int64_t>& bin) {
  return bin ? nlohmann::ordered_json(*bin) : nlohmann::ordered_json(discrete::kAllBins);
}

}  // namespace

nlohmann::ordered_json to_json(const std::vector<Community>& cs) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    nlohmann::ordered_json c;
    c["id"] = i;
    c["actors"] = nlohmann::ordered_json::array();
    for (const auto& a : cs[i].actors) c["actors"].push_back(a.str());
    c["layers"] = nlohmann::ordered_json::array();
    for (const auto& l : cs[i].layers) c["layers"].push_back(discrete::to_string(l));
    c["bin"] = bin_json(cs[i].time_bin);
    out.push_back(std::move(c));
  }
  return out;
}

std::string to_dot(const EvolutionGraph& g) {
  std::string out = "digraph evolution {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const Community& c = g.nodes[i];
    std::string topics;
    for (const auto& l : c.layers) topics += (topics.empty() ? "#" : " #") + l.text_class;
    const std::string bin = c.time_bin ? std::to_string(*c.time_bin) : discrete::kAllBins;
    out += fmt::format("  c{} [label=\"{}\\nbin {}\\n{} actors\", size={}, width={:.3f}, bin=\"{}\"];\n",
                       i, topics, bin, c.actors.size(), c.actors.size(),
                       0.5 + 0.1 * static_cast<double>(c.actors.size()), bin);
  }
  for (const auto& e : g.edges)
    out += fmt::format("  c{} -> c{} [shared={}, penwidth={}];\n", e.from, e.to, e.shared, e.shared);
  out += "}\n";
  return out;
}

}  // namespace ttn::communities
