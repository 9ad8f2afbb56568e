#pragma once

// k-clique percolation over a multilayer actor network and the succession
// graph linking communities of consecutive time bins.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ttn/discrete.hpp"

namespace ttn::communities {

using discrete::LayerLabel;
using discrete::MultilayerActorNetwork;

enum class Scope {
  per_layer,     // cliques percolate inside a single layer
  per_time_bin,  // cliques of all layers sharing a time bin percolate together
};

Scope parse_scope(std::string_view name);

struct Community {
  std::set<ActorId> actors;
  std::set<LayerLabel> layers;
  std::optional<std::int64_t> time_bin;

  friend bool operator==(const Community&, const Community&) = default;
};

struct CpmOptions {
  std::size_t k = 3;
  Scope scope = Scope::per_time_bin;
  bool include_none = false;  // also scan layers of the "_none" text class
};

/// Communities sorted by (time bin, actors, layers). Throws BadK for k < 3.
std::vector<Community> kclique_communities(const MultilayerActorNetwork& ml, const CpmOptions& opts);

/// Keeps communities with at least `min_actors` actors ("more than 3" is min_actors = 4).
std::vector<Community> filter_communities(const std::vector<Community>& cs, std::size_t min_actors);

struct EvolutionEdge {
  std::size_t from;  // index into EvolutionGraph::nodes, bin b
  std::size_t to;    // bin b + 1
  std::size_t shared;

  friend bool operator==(const EvolutionEdge&, const EvolutionEdge&) = default;
};

struct EvolutionGraph {
  std::vector<Community> nodes;
  std::vector<EvolutionEdge> edges;
};

/// Edge between communities of consecutive bins iff they share at least
/// ceil(|later| / 3) actors.
EvolutionGraph community_evolution(const std::vector<Community>& cs);

/// [{id, actors, layers, bin}] with bin "_all" for unbinned communities.
nlohmann::ordered_json to_json(const std::vector<Community>& cs);

/// Node `size`/`width` scale with the actor count; edges carry `shared`.
std::string to_dot(const EvolutionGraph& g);

namespace cliques {

/// Adjacency lists over vertices [0, n), symmetric, sorted, no self-loops.
using Graph = std::vector<std::vector<int>>;

/// Bron-Kerbosch with Tomita pivoting. Each clique is sorted; cliques are
/// returned in lexicographic order and only those of size >= min_size.
std::vector<std::vector<int>> maximal_cliques(const Graph& g, std::size_t min_size);

}  // namespace cliques

namespace serial {

/// Single-threaded reference of kclique_communities.
std::vector<Community> kclique_communities(const MultilayerActorNetwork& ml, const CpmOptions& opts);

}  // namespace serial

}  // namespace ttn::communities
