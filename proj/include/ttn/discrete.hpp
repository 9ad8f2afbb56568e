#pragma once

// Text/time discretization into a k-partite network and its projection onto
// a multilayer actor network (one layer per (text class, time bin) label).

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ttn/model.hpp"

namespace ttn::discrete {

inline constexpr const char* kNoClass = "_none";
inline constexpr const char* kAllBins = "_all";

struct LayerLabel {
  std::string text_class;
  std::optional<std::int64_t> time_bin;  // nullopt means every bin ("_all")

  friend auto operator<=>(const LayerLabel&, const LayerLabel&) = default;
};

/// "class,bin" or "class,_all".
std::string to_string(const LayerLabel& label);

struct Tagger {
  enum class Kind { hashtags, keywords };
  Kind kind = Kind::hashtags;
  std::vector<std::string> keywords;

  /// "hashtags" or "keywords:w1,w2,...".
  static Tagger parse(std::string_view spec);
};

using ClassMap = std::map<MessageId, std::set<std::string>>;
using BinMap = std::map<MessageId, std::int64_t>;

/// Untagged messages map to {"_none"}. Throws EmptyKeywordList.
ClassMap tag_messages(const TemporalTextNetwork& net, const Tagger& tagger);

/// bin = floor((t_send - anchor) / width); anchor defaults to the earliest production time.
BinMap time_bins(const TemporalTextNetwork& net, std::int64_t width,
                 std::optional<Timestamp> anchor = std::nullopt);

struct MessageCopy {
  MessageId id;
  ProductionEdge production;
  std::vector<ConsumptionEdge> consumption;
};

struct KPartiteNetwork {
  std::set<ActorId> actors;
  std::map<LayerLabel, std::vector<MessageCopy>> partitions;

  std::size_t num_copies() const;
};

/// One copy of each message per class, in the layer (class, bin). Without bins
/// every label uses "_all". Throws UncoveredMessage.
KPartiteNetwork discretize(const TemporalTextNetwork& net, const ClassMap& classes,
                           const std::optional<BinMap>& bins);

/// |L| counts the actor partition plus one partition per label.
NetworkStats stats(const KPartiteNetwork& kp);

/// Network document of the source plus a `layers` map label -> message ids.
nlohmann::ordered_json to_json(const KPartiteNetwork& kp, const TemporalTextNetwork& source);

struct ProjectionOptions {
  bool weighted = false;
  bool directed = false;
};

using EdgeWeights = std::map<std::pair<ActorId, ActorId>, std::size_t>;

struct MultilayerActorNetwork {
  bool weighted = false;
  bool directed = false;
  std::set<ActorId> actors;
  /// One entry per k-partite label, possibly edgeless. Undirected layers store
  /// each edge once with src < dst.
  std::map<LayerLabel, EdgeWeights> layers;

  std::set<ActorId> layer_nodes(const LayerLabel& label) const;
  std::size_t num_edges() const;
  /// Sum over layers of incident actors.
  std::size_t num_nodes() const;
};

/// Edge (a_i, a_j) in layer l iff some copy in l is produced by a_i and received
/// by a_j. Weight counts witnessing copies (1 when unweighted). Self-loops dropped.
/// Layers are projected in parallel.
MultilayerActorNetwork project(const KPartiteNetwork& kp, const ProjectionOptions& opts);

/// |A|, |E| and |L| of the projection; |M| is zero.
NetworkStats stats(const MultilayerActorNetwork& ml);

/// Header then `layer_textclass,layer_bin,src,dst,weight` rows in lexicographic order.
std::string to_edge_list(const MultilayerActorNetwork& ml);

namespace serial {

/// Single-threaded reference of discrete::project.
MultilayerActorNetwork project(const KPartiteNetwork& kp, const ProjectionOptions& opts);

}  // namespace serial

}  // namespace ttn::discrete
