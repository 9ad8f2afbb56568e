#include "ttn/discrete.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "ttn/model_json.hpp"
#include "ttn/text.hpp"

namespace ttn::discrete {

std::string to_string(const LayerLabel& label) {
  return label.time_bin ? fmt::format("{},{}", label.text_class, *label.time_bin)
                        : fmt::format("{},{}", label.text_class, kAllBins);
}

Tagger Tagger::parse(std::string_view spec) {
  if (spec == "hashtags") return {};
  constexpr std::string_view prefix = "keywords:";
  if (spec.substr(0, prefix.size()) != prefix)
    throw Error(Errc::BadConfig, fmt::format("unknown tagger '{}'", spec));
  Tagger t{Kind::keywords, {}};
  std::string_view rest = spec.substr(prefix.size());
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string word = text::to_lower(rest.substr(0, comma));
    if (!word.empty()) t.keywords.push_back(std::move(word));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  return t;
}

ClassMap tag_messages(const TemporalTextNetwork& net, const Tagger& tagger) {
  std::set<std::string> keywords;
  if (tagger.kind == Tagger::Kind::keywords) {
    for (const auto& k : tagger.keywords) keywords.insert(text::to_lower(k));
    if (keywords.empty()) throw Error(Errc::EmptyKeywordList, "keyword tagger needs keywords");
  }
  ClassMap out;
  for (const auto& [id, node] : net.messages()) {
    std::set<std::string> classes;
    if (tagger.kind == Tagger::Kind::hashtags) {
      classes = node.message.tags;
    } else {
      const auto tokens = text::tokenize(node.message.text);
      std::set_intersection(tokens.begin(), tokens.end(), keywords.begin(), keywords.end(),
                            std::inserter(classes, classes.end()));
    }
    if (classes.empty()) classes.insert(kNoClass);
    out.emplace(id, std::move(classes));
  }
  return out;
}

BinMap time_bins(const TemporalTextNetwork& net, std::int64_t width, std::optional<Timestamp> anchor) {
  if (width <= 0) throw Error(Errc::BadWidth, fmt::format("bin width {} is not positive", width));
  BinMap out;
  if (net.messages().empty()) return out;
  Timestamp origin;
  if (anchor) {
    origin = *anchor;
  } else {
    origin = net.production(net.messages().begin()->first).t;
    for (const auto& [id, node] : net.messages()) origin = std::min(origin, net.production(id).t);
  }
  for (const auto& [id, node] : net.messages()) {
    const std::int64_t offset = net.production(id).t.tick - origin.tick;
    std::int64_t bin = offset / width;
    if (offset % width != 0 && offset < 0) --bin;
    out.emplace(id, bin);
  }
  return out;
}

std::size_t KPartiteNetwork::num_copies() const {
  std::size_t n = 0;
  for (const auto& [label, copies] : partitions) n += copies.size();
  return n;
}

KPartiteNetwork discretize(const TemporalTextNetwork& net, const ClassMap& classes,
                           const std::optional<BinMap>& bins) {
  KPartiteNetwork kp;
  kp.actors = net.actors();
  for (const auto& [id, node] : net.messages()) {
    auto cls = classes.find(id);
    if (cls == classes.end())
      throw Error(Errc::UncoveredMessage, fmt::format("message '{}' has no text class", id.str()));
    std::optional<std::int64_t> bin;
    if (bins) {
      auto b = bins->find(id);
      if (b == bins->end())
        throw Error(Errc::UncoveredMessage, fmt::format("message '{}' has no time bin", id.str()));
      bin = b->second;
    }
    const ProductionEdge& production = net.production(id);
    for (const auto& c : cls->second)
      kp.partitions[LayerLabel{c, bin}].push_back({id, production, node.consumption});
  }
  return kp;
}

NetworkStats stats(const KPartiteNetwork& kp) {
  NetworkStats s{kp.actors.size(), kp.num_copies(), 0, kp.partitions.size() + 1};
  for (const auto& [label, copies] : kp.partitions)
    for (const auto& c : copies) s.num_edges += 1 + c.consumption.size();
  return s;
}

nlohmann::ordered_json to_json(const KPartiteNetwork& kp, const TemporalTextNetwork& source) {
  nlohmann::ordered_json doc = ttn::to_json(source);
  nlohmann::ordered_json layers = nlohmann::ordered_json::object();
  for (const auto& [label, copies] : kp.partitions) {
    std::vector<std::string> ids;
    for (const auto& c : copies) ids.push_back(c.id.str());
    std::sort(ids.begin(), ids.end());
    layers[to_string(label)] = ids;
  }
  doc["layers"] = std::move(layers);
  return doc;
}

std::set<ActorId> MultilayerActorNetwork::layer_nodes(const LayerLabel& label) const {
  std::set<ActorId> nodes;
  auto it = layers.find(label);
  if (it == layers.end()) return nodes;
  for (const auto& [edge, w] : it->second) {
    nodes.insert(edge.first);
    nodes.insert(edge.second);
  }
  return nodes;
}

std::size_t MultilayerActorNetwork::num_edges() const {
  std::size_t n = 0;
  for (const auto& [label, edges] : layers) n += edges.size();
  return n;
}

std::size_t MultilayerActorNetwork::num_nodes() const {
  std::size_t n = 0;
  for (const auto& [label, edges] : layers) n += layer_nodes(label).size();
  return n;
}

namespace {

EdgeWeights project_layer(const std::vector<MessageCopy>& copies, const ProjectionOptions& opts) {
  EdgeWeights edges;
  for (const auto& copy : copies) {
    const ActorId& from = copy.production.actor;
    for (const auto& c : copy.consumption) {
      if (c.actor == from) continue;
      auto key = (opts.directed || from < c.actor) ? std::pair{from, c.actor} : std::pair{c.actor, from};
      ++edges[key];
    }
  }
  if (!opts.weighted)
    for (auto& [edge, w] : edges) w = 1;
  return edges;
}

MultilayerActorNetwork empty_projection(const KPartiteNetwork& kp, const ProjectionOptions& opts) {
  MultilayerActorNetwork ml;
  ml.weighted = opts.weighted;
  ml.directed = opts.directed;
  ml.actors = kp.actors;
  return ml;
}

}  // namespace

MultilayerActorNetwork project(const KPartiteNetwork& kp, const ProjectionOptions& opts) {
  MultilayerActorNetwork ml = empty_projection(kp, opts);
  std::vector<const std::pair<const LayerLabel, std::vector<MessageCopy>>*> work;
  for (const auto& entry : kp.partitions) work.push_back(&entry);
  std::vector<EdgeWeights> results(work.size());

  const auto n = static_cast<std::ptrdiff_t>(work.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) results[i] = project_layer(work[i]->second, opts);

  for (std::size_t i = 0; i < work.size(); ++i)
    ml.layers.emplace(work[i]->first, std::move(results[i]));
  return ml;
}

namespace serial {

MultilayerActorNetwork project(const KPartiteNetwork& kp, const ProjectionOptions& opts) {
  MultilayerActorNetwork ml = empty_projection(kp, opts);
  for (const auto& [label, copies] : kp.partitions) {
    ml.layers.emplace(label, project_layer(copies, opts));
  }
  return ml;
}

}  // namespace serial

NetworkStats stats(const MultilayerActorNetwork& ml) {
  return {ml.actors.size(), 0, ml.num_edges(), ml.layers.size()};
}

std::string to_edge_list(const MultilayerActorNetwork& ml) {
  std::vector<std::string> rows;
  for (const auto& [label, edges] : ml.layers) {
    const std::string bin = label.time_bin ? std::to_string(*label.time_bin) : kAllBins;
    for (const auto& [edge, w] : edges)
      rows.push_back(fmt::format("{},{},{},{},{}", label.text_class, bin, edge.first.str(),
                                 edge.second.str(), w));
  }
  std::sort(rows.begin(), rows.end());
  std::string out = "layer_textclass,layer_bin,src,dst,weight\n";
  for (const auto& r : rows) out += r + "\n";
  return out;
}

}  // namespace ttn::discrete
