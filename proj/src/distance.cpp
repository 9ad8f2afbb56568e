#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <fmt/format.h>

#include "ttn/continuous.hpp"
#include "ttn/text.hpp"

namespace ttn::continuous {

TextMetric parse_text_metric(std::string_view name) {
  if (name == "jaccard") return TextMetric::jaccard;
  if (name == "cosine") return TextMetric::cosine;
  throw Error(Errc::BadConfig, fmt::format("unknown text metric '{}'", name));
}

void DistanceConfig::check() const {
  for (double w : {w_topo, w_time, w_text})
    if (!(w >= 0.0)) throw Error(Errc::BadConfig, "distance weights must be non-negative");
  if (std::abs(w_topo + w_time + w_text - 1.0) > 1e-9)
    throw Error(Errc::BadConfig, fmt::format("distance weights sum to {}, not 1",
                                             w_topo + w_time + w_text));
  if (topo_cap < 1) throw Error(Errc::BadConfig, "topology cap must be >= 1");
  if (!(asym_penalty >= 0.0)) throw Error(Errc::BadConfig, "asymmetry penalty must be >= 0");
}

double jaccard_distance(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end() && ib != b.end();) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else { ++common; ++ia; ++ib; }
  }
  const std::size_t uni = a.size() + b.size() - common;
  return 1.0 - static_cast<double>(common) / static_cast<double>(uni);
}

double cosine_distance(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& t : a) common += b.count(t);
  return 1.0 - static_cast<double>(common) / std::sqrt(static_cast<double>(a.size() * b.size()));
}

DistanceMatrix::DistanceMatrix(std::vector<MessageId> ids)
    : ids_(std::move(ids)), d_(ids_.size() * ids_.size(), 0.0) {}

bool DistanceMatrix::is_symmetric() const noexcept {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

std::vector<MessageId> all_message_ids(const TemporalTextNetwork& net) {
  std::vector<MessageId> ids;
  ids.reserve(net.messages().size());
  for (const auto& [id, node] : net.messages()) ids.push_back(id);
  return ids;
}

namespace {

// Flattened view of the corpus: messages are nodes [0, M), actors [M, M+A).
class Corpus {
 public:
  Corpus(const TemporalTextNetwork& net, const DistanceConfig& cfg) : cfg_(cfg) {
    cfg_.check();
    for (const auto& [id, node] : net.messages()) {
      index_.emplace(id, times_.size());
      times_.push_back(net.production(id).t.tick);
      tokens_.push_back(text::tokenize(node.message.text));
    }
    const std::size_t m = times_.size();
    std::unordered_map<ActorId, std::size_t> actor_index;
    for (const auto& a : net.actors()) actor_index.emplace(a, m + actor_index.size());
    adjacency_.resize(m + actor_index.size());
    auto link = [&](std::size_t a, std::size_t b) {
      adjacency_[a].push_back(b);
      adjacency_[b].push_back(a);
    };
    for (const auto& [id, node] : net.messages()) {
      const std::size_t mi = index_.at(id);
      for (const auto& p : node.production) link(mi, actor_index.at(p.actor));
      for (const auto& c : node.consumption) link(mi, actor_index.at(c.actor));
    }
    if (m > 0) {
      const auto [lo, hi] = std::minmax_element(times_.begin(), times_.end());
      range_ = static_cast<double>(*hi - *lo);
    }
  }

  std::size_t index(const MessageId& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
      throw Error(Errc::UnknownMessage, fmt::format("unknown message '{}'", id.str()));
    return it->second;
  }

  // Hop counts from a message node, capped at topo_cap.
  std::vector<int> hops_from(std::size_t source) const {
    const int cap = cfg_.topo_cap;
    std::vector<int> dist(adjacency_.size(), cap);
    std::vector<std::size_t> frontier{source}, next;
    dist[source] = 0;
    for (int depth = 1; depth < cap && !frontier.empty(); ++depth) {
      next.clear();
      for (std::size_t u : frontier)
        for (std::size_t v : adjacency_[u])
          if (dist[v] == cap && v != source) {
            dist[v] = depth;
            next.push_back(v);
          }
      frontier.swap(next);
    }
    return dist;
  }

  double text_distance(std::size_t i, std::size_t j) const {
    return text_distance(tokens_[i], tokens_[j]);
  }
  double text_distance(const std::set<std::string>& a, const std::set<std::string>& b) const {
    return cfg_.text_metric == TextMetric::jaccard ? jaccard_distance(a, b) : cosine_distance(a, b);
  }

  double time_distance(std::int64_t a, std::int64_t b) const {
    if (range_ == 0.0) return 0.0;
    return std::min(1.0, std::abs(static_cast<double>(a - b)) / range_);
  }

  double distance(std::size_t i, std::size_t j, int hops) const {
    if (i == j) return 0.0;
    const double topo = static_cast<double>(std::min(hops, cfg_.topo_cap)) / cfg_.topo_cap;
    double d = cfg_.w_topo * topo + cfg_.w_time * time_distance(times_[i], times_[j]) +
               cfg_.w_text * text_distance(i, j);
    if (times_[j] < times_[i]) d += cfg_.asym_penalty;
    return d;
  }

  void fill_row(std::size_t i, const std::vector<std::size_t>& targets, std::span<double> out) const {
    const std::vector<int> hops = hops_from(i);
    for (std::size_t c = 0; c < targets.size(); ++c) out[c] = distance(i, targets[c], hops[targets[c]]);
  }

  const DistanceConfig& config() const { return cfg_; }
  std::size_t num_messages() const { return times_.size(); }
  std::int64_t time(std::size_t i) const { return times_[i]; }
  const std::set<std::string>& tokens(std::size_t i) const { return tokens_[i]; }

 private:
  DistanceConfig cfg_;
  std::map<MessageId, std::size_t> index_;
  std::vector<std::int64_t> times_;
  std::vector<std::set<std::string>> tokens_;
  std::vector<std::vector<std::size_t>> adjacency_;
  double range_ = 0.0;
};

std::vector<std::size_t> resolve(const Corpus& corpus, const std::vector<MessageId>& ids) {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(corpus.index(id));
  return out;
}

}  // namespace

double pairwise_distance(const TemporalTextNetwork& net, const MessageId& a, const MessageId& b,
                         const DistanceConfig& cfg) {
  const Corpus corpus(net, cfg);
  const std::size_t i = corpus.index(a), j = corpus.index(b);
  return corpus.distance(i, j, corpus.hops_from(i)[j]);
}

DistanceMatrix distance_matrix(const TemporalTextNetwork& net, const std::vector<MessageId>& ids,
                               const DistanceConfig& cfg) {
  const Corpus corpus(net, cfg);
  const std::vector<std::size_t> targets = resolve(corpus, ids);
  DistanceMatrix dm(ids);
  const auto n = static_cast<std::ptrdiff_t>(targets.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t r = 0; r < n; ++r) corpus.fill_row(targets[r], targets, dm.row(r));
  return dm;
}

namespace serial {

DistanceMatrix distance_matrix(const TemporalTextNetwork& net, const std::vector<MessageId>& ids,
                               const DistanceConfig& cfg) {
  const Corpus corpus(net, cfg);
  const std::vector<std::size_t> targets = resolve(corpus, ids);
  DistanceMatrix dm(ids);
  for (std::size_t r = 0; r < targets.size(); ++r) corpus.fill_row(targets[r], targets, dm.row(r));
  return dm;
}

}  // namespace serial

std::string to_csv(const DistanceMatrix& dm) {
  std::string out = "id";
  for (const auto& id : dm.ids()) out += "," + id.str();
  out += "\n";
  for (std::size_t i = 0; i < dm.size(); ++i) {
    out += dm.ids()[i].str();
    for (double v : dm.row(i)) out += fmt::format(",{}", v);
    out += "\n";
  }
  return out;
}

std::vector<Neighbor> nearest(const TemporalTextNetwork& net, const Query& query, std::size_t k,
                              const DistanceConfig& cfg) {
  if (k < 1) throw Error(Errc::BadK, "nearest needs k >= 1");
  if (net.messages().empty()) throw Error(Errc::EmptyNetwork, "no messages to search");
  const Corpus corpus(net, cfg);
  double w_time = cfg.w_time, w_text = cfg.w_text;
  if (const double rest = w_time + w_text; rest > 0.0) {
    w_time += cfg.w_topo * cfg.w_time / rest;
    w_text += cfg.w_topo * cfg.w_text / rest;
  } else {
    w_time = w_text = 0.5;
  }
  std::vector<Neighbor> out;
  const auto ids = all_message_ids(net);
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i)
    out.push_back({ids[i], w_time * corpus.time_distance(query.t.tick, corpus.time(i)) +
                               w_text * corpus.text_distance(query.tokens, corpus.tokens(i))});
  std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
  });
  out.resize(std::min(k, out.size()));
  return out;
}

}  // namespace ttn::continuous
