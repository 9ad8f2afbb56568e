#pragma once

// Distance-based analysis of messages: a composite distance mixing network
// topology, production time and text, plus retrieval and k-medoids clustering.
//
//   d(m_i, m_j) = w_topo * min(hops, cap) / cap
//               + w_time * |t_i - t_j| / R
//               + w_text * textdist(tokens_i, tokens_j)
//               (+ asym_penalty when t_j < t_i)
//
// hops is the undirected shortest path between the two message nodes in the
// actor/message graph (unreachable counts as cap) and R the production-time
// range of the corpus (R = 0 makes the time term vanish). With Jaccard text
// distance and no penalty every term is a pseudometric, hence so is d.

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ttn/model.hpp"

namespace ttn::continuous {

enum class TextMetric { jaccard, cosine };

TextMetric parse_text_metric(std::string_view name);

struct DistanceConfig {
  double w_topo = 1.0 / 3.0;
  double w_time = 1.0 / 3.0;
  double w_text = 1.0 / 3.0;
  int topo_cap = 6;
  double asym_penalty = 0.0;
  TextMetric text_metric = TextMetric::jaccard;

  /// Throws BadConfig unless weights are a simplex (1e-9), cap >= 1, penalty >= 0.
  void check() const;
  bool symmetric() const noexcept { return asym_penalty == 0.0; }
};

double jaccard_distance(const std::set<std::string>& a, const std::set<std::string>& b);
/// Binary cosine distance over token sets; both empty gives 0.
double cosine_distance(const std::set<std::string>& a, const std::set<std::string>& b);

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::vector<MessageId> ids);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<MessageId>& ids() const noexcept { return ids_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * ids_.size() + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return d_[i * ids_.size() + j]; }
  std::span<const double> row(std::size_t i) const { return {d_.data() + i * ids_.size(), ids_.size()}; }
  std::span<double> row(std::size_t i) { return {d_.data() + i * ids_.size(), ids_.size()}; }

  /// Exact element-wise symmetry.
  bool is_symmetric() const noexcept;

 private:
  std::vector<MessageId> ids_;
  std::vector<double> d_;
};

double pairwise_distance(const TemporalTextNetwork& net, const MessageId& a, const MessageId& b,
                         const DistanceConfig& cfg);

/// One breadth-first search per source row; rows are computed in parallel.
DistanceMatrix distance_matrix(const TemporalTextNetwork& net, const std::vector<MessageId>& ids,
                               const DistanceConfig& cfg);

/// Every message id in sorted order.
std::vector<MessageId> all_message_ids(const TemporalTextNetwork& net);

/// CSV with a header row and column of ids; values in shortest round-trip form.
std::string to_csv(const DistanceMatrix& dm);

struct Query {
  std::set<std::string> tokens;
  Timestamp t;
};

struct Neighbor {
  MessageId id;
  double distance;
};

/// Closest messages to a free query. The query has no graph position, so the
/// topology weight is shared between time and text in proportion to their
/// weights. Query time offsets are clamped to the corpus range. Ties by id.
std::vector<Neighbor> nearest(const TemporalTextNetwork& net, const Query& query, std::size_t k,
                              const DistanceConfig& cfg);

struct Clustering {
  std::vector<MessageId> medoids;          // cluster c has medoid medoids[c]; sorted by id
  std::map<MessageId, int> assignment;
  double objective = 0.0;                  // sum of distances to assigned medoid
  std::vector<double> trace;               // objective after BUILD and after each swap
  int iterations = 0;                      // swaps performed
};

/// PAM: greedy BUILD, then best-improvement swaps until no swap lowers the
/// objective or max_iter swaps have been made. Ties go to the lowest index.
/// Both phases are deterministic; `seed` is accepted for interface stability
/// and does not influence the result. Throws BadK, AsymmetricMatrix.
Clustering cluster_kmedoids(const DistanceMatrix& dm, std::size_t k, std::uint64_t seed = 0,
                            int max_iter = 100);

/// Objective of a fixed medoid set (indices into dm).
double medoid_objective(const DistanceMatrix& dm, std::span<const std::size_t> medoids);

/// CSV `message,cluster`.
std::string to_csv(const Clustering& c);

namespace serial {

/// Single-threaded reference of continuous::distance_matrix.
DistanceMatrix distance_matrix(const TemporalTextNetwork& net, const std::vector<MessageId>& ids,
                               const DistanceConfig& cfg);

}  // namespace serial

}  // namespace ttn::continuous
