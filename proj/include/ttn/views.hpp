#pragma once

// Lossy projections onto classical temporal-network models: contact
// sequences, time slices and pair-node memory graphs.

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ttn/model.hpp"

namespace ttn::views {

struct Contact {
  ActorId sender;
  ActorId recipient;
  Timestamp t_send;
  Timestamp t_recv;
  MessageId message;

  friend auto operator<=>(const Contact&, const Contact&) = default;
};

/// One contact per (message, recipient), sorted by (t_send, message, recipient).
std::vector<Contact> contact_sequence_view(const TemporalTextNetwork& net);

/// CSV `sender,recipient,t_send,t_recv,message` with header.
std::string contacts_to_csv(const std::vector<Contact>& contacts);

enum class SlicePolicy {
  production,       // production time inside the interval
  any_consumption,  // at least one reception inside the interval
  all_edges,        // production and every reception inside the interval
};

SlicePolicy parse_slice_policy(std::string_view name);
std::string_view to_string(SlicePolicy policy);

struct TimeSlice {
  Timestamp lo;  // inclusive
  Timestamp hi;  // exclusive
  TemporalTextNetwork network;
};

struct TimeSliceSeries {
  std::vector<Timestamp> cutpoints;
  std::vector<TimeSlice> slices;
};

/// Messages are kept whole (all their edges) in each slice they are assigned to.
/// Throws BadCutpoints unless there are >= 2 strictly ascending cutpoints.
TimeSliceSeries time_slice_view(const TemporalTextNetwork& net,
                                const std::vector<Timestamp>& cutpoints, SlicePolicy policy);

using ActorPair = std::pair<ActorId, ActorId>;

struct MemoryGraph {
  std::set<ActorPair> nodes;
  std::set<std::pair<ActorPair, ActorPair>> edges;  // ((j,i),(i,k))
};

/// Edge ((j,i),(i,k)) iff two distinct contacts j->i and i->k exist with
/// t_recv(first) <= t_send(second) <= t_recv(first) + delta. No delta means unbounded.
MemoryGraph memory_graph_view(const std::vector<Contact>& contacts,
                              std::optional<std::int64_t> delta);

/// Edge list with header, one `j>i,i>k` row per edge.
std::string memory_graph_to_csv(const MemoryGraph& g);
std::string memory_graph_to_dot(const MemoryGraph& g);

}  // namespace ttn::views
