#include "ttn/views.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <fmt/format.h>

namespace ttn::views {

std::vector<Contact> contact_sequence_view(const TemporalTextNetwork& net) {
  std::vector<Contact> out;
  out.reserve(net.num_consumption_edges());
  for (const auto& [id, node] : net.messages()) {
    if (node.production.empty()) continue;
    const ProductionEdge& p = node.production.front();
    for (const auto& c : node.consumption) out.push_back({p.actor, c.actor, p.t, c.t, id});
  }
  std::sort(out.begin(), out.end(), [](const Contact& a, const Contact& b) {
    return std::tie(a.t_send, a.message, a.recipient) < std::tie(b.t_send, b.message, b.recipient);
  });
  return out;
}

std::string contacts_to_csv(const std::vector<Contact>& contacts) {
  std::string out = "sender,recipient,t_send,t_recv,message\n";
  for (const auto& c : contacts)
    out += fmt::format("{},{},{},{},{}\n", c.sender.str(), c.recipient.str(), c.t_send.tick,
                       c.t_recv.tick, c.message.str());
  return out;
}

SlicePolicy parse_slice_policy(std::string_view name) {
  if (name == "production") return SlicePolicy::production;
  if (name == "any_consumption") return SlicePolicy::any_consumption;
  if (name == "all_edges") return SlicePolicy::all_edges;
  throw Error(Errc::BadConfig, fmt::format("unknown slice policy '{}'", name));
}

std::string_view to_string(SlicePolicy policy) {
  switch (policy) {
    case SlicePolicy::production: return "production";
    case SlicePolicy::any_consumption: return "any_consumption";
    case SlicePolicy::all_edges: return "all_edges";
  }
  return "?";
}

namespace {

// Index of the half-open interval holding t, if any.
std::optional<std::size_t> interval_of(const std::vector<Timestamp>& cuts, Timestamp t) {
  if (t < cuts.front() || t >= cuts.back()) return std::nullopt;
  auto it = std::upper_bound(cuts.begin(), cuts.end(), t);
  return static_cast<std::size_t>(it - cuts.begin()) - 1;
}

std::set<std::size_t> assigned_slices(const MessageNode& node, const std::vector<Timestamp>& cuts,
                                      SlicePolicy policy) {
  std::set<std::size_t> out;
  const Timestamp t_send = node.production.front().t;
  switch (policy) {
    case SlicePolicy::production:
      if (auto i = interval_of(cuts, t_send)) out.insert(*i);
      break;
    case SlicePolicy::any_consumption:
      for (const auto& c : node.consumption)
        if (auto i = interval_of(cuts, c.t)) out.insert(*i);
      break;
    case SlicePolicy::all_edges: {
      auto i = interval_of(cuts, t_send);
      if (!i) break;
      const bool inside = std::all_of(node.consumption.begin(), node.consumption.end(),
                                      [&](const ConsumptionEdge& c) { return interval_of(cuts, c.t) == i; });
      if (inside) out.insert(*i);
      break;
    }
  }
  return out;
}

}  // namespace

TimeSliceSeries time_slice_view(const TemporalTextNetwork& net,
                                const std::vector<Timestamp>& cutpoints, SlicePolicy policy) {
  if (cutpoints.size() < 2) throw Error(Errc::BadCutpoints, "need at least two cutpoints");
  for (std::size_t i = 1; i < cutpoints.size(); ++i)
    if (!(cutpoints[i - 1] < cutpoints[i]))
      throw Error(Errc::BadCutpoints, fmt::format("cutpoints not strictly ascending at index {}", i));

  TimeSliceSeries series;
  series.cutpoints = cutpoints;
  for (std::size_t i = 0; i + 1 < cutpoints.size(); ++i)
    series.slices.push_back({cutpoints[i], cutpoints[i + 1], {}});

  for (const auto& [id, node] : net.messages()) {
    if (node.production.empty()) continue;
    for (std::size_t i : assigned_slices(node, cutpoints, policy)) {
      TemporalTextNetwork& slice = series.slices[i].network;
      const ProductionEdge& p = node.production.front();
      slice.insert_actor_unchecked(p.actor);
      MessageNode& copy = slice.insert_message_unchecked(node.message);
      copy.production.push_back(p);
      for (const auto& c : node.consumption) {
        slice.insert_actor_unchecked(c.actor);
        copy.consumption.push_back(c);
      }
    }
  }
  for (auto& slice : series.slices) {
    TemporalTextNetwork& sub = slice.network;
    for (const auto& l : net.message_links())
      if (sub.contains(l.src) && sub.contains(l.dst)) sub.insert_message_link_unchecked(l);
    for (const auto& l : net.actor_links())
      if (sub.contains(l.src) && sub.contains(l.dst)) sub.insert_actor_link_unchecked(l);
  }
  return series;
}

MemoryGraph memory_graph_view(const std::vector<Contact>& contacts,
                              std::optional<std::int64_t> delta) {
  if (delta && *delta < 0) throw Error(Errc::BadConfig, "memory window must be non-negative");
  MemoryGraph g;
  // Outgoing contacts per sender, ordered by send time.
  std::map<ActorId, std::vector<std::size_t>> outgoing;
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    g.nodes.insert({contacts[i].sender, contacts[i].recipient});
    outgoing[contacts[i].sender].push_back(i);
  }
  for (auto& [actor, idx] : outgoing)
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return contacts[a].t_send < contacts[b].t_send;
    });

  for (std::size_t first = 0; first < contacts.size(); ++first) {
    const Contact& in = contacts[first];
    auto it = outgoing.find(in.recipient);
    if (it == outgoing.end()) continue;
    const std::int64_t lo = in.t_recv.tick;
    const std::int64_t hi = delta ? (lo > std::numeric_limits<std::int64_t>::max() - *delta
                                         ? std::numeric_limits<std::int64_t>::max()
                                         : lo + *delta)
                                  : std::numeric_limits<std::int64_t>::max();
    const auto& idx = it->second;
    auto from = std::lower_bound(idx.begin(), idx.end(), lo, [&](std::size_t c, std::int64_t t) {
      return contacts[c].t_send.tick < t;
    });
    for (auto c = from; c != idx.end() && contacts[*c].t_send.tick <= hi; ++c) {
      if (*c == first) continue;
      const Contact& out = contacts[*c];
      g.edges.insert({{in.sender, in.recipient}, {out.sender, out.recipient}});
    }
  }
  return g;
}

std::string memory_graph_to_csv(const MemoryGraph& g) {
  std::string out = "from,to\n";
  for (const auto& [a, b] : g.edges)
    out += fmt::format("{}>{},{}>{}\n", a.first.str(), a.second.str(), b.first.str(), b.second.str());
  return out;
}

std::string memory_graph_to_dot(const MemoryGraph& g) {
  std::string out = "digraph memory {\n";
  for (const auto& [j, i] : g.nodes) out += fmt::format("  \"{}>{}\";\n", j.str(), i.str());
  for (const auto& [a, b] : g.edges)
    out += fmt::format("  \"{}>{}\" -> \"{}>{}\";\n", a.first.str(), a.second.str(), b.first.str(),
                       b.second.str());
  out += "}\n";
  return out;
}

}  // namespace ttn::views
