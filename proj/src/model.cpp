#include "ttn/model.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "ttn/text.hpp"

namespace ttn {

std::string_view to_string(LinkKind kind) {
  return kind == LinkKind::reply ? "reply" : "repost";
}

std::string_view to_string(ActorRole role) {
  switch (role) {
    case ActorRole::producer: return "producer";
    case ActorRole::consumer: return "consumer";
    case ActorRole::prosumer: return "prosumer";
    case ActorRole::isolate: return "isolate";
  }
  return "?";
}

std::string_view to_string(CommType type) {
  switch (type) {
    case CommType::unicast: return "unicast";
    case CommType::multicast: return "multicast";
    case CommType::broadcast: return "broadcast";
  }
  return "?";
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::production_count: return "production-count";
    case Violation::Kind::time_order: return "time-order";
    case Violation::Kind::unknown_actor: return "unknown-actor";
    case Violation::Kind::unknown_message: return "unknown-message";
    case Violation::Kind::duplicate_recipient: return "duplicate-recipient";
    case Violation::Kind::self_link: return "self-link";
    case Violation::Kind::repost_time: return "repost-time";
  }
  return "?";
}

namespace {

void require_id(const std::string& id, std::string_view what) {
  if (id.empty()) throw Error(Errc::EmptyId, fmt::format("empty {} id", what));
}

}  // namespace

void TemporalTextNetwork::add_actor(const ActorId& actor) {
  require_id(actor.str(), "actor");
  actors_.insert(actor);
}

const Message& TemporalTextNetwork::add_message(const ActorId& sender, const MessageId& id,
                                                std::string text, Timestamp t_send) {
  require_id(sender.str(), "actor");
  require_id(id.str(), "message");
  if (messages_.contains(id))
    throw Error(Errc::DuplicateMessageId, fmt::format("message '{}' already exists", id.str()));
  actors_.insert(sender);
  MessageNode node;
  node.message.id = id;
  node.message.tags = text::hashtags(text);
  node.message.text = std::move(text);
  node.production.push_back({sender, id, t_send});
  return messages_.emplace(id, std::move(node)).first->second.message;
}

void TemporalTextNetwork::add_recipient(const MessageId& message, const ActorId& recipient,
                                        Timestamp t_recv) {
  require_id(recipient.str(), "actor");
  auto it = messages_.find(message);
  if (it == messages_.end())
    throw Error(Errc::UnknownMessage, fmt::format("unknown message '{}'", message.str()));
  MessageNode& node = it->second;
  const ProductionEdge& prod = production(message);
  if (t_recv < prod.t)
    throw Error(Errc::TimeOrderViolation,
                fmt::format("consumption ({},{},{}) precedes production ({},{},{})", message.str(),
                            recipient.str(), t_recv.tick, prod.actor.str(), message.str(),
                            prod.t.tick));
  for (const auto& e : node.consumption)
    if (e.actor == recipient)
      throw Error(Errc::DuplicateRecipient,
                  fmt::format("'{}' already receives '{}'", recipient.str(), message.str()));
  actors_.insert(recipient);
  node.consumption.push_back({message, recipient, t_recv});
}

void TemporalTextNetwork::add_message_link(const MessageId& src, const MessageId& dst,
                                           LinkKind kind) {
  const Timestamp t_src = production(src).t;
  const Timestamp t_dst = production(dst).t;
  if (src == dst) throw Error(Errc::SelfLink, fmt::format("message '{}' links to itself", src.str()));
  if (kind == LinkKind::repost && t_src < t_dst)
    throw Error(Errc::RepostTimeViolation,
                fmt::format("repost '{}' (t={}) precedes its source '{}' (t={})", src.str(),
                            t_src.tick, dst.str(), t_dst.tick));
  message_links_.insert({src, dst, kind});
}

void TemporalTextNetwork::add_actor_link(const ActorId& src, const ActorId& dst, std::string kind) {
  add_actor(src);
  add_actor(dst);
  actor_links_.insert({src, dst, std::move(kind)});
}

void TemporalTextNetwork::insert_actor_unchecked(const ActorId& actor) { actors_.insert(actor); }

MessageNode& TemporalTextNetwork::insert_message_unchecked(Message message) {
  auto [it, inserted] = messages_.try_emplace(message.id);
  if (inserted) it->second.message = std::move(message);
  return it->second;
}

void TemporalTextNetwork::insert_production_unchecked(const ProductionEdge& edge) {
  insert_message_unchecked(Message{edge.message, {}, {}}).production.push_back(edge);
}

void TemporalTextNetwork::insert_consumption_unchecked(const ConsumptionEdge& edge) {
  insert_message_unchecked(Message{edge.message, {}, {}}).consumption.push_back(edge);
}

void TemporalTextNetwork::insert_message_link_unchecked(const MessageLink& link) {
  message_links_.insert(link);
}

void TemporalTextNetwork::insert_actor_link_unchecked(const ActorLink& link) {
  actor_links_.insert(link);
}

const MessageNode& TemporalTextNetwork::node(const MessageId& message) const {
  auto it = messages_.find(message);
  if (it == messages_.end())
    throw Error(Errc::UnknownMessage, fmt::format("unknown message '{}'", message.str()));
  return it->second;
}

const ProductionEdge& TemporalTextNetwork::production(const MessageId& message) const {
  const MessageNode& n = node(message);
  if (n.production.empty())
    throw Error(Errc::UnknownMessage, fmt::format("message '{}' has no producer", message.str()));
  return n.production.front();
}

std::vector<ProductionEdge> TemporalTextNetwork::production_edges() const {
  std::vector<ProductionEdge> out;
  for (const auto& [id, n] : messages_) out.insert(out.end(), n.production.begin(), n.production.end());
  return out;
}

std::vector<ConsumptionEdge> TemporalTextNetwork::consumption_edges() const {
  std::vector<ConsumptionEdge> out;
  for (const auto& [id, n] : messages_)
    out.insert(out.end(), n.consumption.begin(), n.consumption.end());
  return out;
}

std::size_t TemporalTextNetwork::num_production_edges() const {
  std::size_t n = 0;
  for (const auto& [id, node] : messages_) n += node.production.size();
  return n;
}

std::size_t TemporalTextNetwork::num_consumption_edges() const {
  std::size_t n = 0;
  for (const auto& [id, node] : messages_) n += node.consumption.size();
  return n;
}

ValidationReport validate(const TemporalTextNetwork& net) {
  ValidationReport report;
  auto add = [&](Violation::Kind kind, std::string text) {
    report.push_back({kind, std::move(text)});
  };
  for (const auto& [id, n] : net.messages()) {
    if (n.production.size() != 1)
      add(Violation::Kind::production_count,
          fmt::format("message '{}' has {} production edges", id.str(), n.production.size()));
    for (const auto& p : n.production)
      if (!net.contains(p.actor))
        add(Violation::Kind::unknown_actor,
            fmt::format("production edge ({},{},{}) names unknown actor '{}'", p.actor.str(),
                        id.str(), p.t.tick, p.actor.str()));
    std::set<ActorId> seen;
    for (const auto& c : n.consumption) {
      if (!net.contains(c.actor))
        add(Violation::Kind::unknown_actor,
            fmt::format("consumption edge ({},{},{}) names unknown actor '{}'", id.str(),
                        c.actor.str(), c.t.tick, c.actor.str()));
      if (!seen.insert(c.actor).second)
        add(Violation::Kind::duplicate_recipient,
            fmt::format("consumption edge ({},{},{}) duplicates recipient '{}'", id.str(),
                        c.actor.str(), c.t.tick, c.actor.str()));
      for (const auto& p : n.production)
        if (c.t < p.t)
          add(Violation::Kind::time_order,
              fmt::format("consumption edge ({},{},{}) precedes production edge ({},{},{})",
                          id.str(), c.actor.str(), c.t.tick, p.actor.str(), id.str(), p.t.tick));
    }
  }
  for (const auto& link : net.message_links()) {
    const bool src_known = net.contains(link.src), dst_known = net.contains(link.dst);
    if (!src_known || !dst_known) {
      add(Violation::Kind::unknown_message,
          fmt::format("{} link ({},{}) names unknown message '{}'", to_string(link.kind),
                      link.src.str(), link.dst.str(), (!src_known ? link.src : link.dst).str()));
      continue;
    }
    if (link.src == link.dst) {
      add(Violation::Kind::self_link,
          fmt::format("{} link ({},{}) is a self link", to_string(link.kind), link.src.str(),
                      link.dst.str()));
      continue;
    }
    if (link.kind != LinkKind::repost) continue;
    const auto& s = net.node(link.src).production;
    const auto& d = net.node(link.dst).production;
    if (s.size() == 1 && d.size() == 1 && s.front().t < d.front().t)
      add(Violation::Kind::repost_time,
          fmt::format("repost link ({},{}) points forward in time ({} < {})", link.src.str(),
                      link.dst.str(), s.front().t.tick, d.front().t.tick));
  }
  for (const auto& link : net.actor_links()) {
    for (const ActorId* a : {&link.src, &link.dst})
      if (!net.contains(*a))
        add(Violation::Kind::unknown_actor,
            fmt::format("actor link ({},{},{}) names unknown actor '{}'", link.src.str(),
                        link.dst.str(), link.kind, a->str()));
  }
  return report;
}

std::map<ActorId, ActorRole> actor_roles(const TemporalTextNetwork& net) {
  std::map<ActorId, std::pair<std::size_t, std::size_t>> degree;
  for (const auto& a : net.actors()) degree[a];
  for (const auto& [id, n] : net.messages()) {
    for (const auto& p : n.production) ++degree[p.actor].first;
    for (const auto& c : n.consumption) ++degree[c.actor].second;
  }
  std::map<ActorId, ActorRole> roles;
  for (const auto& [actor, d] : degree) {
    const auto [out, in] = d;
    roles[actor] = out > 0 ? (in > 0 ? ActorRole::prosumer : ActorRole::producer)
                           : (in > 0 ? ActorRole::consumer : ActorRole::isolate);
  }
  return roles;
}

CommType communication_type(const TemporalTextNetwork& net, const MessageId& message) {
  const MessageNode& n = net.node(message);
  if (n.consumption.empty())
    throw Error(Errc::NoRecipients, fmt::format("message '{}' has no recipients", message.str()));
  std::set<ActorId> recipients;
  for (const auto& c : n.consumption) recipients.insert(c.actor);
  if (recipients.size() == 1) return CommType::unicast;
  std::set<ActorId> others = net.actors();
  for (const auto& p : n.production) others.erase(p.actor);
  return recipients == others ? CommType::broadcast : CommType::multicast;
}

NetworkStats stats(const TemporalTextNetwork& net) {
  return {net.actors().size(), net.messages().size(),
          net.num_production_edges() + net.num_consumption_edges(), 2};
}

TemporalTextNetwork merge(const TemporalTextNetwork& a, const TemporalTextNetwork& b) {
  for (const auto& [id, n] : b.messages())
    if (a.contains(id))
      throw Error(Errc::IdCollision, fmt::format("message id '{}' occurs in both inputs", id.str()));
  TemporalTextNetwork out = a;
  for (const auto& actor : b.actors()) out.insert_actor_unchecked(actor);
  for (const auto& [id, n] : b.messages()) {
    MessageNode& dst = out.insert_message_unchecked(n.message);
    dst.production = n.production;
    dst.consumption = n.consumption;
  }
  for (const auto& l : b.message_links()) out.insert_message_link_unchecked(l);
  for (const auto& l : b.actor_links()) out.insert_actor_link_unchecked(l);
  return out;
}

}  // namespace ttn
