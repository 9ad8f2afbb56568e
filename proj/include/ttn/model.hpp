#pragma once

// Temporal text network: a directed bipartite actor/message graph whose
// edges carry time annotations and whose messages carry text.
//
// Invariants enforced by the add_* mutators:
//   * every message has exactly one production edge;
//   * a consumption edge is never earlier than the production of its message;
//   * recipients of a message form a set.
// Loaders use the insert_*_unchecked family, which records data verbatim so
// that validate() can report violations instead of losing them.

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ttn/error.hpp"
#include "ttn/ids.hpp"

namespace ttn {

struct Message {
  MessageId id;
  std::string text;
  std::set<std::string> tags;
};

struct ProductionEdge {
  ActorId actor;
  MessageId message;
  Timestamp t;

  friend bool operator==(const ProductionEdge&, const ProductionEdge&) = default;
};

struct ConsumptionEdge {
  MessageId message;
  ActorId actor;
  Timestamp t;

  friend bool operator==(const ConsumptionEdge&, const ConsumptionEdge&) = default;
};

enum class LinkKind { reply, repost };

std::string_view to_string(LinkKind kind);

struct MessageLink {
  MessageId src;
  MessageId dst;
  LinkKind kind;

  friend auto operator<=>(const MessageLink&, const MessageLink&) = default;
};

struct ActorLink {
  ActorId src;
  ActorId dst;
  std::string kind;

  friend auto operator<=>(const ActorLink&, const ActorLink&) = default;
};

/// A message node together with its incident edges.
struct MessageNode {
  Message message;
  std::vector<ProductionEdge> production;   // size 1 in any valid network
  std::vector<ConsumptionEdge> consumption;  // in insertion order
};

enum class ActorRole { producer, consumer, prosumer, isolate };
enum class CommType { unicast, multicast, broadcast };

std::string_view to_string(ActorRole role);
std::string_view to_string(CommType type);

struct Violation {
  enum class Kind {
    production_count,  // message without exactly one production edge
    time_order,        // consumption earlier than production
    unknown_actor,
    unknown_message,
    duplicate_recipient,
    self_link,
    repost_time,
  };
  Kind kind;
  std::string description;
};

std::string_view to_string(Violation::Kind kind);

using ValidationReport = std::vector<Violation>;

/// Table-style summary: |A|, |M|, |E| (production + consumption), |L|.
struct NetworkStats {
  std::size_t num_actors = 0;
  std::size_t num_messages = 0;
  std::size_t num_edges = 0;
  std::size_t num_partitions = 0;

  friend bool operator==(const NetworkStats&, const NetworkStats&) = default;
};

class TemporalTextNetwork {
 public:
  void add_actor(const ActorId& actor);

  /// Adds a message with its production edge. The sender is created if absent
  /// and hashtags of `text` become the message tags.
  const Message& add_message(const ActorId& sender, const MessageId& id, std::string text,
                             Timestamp t_send);

  void add_recipient(const MessageId& message, const ActorId& recipient, Timestamp t_recv);

  /// Reply links are unconstrained in time; a repost must not precede its source.
  void add_message_link(const MessageId& src, const MessageId& dst, LinkKind kind);

  void add_actor_link(const ActorId& src, const ActorId& dst, std::string kind);

  // Verbatim insertion for deserialization. No constraint is checked here.
  void insert_actor_unchecked(const ActorId& actor);
  /// Creates the message node if needed; keeps the first text/tags seen.
  MessageNode& insert_message_unchecked(Message message);
  void insert_production_unchecked(const ProductionEdge& edge);
  void insert_consumption_unchecked(const ConsumptionEdge& edge);
  void insert_message_link_unchecked(const MessageLink& link);
  void insert_actor_link_unchecked(const ActorLink& link);

  const std::set<ActorId>& actors() const noexcept { return actors_; }
  const std::map<MessageId, MessageNode>& messages() const noexcept { return messages_; }
  const std::set<MessageLink>& message_links() const noexcept { return message_links_; }
  const std::set<ActorLink>& actor_links() const noexcept { return actor_links_; }

  bool contains(const ActorId& actor) const { return actors_.contains(actor); }
  bool contains(const MessageId& message) const { return messages_.contains(message); }

  /// Throws Errc::UnknownMessage.
  const MessageNode& node(const MessageId& message) const;
  /// Producer of a message; throws if the message is unknown or has no producer.
  const ProductionEdge& production(const MessageId& message) const;

  std::vector<ProductionEdge> production_edges() const;
  std::vector<ConsumptionEdge> consumption_edges() const;
  std::size_t num_production_edges() const;
  std::size_t num_consumption_edges() const;

  bool empty() const noexcept { return actors_.empty() && messages_.empty(); }

 private:
  std::set<ActorId> actors_;
  std::map<MessageId, MessageNode> messages_;
  std::set<MessageLink> message_links_;
  std::set<ActorLink> actor_links_;
};

/// Lists every violated constraint with the offending element ids.
ValidationReport validate(const TemporalTextNetwork& net);

std::map<ActorId, ActorRole> actor_roles(const TemporalTextNetwork& net);

/// Throws UnknownMessage or NoRecipients.
CommType communication_type(const TemporalTextNetwork& net, const MessageId& message);

NetworkStats stats(const TemporalTextNetwork& net);

/// Union of two networks. Throws IdCollision if a message id occurs in both.
TemporalTextNetwork merge(const TemporalTextNetwork& a, const TemporalTextNetwork& b);

}  // namespace ttn
