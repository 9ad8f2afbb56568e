#include "ttn/model_json.hpp"

#include <algorithm>
#include <istream>

#include <fmt/format.h>

#include "ttn/text.hpp"

namespace ttn {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json to_json(const TemporalTextNetwork& net) {
  ordered_json doc;
  doc["actors"] = ordered_json::array();
  for (const auto& a : net.actors()) doc["actors"].push_back(a.str());

  ordered_json messages = ordered_json::array();
  for (const auto& [id, node] : net.messages()) {
    std::vector<ConsumptionEdge> recipients = node.consumption;
    std::sort(recipients.begin(), recipients.end(), [](const auto& x, const auto& y) {
      return std::tie(x.actor, x.t) < std::tie(y.actor, y.t);
    });
    auto entry = [&](const ProductionEdge* producer, bool with_recipients) {
      ordered_json m;
      m["id"] = id.str();
      m["text"] = node.message.text;
      m["tags"] = ordered_json::array();
      for (const auto& tag : node.message.tags) m["tags"].push_back(tag);
      m["sender"] = producer ? ordered_json(producer->actor.str()) : ordered_json(nullptr);
      m["t_send"] = producer ? ordered_json(producer->t.tick) : ordered_json(nullptr);
      m["recipients"] = ordered_json::array();
      if (with_recipients)
        for (const auto& r : recipients)
          m["recipients"].push_back({{"actor", r.actor.str()}, {"t_recv", r.t.tick}});
      return m;
    };
    // A message with several producers is written once per producer so the
    // violation survives a round trip.
    if (node.production.empty()) messages.push_back(entry(nullptr, true));
    for (std::size_t i = 0; i < node.production.size(); ++i)
      messages.push_back(entry(&node.production[i], i == 0));
  }
  doc["messages"] = std::move(messages);

  doc["message_links"] = ordered_json::array();
  for (const auto& l : net.message_links())
    doc["message_links"].push_back(
        {{"src", l.src.str()}, {"dst", l.dst.str()}, {"kind", std::string(to_string(l.kind))}});
  doc["actor_links"] = ordered_json::array();
  for (const auto& l : net.actor_links())
    doc["actor_links"].push_back({{"src", l.src.str()}, {"dst", l.dst.str()}, {"kind", l.kind}});
  return doc;
}

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::MalformedRecord, what); }

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) malformed(fmt::format("{} is not an object", where));
  auto it = obj.find(key);
  if (it == obj.end()) malformed(fmt::format("{} lacks field '{}'", where, key));
  return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) malformed(fmt::format("{}.{} is not a string", where, key));
  return v.get<std::string>();
}

std::int64_t int_value(const json& v, const std::string& where) {
  if (!v.is_number_integer()) malformed(fmt::format("{} is not an integer", where));
  return v.get<std::int64_t>();
}

const json& array_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_array()) malformed(fmt::format("{}.{} is not an array", where, key));
  return v;
}

LinkKind link_kind(const std::string& s, const std::string& where) {
  if (s == "reply") return LinkKind::reply;
  if (s == "repost") return LinkKind::repost;
  malformed(fmt::format("{}.kind '{}' is neither reply nor repost", where, s));
}

}  // namespace

TemporalTextNetwork network_from_json(const json& doc) {
  if (!doc.is_object()) malformed("network document is not an object");
  TemporalTextNetwork net;
  const json& actors = array_field(doc, "actors", "network");
  for (std::size_t i = 0; i < actors.size(); ++i) {
    if (!actors[i].is_string() || actors[i].get<std::string>().empty())
      malformed(fmt::format("actors[{}] is not a non-empty string", i));
    net.insert_actor_unchecked(ActorId{actors[i].get<std::string>()});
  }

  const json& messages = array_field(doc, "messages", "network");
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const std::string where = fmt::format("messages[{}]", i);
    const json& m = messages[i];
    MessageId id{string_field(m, "id", where)};
    if (id.empty()) malformed(where + ".id is empty");
    Message msg{id, string_field(m, "text", where), {}};
    if (auto it = m.find("tags"); it != m.end()) {
      if (!it->is_array()) malformed(where + ".tags is not an array");
      for (const auto& tag : *it) {
        if (!tag.is_string()) malformed(where + ".tags holds a non-string");
        msg.tags.insert(tag.get<std::string>());
      }
    } else {
      msg.tags = text::hashtags(msg.text);
    }
    net.insert_message_unchecked(std::move(msg));

    const json& sender = field(m, "sender", where);
    if (!sender.is_null()) {
      if (!sender.is_string() || sender.get<std::string>().empty())
        malformed(where + ".sender is not a non-empty string");
      const std::int64_t t = int_value(field(m, "t_send", where), where + ".t_send");
      net.insert_production_unchecked({ActorId{sender.get<std::string>()}, id, Timestamp{t}});
    }
    const json& recipients = array_field(m, "recipients", where);
    for (std::size_t r = 0; r < recipients.size(); ++r) {
      const std::string rw = fmt::format("{}.recipients[{}]", where, r);
      ActorId actor{string_field(recipients[r], "actor", rw)};
      if (actor.empty()) malformed(rw + ".actor is empty");
      const std::int64_t t = int_value(field(recipients[r], "t_recv", rw), rw + ".t_recv");
      net.insert_consumption_unchecked({id, actor, Timestamp{t}});
    }
  }

  if (auto it = doc.find("message_links"); it != doc.end()) {
    if (!it->is_array()) malformed("network.message_links is not an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = fmt::format("message_links[{}]", i);
      const json& l = (*it)[i];
      net.insert_message_link_unchecked({MessageId{string_field(l, "src", where)},
                                         MessageId{string_field(l, "dst", where)},
                                         link_kind(string_field(l, "kind", where), where)});
    }
  }
  if (auto it = doc.find("actor_links"); it != doc.end()) {
    if (!it->is_array()) malformed("network.actor_links is not an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = fmt::format("actor_links[{}]", i);
      const json& l = (*it)[i];
      net.insert_actor_link_unchecked({ActorId{string_field(l, "src", where)},
                                       ActorId{string_field(l, "dst", where)},
                                       string_field(l, "kind", where)});
    }
  }
  return net;
}

std::string dump_network(const TemporalTextNetwork& net) { return to_json(net).dump(2) + "\n"; }

TemporalTextNetwork read_network(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    malformed(fmt::format("invalid JSON: {}", e.what()));
  }
  return network_from_json(doc);
}

}  // namespace ttn
