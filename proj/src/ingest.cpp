#include "ttn/ingest.hpp"

#include <charconv>
#include <fstream>
#include <optional>

#include <fmt/format.h>
#include <json.hpp>

#include "ttn/model_json.hpp"
#include "ttn/text.hpp"

namespace ttn::ingest {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(Errc::MalformedRecord, what, line);
}

// Reads non-blank lines, numbering them from 1 in file order.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  }
  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

// One file uses either integer ticks or ISO-8601 strings, never both.
class TimeReader {
 public:
  Timestamp read(const json& v, std::size_t line, std::string_view field) {
    if (v.is_number_integer()) {
      settle(Mode::ticks, line);
      return Timestamp{v.get<std::int64_t>()};
    }
    if (v.is_string()) {
      auto ms = text::parse_iso8601_ms(v.get<std::string>());
      if (!ms) malformed(line, fmt::format("{} '{}' is not ISO-8601", field, v.get<std::string>()));
      settle(Mode::iso, line);
      return Timestamp{*ms};
    }
    malformed(line, fmt::format("{} is neither an integer nor an ISO-8601 string", field));
  }

 private:
  enum class Mode { unset, ticks, iso };
  void settle(Mode m, std::size_t line) {
    if (mode_ == Mode::unset) mode_ = m;
    if (mode_ != m)
      throw Error(Errc::MixedTimeFormats, "integer ticks and ISO-8601 times in one file", line);
  }
  Mode mode_ = Mode::unset;
};

json parse_line(const std::string& line, std::size_t number) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    malformed(number, fmt::format("invalid JSON: {}", e.what()));
  }
  if (!record.is_object()) malformed(number, "record is not an object");
  return record;
}

std::string required_string(const json& r, const char* key, std::size_t line) {
  auto it = r.find(key);
  if (it == r.end() || !it->is_string()) malformed(line, fmt::format("missing string field '{}'", key));
  std::string s = it->get<std::string>();
  if (s.empty()) malformed(line, fmt::format("field '{}' is empty", key));
  return s;
}

std::optional<std::string> optional_string(const json& r, const char* key, std::size_t line) {
  auto it = r.find(key);
  if (it == r.end() || it->is_null()) return std::nullopt;
  if (!it->is_string() || it->get<std::string>().empty())
    malformed(line, fmt::format("field '{}' is not a non-empty string", key));
  return it->get<std::string>();
}

const json& required(const json& r, const char* key, std::size_t line) {
  auto it = r.find(key);
  if (it == r.end()) malformed(line, fmt::format("missing field '{}'", key));
  return *it;
}

std::string record_kind(const json& r, std::size_t line) {
  auto it = r.find("kind");
  if (it == r.end()) return {};
  if (!it->is_string()) malformed(line, "field 'kind' is not a string");
  return it->get<std::string>();
}

template <class Fn>
auto with_line(std::size_t line, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.line()) throw;
    throw e.at_line(line);
  }
}

struct PendingLink {
  std::size_t line;
  MessageId src;
  MessageId dst;
  LinkKind kind;
};

void resolve_links(Result& result, const std::vector<PendingLink>& links, const Options& opts,
                   Errc missing_code) {
  for (const auto& l : links) {
    if (!result.network.contains(l.dst)) {
      const std::string what = fmt::format("{} target '{}' of '{}' is not in the input",
                                            to_string(l.kind), l.dst.str(), l.src.str());
      if (!opts.allow_dangling_links) throw Error(missing_code, what, l.line);
      result.warnings.push_back(fmt::format("line {}: {}", l.line, what));
      continue;
    }
    with_line(l.line, [&] { result.network.add_message_link(l.src, l.dst, l.kind); });
  }
}

void add_follow(TemporalTextNetwork& net, const json& r, std::size_t line) {
  const ActorId src{required_string(r, "src", line)};
  const ActorId dst{required_string(r, "dst", line)};
  with_line(line, [&] { net.add_actor_link(src, dst, "follow"); });
}

}  // namespace

Result parse_event_stream(std::istream& in, const Options& opts) {
  Result result;
  TemporalTextNetwork& net = result.network;
  TimeReader times;
  std::vector<PendingLink> links;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    const std::size_t n = reader.number();
    const json r = parse_line(line, n);
    const std::string kind = record_kind(r, n);
    if (kind == "follow") {
      add_follow(net, r, n);
      continue;
    }
    if (kind != "message") malformed(n, fmt::format("unknown record kind '{}'", kind));

    const MessageId id{required_string(r, "id", n)};
    const ActorId sender{required_string(r, "sender", n)};
    const json& body = required(r, "text", n);
    if (!body.is_string()) malformed(n, "field 'text' is not a string");
    const Timestamp t_send = times.read(required(r, "t_send", n), n, "t_send");
    with_line(n, [&] { net.add_message(sender, id, body.get<std::string>(), t_send); });

    const json& recipients = required(r, "recipients", n);
    if (!recipients.is_array()) malformed(n, "field 'recipients' is not an array");
    for (const auto& rec : recipients) {
      if (!rec.is_object()) malformed(n, "recipient entry is not an object");
      const ActorId actor{required_string(rec, "actor", n)};
      Timestamp t_recv = t_send;
      if (auto it = rec.find("t_recv"); it != rec.end() && !it->is_null())
        t_recv = times.read(*it, n, "t_recv");
      with_line(n, [&] { net.add_recipient(id, actor, t_recv); });
    }
    if (auto to = optional_string(r, "reply_to", n)) links.push_back({n, id, MessageId{*to}, LinkKind::reply});
    if (auto of = optional_string(r, "repost_of", n)) links.push_back({n, id, MessageId{*of}, LinkKind::repost});
  }
  resolve_links(result, links, opts, Errc::UnknownMessage);
  return result;
}

Result parse_tweet_records(std::istream& in, const Options& opts) {
  Result result;
  TemporalTextNetwork& net = result.network;
  TimeReader times;
  std::vector<PendingLink> links;
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    const std::size_t n = reader.number();
    const json r = parse_line(line, n);
    const std::string kind = record_kind(r, n);
    if (kind == "follow") {
      add_follow(net, r, n);
      continue;
    }
    if (!kind.empty() && kind != "tweet") malformed(n, fmt::format("unknown record kind '{}'", kind));

    const MessageId id{required_string(r, "id", n)};
    const ActorId author{required_string(r, "author", n)};
    const json& body = required(r, "text", n);
    if (!body.is_string()) malformed(n, "field 'text' is not a string");
    const std::string text = body.get<std::string>();
    const Timestamp t = times.read(required(r, "t", n), n, "t");
    with_line(n, [&] {
      net.add_message(author, id, text, t);
      for (const auto& mention : text::mentions(text)) net.add_recipient(id, ActorId{mention}, t);
    });
    if (auto of = optional_string(r, "retweet_of", n)) links.push_back({n, id, MessageId{*of}, LinkKind::repost});
  }
  resolve_links(result, links, opts, Errc::UnknownRetweetTarget);
  return result;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::optional<std::int64_t> parse_tick(std::string_view s) {
  s = trim(s);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

TemporalTextNetwork parse_contact_csv(std::istream& in) {
  TemporalTextNetwork net;
  LineReader reader(in);
  std::string line;
  std::size_t row = 0;
  bool first = true;
  while (reader.next(line)) {
    const std::size_t n = reader.number();
    // src,dst,t and an optional free-text remainder that may itself hold commas
    const std::string_view row_text = line;
    const auto c1 = row_text.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : row_text.find(',', c1 + 1);
    if (c2 == std::string_view::npos) malformed(n, "expected src,dst,t[,text]");
    const auto c3 = row_text.find(',', c2 + 1);
    const std::string_view fields[3] = {row_text.substr(0, c1), row_text.substr(c1 + 1, c2 - c1 - 1),
                                        row_text.substr(c2 + 1, c3 == std::string_view::npos ? c3 : c3 - c2 - 1)};
    const std::string body = c3 == std::string_view::npos ? std::string{} : std::string(row_text.substr(c3 + 1));
    const auto t = parse_tick(fields[2]);
    if (!t) {
      if (first) {
        first = false;
        continue;  // header
      }
      malformed(n, fmt::format("time '{}' is not an integer", fields[2]));
    }
    first = false;
    const std::string_view src = trim(fields[0]), dst = trim(fields[1]);
    if (src.empty() || dst.empty()) malformed(n, "empty actor id");
    const MessageId id{fmt::format("c{:08}", ++row)};
    with_line(n, [&] {
      net.add_message(ActorId{std::string(src)}, id, body, Timestamp{*t});
      net.add_recipient(id, ActorId{std::string(dst)}, Timestamp{*t});
    });
  }
  return net;
}

Format parse_format(std::string_view name) {
  if (name == "json" || name == "network") return Format::network_json;
  if (name == "events") return Format::events;
  if (name == "tweets") return Format::tweets;
  if (name == "csv" || name == "contacts") return Format::contacts_csv;
  throw Error(Errc::BadConfig, fmt::format("unknown input format '{}'", name));
}

Format detect_format(const std::string& path) {
  auto ends_with = [&](std::string_view ext) {
    return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
  };
  if (ends_with(".json")) return Format::network_json;
  if (ends_with(".csv")) return Format::contacts_csv;
  std::ifstream in(path);
  LineReader reader(in);
  std::string line;
  while (reader.next(line)) {
    json r = json::parse(line, nullptr, false);
    if (!r.is_object()) break;
    if (r.contains("author")) return Format::tweets;
    if (r.contains("sender")) return Format::events;
  }
  return Format::events;
}

Result load(const std::string& path, Format format, const Options& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MalformedRecord, fmt::format("cannot open '{}'", path));
  switch (format) {
    case Format::network_json: return {read_network(in), {}};
    case Format::events: return parse_event_stream(in, opts);
    case Format::tweets: return parse_tweet_records(in, opts);
    case Format::contacts_csv: return {parse_contact_csv(in), {}};
  }
  return {};
}

}  // namespace ttn::ingest
