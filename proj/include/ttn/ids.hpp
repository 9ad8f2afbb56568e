#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

namespace ttn {

/// Opaque string identifier, distinct per tag so actor and message ids never mix.
template <class Tag>
class Id {
 public:
  Id() = default;
  explicit Id(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const Id&, const Id&) = default;
  friend bool operator==(const Id&, const Id&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Id& id) { return os << id.value_; }

 private:
  std::string value_;
};

struct ActorTag;
struct MessageTag;
using ActorId = Id<ActorTag>;
using MessageId = Id<MessageTag>;

/// Abstract ordered time annotation. Ingestion maps calendar times to epoch milliseconds.
struct Timestamp {
  std::int64_t tick = 0;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

}  // namespace ttn

template <class Tag>
struct std::hash<ttn::Id<Tag>> {
  std::size_t operator()(const ttn::Id<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
