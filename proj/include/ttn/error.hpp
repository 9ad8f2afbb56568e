#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ttn {

enum class Errc {
  EmptyId,
  DuplicateMessageId,
  UnknownMessage,
  TimeOrderViolation,
  DuplicateRecipient,
  SelfLink,
  RepostTimeViolation,
  NoRecipients,
  IdCollision,
  MalformedRecord,
  UnknownRetweetTarget,
  MixedTimeFormats,
  BadCutpoints,
  EmptyKeywordList,
  BadWidth,
  UncoveredMessage,
  BadConfig,
  EmptyNetwork,
  BadK,
  AsymmetricMatrix,
};

std::string_view to_string(Errc code);

/// Error raised by every module. Ingestion attaches the 1-based input line.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Error(Errc code, const std::string& what, std::size_t line);

  Errc code() const noexcept { return code_; }
  const std::optional<std::size_t>& line() const noexcept { return line_; }

  /// Copy of this error with a line number attached.
  Error at_line(std::size_t line) const;

 private:
  Errc code_;
  std::optional<std::size_t> line_;
  std::string message_;
};

}  // namespace ttn
