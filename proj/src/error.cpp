#include "ttn/error.hpp"

#include <fmt/format.h>

namespace ttn {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::EmptyId: return "EmptyId";
    case Errc::DuplicateMessageId: return "DuplicateMessageId";
    case Errc::UnknownMessage: return "UnknownMessage";
    case Errc::TimeOrderViolation: return "TimeOrderViolation";
    case Errc::DuplicateRecipient: return "DuplicateRecipient";
    case Errc::SelfLink: return "SelfLink";
    case Errc::RepostTimeViolation: return "RepostTimeViolation";
    case Errc::NoRecipients: return "NoRecipients";
    case Errc::IdCollision: return "IdCollision";
    case Errc::MalformedRecord: return "MalformedRecord";
    case Errc::UnknownRetweetTarget: return "UnknownRetweetTarget";
    case Errc::MixedTimeFormats: return "MixedTimeFormats";
    case Errc::BadCutpoints: return "BadCutpoints";
    case Errc::EmptyKeywordList: return "EmptyKeywordList";
    case Errc::BadWidth: return "BadWidth";
    case Errc::UncoveredMessage: return "UncoveredMessage";
    case Errc::BadConfig: return "BadConfig";
    case Errc::EmptyNetwork: return "EmptyNetwork";
    case Errc::BadK: return "BadK";
    case Errc::AsymmetricMatrix: return "AsymmetricMatrix";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(fmt::format("{}: {}", to_string(code), what)),
      code_(code),
      message_(what) {}

Error::Error(Errc code, const std::string& what, std::size_t line)
    : std::runtime_error(fmt::format("line {}: {}: {}", line, to_string(code), what)),
      code_(code),
      line_(line),
      message_(what) {}

Error Error::at_line(std::size_t line) const { return Error(code_, message_, line); }

}  // namespace ttn
