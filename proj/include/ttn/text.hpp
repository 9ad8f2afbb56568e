#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ttn::text {

inline bool is_alnum(char c) noexcept {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::string to_lower(std::string_view s);

/// Hashtags: `#` followed by a maximal ASCII alphanumeric run, lowercased.
std::set<std::string> hashtags(std::string_view text);

/// Mentions: `@` followed by a maximal alphanumeric run, case preserved,
/// deduplicated, in order of first appearance.
std::vector<std::string> mentions(std::string_view text);

/// Maximal alphanumeric runs, lowercased and deduplicated. `#`/`@` are
/// separators, so prefixes disappear.
std::set<std::string> tokenize(std::string_view text);

/// ISO-8601 date or date-time to epoch milliseconds. Accepts
/// `YYYY-MM-DD`, optional `THH:MM[:SS[.fff]]` and a `Z` / `+HH:MM` /
/// `+HHMM` offset. Returns nullopt if the string is not in that form.
std::optional<std::int64_t> parse_iso8601_ms(std::string_view s);

}  // namespace ttn::text
