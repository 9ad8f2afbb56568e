#include "ttn/text.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>

namespace ttn::text {

namespace {

char lower(char c) noexcept { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

// Calls fn(run) for each alphanumeric run directly preceded by `prefix`.
template <class Fn>
void scan_prefixed(std::string_view text, char prefix, Fn&& fn) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != prefix) continue;
    std::size_t j = i + 1;
    while (j < text.size() && is_alnum(text[j])) ++j;
    if (j > i + 1) fn(text.substr(i + 1, j - i - 1));
    i = j - 1;
  }
}

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  for (std::size_t i = pos; i < pos + len; ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  auto [p, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
  return ec == std::errc{};
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

std::set<std::string> hashtags(std::string_view text) {
  std::set<std::string> tags;
  scan_prefixed(text, '#', [&](std::string_view run) { tags.insert(to_lower(run)); });
  return tags;
}

std::vector<std::string> mentions(std::string_view text) {
  std::vector<std::string> out;
  scan_prefixed(text, '@', [&](std::string_view run) {
    if (std::find(out.begin(), out.end(), run) == out.end()) out.emplace_back(run);
  });
  return out;
}

std::set<std::string> tokenize(std::string_view text) {
  std::set<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_alnum(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_alnum(text[j])) ++j;
    tokens.insert(to_lower(text.substr(i, j - i)));
    i = j;
  }
  return tokens;
}

std::optional<std::int64_t> parse_iso8601_ms(std::string_view s) {
  using namespace std::chrono;
  int y = 0, mo = 0, d = 0;
  if (s.size() < 10 || !read_int(s, 0, 4, y) || s[4] != '-' || !read_int(s, 5, 2, mo) ||
      s[7] != '-' || !read_int(s, 8, 2, d))
    return std::nullopt;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  std::int64_t ms = duration_cast<milliseconds>(sys_days{ymd}.time_since_epoch()).count();
  std::size_t pos = 10;
  if (pos == s.size()) return ms;
  if (s[pos] != 'T' && s[pos] != ' ') return std::nullopt;
  ++pos;
  int hh = 0, mm = 0, ss = 0;
  if (!read_int(s, pos, 2, hh) || pos + 2 >= s.size() || s[pos + 2] != ':' ||
      !read_int(s, pos + 3, 2, mm))
    return std::nullopt;
  pos += 5;
  if (pos < s.size() && s[pos] == ':') {
    if (!read_int(s, pos + 1, 2, ss)) return std::nullopt;
    pos += 3;
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  ms += ((hh * 60LL + mm) * 60LL + ss) * 1000LL;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t start = pos;
    int frac_ms = 0, digits = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      if (digits < 3) {
        frac_ms = frac_ms * 10 + (s[pos] - '0');
        ++digits;
      }
      ++pos;
    }
    if (pos == start) return std::nullopt;
    while (digits++ < 3) frac_ms *= 10;
    ms += frac_ms;
  }
  if (pos == s.size()) return ms;
  if (s[pos] == 'Z' && pos + 1 == s.size()) return ms;
  if (s[pos] != '+' && s[pos] != '-') return std::nullopt;
  const int sign = s[pos] == '+' ? 1 : -1;
  int oh = 0, om = 0;
  if (!read_int(s, pos + 1, 2, oh)) return std::nullopt;
  std::size_t rest = pos + 3;
  if (rest < s.size() && s[rest] == ':') ++rest;
  if (!read_int(s, rest, 2, om) || rest + 2 != s.size()) return std::nullopt;
  return ms - sign * (oh * 60LL + om) * 60'000LL;
}

}  // namespace ttn::text
