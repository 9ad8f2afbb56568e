// Seeded generator for the desk-scale tweet fixture: 40 actors posting 200
// tweets over four weeks with four hashtags. Each week three interest groups
// of five actors mention each other under a shared hashtag; group membership
// drifts by one actor per week so communities persist across weeks.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

namespace {

constexpr int kActors = 40;
constexpr int kWeeks = 4;
constexpr int kTweetsPerWeek = 50;
constexpr int kGroupTweetsPerWeek = 36;
constexpr std::int64_t kWeekMs = 7LL * 24 * 3600 * 1000;
constexpr std::int64_t kStartMs = 1520208000000LL;  // 2018-03-05T00:00:00Z

const std::vector<std::string> kHashtags = {"ai", "ar", "vr", "iot"};
const std::vector<std::string> kWords = {"sensor", "edge",  "cloud",  "device", "smart", "city",
                                         "data",   "model", "vision", "future", "demo",  "launch"};

std::string iso(std::int64_t ms) {
  const std::int64_t secs = ms / 1000;
  const std::int64_t days = secs / 86400;
  const std::int64_t rem = secs % 86400;
  // civil-from-days (proleptic Gregorian)
  std::int64_t z = days + 719468;
  const std::int64_t era = z / 146097;
  const std::int64_t doe = z - era * 146097;
  const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  std::int64_t y = yoe + era * 400;
  const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const std::int64_t mp = (5 * doy + 2) / 153;
  const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
  const std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
  if (m <= 2) ++y;
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", y, m, d, rem / 3600, rem % 3600 / 60, rem % 60);
}

std::string actor(int i) { return fmt::format("u{:02}", i); }

struct Tweet {
  std::int64_t t;
  std::string author;
  std::string text;
  std::string retweet_of;
};

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 7;
  std::string out_path = "desk_tweets.jsonl";
  CLI::App app{"Generate the desk-scale tweet fixture"};
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--out", out_path, "Output JSON-lines file");
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  auto words = [&](int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += " " + kWords[pick(static_cast<int>(kWords.size()))];
    return s;
  };

  std::vector<Tweet> tweets;
  for (int w = 0; w < kWeeks; ++w) {
    const std::int64_t week_start = kStartMs + w * kWeekMs;
    for (int i = 0; i < kTweetsPerWeek; ++i) {
      // the first tweet sits exactly on the week boundary so automatic anchoring aligns to weeks
      const std::int64_t t = i == 0 ? week_start : week_start + 1000LL * pick(7 * 24 * 3600);
      Tweet tw{t, {}, {}, {}};
      if (i < kGroupTweetsPerWeek) {
        const int g = i % 3;
        std::vector<int> members;
        for (int m = 0; m < 5; ++m) members.push_back((g * 12 + w + m) % kActors);
        const int author = members[pick(5)];
        std::vector<int> others;
        for (int m : members)
          if (m != author) others.push_back(m);
        std::shuffle(others.begin(), others.end(), rng);
        tw.author = actor(author);
        for (int m = 0; m < 3; ++m) tw.text += "@" + actor(others[m]) + " ";
        tw.text += "#" + kHashtags[(g + w / 2) % kHashtags.size()] + words(3);
        if (pick(4) == 0) tw.text += " #" + kHashtags[(g + w / 2 + 1) % kHashtags.size()];
      } else {
        // noise authors cycle so every actor posts at least once
        const int author = (w * (kTweetsPerWeek - kGroupTweetsPerWeek) + i - kGroupTweetsPerWeek) % kActors;
        int target = pick(kActors);
        if (target == author) target = (target + 1) % kActors;
        tw.author = actor(author);
        tw.text = "@" + actor(target) + words(2);
        if (pick(2) == 0) tw.text += " #" + kHashtags[pick(static_cast<int>(kHashtags.size()))];
      }
      tweets.push_back(std::move(tw));
    }
  }
  std::stable_sort(tweets.begin(), tweets.end(), [](const Tweet& a, const Tweet& b) { return a.t < b.t; });

  std::ofstream out(out_path, std::ios::binary);
  for (int i = 0; i < 10; ++i) {
    nlohmann::ordered_json f{{"kind", "follow"}, {"src", actor(pick(kActors))}, {"dst", actor(pick(kActors))}};
    out << f.dump() << "\n";
  }
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    nlohmann::ordered_json j;
    j["id"] = fmt::format("t{:03}", i + 1);
    j["author"] = tweets[i].author;
    j["text"] = tweets[i].text;
    j["t"] = iso(tweets[i].t);
    // every tenth tweet retweets an earlier one
    if (i % 10 == 9) j["retweet_of"] = fmt::format("t{:03}", pick(static_cast<int>(i)) + 1);
    else j["retweet_of"] = nullptr;
    out << j.dump() << "\n";
  }
  std::cerr << "wrote " << tweets.size() << " tweets to " << out_path << "\n";
  return 0;
}
