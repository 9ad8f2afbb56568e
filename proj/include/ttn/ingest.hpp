#pragma once

// Record parsers. Every error carries the 1-based line of the offending
// record; networks are built through the checked model mutators, so a parsed
// network always validates clean.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "ttn/model.hpp"

namespace ttn::ingest {

struct Options {
  /// Skip reply/repost links whose target is missing (with a warning) instead of failing.
  bool allow_dangling_links = false;
};

struct Result {
  TemporalTextNetwork network;
  std::vector<std::string> warnings;
};

/// JSON-lines event stream. Records:
///   {"kind":"message","id":..,"sender":..,"text":..,"t_send":..,
///    "recipients":[{"actor":..,"t_recv"?:..}],"reply_to"?:..,"repost_of"?:..}
///   {"kind":"follow","src":..,"dst":..}
/// Times are integer ticks or ISO-8601 strings (epoch ms); one file may not mix them.
Result parse_event_stream(std::istream& in, const Options& opts = {});

/// Tweet records {"id","author","text","t","retweet_of"?}; recipients are the
/// @-mentions in the text. Lines with "kind":"follow" become actor links.
Result parse_tweet_records(std::istream& in, const Options& opts = {});

/// `src,dst,t[,text]` rows, header optional. Each row becomes its own message.
TemporalTextNetwork parse_contact_csv(std::istream& in);

enum class Format { network_json, events, tweets, contacts_csv };

/// Guesses the input format from the extension and, for .jsonl, the first record.
Format detect_format(const std::string& path);
Format parse_format(std::string_view name);

Result load(const std::string& path, Format format, const Options& opts = {});

}  // namespace ttn::ingest
