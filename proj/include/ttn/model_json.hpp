#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ttn/model.hpp"

namespace ttn {

/// Network document with ids sorted lexicographically, so output is byte-stable.
nlohmann::ordered_json to_json(const TemporalTextNetwork& net);

/// Loads a network document verbatim. Constraint violations are kept for
/// validate(); structural problems throw Errc::MalformedRecord.
TemporalTextNetwork network_from_json(const nlohmann::json& doc);

std::string dump_network(const TemporalTextNetwork& net);
TemporalTextNetwork read_network(std::istream& in);

}  // namespace ttn
