// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "ttn/communities.hpp"
#include "ttn/continuous.hpp"
#include "ttn/discrete.hpp"
#include "ttn/ingest.hpp"
#include "ttn/model.hpp"
#include "ttn/model_json.hpp"
#include "ttn/views.hpp"

using namespace ttn;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kConstraintBudgetSeconds = 10.0;
constexpr double kPipelineBudgetSeconds = 5.0;
constexpr double kTriangleTolerance = 1e-9;
constexpr double kObjectiveTolerance = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// ---------------------------------------------------------------------------

Outcome constraint_enforcement() {
  Outcome o;
  const auto t0 = Clock::now();
  oracle::Rng rng(1001);
  std::size_t ops_total = 0, rejected = 0;
  for (int seq = 0; seq < 1000; ++seq) {
    TemporalTextNetwork net;
    int next_message = 0;
    const int ops = oracle::uniform(rng, 1, 500);
    for (int op = 0; op < ops; ++op, ++ops_total) {
      const int kind = oracle::uniform(rng, 0, 9);
      const ActorId a = oracle::actor(oracle::uniform(rng, 0, 15));
      const ActorId b = oracle::actor(oracle::uniform(rng, 0, 15));
      const MessageId m = oracle::message(oracle::uniform(rng, 0, std::max(0, next_message)));
      const MessageId m2 = oracle::message(oracle::uniform(rng, 0, std::max(0, next_message)));
      const Timestamp t{oracle::uniform(rng, 0, 1000)};
      const NetworkStats before = stats(net);
      const std::size_t links_before = net.message_links().size() + net.actor_links().size();
      try {
        switch (kind) {
          case 0: net.add_actor(a); break;
          case 1: case 2: case 3:
            // occasionally reuse an id to provoke DuplicateMessageId
            net.add_message(a, oracle::uniform(rng, 0, 9) == 0 ? m : oracle::message(next_message), "word #c1", t);
            if (net.contains(oracle::message(next_message))) ++next_message;
            break;
          case 4: case 5: case 6: net.add_recipient(m, b, t); break;
          case 7: case 8:
            net.add_message_link(m, m2, oracle::uniform(rng, 0, 1) ? LinkKind::reply : LinkKind::repost);
            break;
          default: net.add_actor_link(a, b, "follow"); break;
        }
      } catch (const Error&) {
        ++rejected;
        if (!(stats(net) == before) || net.message_links().size() + net.actor_links().size() != links_before) {
          o.fail(fmt::format("sequence {} op {}: rejected mutation changed the network", seq, op));
        }
      }
    }
    const auto report = validate(net);
    if (!report.empty()) o.fail(fmt::format("sequence {}: {}", seq, report.front().description));
  }

  // Mutated serialized files.
  int flagged = 0;
  for (int file = 0; file < 100; ++file) {
    TemporalTextNetwork net;
    oracle::RandomNetworkSpec spec;
    spec.max_messages = 30;
    while (true) {
      net = oracle::random_network(rng, spec);
      if (!net.consumption_edges().empty()) break;
    }
    nlohmann::ordered_json doc = to_json(net);
    auto& messages = doc["messages"];
    const int variant = file % 3;
    std::string expect;
    Violation::Kind kind = Violation::Kind::production_count;
    if (variant == 0) {
      // second production edge for one message
      auto& msg = messages[static_cast<std::size_t>(oracle::uniform(rng, 0, static_cast<int>(messages.size()) - 1))];
      auto dup = msg;
      dup["recipients"] = nlohmann::ordered_json::array();
      dup["t_send"] = dup["t_send"].get<std::int64_t>() - 1;
      expect = msg["id"].get<std::string>();
      messages.push_back(dup);
    } else if (variant == 1) {
      // no production edge
      auto& msg = messages[static_cast<std::size_t>(oracle::uniform(rng, 0, static_cast<int>(messages.size()) - 1))];
      msg["sender"] = nullptr;
      msg["t_send"] = nullptr;
      expect = msg["id"].get<std::string>();
    } else {
      // reception before production
      kind = Violation::Kind::time_order;
      for (auto& msg : messages) {
        if (msg["recipients"].empty()) continue;
        auto& r = msg["recipients"][0];
        const std::int64_t t = msg["t_send"].get<std::int64_t>() - 1 - oracle::uniform(rng, 0, 50);
        r["t_recv"] = t;
        expect = fmt::format("({},{},{})", msg["id"].get<std::string>(), r["actor"].get<std::string>(), t);
        break;
      }
    }
    std::istringstream in(doc.dump(2));
    const auto report = validate(read_network(in));
    if (report.size() == 1 && report[0].kind == kind && report[0].description.find(expect) != std::string::npos)
      ++flagged;
    else
      o.fail(fmt::format("mutated file {} (variant {}): {} violations, expected one naming {}", file, variant,
                         report.size(), expect));
  }

  const double elapsed = seconds_since(t0);
  if (elapsed >= kConstraintBudgetSeconds) o.fail(fmt::format("took {:.2f} s", elapsed));
  if (o.pass)
    o.detail = fmt::format("1000 sequences ({} ops, {} rejected), {}/100 mutated files flagged, {:.2f} s", ops_total,
                           rejected, flagged, elapsed);
  return o;
}

// ---------------------------------------------------------------------------

Outcome contact_round_trip() {
  Outcome o;
  oracle::Rng rng(2002);
  std::size_t rows_total = 0;
  for (int file = 0; file < 100; ++file) {
    using Row = std::tuple<std::string, std::string, std::int64_t>;
    std::multiset<Row> expected;
    std::string csv = file % 2 ? "src,dst,t,text\n" : "";
    const int rows = oracle::uniform(rng, 0, 1000);
    for (int r = 0; r < rows; ++r) {
      const std::string a = fmt::format("v{}", oracle::uniform(rng, 0, 30));
      const std::string b = fmt::format("v{}", oracle::uniform(rng, 0, 30));
      const std::int64_t t = std::uniform_int_distribution<std::int64_t>(-1'000'000, 1'000'000)(rng);
      expected.insert({a, b, t});
      csv += fmt::format("{},{},{}", a, b, t);
      if (oracle::uniform(rng, 0, 2) == 0) csv += fmt::format(",note {}, with comma", r);
      csv += "\n";
    }
    rows_total += static_cast<std::size_t>(rows);
    std::istringstream in(csv);
    std::multiset<Row> got;
    for (const auto& c : views::contact_sequence_view(ingest::parse_contact_csv(in)))
      got.insert({c.sender.str(), c.recipient.str(), c.t_send.tick});
    if (got != expected) o.fail(fmt::format("file {}: {} contacts back, {} written", file, got.size(), expected.size()));
  }
  if (o.pass) o.detail = fmt::format("100 files, {} rows reproduced", rows_total);
  return o;
}

// ---------------------------------------------------------------------------

Outcome slice_partition() {
  Outcome o;
  oracle::Rng rng(3003);
  for (int round = 0; round < 100; ++round) {
    const auto net = oracle::random_network(rng);
    std::set<std::int64_t> picked;
    for (int i = oracle::uniform(rng, 2, 8); i > 0; --i) picked.insert(oracle::uniform(rng, -10, 110));
    if (picked.size() < 2) picked.insert(*picked.begin() + 1);
    std::vector<Timestamp> cuts;
    for (auto t : picked) cuts.push_back(Timestamp{t});
    const auto series = views::time_slice_view(net, cuts, views::SlicePolicy::production);

    std::map<std::string, int> hits;
    std::set<std::tuple<std::string, std::string, std::int64_t>> union_edges, in_range;
    for (const auto& s : series.slices)
      for (const auto& p : s.network.production_edges()) {
        ++hits[p.message.str()];
        union_edges.insert({p.actor.str(), p.message.str(), p.t.tick});
      }
    for (const auto& p : net.production_edges()) {
      const bool inside = p.t >= cuts.front() && p.t < cuts.back();
      if (inside) in_range.insert({p.actor.str(), p.message.str(), p.t.tick});
      const int h = hits.count(p.message.str()) ? hits.at(p.message.str()) : 0;
      if (h != (inside ? 1 : 0)) o.fail(fmt::format("round {}: message {} in {} slices", round, p.message.str(), h));
    }
    if (union_edges != in_range) o.fail(fmt::format("round {}: production edge union differs", round));
  }
  if (o.pass) o.detail = "100 networks";
  return o;
}

// ---------------------------------------------------------------------------

Outcome projection_oracle() {
  Outcome o;
  oracle::Rng rng(4004);
  oracle::RandomNetworkSpec spec;  // 30 messages, 10 actors, 4 classes
  std::size_t edges = 0;
  for (int round = 0; round < 200; ++round) {
    const auto net = oracle::random_network(rng, spec);
    const auto classes = discrete::tag_messages(net, discrete::Tagger{});
    std::optional<discrete::BinMap> bins;
    if (round % 4 != 0 && !net.messages().empty()) bins = discrete::time_bins(net, 34, Timestamp{0});  // at most 3 bins
    const auto kp = discrete::discretize(net, classes, bins);
    for (bool weighted : {false, true})
      for (bool directed : {false, true}) {
        auto got = oracle::flatten(discrete::project(kp, {weighted, directed}));
        std::erase_if(got, [](const auto& e) { return e.second.empty(); });
        const auto expected = oracle::brute_force_projection(net, classes, bins, weighted, directed);
        if (got != expected)
          o.fail(fmt::format("round {} weighted={} directed={}", round, weighted, directed));
        for (const auto& [l, e] : expected) edges += e.size();
      }
  }
  if (o.pass) o.detail = fmt::format("200 networks x 4 modes, {} edges", edges);
  return o;
}

// ---------------------------------------------------------------------------

Outcome cpm_oracle() {
  Outcome o;
  oracle::Rng rng(5005);
  std::size_t found = 0;
  for (int round = 0; round < 200; ++round) {
    const double density = 0.25 + 0.05 * (round % 8);
    const auto ml = oracle::random_layered_graph(rng, oracle::uniform(rng, 1, 3), 3, 15, density);
    for (std::size_t k : {3u, 4u}) {
      const auto got = communities::kclique_communities(ml, {k, communities::Scope::per_time_bin, false});
      const auto expected = oracle::brute_force_cpm(ml, k, true);
      if (oracle::as_oracle(got) != expected)
        o.fail(fmt::format("round {} k={}: {} communities, oracle {}", round, k, got.size(), expected.size()));
      found += got.size();
    }
  }
  if (o.pass) o.detail = fmt::format("200 graphs x k in {{3,4}}, {} communities", found);
  return o;
}

// ---------------------------------------------------------------------------

Outcome metric_axioms() {
  Outcome o;
  oracle::Rng rng(6006);
  int triples = 0;
  double worst = 0.0;
  while (triples < 500) {
    oracle::RandomNetworkSpec spec;
    spec.max_messages = 25;
    spec.max_recipients = 2;
    const auto net = oracle::random_network(rng, spec);
    const auto ids = continuous::all_message_ids(net);
    if (ids.size() < 3) continue;
    const auto dm = continuous::distance_matrix(net, ids, {});
    const int n = static_cast<int>(ids.size());
    for (int t = 0; t < 25 && triples < 500; ++t, ++triples) {
      const auto i = static_cast<std::size_t>(oracle::uniform(rng, 0, n - 1));
      const auto j = static_cast<std::size_t>(oracle::uniform(rng, 0, n - 1));
      const auto k = static_cast<std::size_t>(oracle::uniform(rng, 0, n - 1));
      if (dm(i, i) != 0.0) o.fail(fmt::format("d(m,m) = {} for {}", dm(i, i), ids[i].str()));
      if (dm(i, j) != dm(j, i)) o.fail(fmt::format("asymmetric pair {} {}", ids[i].str(), ids[j].str()));
      const double excess = dm(i, k) - dm(i, j) - dm(j, k);
      worst = std::max(worst, excess);
      if (excess > kTriangleTolerance) o.fail(fmt::format("triangle violated by {:.3e}", excess));
    }
  }
  if (o.pass) o.detail = fmt::format("500 triples, max excess {:.3e}, tolerance {:.0e}", worst, kTriangleTolerance);
  return o;
}

// ---------------------------------------------------------------------------

Outcome planted_clustering() {
  Outcome o;
  oracle::Rng rng(7007);
  const std::vector<std::string> vocab_a = {"apple", "pear", "plum", "fig", "grape"};
  const std::vector<std::string> vocab_b = {"ocean", "wave", "tide", "reef", "shell"};
  TemporalTextNetwork net;
  std::map<MessageId, int> planted;
  for (int g = 0; g < 2; ++g) {
    const auto& vocab = g == 0 ? vocab_a : vocab_b;
    for (int i = 0; i < 20; ++i) {
      const MessageId id{fmt::format("{}{:02}", g == 0 ? "a" : "b", i)};
      const ActorId author{fmt::format("{}{}", g == 0 ? "x" : "y", i % 5)};
      std::string text;
      for (const auto& w : vocab)
        if (oracle::uniform(rng, 0, 1)) text += w + " ";
      text += vocab[static_cast<std::size_t>(i % 5)];
      const Timestamp t{g == 0 ? oracle::uniform(rng, 0, 50) : oracle::uniform(rng, 950, 1000)};
      net.add_message(author, id, text, t);
      net.add_recipient(id, ActorId{fmt::format("{}{}", g == 0 ? "x" : "y", (i + 1) % 5)}, t);
      planted[id] = g;
    }
  }
  const auto ids = continuous::all_message_ids(net);
  const auto dm = continuous::distance_matrix(net, ids, {});
  const auto c = continuous::cluster_kmedoids(dm, 2, 0);

  const int ca = c.assignment.at(MessageId{"a00"});
  for (const auto& [id, g] : planted)
    if ((c.assignment.at(id) == ca) != (g == 0)) o.fail(fmt::format("message {} in the wrong cluster", id.str()));

  std::vector<std::size_t> best_pair;
  const double best =
      oracle::exhaustive_medoid_objective(ids.size(), 2, [&](std::size_t i, std::size_t j) { return dm(i, j); }, &best_pair);
  if (std::abs(c.objective - best) > kObjectiveTolerance * std::max(1.0, best))
    o.fail(fmt::format("objective {:.12f}, exhaustive minimum {:.12f}", c.objective, best));
  if (o.pass)
    o.detail = fmt::format("40 messages, objective {:.9f} equals minimum over {} medoid pairs", c.objective,
                           ids.size() * (ids.size() - 1) / 2);
  return o;
}

// ---------------------------------------------------------------------------

Outcome memory_patterns() {
  Outcome o;
  using views::ActorPair;
  using views::Contact;
  const ActorId i{"i"}, j{"j"}, k{"k"};
  auto contact = [](ActorId s, ActorId r, std::int64_t t, const char* m) {
    return Contact{s, r, Timestamp{t}, Timestamp{t}, MessageId{m}};
  };
  using EdgeSet = std::set<std::pair<ActorPair, ActorPair>>;

  // replying: j -> i -> j and k -> i -> k
  const std::vector<Contact> reply = {contact(j, i, 1, "r1"), contact(i, j, 2, "r2"), contact(k, i, 10, "r3"),
                                      contact(i, k, 11, "r4")};
  // forwarding: j -> i -> k and k -> i -> j
  const std::vector<Contact> forward = {contact(j, i, 1, "f1"), contact(i, k, 2, "f2"), contact(k, i, 10, "f3"),
                                        contact(i, j, 11, "f4")};
  const EdgeSet reply_expected = {{{j, i}, {i, j}}, {{k, i}, {i, k}}};
  const EdgeSet forward_expected = {{{j, i}, {i, k}}, {{k, i}, {i, j}}};

  const auto rg = views::memory_graph_view(reply, 5);
  const auto fg = views::memory_graph_view(forward, 5);
  if (rg.edges != reply_expected) o.fail(fmt::format("reply pattern gave {} edges", rg.edges.size()));
  if (fg.edges != forward_expected) o.fail(fmt::format("forward pattern gave {} edges", fg.edges.size()));

  // the aggregated contact structure cannot tell them apart
  std::set<ActorPair> rs, fs_;
  for (const auto& c : reply) rs.insert({c.sender, c.recipient});
  for (const auto& c : forward) fs_.insert({c.sender, c.recipient});
  if (rs != fs_) o.fail("fixtures do not share their static contact edges");
  if (rg.edges == fg.edges) o.fail("memory graphs do not distinguish the patterns");
  if (o.pass) o.detail = "replying and forwarding yield disjoint, exact edge sets over the same static contacts";
  return o;
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

int run_pipeline(const fs::path& fixture, const fs::path& out) {
  const std::string cmd = fmt::format(
      "\"{}\" pipeline --in \"{}\" --out \"{}\" --tagger hashtags --bin-width 604800000 --k 3 > /dev/null 2>&1",
      TTN_BINARY, fixture.string(), out.string());
  return std::system(cmd.c_str());
}

Outcome desk_pipeline() {
  Outcome o;
  const fs::path fixture = fs::path(TTN_DATA_DIR) / "desk_tweets.jsonl";
  const fs::path base = fs::temp_directory_path() / "ttn_acceptance";
  fs::remove_all(base);
  const fs::path a = base / "run1", b = base / "run2";

  const auto t0 = Clock::now();
  const int rc = run_pipeline(fixture, a);
  const double elapsed = seconds_since(t0);
  if (rc != 0) {
    o.fail(fmt::format("pipeline exited with status {}", rc));
    return o;
  }
  if (elapsed >= kPipelineBudgetSeconds) o.fail(fmt::format("pipeline took {:.2f} s", elapsed));
  if (run_pipeline(fixture, b) != 0) o.fail("second run failed");

  const std::vector<std::string> outputs = {"stats.json", "multilayer.csv", "communities.json", "evolution.dot"};
  for (const auto& name : outputs) {
    if (!fs::exists(a / name)) o.fail(name + " missing");
    else if (slurp(a / name) != slurp(b / name)) o.fail(name + " differs between runs");
  }
  if (!o.pass) return o;

  // fixture shape
  std::ifstream in(fixture);
  const auto net = ingest::parse_tweet_records(in).network;
  std::set<std::string> tags;
  for (const auto& [id, node] : net.messages()) tags.insert(node.message.tags.begin(), node.message.tags.end());
  const auto bins = discrete::time_bins(net, 604800000);
  std::set<std::int64_t> bin_values;
  for (const auto& [id, bin] : bins) bin_values.insert(bin);
  if (net.actors().size() != 40 || net.messages().size() != 200 || tags.size() != 4 || bin_values.size() != 4)
    o.fail(fmt::format("fixture has {} actors, {} tweets, {} hashtags, {} bins", net.actors().size(),
                       net.messages().size(), tags.size(), bin_values.size()));

  // communities and evolution edges, recomputed from the emitted files
  const auto cs = nlohmann::json::parse(slurp(a / "communities.json"));
  std::map<int, std::set<std::string>> members;
  std::map<int, std::int64_t> bin_of;
  for (const auto& c : cs) {
    const int id = c.at("id").get<int>();
    members[id] = c.at("actors").get<std::set<std::string>>();
    bin_of[id] = c.at("bin").get<std::int64_t>();
    if (members[id].size() <= 3) o.fail(fmt::format("community {} has {} actors", id, members[id].size()));
  }
  if (cs.empty()) o.fail("no communities");

  const std::string dot = slurp(a / "evolution.dot");
  const std::regex edge_re(R"(c(\d+) -> c(\d+) \[shared=(\d+))");
  std::set<std::pair<int, int>> emitted;
  for (auto it = std::sregex_iterator(dot.begin(), dot.end(), edge_re); it != std::sregex_iterator(); ++it) {
    const int from = std::stoi((*it)[1]), to = std::stoi((*it)[2]);
    const std::size_t shared = std::stoul((*it)[3]);
    emitted.insert({from, to});
    if (!members.count(from) || !members.count(to)) {
      o.fail(fmt::format("edge c{} -> c{} names an unknown community", from, to));
      continue;
    }
    std::size_t common = 0;
    for (const auto& x : members[from]) common += members[to].count(x);
    const std::size_t later = members[to].size();
    if (common != shared) o.fail(fmt::format("edge c{} -> c{}: shared {} but {} in common", from, to, shared, common));
    if (bin_of[to] != bin_of[from] + 1) o.fail(fmt::format("edge c{} -> c{} skips bins", from, to));
    if (3 * common < later) o.fail(fmt::format("edge c{} -> c{}: {} of {} is below one third", from, to, common, later));
  }
  for (const auto& [p, mp] : members)
    for (const auto& [q, mq] : members) {
      if (bin_of[q] != bin_of[p] + 1) continue;
      std::size_t common = 0;
      for (const auto& x : mp) common += mq.count(x);
      if (3 * common >= mq.size() && !emitted.count({p, q})) o.fail(fmt::format("missing edge c{} -> c{}", p, q));
    }
  if (o.pass)
    o.detail = fmt::format("{} communities, {} evolution edges, {:.3f} s, runs byte-identical", cs.size(),
                           emitted.size(), elapsed);
  return o;
}

// ---------------------------------------------------------------------------

Outcome fig4_classification() {
  Outcome o;
  TemporalTextNetwork net;
  for (const char* a : {"A", "B", "C", "D"}) net.add_actor(ActorId{a});
  net.add_message(ActorId{"A"}, MessageId{"uni"}, "", Timestamp{0});
  net.add_recipient(MessageId{"uni"}, ActorId{"C"}, Timestamp{0});
  net.add_message(ActorId{"A"}, MessageId{"multi"}, "", Timestamp{0});
  net.add_recipient(MessageId{"multi"}, ActorId{"C"}, Timestamp{0});
  net.add_recipient(MessageId{"multi"}, ActorId{"D"}, Timestamp{0});
  net.add_message(ActorId{"A"}, MessageId{"broad"}, "", Timestamp{0});
  for (const char* a : {"B", "C", "D"}) net.add_recipient(MessageId{"broad"}, ActorId{a}, Timestamp{0});
  if (communication_type(net, MessageId{"uni"}) != CommType::unicast) o.fail("A->C is not unicast");
  if (communication_type(net, MessageId{"multi"}) != CommType::multicast) o.fail("A->{C,D} is not multicast");
  if (communication_type(net, MessageId{"broad"}) != CommType::broadcast) o.fail("A->{B,C,D} is not broadcast");
  if (o.pass) o.detail = "unicast, multicast, broadcast";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"constraint enforcement", constraint_enforcement},
      {"contact round trip", contact_round_trip},
      {"time-slice partition", slice_partition},
      {"projection oracle", projection_oracle},
      {"clique percolation oracle", cpm_oracle},
      {"metric axioms", metric_axioms},
      {"planted clustering", planted_clustering},
      {"memory-graph patterns", memory_patterns},
      {"desk-scale pipeline", desk_pipeline},
      {"communication types", fig4_classification},
  };
  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Outcome o;
    try {
      o = criteria[n].second();
    } catch (const std::exception& e) {
      o.fail(fmt::format("exception: {}", e.what()));
    }
    if (!o.pass) ++failed;
    std::cout << fmt::format("criterion {:>2} {} {}: {}\n", n + 1, o.pass ? "PASS" : "FAIL", criteria[n].first,
                             o.detail);
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
                           criteria.size());
  return failed;
}
