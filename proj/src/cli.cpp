#include "ttn/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ttn/communities.hpp"
#include "ttn/continuous.hpp"
#include "ttn/discrete.hpp"
#include "ttn/ingest.hpp"
#include "ttn/model_json.hpp"
#include "ttn/parallel.hpp"
#include "ttn/text.hpp"
#include "ttn/views.hpp"

namespace ttn::cli {

namespace {

const std::vector<std::string> kSubcommands = {
    "validate", "stats",   "contacts", "slices",      "memory",    "discretize", "project",
    "distances", "nearest", "cluster",  "communities", "evolution", "pipeline"};

struct PipelineConfig {
  std::string in;
  std::string format = "auto";
  std::string out;
  bool allow_dangling = false;

  std::string tagger = "hashtags";
  std::int64_t bin_width = 0;  // 0: no time bins
  std::string bin_anchor = "auto";

  bool weighted = false;
  bool directed = false;

  continuous::DistanceConfig distance;
  std::string text_metric = "jaccard";
  std::vector<std::string> ids;
  std::string query_text;
  std::int64_t query_t = 0;
  std::size_t top = 10;

  std::size_t k = 3;
  std::string scope = "per_time_bin";
  std::size_t min_actors = 4;
  bool include_none = false;

  std::size_t medoids = 2;
  std::uint64_t seed = 0;
  int max_iter = 100;

  std::vector<std::int64_t> cuts;
  std::string policy = "production";
  std::optional<std::int64_t> delta;
  std::string memory_format = "csv";
};

// Output sink: files under --out, or stdout when no directory was given.
class Outputs {
 public:
  Outputs(std::string dir, std::ostream& out) : dir_(std::move(dir)), out_(out) {}

  void write(const std::string& name, const std::string& content) {
    if (dir_.empty()) {
      out_ << content;
      return;
    }
    std::filesystem::create_directories(dir_);
    const auto path = std::filesystem::path(dir_) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::BadConfig, fmt::format("cannot write '{}'", path.string()));
    f << content;
  }

 private:
  std::string dir_;
  std::ostream& out_;
};

std::string fixed9(double v) { return fmt::format("{:.9f}", v); }

nlohmann::ordered_json stats_json(const NetworkStats& s, bool has_messages = true) {
  nlohmann::ordered_json j;
  j["|A|"] = s.num_actors;
  j["|M|"] = has_messages ? nlohmann::ordered_json(s.num_messages) : nlohmann::ordered_json(nullptr);
  j["|E|"] = s.num_edges;
  j["|L|"] = s.num_partitions;
  return j;
}

class Runner {
 public:
  Runner(const PipelineConfig& cfg, std::ostream& out, std::ostream& err)
      : cfg_(cfg), outputs_(cfg.out, out), err_(err) {}

  int run(const std::string& command) {
    if (command == "validate") return validate_only();
    const TemporalTextNetwork net = load_valid();
    if (command == "stats") {
      outputs_.write("stats.json", stats_json(stats(net)).dump(2) + "\n");
    } else if (command == "contacts") {
      outputs_.write("contacts.csv", views::contacts_to_csv(views::contact_sequence_view(net)));
    } else if (command == "slices") {
      slices(net);
    } else if (command == "memory") {
      const auto g = views::memory_graph_view(views::contact_sequence_view(net), cfg_.delta);
      if (cfg_.memory_format == "dot") outputs_.write("memory.dot", views::memory_graph_to_dot(g));
      else if (cfg_.memory_format == "csv") outputs_.write("memory.csv", views::memory_graph_to_csv(g));
      else throw Error(Errc::BadConfig, fmt::format("unknown memory format '{}'", cfg_.memory_format));
    } else if (command == "discretize") {
      outputs_.write("kpartite.json", discrete::to_json(discretize(net), net).dump(2) + "\n");
    } else if (command == "project") {
      outputs_.write("multilayer.csv", discrete::to_edge_list(project(discretize(net))));
    } else if (command == "distances") {
      distances(net);
    } else if (command == "nearest") {
      nearest(net);
    } else if (command == "cluster") {
      cluster(net);
    } else if (command == "communities") {
      const auto cs = communities(project(discretize(net)));
      outputs_.write("communities.json", communities::to_json(cs).dump(2) + "\n");
    } else if (command == "evolution") {
      const auto cs = communities(project(discretize(net)));
      outputs_.write("evolution.dot", communities::to_dot(communities::community_evolution(cs)));
    } else if (command == "pipeline") {
      pipeline(net);
    }
    return 0;
  }

 private:
  ingest::Result load() {
    const ingest::Format format =
        cfg_.format == "auto" ? ingest::detect_format(cfg_.in) : ingest::parse_format(cfg_.format);
    ingest::Result r = ingest::load(cfg_.in, format, {cfg_.allow_dangling});
    for (const auto& w : r.warnings) err_ << "warning: " << w << "\n";
    return r;
  }

  bool report(const ValidationReport& violations) {
    for (const auto& v : violations) err_ << "violation: " << to_string(v.kind) << ": " << v.description << "\n";
    return violations.empty();
  }

  int validate_only() {
    const ingest::Result r = load();
    if (!report(validate(r.network))) return 1;
    const NetworkStats s = stats(r.network);
    outputs_.write("validate.txt", fmt::format("valid: {} actors, {} messages, {} edges\n",
                                               s.num_actors, s.num_messages, s.num_edges));
    return 0;
  }

  TemporalTextNetwork load_valid() {
    ingest::Result r = load();
    if (!report(validate(r.network)))
      throw Error(Errc::MalformedRecord, fmt::format("'{}' violates the network constraints", cfg_.in));
    return std::move(r.network);
  }

  std::optional<discrete::BinMap> bins(const TemporalTextNetwork& net) const {
    if (cfg_.bin_width == 0) return std::nullopt;
    std::optional<Timestamp> anchor;
    if (cfg_.bin_anchor != "auto") {
      if (auto ms = text::parse_iso8601_ms(cfg_.bin_anchor)) {
        anchor = Timestamp{*ms};
      } else {
        try {
          std::size_t used = 0;
          anchor = Timestamp{std::stoll(cfg_.bin_anchor, &used)};
          if (used != cfg_.bin_anchor.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw Error(Errc::BadConfig, fmt::format("bad --bin-anchor '{}'", cfg_.bin_anchor));
        }
      }
    }
    return discrete::time_bins(net, cfg_.bin_width, anchor);
  }

  discrete::KPartiteNetwork discretize(const TemporalTextNetwork& net) const {
    const auto classes = discrete::tag_messages(net, discrete::Tagger::parse(cfg_.tagger));
    return discrete::discretize(net, classes, bins(net));
  }

  discrete::MultilayerActorNetwork project(const discrete::KPartiteNetwork& kp) const {
    return discrete::project(kp, {cfg_.weighted, cfg_.directed});
  }

  std::vector<communities::Community> communities(const discrete::MultilayerActorNetwork& ml) const {
    communities::CpmOptions opts{cfg_.k, communities::parse_scope(cfg_.scope), cfg_.include_none};
    if (cfg_.min_actors < 1) throw Error(Errc::BadConfig, "--min-actors must be >= 1");
    return communities::filter_communities(communities::kclique_communities(ml, opts), cfg_.min_actors);
  }

  continuous::DistanceConfig distance_config() const {
    continuous::DistanceConfig d = cfg_.distance;
    d.text_metric = continuous::parse_text_metric(cfg_.text_metric);
    d.check();
    return d;
  }

  std::vector<MessageId> selected_ids(const TemporalTextNetwork& net) const {
    if (cfg_.ids.empty()) return continuous::all_message_ids(net);
    std::vector<MessageId> ids;
    for (const auto& s : cfg_.ids) ids.emplace_back(s);
    return ids;
  }

  void slices(const TemporalTextNetwork& net) {
    std::vector<Timestamp> cuts;
    for (auto c : cfg_.cuts) cuts.push_back({c});
    const auto series = views::time_slice_view(net, cuts, views::parse_slice_policy(cfg_.policy));
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& s : series.slices) {
      nlohmann::ordered_json j;
      j["lo"] = s.lo.tick;
      j["hi"] = s.hi.tick;
      j["stats"] = stats_json(stats(s.network));
      j["network"] = to_json(s.network);
      doc.push_back(std::move(j));
    }
    outputs_.write("slices.json", doc.dump(2) + "\n");
  }

  void distances(const TemporalTextNetwork& net) {
    outputs_.write("distances.csv",
                   continuous::to_csv(continuous::distance_matrix(net, selected_ids(net), distance_config())));
  }

  void nearest(const TemporalTextNetwork& net) {
    const continuous::Query q{text::tokenize(cfg_.query_text), Timestamp{cfg_.query_t}};
    std::string csv = "message,distance\n";
    for (const auto& n : continuous::nearest(net, q, cfg_.top, distance_config()))
      csv += fmt::format("{},{}\n", n.id.str(), fixed9(n.distance));
    outputs_.write("nearest.csv", csv);
  }

  void cluster(const TemporalTextNetwork& net) {
    const auto dm = continuous::distance_matrix(net, selected_ids(net), distance_config());
    const auto c = continuous::cluster_kmedoids(dm, cfg_.medoids, cfg_.seed, cfg_.max_iter);
    outputs_.write("clusters.csv", continuous::to_csv(c));
    err_ << "objective " << fixed9(c.objective) << " after " << c.iterations << " swaps\n";
  }

  void pipeline(const TemporalTextNetwork& net) {
    const auto kp = discretize(net);
    const auto ml = project(kp);
    const auto cs = communities(ml);
    const auto evolution = communities::community_evolution(cs);

    nlohmann::ordered_json table;
    table["original"] = stats_json(stats(net));
    table["discretized"] = stats_json(discrete::stats(kp));
    table["projected"] = stats_json(discrete::stats(ml), false);
    outputs_.write("stats.json", table.dump(2) + "\n");
    outputs_.write("multilayer.csv", discrete::to_edge_list(ml));
    outputs_.write("communities.json", communities::to_json(cs).dump(2) + "\n");
    outputs_.write("evolution.dot", communities::to_dot(evolution));
  }

  const PipelineConfig& cfg_;
  Outputs outputs_;
  std::ostream& err_;
};

void add_input(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_option("--in", cfg.in, "Input file")->required();
  sub->add_option("--format", cfg.format, "auto | json | events | tweets | csv");
  sub->add_option("--out", cfg.out, "Output directory (stdout when omitted)");
  sub->add_flag("--allow-dangling", cfg.allow_dangling, "Warn instead of failing on missing reply/repost targets");
}

void add_discretization(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_option("--tagger", cfg.tagger, "hashtags | keywords:w1,w2,...");
  sub->add_option("--bin-width", cfg.bin_width, "Time bin width in ticks (0: no bins)")->check(CLI::NonNegativeNumber);
  sub->add_option("--bin-anchor", cfg.bin_anchor, "auto | tick | ISO-8601");
  sub->add_flag("--include-none", cfg.include_none, "Keep the _none text class in community detection");
}

void add_projection(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_flag("--weighted", cfg.weighted, "Weight edges by witnessing messages");
  sub->add_flag("--directed", cfg.directed, "Keep edge direction");
}

void add_distance(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_option("--w-topo", cfg.distance.w_topo, "Topology weight");
  sub->add_option("--w-time", cfg.distance.w_time, "Time weight");
  sub->add_option("--w-text", cfg.distance.w_text, "Text weight");
  sub->add_option("--topo-cap", cfg.distance.topo_cap, "Hop cap");
  sub->add_option("--asym-penalty", cfg.distance.asym_penalty, "Backward-in-time penalty");
  sub->add_option("--text-metric", cfg.text_metric, "jaccard | cosine");
  sub->add_option("--ids", cfg.ids, "Message ids (default: all)")->delimiter(',');
}

void add_cpm(CLI::App* sub, PipelineConfig& cfg) {
  sub->add_option("--k", cfg.k, "Clique size");
  sub->add_option("--scope", cfg.scope, "per_time_bin | per_layer");
  sub->add_option("--min-actors", cfg.min_actors, "Keep communities with at least this many actors");
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  parallel::configure_from_env();
  if (args.size() < 2 ||
      std::find(kSubcommands.begin(), kSubcommands.end(), args[1]) == kSubcommands.end()) {
    if (args.size() >= 2 && (args[1] == "--help" || args[1] == "-h")) {
      out << "usage: ttn <subcommand> --in FILE [options]\nsubcommands:";
      for (const auto& s : kSubcommands) out << " " << s;
      out << "\n";
      return 0;
    }
    err << "error: UnknownSubcommand: " << (args.size() < 2 ? std::string("(none)") : args[1]) << "\n";
    return 2;
  }
  const std::string command = args[1];

  PipelineConfig cfg;
  CLI::App app{"Temporal text network toolkit", "ttn"};
  app.require_subcommand(1);
  CLI::App* sub = app.add_subcommand(command);
  add_input(sub, cfg);
  if (command == "slices") {
    sub->add_option("--cuts", cfg.cuts, "Ascending cutpoints")->delimiter(',')->required();
    sub->add_option("--policy", cfg.policy, "production | any_consumption | all_edges");
  } else if (command == "memory") {
    sub->add_option("--delta", cfg.delta, "Relay window in ticks (default: unbounded)");
    sub->add_option("--memory-format", cfg.memory_format, "csv | dot");
  } else if (command == "discretize" || command == "project" || command == "communities" ||
             command == "evolution" || command == "pipeline") {
    add_discretization(sub, cfg);
    if (command != "discretize") add_projection(sub, cfg);
    if (command != "discretize" && command != "project") add_cpm(sub, cfg);
  } else if (command == "distances" || command == "nearest" || command == "cluster") {
    add_distance(sub, cfg);
    if (command == "nearest") {
      sub->add_option("--query-text", cfg.query_text, "Query text")->required();
      sub->add_option("--query-t", cfg.query_t, "Query time")->required();
      sub->add_option("--top", cfg.top, "Number of results");
    }
    if (command == "cluster") {
      sub->add_option("--medoids", cfg.medoids, "Number of clusters");
      sub->add_option("--seed", cfg.seed, "Seed");
      sub->add_option("--max-iter", cfg.max_iter, "Maximum swaps");
    }
  }

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);  // CLI11 wants them reversed
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << sub->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    return Runner(cfg, out, err).run(command);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ttn::cli
