#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ttn/cli.hpp"
#include "ttn/model_json.hpp"

using namespace ttn;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run ttn_run(std::vector<std::string> args) {
  args.insert(args.begin(), "ttn");
  std::ostringstream out, err;
  const int code = cli::execute(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ttn_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write(const fs::path& path, const std::string& content) {
  std::ofstream(path, std::ios::binary) << content;
  return path.string();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const std::string kFixture = std::string(TTN_DATA_DIR) + "/desk_tweets.jsonl";

}  // namespace

TEST_CASE("unknown or missing subcommand exits 2") {
  CHECK(ttn_run({"frobnicate"}).code == 2);
  CHECK(ttn_run({}).code == 2);
  CHECK(ttn_run({"--help"}).code == 0);
}

TEST_CASE("bad flags and unreadable input exit 1") {
  CHECK(ttn_run({"stats"}).code == 1);
  const auto r = ttn_run({"stats", "--in", "/nonexistent/file.json"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("validate names the offending edge") {
  const auto dir = scratch("validate");
  const auto path = write(dir / "net.json",
                          R"({"actors":["A","B"],"messages":[{"id":"m1","text":"x","tags":[],"sender":"A","t_send":100,)"
                          R"("recipients":[{"actor":"B","t_recv":90}]}],"message_links":[],"actor_links":[]})");
  const auto r = ttn_run({"validate", "--in", path});
  CHECK(r.code == 1);
  CHECK(r.err.find("(m1,B,90)") != std::string::npos);

  // analysis commands refuse the same file
  CHECK(ttn_run({"stats", "--in", path}).code == 1);
}

TEST_CASE("ingest errors report the line") {
  const auto dir = scratch("lines");
  const auto path = write(dir / "t.jsonl", "{\"id\":\"a\",\"author\":\"A\",\"text\":\"x\",\"t\":1}\n{oops\n");
  const auto r = ttn_run({"stats", "--in", path, "--format", "tweets"});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("stats prints the four table counts") {
  const auto dir = scratch("stats");
  const auto path = write(dir / "c.csv", "a,b,5\nb,c,6\n");
  const auto r = ttn_run({"stats", "--in", path});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("|A|") == 3);
  CHECK(j.at("|M|") == 2);
  CHECK(j.at("|E|") == 4);
  CHECK(j.at("|L|") == 2);
}

TEST_CASE("single-module commands write their outputs") {
  const auto dir = scratch("modules");
  const auto in = write(dir / "c.csv", "src,dst,t,text\na,b,1,hello world\nb,c,2,hello there\nc,a,3,bye\n");
  CHECK(ttn_run({"contacts", "--in", in}).out.rfind("sender,recipient,t_send,t_recv,message\n", 0) == 0);
  CHECK(ttn_run({"memory", "--in", in, "--delta", "1"}).out == "from,to\na>b,b>c\nb>c,c>a\n");
  CHECK(ttn_run({"slices", "--in", in, "--cuts", "0,2,4"}).code == 0);
  CHECK(ttn_run({"slices", "--in", in, "--cuts", "4,2"}).code == 1);

  const auto d = ttn_run({"distances", "--in", in});
  REQUIRE(d.code == 0);
  CHECK(d.out.rfind("id,c00000001,c00000002,c00000003\n", 0) == 0);
  CHECK(ttn_run({"distances", "--in", in, "--w-topo", "0.9"}).code == 1);

  const auto n = ttn_run({"nearest", "--in", in, "--query-text", "hello", "--query-t", "1", "--top", "2"});
  REQUIRE(n.code == 0);
  CHECK(std::count(n.out.begin(), n.out.end(), '\n') == 3);

  const auto c = ttn_run({"cluster", "--in", in, "--medoids", "2", "--out", (dir / "o").string()});
  REQUIRE(c.code == 0);
  CHECK(slurp(dir / "o" / "clusters.csv").rfind("message,cluster\n", 0) == 0);
  CHECK(ttn_run({"cluster", "--in", in, "--medoids", "9"}).code == 1);
}

TEST_CASE("network JSON outputs re-ingest") {
  const auto dir = scratch("reingest");
  const auto disc = ttn_run({"discretize", "--in", kFixture, "--bin-width", "604800000", "--out", dir.string()});
  REQUIRE(disc.code == 0);
  const auto again = ttn_run({"stats", "--in", (dir / "kpartite.json").string()});
  REQUIRE(again.code == 0);
  const auto orig = ttn_run({"stats", "--in", kFixture});
  CHECK(again.out == orig.out);
}

TEST_CASE("pipeline on the desk fixture") {
  const auto a = scratch("pipe_a"), b = scratch("pipe_b");
  const std::vector<std::string> flags = {"--tagger", "hashtags", "--bin-width", "604800000", "--k", "3"};
  auto args = [&](const fs::path& out) {
    std::vector<std::string> v = {"pipeline", "--in", kFixture, "--out", out.string()};
    v.insert(v.end(), flags.begin(), flags.end());
    return v;
  };
  const auto r = ttn_run(args(a));
  REQUIRE(r.code == 0);
  REQUIRE(ttn_run(args(b)).code == 0);
  for (const char* name : {"stats.json", "multilayer.csv", "communities.json", "evolution.dot"}) {
    CHECK(fs::exists(a / name));
    CHECK(slurp(a / name) == slurp(b / name));
  }
  const auto stats = nlohmann::json::parse(slurp(a / "stats.json"));
  CHECK(stats.at("original").at("|A|") == 40);
  CHECK(stats.at("original").at("|M|") == 200);
  CHECK(stats.at("projected").at("|M|").is_null());
  CHECK(stats.at("discretized").at("|M|").get<int>() >= 200);

  const auto cs = nlohmann::json::parse(slurp(a / "communities.json"));
  CHECK(!cs.empty());
  for (const auto& c : cs) CHECK(c.at("actors").size() > 3);
}
