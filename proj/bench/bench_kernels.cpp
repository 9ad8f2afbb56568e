// Serial reference vs OpenMP kernels on a synthetic mention network.

#include <random>

#include <benchmark/benchmark.h>
#include <fmt/format.h>

#include "ttn/communities.hpp"
#include "ttn/continuous.hpp"
#include "ttn/discrete.hpp"

namespace {

ttn::TemporalTextNetwork synthetic(int messages, int actors, std::uint64_t seed) {
  static const char* kTags[] = {"ai", "ar", "vr", "iot", "edge", "cloud"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> actor(0, actors - 1), tag(0, 5), fanout(1, 4), dt(0, 50);
  ttn::TemporalTextNetwork net;
  for (int m = 0; m < messages; ++m) {
    const ttn::MessageId id{fmt::format("m{:06}", m)};
    const int sender = actor(rng);
    const ttn::Timestamp t{m * 10};
    net.add_message(ttn::ActorId{fmt::format("a{:04}", sender)}, id,
                    fmt::format("#{} word{} #{}", kTags[tag(rng)], m % 17, kTags[tag(rng)]), t);
    for (int r = fanout(rng); r > 0; --r) {
      const ttn::ActorId to{fmt::format("a{:04}", actor(rng))};
      if (to.str() == fmt::format("a{:04}", sender)) continue;
      try {
        net.add_recipient(id, to, ttn::Timestamp{t.tick + dt(rng)});
      } catch (const ttn::Error&) {
      }
    }
  }
  return net;
}

ttn::discrete::KPartiteNetwork kpartite(const ttn::TemporalTextNetwork& net) {
  using namespace ttn::discrete;
  return discretize(net, tag_messages(net, Tagger{}), time_bins(net, 500));
}

void BM_DistanceMatrixSerial(benchmark::State& state) {
  const auto net = synthetic(static_cast<int>(state.range(0)), 200, 1);
  const auto ids = ttn::continuous::all_message_ids(net);
  for (auto _ : state) benchmark::DoNotOptimize(ttn::continuous::serial::distance_matrix(net, ids, {}));
}

void BM_DistanceMatrixParallel(benchmark::State& state) {
  const auto net = synthetic(static_cast<int>(state.range(0)), 200, 1);
  const auto ids = ttn::continuous::all_message_ids(net);
  for (auto _ : state) benchmark::DoNotOptimize(ttn::continuous::distance_matrix(net, ids, {}));
}

void BM_ProjectSerial(benchmark::State& state) {
  const auto kp = kpartite(synthetic(static_cast<int>(state.range(0)), 500, 2));
  for (auto _ : state) benchmark::DoNotOptimize(ttn::discrete::serial::project(kp, {true, false}));
}

void BM_ProjectParallel(benchmark::State& state) {
  const auto kp = kpartite(synthetic(static_cast<int>(state.range(0)), 500, 2));
  for (auto _ : state) benchmark::DoNotOptimize(ttn::discrete::project(kp, {true, false}));
}

void BM_CliquesSerial(benchmark::State& state) {
  const auto ml = ttn::discrete::project(kpartite(synthetic(static_cast<int>(state.range(0)), 60, 3)), {});
  for (auto _ : state)
    benchmark::DoNotOptimize(ttn::communities::serial::kclique_communities(ml, {}));
}

void BM_CliquesParallel(benchmark::State& state) {
  const auto ml = ttn::discrete::project(kpartite(synthetic(static_cast<int>(state.range(0)), 60, 3)), {});
  for (auto _ : state) benchmark::DoNotOptimize(ttn::communities::kclique_communities(ml, {}));
}

}  // namespace

BENCHMARK(BM_DistanceMatrixSerial)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceMatrixParallel)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectSerial)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectParallel)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CliquesSerial)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CliquesParallel)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
