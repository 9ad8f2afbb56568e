#include <algorithm>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "ttn/continuous.hpp"

namespace ttn::continuous {

namespace {

struct Nearest {
  std::vector<double> first;   // distance to the closest medoid
  std::vector<double> second;  // distance to the runner-up (inf when k == 1)
  std::vector<std::size_t> owner;  // position in the medoid list
};

Nearest nearest_medoids(const DistanceMatrix& dm, const std::vector<std::size_t>& medoids) {
  const std::size_t n = dm.size();
  const double inf = std::numeric_limits<double>::infinity();
  Nearest nr{std::vector<double>(n, inf), std::vector<double>(n, inf), std::vector<std::size_t>(n, 0)};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t p = 0; p < medoids.size(); ++p) {
      const double d = dm(medoids[p], j);
      // strict comparison keeps the lowest-index medoid on ties
      const bool closer = d < nr.first[j] || (d == nr.first[j] && medoids[p] < medoids[nr.owner[j]]);
      if (closer) {
        nr.second[j] = nr.first[j];
        nr.first[j] = d;
        nr.owner[j] = p;
      } else if (d < nr.second[j]) {
        nr.second[j] = d;
      }
    }
  return nr;
}

}  // namespace

double medoid_objective(const DistanceMatrix& dm, std::span<const std::size_t> medoids) {
  double total = 0.0;
  for (std::size_t j = 0; j < dm.size(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m : medoids) best = std::min(best, dm(m, j));
    total += best;
  }
  return total;
}

Clustering cluster_kmedoids(const DistanceMatrix& dm, std::size_t k, std::uint64_t /*seed*/,
                            int max_iter) {
  const std::size_t n = dm.size();
  if (k < 1 || k > n) throw Error(Errc::BadK, fmt::format("k={} outside [1, {}]", k, n));
  if (!dm.is_symmetric()) throw Error(Errc::AsymmetricMatrix, "k-medoids needs a symmetric matrix");

  // BUILD
  std::vector<std::size_t> medoids;
  std::vector<bool> is_medoid(n, false);
  {
    std::size_t best = 0;
    double best_sum = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += dm(i, j);
      if (sum < best_sum) {
        best_sum = sum;
        best = i;
      }
    }
    medoids.push_back(best);
    is_medoid[best] = true;
  }
  std::vector<double> closest(dm.row(medoids.front()).begin(), dm.row(medoids.front()).end());
  while (medoids.size() < k) {
    std::size_t best = n;
    double best_gain = -1.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (is_medoid[c]) continue;
      double gain = 0.0;
      for (std::size_t j = 0; j < n; ++j) gain += std::max(0.0, closest[j] - dm(c, j));
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    medoids.push_back(best);
    is_medoid[best] = true;
    for (std::size_t j = 0; j < n; ++j) closest[j] = std::min(closest[j], dm(best, j));
  }

  Clustering result;
  result.objective = medoid_objective(dm, medoids);
  result.trace.push_back(result.objective);

  // SWAP: best improvement over all (medoid, non-medoid) pairs.
  constexpr double kTolerance = 1e-12;
  while (result.iterations < max_iter) {
    const Nearest nr = nearest_medoids(dm, medoids);
    double best_delta = 0.0;
    std::size_t best_pos = k, best_cand = n;
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return medoids[a] < medoids[b]; });
    for (std::size_t pos : order) {
      for (std::size_t cand = 0; cand < n; ++cand) {
        if (is_medoid[cand]) continue;
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double via_cand = dm(cand, j);
          const double kept = nr.owner[j] == pos ? nr.second[j] : nr.first[j];
          delta += std::min(kept, via_cand) - nr.first[j];
        }
        if (delta < best_delta) {
          best_delta = delta;
          best_pos = pos;
          best_cand = cand;
        }
      }
    }
    if (best_pos == k || best_delta >= -kTolerance * std::max(1.0, result.objective)) break;
    const double next = [&] {
      auto trial = medoids;
      trial[best_pos] = best_cand;
      return medoid_objective(dm, trial);
    }();
    if (!(next < result.objective)) break;
    is_medoid[medoids[best_pos]] = false;
    is_medoid[best_cand] = true;
    medoids[best_pos] = best_cand;
    result.objective = next;
    result.trace.push_back(next);
    ++result.iterations;
  }

  std::sort(medoids.begin(), medoids.end(),
            [&](std::size_t a, std::size_t b) { return dm.ids()[a] < dm.ids()[b]; });
  const Nearest nr = nearest_medoids(dm, medoids);
  for (std::size_t p = 0; p < medoids.size(); ++p) result.medoids.push_back(dm.ids()[medoids[p]]);
  for (std::size_t j = 0; j < n; ++j)
    result.assignment[dm.ids()[j]] = static_cast<int>(nr.owner[j]);
  // a medoid always belongs to its own cluster, even when another medoid is at distance 0
  for (std::size_t p = 0; p < medoids.size(); ++p) result.assignment[dm.ids()[medoids[p]]] = static_cast<int>(p);
  return result;
}

std::string to_csv(const Clustering& c) {
  std::string out = "message,cluster\n";
  for (const auto& [id, cluster] : c.assignment) out += fmt::format("{},{}\n", id.str(), cluster);
  return out;
}

}  // namespace ttn::continuous
