#include <algorithm>
#include <iterator>

#include "ttn/communities.hpp"

namespace ttn::communities::cliques {

namespace {

using Set = std::vector<int>;  // sorted

Set intersect(const Set& a, const Set& b) {
  Set out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t intersection_size(const Set& a, const Set& b) {
  std::size_t n = 0;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end() && ib != b.end();) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else { ++n; ++ia; ++ib; }
  }
  return n;
}

struct Enumerator {
  const Graph& g;
  std::size_t min_size;
  std::vector<Set>& out;
  Set clique;

  void expand(Set candidates, Set excluded) {
    if (candidates.empty()) {
      if (excluded.empty() && clique.size() >= min_size) {
        Set sorted = clique;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(std::move(sorted));
      }
      return;
    }
    if (clique.size() + candidates.size() < min_size) return;

    // pivot maximizing |candidates ∩ N(u)|
    int pivot = candidates.front();
    std::size_t best = 0;
    for (const Set* pool : {&candidates, &excluded})
      for (int u : *pool)
        if (std::size_t c = intersection_size(candidates, g[u]); c > best) {
          best = c;
          pivot = u;
        }
    Set branch;
    std::set_difference(candidates.begin(), candidates.end(), g[pivot].begin(), g[pivot].end(),
                        std::back_inserter(branch));

    for (int v : branch) {
      clique.push_back(v);
      expand(intersect(candidates, g[v]), intersect(excluded, g[v]));
      clique.pop_back();
      candidates.erase(std::lower_bound(candidates.begin(), candidates.end(), v));
      excluded.insert(std::lower_bound(excluded.begin(), excluded.end(), v), v);
    }
  }
};

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g, std::size_t min_size) {
  std::vector<Set> out;
  Enumerator e{g, std::max<std::size_t>(min_size, 1), out, {}};
  Set all(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) all[v] = static_cast<int>(v);
  e.expand(std::move(all), {});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ttn::communities::cliques
