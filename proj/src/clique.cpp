#include "cellspec/clique.hpp"

#include <algorithm>
#include <cassert>

namespace cellspec {

namespace {

// Removal order of repeated minimum-degree deletion, lowest index first on ties.
std::vector<Index> degeneracy_order(std::span<const Bits> adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<std::size_t> degree(n);
  for (Index v = 0; v < n; ++v) degree[v] = adjacency[v].count();
  Bits alive(n);
  alive.set();
  std::vector<Index> order;
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    Index pick = Bits::npos;
    for (Index v = alive.find_first(); v != Bits::npos; v = alive.find_next(v)) {
      if (pick == Bits::npos || degree[v] < degree[pick]) pick = v;
    }
    alive.reset(pick);
    order.push_back(pick);
    const Bits nbrs = adjacency[pick] & alive;
    for (Index w = nbrs.find_first(); w != Bits::npos; w = nbrs.find_next(w)) --degree[w];
  }
  return order;
}

class CliqueSearch {
 public:
  explicit CliqueSearch(std::vector<Bits> adjacency) : adj_(std::move(adjacency)) {}

  std::vector<Index> run() {
    Bits all(adj_.size());
    all.set();
    std::vector<Index> current;
    expand(current, all);
    return best_;
  }

 private:
  void expand(std::vector<Index>& current, Bits candidates) {
    // Greedy sequential coloring in rank order.
    std::vector<Index> order;
    std::vector<std::size_t> color;
    Bits uncolored = candidates;
    for (std::size_t k = 1; uncolored.any(); ++k) {
      Bits open = uncolored;
      for (Index v = open.find_first(); v != Bits::npos; v = open.find_first()) {
        uncolored.reset(v);
        open.reset(v);
        open -= adj_[v];
        order.push_back(v);
        color.push_back(k);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + color[i] <= best_.size()) return;
      const Index v = order[i];
      current.push_back(v);
      const Bits next = candidates & adj_[v];
      if (next.none()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, next);
      }
      current.pop_back();
      candidates.reset(v);
    }
  }

  std::vector<Bits> adj_;
  std::vector<Index> best_;
};

}  // namespace

std::vector<Index> maximum_clique(std::span<const Bits> adjacency) {
  const std::size_t n = adjacency.size();
  if (n == 0) return {};
  auto order = degeneracy_order(adjacency);
  std::reverse(order.begin(), order.end());
  std::vector<Index> rank(n);
  for (Index r = 0; r < n; ++r) rank[order[r]] = r;

  std::vector<Bits> ranked(n, Bits(n));
  for (Index v = 0; v < n; ++v) {
    for (Index w = adjacency[v].find_first(); w != Bits::npos; w = adjacency[v].find_next(w)) {
      ranked[rank[v]].set(rank[w]);
    }
  }
  auto clique = CliqueSearch(std::move(ranked)).run();
  for (Index& v : clique) v = order[v];
  std::sort(clique.begin(), clique.end());
  return clique;
}

}  // namespace cellspec
