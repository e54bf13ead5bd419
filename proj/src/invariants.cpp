#include "cellspec/invariants.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "cellspec/clique.hpp"
#include "cellspec/error.hpp"

namespace cellspec {

namespace {

void require_nonempty(const Preorder& P, const char* what) {
  if (P.empty()) throw Error(Errc::empty_poset, std::string(what) + " of an empty preorder");
}

struct Group {
  std::vector<Index> members;
  std::vector<std::size_t> classes;  // minimal classes below every member
};

class LinkedFreeSearch {
 public:
  LinkedFreeSearch(std::vector<Group> groups, std::size_t class_count, std::size_t budget)
      : groups_(std::move(groups)), capacity_(class_count, budget), take_(groups_.size(), 0) {}

  std::vector<std::size_t> run() {
    best_take_ = take_;
    descend(0, 0);
    return best_take_;
  }

 private:
  std::size_t room(std::size_t g) const {
    std::size_t r = groups_[g].members.size();
    for (std::size_t c : groups_[g].classes) r = std::min(r, capacity_[c]);
    return r;
  }

  void descend(std::size_t g, std::size_t total) {
    if (g == groups_.size()) {
      if (total > best_) {
        best_ = total;
        best_take_ = take_;
      }
      return;
    }
    std::size_t optimistic = total;
    for (std::size_t h = g; h < groups_.size(); ++h) optimistic += room(h);
    if (optimistic <= best_) return;

    for (std::size_t x = room(g) + 1; x-- > 0;) {
      for (std::size_t c : groups_[g].classes) capacity_[c] -= x;
      take_[g] = x;
      descend(g + 1, total + x);
      for (std::size_t c : groups_[g].classes) capacity_[c] += x;
    }
    take_[g] = 0;
  }

  std::vector<Group> groups_;
  std::vector<std::size_t> capacity_;
  std::vector<std::size_t> take_;
  std::vector<std::size_t> best_take_;
  std::size_t best_ = 0;
};

void collect_antichains(const std::vector<Bits>& incompatible, Bits& current,
                        const Bits& candidates, std::vector<ElementSet>& out, std::size_t cap) {
  for (Index v = candidates.find_first(); v != Bits::npos; v = candidates.find_next(v)) {
    current.set(v);
    if (out.size() == cap) {
      throw Error(Errc::cap_exceeded, "more than " + std::to_string(cap) + " antichains");
    }
    out.emplace_back(current);
    Bits next = candidates & incompatible[v];
    // only extend with larger indices so each antichain is produced once
    for (Index w = next.find_first(); w != Bits::npos && w <= v; w = next.find_next(w)) next.reset(w);
    if (next.any()) collect_antichains(incompatible, current, next, out, cap);
    current.reset(v);
  }
}

}  // namespace

Attained cellularity(const Preorder& P) {
  require_nonempty(P, "cellularity");
  const auto graph = incompatibility_graph(P);
  auto clique = maximum_clique(graph);
  return {clique.size(), std::move(clique)};
}

std::vector<Index> minimal_representatives(const Preorder& P) {
  std::vector<Index> reps;
  Bits covered(P.size());
  for (Index m = 0; m < P.size(); ++m) {
    if (covered[m]) continue;
    if (!P.down(m).is_subset_of(P.up(m))) continue;
    reps.push_back(m);
    covered |= P.down(m);  // the class of a minimal element is its down-set
  }
  return reps;
}

Attained density(const Preorder& P) {
  require_nonempty(P, "density");
  auto reps = minimal_representatives(P);
  return {reps.size(), std::move(reps)};
}

Attained linked_free_number(const Preorder& P, std::size_t n) {
  if (n < 2) throw Error(Errc::bad_arity, "linkage arity must be at least 2, got " + std::to_string(n));
  if (P.empty()) return {};
  const auto reps = minimal_representatives(P);

  std::map<std::vector<std::size_t>, std::size_t> group_of;
  std::vector<Group> groups;
  for (Index e = 0; e < P.size(); ++e) {
    std::vector<std::size_t> classes;
    for (std::size_t c = 0; c < reps.size(); ++c) {
      if (P.leq(reps[c], e)) classes.push_back(c);
    }
    auto [it, fresh] = group_of.try_emplace(classes, groups.size());
    if (fresh) groups.push_back(Group{{}, classes});
    groups[it->second].members.push_back(e);
  }

  const auto take = LinkedFreeSearch(groups, reps.size(), n - 1).run();
  Attained out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t i = 0; i < take[g]; ++i) out.witness.push_back(groups[g].members[i]);
  }
  std::sort(out.witness.begin(), out.witness.end());
  out.value = out.witness.size();
  return out;
}

std::vector<ElementSet> antichains(const Preorder& P, std::size_t cap) {
  std::vector<ElementSet> out;
  if (P.empty()) return out;
  const auto incompatible = incompatibility_graph(P);
  Bits current(P.size());
  Bits all(P.size());
  all.set();
  collect_antichains(incompatible, current, all, out, cap);
  return out;
}

std::vector<ElementSet> maximal_antichains(const Preorder& P, std::size_t cap) {
  std::vector<ElementSet> out;
  const auto incompatible = incompatibility_graph(P);
  for (auto& a : antichains(P, cap)) {
    Bits extendable(P.size());
    extendable.set();
    for (Index v : a.members()) extendable &= incompatible[v];
    if (extendable.none()) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace cellspec
