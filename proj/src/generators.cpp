#include "cellspec/generators.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <string>

#include "cellspec/error.hpp"

namespace cellspec {

namespace {

using Key = std::vector<std::size_t>;

// Iterated refinement of (|down|, |up|) by the sorted colours of the
// strict successors and predecessors. Returns a colour per vertex; colours
// are ranks of isomorphism-invariant keys.
std::vector<std::size_t> refined_colours(const Preorder& P) {
  const std::size_t n = P.size();
  std::vector<std::size_t> colour(n);
  std::vector<Key> keys(n);
  for (Index v = 0; v < n; ++v) keys[v] = {P.down(v).count(), P.up(v).count()};

  std::size_t classes = 0;
  for (;;) {
    std::vector<Key> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (Index v = 0; v < n; ++v) {
      colour[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
    }
    if (sorted.size() == classes) return colour;
    classes = sorted.size();

    for (Index v = 0; v < n; ++v) {
      Key above, below;
      for (Index w : to_indices(P.up(v))) {
        if (w != v) above.push_back(colour[w]);
      }
      for (Index w : to_indices(P.down(v))) {
        if (w != v) below.push_back(colour[w]);
      }
      std::sort(above.begin(), above.end());
      std::sort(below.begin(), below.end());
      Key next{colour[v], above.size()};
      next.insert(next.end(), above.begin(), above.end());
      next.push_back(below.size());
      next.insert(next.end(), below.begin(), below.end());
      keys[v] = std::move(next);
    }
  }
}

std::string relation_bytes(const Preorder& P, const std::vector<Index>& old_at) {
  const std::size_t n = P.size();
  std::string out(n * n, '0');
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (P.leq(old_at[i], old_at[j])) out[i * n + j] = '1';
    }
  }
  return out;
}

// Visits every arrangement of `old_at` that permutes vertices within each
// colour block [starts[b], starts[b+1]).
template <class Visit>
void permute_blocks(std::vector<Index>& old_at, const std::vector<std::size_t>& starts, std::size_t block,
                    Visit& visit) {
  if (block + 1 == starts.size()) {
    visit();
    return;
  }
  auto first = old_at.begin() + static_cast<std::ptrdiff_t>(starts[block]);
  auto last = old_at.begin() + static_cast<std::ptrdiff_t>(starts[block + 1]);
  std::sort(first, last);
  do {
    permute_blocks(old_at, starts, block + 1, visit);
  } while (std::next_permutation(first, last));
}

std::vector<std::uint64_t> masks_of(const Preorder& P, bool upward) {
  std::vector<std::uint64_t> out(P.size());
  for (Index i = 0; i < P.size(); ++i) {
    const Bits& row = upward ? P.up(i) : P.down(i);
    for (Index j : to_indices(row)) out[i] |= std::uint64_t{1} << j;
  }
  return out;
}

// All one-element extensions of P: the new element is placed with a
// down-closed set below it and an up-closed set above it.
std::vector<Preorder> extensions(const Preorder& P) {
  const std::size_t n = P.size();
  const auto up = masks_of(P, true);
  const auto down = masks_of(P, false);
  const std::uint64_t subsets = std::uint64_t{1} << n;

  std::vector<std::uint64_t> lower_sets, upper_sets;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    bool down_closed = true, up_closed = true;
    for (Index i = 0; i < n; ++i) {
      if (!(s >> i & 1U)) continue;
      down_closed = down_closed && (down[i] & ~s) == 0;
      up_closed = up_closed && (up[i] & ~s) == 0;
    }
    if (down_closed) lower_sets.push_back(s);
    if (up_closed) upper_sets.push_back(s);
  }

  std::vector<Preorder> out;
  for (std::uint64_t below : lower_sets) {
    for (std::uint64_t above : upper_sets) {
      bool ok = true;
      for (Index i = 0; i < n && ok; ++i) {
        if (below >> i & 1U) ok = (above & ~up[i]) == 0;
      }
      if (!ok) continue;
      std::vector<Bits> rows(n + 1, Bits(n + 1));
      for (Index i = 0; i < n; ++i) {
        for (Index j : to_indices(P.up(i))) rows[i].set(j);
        if (below >> i & 1U) rows[i].set(n);
        if (above >> i & 1U) rows[n].set(i);
      }
      rows[n].set(n);
      out.push_back(Preorder::from_rows(std::move(rows), Closure::verify));
    }
  }
  return out;
}

struct Catalog {
  std::mutex lock;
  std::vector<std::vector<Preorder>> by_size{{}};  // by_size[s]: canonical order
  std::vector<Preorder> flattened;                  // sizes 1..built, in order
};

Catalog& catalog() {
  static Catalog c;
  return c;
}

void build_up_to(Catalog& c, std::size_t max_size) {
  while (c.by_size.size() <= max_size) {
    const std::size_t s = c.by_size.size();
    std::map<std::string, Preorder> found;
    if (s == 1) {
      found.emplace("1", flat(1));
    } else {
      for (const auto& smaller : c.by_size[s - 1]) {
        for (const auto& ext : extensions(smaller)) {
          auto form = canonical_form(ext);
          if (!found.contains(form.bytes)) found.emplace(form.bytes, relabel(ext, form.permutation));
        }
      }
    }
    std::vector<Preorder> level;
    for (auto& [bytes, rep] : found) level.push_back(rep);
    c.flattened.insert(c.flattened.end(), level.begin(), level.end());
    c.by_size.push_back(std::move(level));
  }
}

}  // namespace

CanonicalForm canonical_form(const Preorder& P) {
  const std::size_t n = P.size();
  if (n > kCanonicalCap) {
    throw Error(Errc::cap_exceeded, "canonical form of size " + std::to_string(n) + " exceeds cap " +
                                        std::to_string(kCanonicalCap));
  }
  const auto colour = refined_colours(P);
  std::vector<Index> old_at(n);
  for (Index v = 0; v < n; ++v) old_at[v] = v;
  std::stable_sort(old_at.begin(), old_at.end(), [&](Index a, Index b) { return colour[a] < colour[b]; });
  std::vector<std::size_t> starts{0};
  for (Index i = 1; i < n; ++i) {
    if (colour[old_at[i]] != colour[old_at[i - 1]]) starts.push_back(i);
  }
  starts.push_back(n);

  std::string best;
  std::vector<Index> best_old_at = old_at;
  bool have = false;
  auto visit = [&] {
    auto bytes = relation_bytes(P, old_at);
    if (!have || bytes < best) {
      best = std::move(bytes);
      best_old_at = old_at;
      have = true;
    }
  };
  if (n == 0) {
    return {};
  }
  permute_blocks(old_at, starts, 0, visit);

  CanonicalForm out;
  out.permutation.resize(n);
  for (Index i = 0; i < n; ++i) out.permutation[best_old_at[i]] = i;
  out.bytes = std::move(best);
  return out;
}

Preorder relabel(const Preorder& P, std::span<const Index> permutation) {
  const std::size_t n = P.size();
  if (permutation.size() != n) {
    throw Error(Errc::index_out_of_range, "permutation length does not match the carrier");
  }
  std::vector<Bits> rows(n, Bits(n));
  for (Index i = 0; i < n; ++i) {
    check_index(P, permutation[i]);
    for (Index j : to_indices(P.up(i))) rows[permutation[i]].set(permutation[j]);
  }
  return Preorder::from_rows(std::move(rows), Closure::verify);
}

Preorder canonical_representative(const Preorder& P) { return relabel(P, canonical_form(P).permutation); }

Preorder random_preorder(std::size_t size, double edge_bias, std::uint64_t seed) {
  if (!(edge_bias >= 0.0 && edge_bias <= 1.0)) {
    throw Error(Errc::precondition_unmet, "edge bias must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::vector<Bits> rows(size, Bits(size));
  for (Index i = 0; i < size; ++i) {
    for (Index j = 0; j < size; ++j) {
      if (i == j) continue;
      // 53 uniform bits; avoids implementation-defined distributions
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < edge_bias) rows[i].set(j);
    }
  }
  return Preorder::from_rows(std::move(rows), Closure::close);
}

const std::vector<Preorder>& canonical_preorders(std::size_t max_size) {
  if (max_size > kExhaustiveCap) {
    throw Error(Errc::cap_exceeded, "exhaustive enumeration of size " + std::to_string(max_size) +
                                        " exceeds cap " + std::to_string(kExhaustiveCap));
  }
  // one slice per requested size, returned by reference for the process lifetime
  static std::vector<Preorder> slices[kExhaustiveCap + 1];
  static std::once_flag ready[kExhaustiveCap + 1];
  std::call_once(ready[max_size], [max_size] {
    Catalog& c = catalog();
    std::lock_guard guard(c.lock);
    build_up_to(c, max_size);
    for (std::size_t s = 1; s <= max_size; ++s) {
      slices[max_size].insert(slices[max_size].end(), c.by_size[s].begin(), c.by_size[s].end());
    }
  });
  return slices[max_size];
}

std::vector<std::size_t> class_counts(std::size_t max_size) {
  std::vector<std::size_t> counts(max_size + 1, 0);
  for (const auto& P : canonical_preorders(max_size)) ++counts[P.size()];
  return counts;
}

InstanceStream InstanceStream::exhaustive(std::size_t max_size) {
  InstanceStream s;
  s.kind_ = Kind::exhaustive;
  s.catalog_ = &canonical_preorders(max_size);
  s.count_ = s.catalog_->size();
  return s;
}

InstanceStream InstanceStream::random(std::size_t count, std::size_t size, double edge_bias, std::uint64_t seed) {
  if (size == 0) throw Error(Errc::precondition_unmet, "random instances need size >= 1");
  InstanceStream s;
  s.kind_ = Kind::random;
  s.count_ = count;
  s.size_ = size;
  s.edge_bias_ = edge_bias;
  s.seed_ = seed;
  return s;
}

std::optional<Preorder> InstanceStream::next() {
  if (cursor_ >= count_) return std::nullopt;
  const std::size_t i = cursor_++;
  if (kind_ == Kind::exhaustive) return (*catalog_)[i];
  return random_preorder(size_, edge_bias_, seed_ ^ static_cast<std::uint64_t>(i));
}

std::vector<Preorder> InstanceStream::collect() {
  std::vector<Preorder> out;
  while (auto p = next()) out.push_back(std::move(*p));
  return out;
}

}  // namespace cellspec
