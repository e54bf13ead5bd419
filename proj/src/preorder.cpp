#include "cellspec/preorder.hpp"

#include <cassert>
#include <string>

#include "cellspec/error.hpp"

namespace cellspec {

namespace {

std::vector<Bits> transpose(const std::vector<Bits>& rows) {
  const std::size_t n = rows.size();
  std::vector<Bits> out(n, Bits(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = rows[i].find_first(); j != Bits::npos; j = rows[i].find_next(j)) {
      out[j].set(i);
    }
  }
  return out;
}

void close_in_place(std::vector<Bits>& up) {
  const std::size_t n = up.size();
  for (Index i = 0; i < n; ++i) up[i].set(i);
  for (Index k = 0; k < n; ++k) {
    for (Index i = 0; i < n; ++i) {
      if (up[i][k]) up[i] |= up[k];
    }
  }
}

std::string pair_text(Index a, Index b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

void verify_closed(const std::vector<Bits>& up) {
  const std::size_t n = up.size();
  for (Index i = 0; i < n; ++i) {
    if (!up[i][i]) {
      throw Error(Errc::relation_not_reflexive, "missing diagonal pair " + pair_text(i, i));
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = up[i].find_first(); j != Bits::npos; j = up[i].find_next(j)) {
      if (up[j].is_subset_of(up[i])) continue;
      const Bits missing = up[j] - up[i];
      const Index k = missing.find_first();
      throw Error(Errc::relation_not_transitive, pair_text(i, j) + " and " + pair_text(j, k) +
                                                     " present but " + pair_text(i, k) + " absent");
    }
  }
}

}  // namespace

std::vector<Index> to_indices(const Bits& bits) {
  std::vector<Index> out;
  out.reserve(bits.count());
  for (Index i = bits.find_first(); i != Bits::npos; i = bits.find_next(i)) out.push_back(i);
  return out;
}

Preorder::Preorder() : rep_(std::make_shared<const Rep>()) {}

Preorder::Preorder(std::vector<Bits> up) {
  auto rep = std::make_shared<Rep>();
  rep->down = transpose(up);
  rep->up = std::move(up);
  rep_ = std::move(rep);
}

Preorder assume_closed(std::vector<Bits> up) {
#ifndef NDEBUG
  verify_closed(up);
#endif
  return Preorder(std::move(up));
}

Preorder Preorder::from_pairs(std::size_t size, std::span<const IndexPair> pairs, Closure closure) {
  std::vector<Bits> up(size, Bits(size));
  for (const auto& [i, j] : pairs) {
    if (i >= size || j >= size) {
      throw Error(Errc::index_out_of_range,
                  "pair " + pair_text(i, j) + " outside carrier of size " + std::to_string(size));
    }
    up[i].set(j);
  }
  return from_rows(std::move(up), closure);
}

Preorder Preorder::from_rows(std::vector<Bits> up, Closure closure) {
  const std::size_t n = up.size();
  for (Index i = 0; i < n; ++i) {
    if (up[i].size() != n) {
      throw Error(Errc::index_out_of_range, "row " + std::to_string(i) + " has width " +
                                                std::to_string(up[i].size()) + ", expected " +
                                                std::to_string(n));
    }
  }
  if (closure == Closure::close) {
    close_in_place(up);
  } else {
    verify_closed(up);
  }
  return Preorder(std::move(up));
}

std::vector<IndexPair> Preorder::pairs() const {
  std::vector<IndexPair> out;
  for (Index i = 0; i < size(); ++i) {
    for (Index j : to_indices(up(i))) out.emplace_back(i, j);
  }
  return out;
}

bool operator==(const Preorder& a, const Preorder& b) {
  return a.rep_ == b.rep_ || a.rep_->up == b.rep_->up;
}

void check_index(const Preorder& P, Index i) {
  if (i >= P.size()) {
    throw Error(Errc::index_out_of_range,
                "index " + std::to_string(i) + " outside carrier of size " + std::to_string(P.size()));
  }
}

Preorder chain(std::size_t n) {
  std::vector<Bits> up(n, Bits(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) up[i].set(j);
  }
  return assume_closed(std::move(up));
}

Preorder flat(std::size_t n) {
  std::vector<Bits> up(n, Bits(n));
  for (Index i = 0; i < n; ++i) up[i].set(i);
  return assume_closed(std::move(up));
}

ElementSet::ElementSet(std::size_t universe, std::span<const Index> members) : bits_(universe) {
  for (Index i : members) insert(i);
}

void ElementSet::insert(Index i) {
  if (i >= bits_.size()) {
    throw Error(Errc::index_out_of_range, "member " + std::to_string(i) + " outside universe of size " +
                                              std::to_string(bits_.size()));
  }
  bits_.set(i);
}

void check_set(const Preorder& P, const ElementSet& set) {
  if (set.universe() != P.size()) {
    throw Error(Errc::index_out_of_range, "set over universe " + std::to_string(set.universe()) +
                                              " used with carrier of size " + std::to_string(P.size()));
  }
}

MonotoneMap::MonotoneMap(Preorder source_, Preorder target_, std::vector<Index> image_)
    : source(std::move(source_)), target(std::move(target_)), image(std::move(image_)) {
  if (image.size() != source.size()) {
    throw Error(Errc::index_out_of_range, "map has " + std::to_string(image.size()) +
                                              " images for a source of size " + std::to_string(source.size()));
  }
  for (Index v : image) check_index(target, v);
}

bool is_monotone(const MonotoneMap& m) {
  for (Index p = 0; p < m.source.size(); ++p) {
    for (Index q : to_indices(m.source.up(p))) {
      if (!m.target.leq(m.image[p], m.image[q])) return false;
    }
  }
  return true;
}

bool is_surjective(const MonotoneMap& m) {
  Bits hit(m.target.size());
  for (Index v : m.image) hit.set(v);
  return hit.all();
}

bool is_monotone_surjection(const MonotoneMap& m) { return is_monotone(m) && is_surjective(m); }

bool compatible(const Preorder& P, Index p, Index q) {
  check_index(P, p);
  check_index(P, q);
  return P.down(p).intersects(P.down(q));
}

bool is_antichain(const Preorder& P, const ElementSet& A) {
  check_set(P, A);
  const auto members = A.members();
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (P.down(members[a]).intersects(P.down(members[b]))) return false;
    }
  }
  return true;
}

bool is_dense(const Preorder& P, const ElementSet& D) {
  check_set(P, D);
  for (Index p = 0; p < P.size(); ++p) {
    if (!P.down(p).intersects(D.bits())) return false;
  }
  return true;
}

namespace {

// Looks for an n-subset of `members` (drawn from position `from` on) whose
// down-sets have empty intersection. `common` is the running intersection.
bool has_unbounded_subset(const Preorder& P, const std::vector<Index>& members, std::size_t from,
                          std::size_t still_needed, const Bits& common) {
  if (common.none()) return members.size() - from >= still_needed;
  if (still_needed == 0) return false;
  for (std::size_t i = from; i + still_needed <= members.size(); ++i) {
    if (has_unbounded_subset(P, members, i + 1, still_needed - 1, common & P.down(members[i]))) {
      return true;
    }
  }
  return false;
}

}  // namespace

bool is_n_linked(const Preorder& P, const ElementSet& A, std::size_t n) {
  if (n < 2) throw Error(Errc::bad_arity, "linkage arity must be at least 2, got " + std::to_string(n));
  check_set(P, A);
  const auto members = A.members();
  if (members.size() < n) return true;
  Bits all(P.size());
  all.set();
  return !has_unbounded_subset(P, members, 0, n, all);
}

std::optional<Index> common_lower_bound(const Preorder& P, const ElementSet& A) {
  check_set(P, A);
  Bits common(P.size());
  common.set();
  for (Index a : A.members()) common &= P.down(a);
  const Index r = common.find_first();
  if (r == Bits::npos) return std::nullopt;
  return r;
}

bool is_centered(const Preorder& P, const ElementSet& A) {
  check_set(P, A);
  if (A.empty()) throw Error(Errc::empty_set, "centeredness needs a nonempty set");
  return common_lower_bound(P, A).has_value();
}

bool is_centered_by_linkage(const Preorder& P, const ElementSet& A) {
  check_set(P, A);
  if (A.empty()) throw Error(Errc::empty_set, "centeredness needs a nonempty set");
  for (std::size_t n = 2; n <= A.size(); ++n) {
    if (!is_n_linked(P, A, n)) return false;
  }
  return true;
}

std::vector<Bits> incompatibility_graph(const Preorder& P) {
  const std::size_t n = P.size();
  std::vector<Bits> graph(n, Bits(n));
  for (Index p = 0; p < n; ++p) {
    for (Index q = p + 1; q < n; ++q) {
      if (!P.down(p).intersects(P.down(q))) {
        graph[p].set(q);
        graph[q].set(p);
      }
    }
  }
  return graph;
}

}  // namespace cellspec
