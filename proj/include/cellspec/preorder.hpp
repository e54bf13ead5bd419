#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace cellspec {

using Index = std::size_t;
using Bits = boost::dynamic_bitset<std::uint64_t>;
using IndexPair = std::pair<Index, Index>;

/// Largest carrier any derived construction (products, F-posets) may produce
/// unless a caller raises it explicitly.
inline constexpr std::size_t kDefaultElementCap = 4096;

enum class Closure {
  verify,  ///< reject relations that are not already reflexive and transitive
  close,   ///< replace the relation by its reflexive-transitive closure
};

/// Indices of the set bits, ascending.
std::vector<Index> to_indices(const Bits& bits);

/// A finite preordered set on the indices 0..size-1.
///
/// The relation is stored closed, as one row of successors and one row of
/// predecessors per element. Instances are immutable and share their storage,
/// so copies are cheap.
class Preorder {
 public:
  /// The empty preorder.
  Preorder();

  static Preorder from_pairs(std::size_t size, std::span<const IndexPair> pairs, Closure closure);
  static Preorder from_pairs(std::size_t size, std::initializer_list<IndexPair> pairs,
                             Closure closure) {
    return from_pairs(size, std::span<const IndexPair>(pairs.begin(), pairs.size()), closure);
  }
  /// `up[i][j]` means i <= j.
  static Preorder from_rows(std::vector<Bits> up, Closure closure);

  std::size_t size() const noexcept { return rep_->up.size(); }
  bool empty() const noexcept { return size() == 0; }

  /// Unchecked; callers validate indices.
  bool leq(Index i, Index j) const { return rep_->up[i][j]; }
  /// {j : i <= j}
  const Bits& up(Index i) const { return rep_->up[i]; }
  /// {i : i <= j}
  const Bits& down(Index j) const { return rep_->down[j]; }

  /// Every related pair (including the diagonal), lexicographically sorted.
  std::vector<IndexPair> pairs() const;

  friend bool operator==(const Preorder& a, const Preorder& b);

 private:
  struct Rep {
    std::vector<Bits> up;
    std::vector<Bits> down;
  };

  explicit Preorder(std::vector<Bits> up);

  friend Preorder assume_closed(std::vector<Bits> up);

  std::shared_ptr<const Rep> rep_;
};

/// Wraps rows known to be reflexive and transitive by construction
/// (products, reverse inclusion). Checked only in debug builds.
Preorder assume_closed(std::vector<Bits> up);

/// Throws IndexOutOfRange unless i < P.size().
void check_index(const Preorder& P, Index i);

/// 0 < 1 < ... < n-1
Preorder chain(std::size_t n);
/// Only the diagonal.
Preorder flat(std::size_t n);

/// A subset of a preorder's carrier. `universe()` is the carrier size.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : bits_(universe) {}
  ElementSet(std::size_t universe, std::span<const Index> members);
  ElementSet(std::size_t universe, std::initializer_list<Index> members)
      : ElementSet(universe, std::span<const Index>(members.begin(), members.size())) {}
  explicit ElementSet(Bits bits) : bits_(std::move(bits)) {}

  std::size_t universe() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }
  bool contains(Index i) const { return i < bits_.size() && bits_[i]; }
  void insert(Index i);

  const Bits& bits() const noexcept { return bits_; }
  std::vector<Index> members() const { return to_indices(bits_); }

  bool is_subset_of(const ElementSet& other) const { return bits_.is_subset_of(other.bits_); }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  /// Lexicographic order of the sorted member lists.
  friend bool operator<(const ElementSet& a, const ElementSet& b) { return a.members() < b.members(); }

 private:
  Bits bits_;
};

/// Throws IndexOutOfRange if `set` is not over P's carrier.
void check_set(const Preorder& P, const ElementSet& set);

struct MonotoneMap {
  Preorder source;
  Preorder target;
  std::vector<Index> image;

  /// Validates shape only: one image per source element, each inside the target.
  MonotoneMap(Preorder source, Preorder target, std::vector<Index> image);
};

bool is_monotone(const MonotoneMap& m);
bool is_surjective(const MonotoneMap& m);
bool is_monotone_surjection(const MonotoneMap& m);

// -- predicates --------------------------------------------------------------

/// Some r lies below both p and q.
bool compatible(const Preorder& P, Index p, Index q);
bool is_antichain(const Preorder& P, const ElementSet& A);
/// Every element has a member of D below it.
bool is_dense(const Preorder& P, const ElementSet& D);
/// Every n-element subset of A has a common lower bound. Vacuous when |A| < n.
bool is_n_linked(const Preorder& P, const ElementSet& A, std::size_t n);
/// A has a common lower bound. Throws EmptySet on an empty A.
bool is_centered(const Preorder& P, const ElementSet& A);
/// Same predicate computed as "n-linked for every n in 2..|A|".
bool is_centered_by_linkage(const Preorder& P, const ElementSet& A);
/// Least-index common lower bound of A, if any.
std::optional<Index> common_lower_bound(const Preorder& P, const ElementSet& A);

/// Row i holds the elements incompatible with i.
std::vector<Bits> incompatibility_graph(const Preorder& P);

}  // namespace cellspec
