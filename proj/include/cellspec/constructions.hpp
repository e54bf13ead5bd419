#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cellspec/preorder.hpp"

namespace cellspec {

// -- products ----------------------------------------------------------------

/// Row-major pairing of the product carrier: (p, q) -> p * |Q| + q.
constexpr Index pair_index(Index p, Index q, std::size_t right_size) { return p * right_size + q; }

/// Coordinate-wise order on P x Q. Throws EmptyPoset on an empty factor and
/// SizeOverflow past `cap` elements.
Preorder product(const Preorder& P, const Preorder& Q, std::size_t cap = kDefaultElementCap);

/// A preorder with a designated largest element.
struct PointedPreorder {
  Preorder order;
  Index top = 0;

  /// Throws NoTopElement unless every element lies below `top`.
  PointedPreorder(Preorder order, Index top);
};

/// Least-index element above every other element, if any.
std::optional<Index> greatest_element(const Preorder& P);

/// Product of pointed factors restricted to tuples that differ from the top in
/// finitely many coordinates. With finitely many factors that is every tuple;
/// the support of each tuple is still recorded.
struct SupportProduct {
  Preorder order;
  std::vector<std::size_t> radices;
  std::vector<Index> tops;
  /// Number of coordinates different from the factor's top, per element.
  std::vector<std::size_t> support;

  /// Mixed-radix decoding, first factor most significant.
  std::vector<Index> coordinates(Index element) const;
};

SupportProduct finite_support_product(std::span<const PointedPreorder> factors,
                                      std::size_t cap = kDefaultElementCap);

// -- families of antichains ------------------------------------------------

/// A family of antichains of a base preorder, kept normalized: empty members
/// and members contained in another member are dropped, and the rest are
/// sorted lexicographically.
class AntichainFamily {
 public:
  /// Throws NotAnAntichain if some member is not an antichain of `base`.
  AntichainFamily(Preorder base, std::vector<ElementSet> members);

  const Preorder& base() const noexcept { return base_; }
  const std::vector<ElementSet>& members() const noexcept { return members_; }
  const ElementSet& union_set() const noexcept { return union_; }
  std::size_t union_size() const noexcept { return union_.size(); }

  /// |union| >= k + 1.
  bool is_large(std::size_t k) const noexcept { return union_size() >= k + 1; }

  /// S is contained in some member (the empty set always is).
  bool admits(const ElementSet& S) const;

  friend bool operator==(const AntichainFamily& a, const AntichainFamily& b) {
    return a.base_ == b.base_ && a.members_ == b.members_;
  }

 private:
  Preorder base_;
  std::vector<ElementSet> members_;
  ElementSet union_;
};

/// Every normalized family of at most `max_members` nonempty antichains of P,
/// the empty family first. Throws CapExceeded past `cap` families.
std::vector<AntichainFamily> all_families(const Preorder& P, std::size_t max_members,
                                          std::size_t cap = std::size_t{1} << 20);

/// Finite subsets of members of a family, ordered by reverse inclusion
/// (F <= G iff F contains G). The empty set is always present and is the top.
class FPoset {
 public:
  const AntichainFamily& family() const noexcept { return rep_->family; }
  /// Lexicographic by member list; position 0 is the empty set.
  const std::vector<ElementSet>& sets() const noexcept { return rep_->sets; }
  const Preorder& as_preorder() const noexcept { return rep_->order; }
  std::size_t size() const noexcept { return rep_->sets.size(); }
  Index top() const noexcept { return 0; }

  std::optional<Index> position(const ElementSet& S) const;

 private:
  struct Rep {
    AntichainFamily family;
    std::vector<ElementSet> sets;
    std::map<std::vector<Index>, Index> positions;
    Preorder order;
  };

  explicit FPoset(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  friend FPoset f_poset(const AntichainFamily& family, std::size_t cap);

  std::shared_ptr<const Rep> rep_;
};

/// Throws SizeOverflow when more than `cap` sets would be listed.
FPoset f_poset(const AntichainFamily& family, std::size_t cap = kDefaultElementCap);

/// Compares incompatibility of F and G computed in the order of `fp` with the
/// test "F u G is not listed". Throws SetNotInFPoset for unlisted arguments.
bool incompatibility_matches_union(const FPoset& fp, const ElementSet& F, const ElementSet& G);

/// The set {(p, {p}) : p in the union of the family} inside base x F(family).
struct DiagonalAntichain {
  Preorder product;
  FPoset fposet;
  ElementSet members;
  bool is_antichain = false;
};

DiagonalAntichain diagonal_antichain(const AntichainFamily& family, std::size_t cap = kDefaultElementCap);

/// Given an antichain W of P x Q, the family of sections
/// A_r = {p : (p, q) in W for some q >= r}, one per r in Q, normalized.
/// Throws NotAnAntichain if W is not an antichain of P x Q.
AntichainFamily section_family(const Preorder& P, const Preorder& Q, const ElementSet& W);

/// Pulls an antichain of target x R back along a monotone surjection,
/// choosing the least-index preimage of each first coordinate. The result is
/// an antichain of source x R of the same size.
/// Throws NotSurjective, PreconditionUnmet (not monotone) or NotAnAntichain.
ElementSet pull_back_antichain(const MonotoneMap& m, const Preorder& R, const ElementSet& W);

}  // namespace cellspec
