#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cellspec/preorder.hpp"

namespace cellspec {

/// Point sets are bit masks, so spaces have at most 64 points.
using PointSet = std::uint64_t;

inline constexpr std::size_t kMaxPoints = 64;
inline constexpr std::size_t kMaxOpens = 4096;

/// A finite topological space given by its full list of open sets.
class FiniteSpace {
 public:
  /// Throws InvalidSpace unless `opens` contains the empty and the full set
  /// and is closed under pairwise union and intersection; SizeOverflow past
  /// 64 points. Duplicates are dropped and the list sorted by mask value.
  FiniteSpace(std::size_t points, std::vector<PointSet> opens);

  /// Topology generated by `subbasis`: closed under finite intersections and
  /// unions, with the empty and full sets added. SizeOverflow past 4096 opens.
  static FiniteSpace generated_by(std::size_t points, std::span<const PointSet> subbasis);

  static FiniteSpace discrete(std::size_t points);
  static FiniteSpace indiscrete(std::size_t points);

  std::size_t points() const noexcept { return points_; }
  /// Ascending by mask value; front() is the empty set.
  const std::vector<PointSet>& opens() const noexcept { return opens_; }
  PointSet full() const noexcept;

  friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

 private:
  std::size_t points_ = 0;
  std::vector<PointSet> opens_;
};

/// Nonempty opens under inclusion, in mask order. Throws NoNonemptyOpen on a
/// space without points.
Preorder open_poset(const FiniteSpace& X);

/// Cellularity of the open-set poset.
std::size_t space_cellularity(const FiniteSpace& X);

/// Opens are the down-closed sets of Q (generated by the cones {s : s <= q}).
/// Throws EmptyPoset; SizeOverflow past 64 points.
FiniteSpace alexandrov_space(const Preorder& Q);

/// Product topology, points paired row-major (x, y) -> x * |Y| + y,
/// generated by the boxes U x V.
FiniteSpace space_product(const FiniteSpace& X, const FiniteSpace& Y);

/// Independent test: S is down-closed in Q.
bool is_down_closed(const Preorder& Q, PointSet S);

}  // namespace cellspec
