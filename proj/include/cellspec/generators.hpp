#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cellspec/preorder.hpp"

namespace cellspec {

/// Largest size the exhaustive stream will enumerate.
inline constexpr std::size_t kExhaustiveCap = 6;
/// Largest size canonical_form accepts.
inline constexpr std::size_t kCanonicalCap = 10;

struct CanonicalForm {
  /// permutation[old] = new index.
  std::vector<Index> permutation;
  /// Row-major '0'/'1' relation of the relabeled preorder; equal for
  /// isomorphic inputs and different otherwise.
  std::string bytes;
};

/// Lexicographically least relation string over all relabelings that respect
/// an iterated degree-profile refinement. Throws CapExceeded above size 10.
CanonicalForm canonical_form(const Preorder& P);

/// Preorder with element `old` moved to `permutation[old]`.
Preorder relabel(const Preorder& P, std::span<const Index> permutation);

/// relabel(P, canonical_form(P).permutation)
Preorder canonical_representative(const Preorder& P);

/// Each ordered pair (i, j), i != j, is related independently with
/// probability `edge_bias` before taking the reflexive-transitive closure.
/// A pure function of its arguments.
Preorder random_preorder(std::size_t size, double edge_bias, std::uint64_t seed);

/// Canonical representatives of every isomorphism class of preorders with
/// 1..max_size elements, ordered by size and then canonical bytes.
/// Computed once per process. Throws CapExceeded above size 6.
const std::vector<Preorder>& canonical_preorders(std::size_t max_size);

/// Number of isomorphism classes of each size 0..max_size (entry 0 is 0).
std::vector<std::size_t> class_counts(std::size_t max_size);

/// Single-consumer source of instances.
///
/// Exhaustive streams yield canonical_preorders(max_size) in order. Random
/// streams yield random_preorder(size, edge_bias, seed ^ i) for i = 0..count-1.
class InstanceStream {
 public:
  static InstanceStream exhaustive(std::size_t max_size);
  static InstanceStream random(std::size_t count, std::size_t size, double edge_bias, std::uint64_t seed);

  std::optional<Preorder> next();
  /// Drains the rest of the stream.
  std::vector<Preorder> collect();

 private:
  enum class Kind { exhaustive, random };

  InstanceStream() = default;

  Kind kind_ = Kind::exhaustive;
  const std::vector<Preorder>* catalog_ = nullptr;
  std::size_t count_ = 0;
  std::size_t size_ = 0;
  double edge_bias_ = 0.0;
  std::uint64_t seed_ = 0;
  std::size_t cursor_ = 0;
};

}  // namespace cellspec
