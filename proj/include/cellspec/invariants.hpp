#pragma once

#include <cstddef>
#include <vector>

#include "cellspec/preorder.hpp"

namespace cellspec {

/// A finite cardinal invariant together with a set attaining it.
struct Attained {
  std::size_t value = 0;
  std::vector<Index> witness;
};

/// Largest antichain (pairwise incompatible set). Maximum clique of the
/// incompatibility graph. Throws EmptyPoset.
Attained cellularity(const Preorder& P);

/// Smallest dense set. Equal to the number of minimal equivalence classes;
/// the witness holds the least index of each. Throws EmptyPoset.
Attained density(const Preorder& P);

/// Largest subset with no n distinct elements sharing a lower bound.
/// Throws BadArity for n < 2.
///
/// A set of elements is bounded below iff it lies above a single minimal
/// element, so the search only has to keep at most n-1 chosen elements above
/// each minimal class. Elements above the same minimal classes are
/// interchangeable and are searched as one group.
Attained linked_free_number(const Preorder& P, std::size_t n);

/// Least-index representatives of the minimal equivalence classes.
std::vector<Index> minimal_representatives(const Preorder& P);

/// Every nonempty antichain, in depth-first lexicographic order.
/// Throws CapExceeded past `cap` antichains.
std::vector<ElementSet> antichains(const Preorder& P, std::size_t cap = std::size_t{1} << 20);

/// Antichains not contained in a larger antichain.
std::vector<ElementSet> maximal_antichains(const Preorder& P, std::size_t cap = std::size_t{1} << 20);

}  // namespace cellspec
