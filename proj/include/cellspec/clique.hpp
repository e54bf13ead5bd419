#pragma once

#include <span>
#include <vector>

#include "cellspec/preorder.hpp"

namespace cellspec {

/// Maximum clique of an undirected graph given as symmetric adjacency rows
/// without self-loops.
///
/// Branch and bound over bitsets: vertices are ranked by a degeneracy
/// ordering (ties to the lowest index), candidate sets are greedily colored at
/// every node and a branch is cut once |clique| + colors cannot beat the best
/// clique found so far. Deterministic. Returns the clique's vertices ascending.
std::vector<Index> maximum_clique(std::span<const Bits> adjacency);

}  // namespace cellspec
