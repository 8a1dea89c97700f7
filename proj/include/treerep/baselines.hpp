#pragma once

#include "treerep/distance_matrix.hpp"
#include "treerep/graph.hpp"
#include "treerep/tree.hpp"

namespace treerep {

// Neighbor joining with the standard Q-criterion.
//
// Produces an unrooted binary tree with the n points as leaves and n - 2
// Steiner nodes. Ties in Q go to the lexicographically smallest node pair.
// Negative branch lengths are clamped to 0. Requires n >= 2.
WeightedTree neighbor_join(const DistanceMatrix& d);

// Prim's minimum spanning tree rooted at node 0; throws if disconnected.
WeightedTree mst_prim(const Graph& g);

// Prim over the complete graph whose edge weights are the entries of d.
WeightedTree mst_complete(const DistanceMatrix& d);

}  // namespace treerep
