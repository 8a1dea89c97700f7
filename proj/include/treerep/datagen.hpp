#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "treerep/distance_matrix.hpp"
#include "treerep/tree.hpp"

namespace treerep {

// How the two binary trees of the double tree are combined.
enum class RootJoin {
  edge,     // an extra edge between the two roots
  identify  // the roots are the same node
};

struct GeneratedTree {
  WeightedTree tree;      // every node is a data node
  DistanceMatrix metric;  // path metric over all nodes
};

// Random 0-hyperbolic metric. A complete binary tree with `depth` levels is
// doubled, every node becomes a clique of 2..10 nodes (edges of the original
// node go to clique members round-robin), the BFS tree from a random node is
// kept and its edges get weights uniform on (0, 1].
GeneratedTree random_tree_metric(std::size_t depth, std::uint64_t seed,
                                 RootJoin join = RootJoin::edge);

// n points on the k-dimensional hyperboloid: k standard normal coordinates
// times scale, x0 = sqrt(1 + |x|^2). Each row is (x0, x1, ..., xk).
std::vector<std::vector<double>> hyperboloid_points(std::size_t n, std::size_t k, double scale,
                                                    std::uint64_t seed);

// Pairwise hyperboloid distances of hyperboloid_points(n, k, scale, seed).
DistanceMatrix sample_hyperboloid(std::size_t n, std::size_t k, double scale, std::uint64_t seed);

}  // namespace treerep
